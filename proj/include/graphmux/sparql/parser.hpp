#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "graphmux/sparql/ast.hpp"

namespace graphmux::sparql {

struct QueryParseError : std::runtime_error {
  QueryParseError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"),
        line(line),
        column(column) {}

  std::size_t line;
  std::size_t column;
};

/// Raised for SPARQL features outside the supported subset. They are
/// rejected by name, never silently ignored.
struct UnsupportedFeatureError : QueryParseError {
  UnsupportedFeatureError(const std::string& feature, std::size_t line, std::size_t column)
      : QueryParseError("unsupported feature: " + feature, line, column), feature(feature) {}

  std::string feature;
};

/// Parse the SPARQL subset: PREFIX declarations, SELECT (var list or *) /
/// CONSTRUCT, WHERE with a basic graph pattern plus FILTER, OFFSET, LIMIT.
/// rdf/rdfs/xsd/sh are pre-declared; `extra_prefixes` adds the server's
/// table (typically including the default ':' prefix).
QueryAst parse_query(std::string_view text,
                     const std::map<std::string, std::string>& extra_prefixes = {});

}  // namespace graphmux::sparql
