#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "graphmux/rdf/triple_set.hpp"

namespace graphmux::rdf {

enum class DocumentFormat { TurtleSubset, NTriples };

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"),
        line(line),
        column(column) {}

  std::size_t line;
  std::size_t column;
};

/// Parse a document in the Turtle subset (prefix/base directives, `a`,
/// IRIs, plain/typed/lang literals, `;`/`,` shorthand, comments) or in
/// N-Triples. All IRIs in the result are fully expanded.
TripleSet parse_document(std::string_view text, DocumentFormat format);

}  // namespace graphmux::rdf
