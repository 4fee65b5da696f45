#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "graphmux/rdf/term.hpp"

namespace graphmux::rdf {

bool is_numeric_datatype(std::string_view datatype_iri);

/// Datatypes whose literals admit an order usable by range indexes:
/// date, dateTime, the numeric tower, and strings.
bool is_comparable_datatype(std::string_view datatype_iri);

std::optional<long double> parse_numeric(const std::string& lexical);

/// Lexical-space check for the supported datatypes. Unknown datatypes are
/// accepted (no lexical constraints known for them).
bool is_valid_lexical(std::string_view datatype_iri, const std::string& lexical);

/// Value order between two literals:
///  - both numeric datatypes: numeric order (invalid lexical -> nullopt)
///  - everything else: byte order of the lexical forms, which matches value
///    order for the fixed-width ISO-8601 date/dateTime subset handled here
/// Non-literals yield nullopt.
std::optional<int> compare_literal_values(const Term& a, const Term& b);

}  // namespace graphmux::rdf
