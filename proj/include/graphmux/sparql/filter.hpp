#pragma once

#include "graphmux/sparql/ast.hpp"

namespace graphmux::sparql {

/// SPARQL filters are three-valued: a row whose filter evaluates to Error is
/// excluded, same as False, but Error propagates differently through && / ||.
enum class Truth { True, False, Error };

/// Evaluate one filter expression against a binding.
///  - CONTAINS is case-sensitive substring over string literals
///  - comparisons use numeric value order when both sides are numeric
///    literals, lexical order otherwise (ISO dates order correctly this way)
///  - STR yields the lexical form of a literal or the IRI string
///  - any reference to an unbound variable yields Error
Truth eval_filter(const FilterExpr& expr, const Binding& binding);

/// True iff every filter evaluates to True (rows with False or Error drop).
bool passes_filters(const std::vector<FilterExpr>& filters, const Binding& binding);

}  // namespace graphmux::sparql
