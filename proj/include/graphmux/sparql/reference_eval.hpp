#pragma once

#include "graphmux/rdf/triple_set.hpp"
#include "graphmux/sparql/ast.hpp"

namespace graphmux::sparql {

/// The correctness oracle: a naive nested-loop join of all patterns over the
/// full triple set (no indexes, no routing, no subclass expansion), then
/// filters, projection, a canonical-order sort of the projected rows, and
/// offset/limit. Pure function of (ast, data); deliberately kept independent
/// of the engine's execution path.
ResultSet eval_reference(const QueryAst& ast, const rdf::TripleSet& data);

}  // namespace graphmux::sparql
