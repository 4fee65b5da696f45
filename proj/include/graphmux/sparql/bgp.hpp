#pragma once

#include <functional>
#include <vector>

#include "graphmux/sparql/ast.hpp"

namespace graphmux::sparql {

/// A pattern-matching data source: any of the three positions may be bound
/// (non-null). Returns all matching triples.
using TripleSource = std::function<std::vector<rdf::Triple>(
    const rdf::Term* s, const rdf::Term* p, const rdf::Term* o)>;

/// Index-nested-loop evaluation of a basic graph pattern: patterns are
/// evaluated left to right, each instantiated with the bindings accumulated
/// so far before the source is consulted.
std::vector<Binding> eval_bgp(const std::vector<TriplePattern>& patterns,
                              const TripleSource& source, const Binding& seed = {});

/// Extend `binding` with one triple matched against one pattern; false when
/// a bound position or repeated variable disagrees.
bool match_pattern_into(const TriplePattern& pattern, const rdf::Triple& triple, Binding& binding);

}  // namespace graphmux::sparql
