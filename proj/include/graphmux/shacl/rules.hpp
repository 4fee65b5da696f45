#pragma once

#include "graphmux/catalog/tbox.hpp"
#include "graphmux/shacl/shapes.hpp"
#include "graphmux/sparql/bgp.hpp"
#include "graphmux/storage/record.hpp"

namespace graphmux::shacl {

/// Run the rules of every shape targeting the record's classes with the
/// record as focus node. Construct-rule WHERE clauses see the focus node's
/// triples (including freshly derived ones) plus `external` data. Iterates
/// to a fixpoint, at most 10 rounds; a ruleset still deriving new triples
/// after that raises ShaclError naming the rule. Derived triples that
/// already exist in `external` are dropped.
std::vector<rdf::Triple> apply_rules(const storage::ObjectRecord& record,
                                     const std::vector<NodeShape>& shapes,
                                     const catalog::TBox& tbox,
                                     const sparql::TripleSource& external);

inline constexpr int kRuleIterationCap = 10;

}  // namespace graphmux::shacl
