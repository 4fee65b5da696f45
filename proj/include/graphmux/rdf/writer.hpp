#pragma once

#include <string>

#include "graphmux/rdf/parser.hpp"
#include "graphmux/rdf/triple_set.hpp"

namespace graphmux::rdf {

/// N-Triples term rendering with string escaping, shared by the writers and
/// by anything needing a stable textual term form (logs, reports).
std::string term_to_ntriples(const Term& t);

/// Serialize to the given format. N-Triples output is one triple per line in
/// canonical order; Turtle output groups by subject with `;`/`,` shorthand
/// and compresses IRIs against the set's prefix table. Both re-parse to an
/// equal TripleSet.
std::string serialize(const TripleSet& data, DocumentFormat format);

}  // namespace graphmux::rdf
