#include "graphmux/rdf/triple_set.hpp"

namespace graphmux::rdf {

void TripleSet::merge(const TripleSet& other) {
  for (const auto& t : other.triples_) triples_.insert(t);
  for (const auto& [p, iri] : other.prefixes_) prefixes_[p] = iri;
}

void TripleSet::merge_renaming_blanks(const TripleSet& other, std::size_t import_seq) {
  auto rename = [&](const Term& t) {
    if (!t.is_blank()) return t;
    return Term::blank("b" + std::to_string(import_seq) + "_" + t.value());
  };
  for (const auto& t : other.triples_) {
    triples_.insert(Triple(rename(t.subject()), t.predicate(), rename(t.object())));
  }
  for (const auto& [p, iri] : other.prefixes_) prefixes_[p] = iri;
}

}  // namespace graphmux::rdf
