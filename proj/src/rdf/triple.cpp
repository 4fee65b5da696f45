#include "graphmux/rdf/triple.hpp"

#include <stdexcept>
#include <utility>

namespace graphmux::rdf {

Triple::Triple(Term subject, Term predicate, Term object)
    : subject_(std::move(subject)), predicate_(std::move(predicate)), object_(std::move(object)) {
  if (subject_.is_literal()) {
    throw std::invalid_argument("triple subject must not be a literal");
  }
  if (!predicate_.is_iri()) {
    throw std::invalid_argument("triple predicate must be an IRI");
  }
}

std::string Triple::to_string() const {
  return subject_.to_string() + " " + predicate_.to_string() + " " + object_.to_string() + " .";
}

int compare_triples(const Triple& a, const Triple& b) {
  if (int c = compare_terms(a.subject(), b.subject()); c != 0) return c;
  if (int c = compare_terms(a.predicate(), b.predicate()); c != 0) return c;
  return compare_terms(a.object(), b.object());
}

}  // namespace graphmux::rdf
