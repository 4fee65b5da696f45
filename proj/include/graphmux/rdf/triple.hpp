#pragma once

#include "graphmux/rdf/term.hpp"

namespace graphmux::rdf {

/// A subject-predicate-object statement. Subject is an IRI or blank node,
/// the predicate is always an IRI; construction enforces both.
class Triple {
 public:
  Triple(Term subject, Term predicate, Term object);

  const Term& subject() const { return subject_; }
  const Term& predicate() const { return predicate_; }
  const Term& object() const { return object_; }

  bool operator==(const Triple& other) const {
    return subject_ == other.subject_ && predicate_ == other.predicate_ && object_ == other.object_;
  }
  bool operator!=(const Triple& other) const { return !(*this == other); }

  std::string to_string() const;

 private:
  Term subject_;
  Term predicate_;
  Term object_;
};

int compare_triples(const Triple& a, const Triple& b);

struct TripleLess {
  bool operator()(const Triple& a, const Triple& b) const { return compare_triples(a, b) < 0; }
};

}  // namespace graphmux::rdf
