#pragma once

#include <map>
#include <string>
#include <vector>

#include "graphmux/rdf/triple.hpp"

namespace graphmux::storage {

/// Subject-centric view of an individual: its classes and a property ->
/// values multimap. rdf:type lives in `classes` only, never in `properties`.
/// Value lists preserve insertion order.
struct ObjectRecord {
  std::string subject;  // IRI
  std::vector<std::string> classes;
  std::map<std::string, std::vector<rdf::Term>> properties;

  void add_class(const std::string& clazz);
  void add(const std::string& property, rdf::Term value);
  bool has_class(const std::string& clazz) const;

  /// All values of a property; empty when absent.
  const std::vector<rdf::Term>* values(const std::string& property) const;

  /// Expand to triples: one rdf:type triple per entry of `classes` (plus
  /// `extra_classes`, used for superclass expansion) and one triple per
  /// property value.
  std::vector<rdf::Triple> to_triples(const std::vector<std::string>& extra_classes = {}) const;

  /// Assemble from triples sharing one subject. Throws std::invalid_argument
  /// when an rdf:type object is not an IRI.
  static ObjectRecord from_triples(const std::string& subject,
                                   const std::vector<rdf::Triple>& triples);

  bool operator==(const ObjectRecord& other) const = default;
};

}  // namespace graphmux::storage
