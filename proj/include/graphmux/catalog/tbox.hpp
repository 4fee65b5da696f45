#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphmux/rdf/triple_set.hpp"

namespace graphmux::catalog {

struct TBoxError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PropertyDef {
  std::string range;  // expected datatype IRI or class IRI; empty when undeclared
  std::string label;

  bool operator==(const PropertyDef& other) const = default;
};

/// The schema: declared classes, the (acyclic) subclass graph, and property
/// definitions. Immutable after load.
class TBox {
 public:
  TBox() = default;

  /// Build from schema triples (rdfs:Class / owl:Class declarations,
  /// rdfs:subClassOf edges, rdf:Property with rdfs:range / rdfs:label).
  /// Throws TBoxError on subclass cycles or edges touching undeclared
  /// classes.
  static TBox from_triples(const rdf::TripleSet& schema);

  bool has_class(const std::string& iri) const { return classes_.count(iri) > 0; }
  const std::set<std::string>& classes() const { return classes_; }
  const std::vector<std::pair<std::string, std::string>>& subclass_edges() const { return edges_; }
  const std::map<std::string, PropertyDef>& property_defs() const { return property_defs_; }

  const PropertyDef* property(const std::string& iri) const;

  /// Reflexive-transitive closure downward: the class plus all descendants.
  /// Throws TBoxError for unknown classes.
  std::set<std::string> subclass_closure(const std::string& iri) const;

  /// Reflexive-transitive closure upward: the class plus all ancestors.
  std::set<std::string> superclasses(const std::string& iri) const;

  /// Union of superclasses over a set of classes (used when matching shapes
  /// and expanding record types); unknown classes pass through unchanged.
  std::set<std::string> expand_upward(const std::vector<std::string>& classes) const;

 private:
  std::set<std::string> classes_;
  std::vector<std::pair<std::string, std::string>> edges_;  // child -> parent
  std::map<std::string, std::vector<std::string>> children_;
  std::map<std::string, std::vector<std::string>> parents_;
  std::map<std::string, PropertyDef> property_defs_;
};

}  // namespace graphmux::catalog
