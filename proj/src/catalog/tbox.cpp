#include "graphmux/catalog/tbox.hpp"

#include <functional>

#include "graphmux/rdf/namespaces.hpp"

namespace graphmux::catalog {

namespace ns = rdf::ns;

TBox TBox::from_triples(const rdf::TripleSet& schema) {
  TBox tbox;
  const std::string rdf_property = ns::rdf("Property");

  for (const auto& t : schema) {
    if (t.predicate().value() == ns::kRdfType && t.object().is_iri()) {
      const std::string& kind = t.object().value();
      if ((kind == ns::kRdfsClass || kind == ns::kOwlClass) && t.subject().is_iri()) {
        tbox.classes_.insert(t.subject().value());
      } else if (kind == rdf_property && t.subject().is_iri()) {
        tbox.property_defs_[t.subject().value()];
      }
    }
  }

  for (const auto& t : schema) {
    const std::string& p = t.predicate().value();
    if (p == ns::kRdfsSubClassOf) {
      if (!t.subject().is_iri() || !t.object().is_iri()) {
        throw TBoxError("rdfs:subClassOf requires IRI endpoints");
      }
      const std::string& child = t.subject().value();
      const std::string& parent = t.object().value();
      if (!tbox.classes_.count(child)) {
        throw TBoxError("subclass edge references undeclared class " + child);
      }
      if (!tbox.classes_.count(parent)) {
        throw TBoxError("subclass edge references undeclared class " + parent);
      }
      tbox.edges_.emplace_back(child, parent);
      tbox.children_[parent].push_back(child);
      tbox.parents_[child].push_back(parent);
    } else if (p == ns::kRdfsRange && t.subject().is_iri() && t.object().is_iri()) {
      if (tbox.property_defs_.count(t.subject().value())) {
        tbox.property_defs_[t.subject().value()].range = t.object().value();
      }
    } else if (p == ns::kRdfsLabel && t.subject().is_iri() && t.object().is_literal()) {
      if (tbox.property_defs_.count(t.subject().value())) {
        tbox.property_defs_[t.subject().value()].label = t.object().value();
      }
    }
  }

  // acyclicity: iterative DFS with colors
  std::map<std::string, int> color;  // 0 white, 1 grey, 2 black
  std::function<void(const std::string&)> visit = [&](const std::string& node) {
    color[node] = 1;
    auto it = tbox.parents_.find(node);
    if (it != tbox.parents_.end()) {
      for (const auto& parent : it->second) {
        if (color[parent] == 1) {
          throw TBoxError("subclass cycle through " + parent);
        }
        if (color[parent] == 0) visit(parent);
      }
    }
    color[node] = 2;
  };
  for (const auto& c : tbox.classes_) {
    if (color[c] == 0) visit(c);
  }
  return tbox;
}

const PropertyDef* TBox::property(const std::string& iri) const {
  auto it = property_defs_.find(iri);
  return it == property_defs_.end() ? nullptr : &it->second;
}

namespace {

std::set<std::string> closure(const std::string& start,
                              const std::map<std::string, std::vector<std::string>>& next) {
  std::set<std::string> seen{start};
  std::vector<std::string> frontier{start};
  while (!frontier.empty()) {
    std::string node = frontier.back();
    frontier.pop_back();
    auto it = next.find(node);
    if (it == next.end()) continue;
    for (const auto& n : it->second) {
      if (seen.insert(n).second) frontier.push_back(n);
    }
  }
  return seen;
}

}  // namespace

std::set<std::string> TBox::subclass_closure(const std::string& iri) const {
  if (!classes_.count(iri)) throw TBoxError("unknown class " + iri);
  return closure(iri, children_);
}

std::set<std::string> TBox::superclasses(const std::string& iri) const {
  if (!classes_.count(iri)) return {iri};
  return closure(iri, parents_);
}

std::set<std::string> TBox::expand_upward(const std::vector<std::string>& classes) const {
  std::set<std::string> out;
  for (const auto& c : classes) {
    auto up = superclasses(c);
    out.insert(up.begin(), up.end());
  }
  return out;
}

}  // namespace graphmux::catalog
