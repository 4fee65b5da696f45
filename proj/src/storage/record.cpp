#include "graphmux/storage/record.hpp"

#include <algorithm>
#include <stdexcept>

#include "graphmux/rdf/namespaces.hpp"

namespace graphmux::storage {

namespace ns = rdf::ns;

void ObjectRecord::add_class(const std::string& clazz) {
  if (!has_class(clazz)) classes.push_back(clazz);
}

void ObjectRecord::add(const std::string& property, rdf::Term value) {
  properties[property].push_back(std::move(value));
}

bool ObjectRecord::has_class(const std::string& clazz) const {
  return std::find(classes.begin(), classes.end(), clazz) != classes.end();
}

const std::vector<rdf::Term>* ObjectRecord::values(const std::string& property) const {
  auto it = properties.find(property);
  return it == properties.end() ? nullptr : &it->second;
}

std::vector<rdf::Triple> ObjectRecord::to_triples(const std::vector<std::string>& extra_classes) const {
  std::vector<rdf::Triple> out;
  rdf::Term s = rdf::Term::iri(subject);
  rdf::Term type = rdf::Term::iri(ns::kRdfType);
  for (const auto& c : classes) out.emplace_back(s, type, rdf::Term::iri(c));
  for (const auto& c : extra_classes) {
    if (!has_class(c)) out.emplace_back(s, type, rdf::Term::iri(c));
  }
  for (const auto& [property, vals] : properties) {
    rdf::Term p = rdf::Term::iri(property);
    for (const auto& v : vals) out.emplace_back(s, p, v);
  }
  return out;
}

ObjectRecord ObjectRecord::from_triples(const std::string& subject,
                                        const std::vector<rdf::Triple>& triples) {
  ObjectRecord rec;
  rec.subject = subject;
  for (const auto& t : triples) {
    if (t.predicate().value() == ns::kRdfType) {
      if (!t.object().is_iri()) {
        throw std::invalid_argument("rdf:type object must be an IRI for subject " + subject);
      }
      rec.add_class(t.object().value());
    } else {
      rec.add(t.predicate().value(), t.object());
    }
  }
  return rec;
}

}  // namespace graphmux::storage
