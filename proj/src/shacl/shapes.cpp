#include "graphmux/shacl/shapes.hpp"

#include <map>
#include <set>

#include "graphmux/rdf/namespaces.hpp"
#include "graphmux/sparql/parser.hpp"

namespace graphmux::shacl {

namespace ns = rdf::ns;

namespace {

// Subject-indexed view of the shapes document.
class Doc {
 public:
  explicit Doc(const rdf::TripleSet& ts) {
    for (const auto& t : ts) {
      by_subject_[t.subject()].push_back(&t);
    }
  }

  const std::vector<const rdf::Triple*>& about(const rdf::Term& node) const {
    static const std::vector<const rdf::Triple*> empty;
    auto it = by_subject_.find(node);
    return it == by_subject_.end() ? empty : it->second;
  }

  std::optional<rdf::Term> one(const rdf::Term& node, const std::string& predicate) const {
    for (const auto* t : about(node)) {
      if (t->predicate().value() == predicate) return t->object();
    }
    return std::nullopt;
  }

  std::vector<rdf::Term> all(const rdf::Term& node, const std::string& predicate) const {
    std::vector<rdf::Term> out;
    for (const auto* t : about(node)) {
      if (t->predicate().value() == predicate) out.push_back(t->object());
    }
    return out;
  }

  bool has_type(const rdf::Term& node, const std::string& type) const {
    for (const auto* t : about(node)) {
      if (t->predicate().value() == ns::kRdfType && t->object().is_iri() &&
          t->object().value() == type) {
        return true;
      }
    }
    return false;
  }

  const std::map<rdf::Term, std::vector<const rdf::Triple*>, rdf::TermLess>& subjects() const {
    return by_subject_;
  }

 private:
  std::map<rdf::Term, std::vector<const rdf::Triple*>, rdf::TermLess> by_subject_;
};

bool in_shacl_ns(const std::string& iri) { return iri.rfind(ns::kShacl, 0) == 0; }

std::uint64_t integer_of(const rdf::Term& t, const std::string& what) {
  if (!t.is_literal()) throw ShaclError("malformed-shape", what + " must be an integer literal");
  try {
    return std::stoull(t.value());
  } catch (const std::exception&) {
    throw ShaclError("malformed-shape", what + " is not an integer: " + t.value());
  }
}

PropertyShape parse_property_shape(const Doc& doc, const rdf::Term& node) {
  static const std::set<std::string> allowed = {
      ns::sh("path"),    ns::sh("minCount"), ns::sh("maxCount"),
      ns::sh("datatype"), ns::sh("pattern"), ns::sh("class")};

  PropertyShape ps;
  for (const auto* t : doc.about(node)) {
    const std::string& p = t->predicate().value();
    if (p == ns::kRdfType) continue;
    if (in_shacl_ns(p) && !allowed.count(p)) {
      throw ShaclError("unsupported-feature", "unsupported SHACL component " + p);
    }
  }

  auto path = doc.one(node, ns::sh("path"));
  if (!path) throw ShaclError("malformed-path", "property shape without sh:path");
  if (!path->is_iri()) {
    // blank node paths are sequence/alternative paths
    throw ShaclError("unsupported-feature", "only single-hop IRI paths are supported");
  }
  ps.path = path->value();

  if (auto v = doc.one(node, ns::sh("minCount"))) ps.min_count = integer_of(*v, "sh:minCount");
  if (auto v = doc.one(node, ns::sh("maxCount"))) ps.max_count = integer_of(*v, "sh:maxCount");
  if (ps.min_count && ps.max_count && *ps.min_count > *ps.max_count) {
    throw ShaclError("malformed-shape", "sh:minCount exceeds sh:maxCount on " + ps.path);
  }
  if (auto v = doc.one(node, ns::sh("datatype"))) {
    if (!v->is_iri()) throw ShaclError("malformed-shape", "sh:datatype must be an IRI");
    ps.datatype = v->value();
  }
  if (auto v = doc.one(node, ns::sh("pattern"))) {
    if (!v->is_literal()) throw ShaclError("malformed-shape", "sh:pattern must be a string");
    ps.pattern = v->value();
    try {
      ps.pattern_re.emplace(ps.pattern, std::regex::ECMAScript);
    } catch (const std::regex_error&) {
      throw ShaclError("malformed-shape", "sh:pattern is not a valid regex: " + ps.pattern);
    }
  }
  if (auto v = doc.one(node, ns::sh("class"))) {
    if (!v->is_iri()) throw ShaclError("malformed-shape", "sh:class must be an IRI");
    ps.class_constraint = v->value();
  }
  if (!ps.has_any_constraint()) {
    throw ShaclError("malformed-shape", "property shape on " + ps.path + " has no constraint");
  }
  return ps;
}

// set by parse_shapes so sh:construct strings can reuse the document prefixes
thread_local std::map<std::string, std::string> doc_prefixes_;

Rule parse_rule(const Doc& doc, const rdf::Term& node, const std::string& shape_id) {
  Rule rule;
  rule.origin = shape_id;
  if (doc.has_type(node, ns::sh("TripleRule"))) {
    rule.kind = Rule::Kind::Triple;
    auto subject = doc.one(node, ns::sh("subject"));
    if (!subject || !(subject->is_iri() && subject->value() == ns::sh("this"))) {
      throw ShaclError("unsupported-feature", "triple rule subject must be sh:this");
    }
    auto predicate = doc.one(node, ns::sh("predicate"));
    if (!predicate || !predicate->is_iri()) {
      throw ShaclError("malformed-shape", "triple rule requires an IRI sh:predicate");
    }
    rule.predicate = predicate->value();
    auto object = doc.one(node, ns::sh("object"));
    if (!object) throw ShaclError("malformed-shape", "triple rule requires sh:object");
    if (object->is_iri() && object->value() == ns::sh("this")) {
      rule.object_kind = Rule::ObjectKind::This;
    } else if (object->is_blank() || doc.one(*object, ns::sh("path"))) {
      auto ref = doc.one(*object, ns::sh("path"));
      if (!ref || !ref->is_iri()) {
        throw ShaclError("malformed-shape", "triple rule object path must be an IRI");
      }
      rule.object_kind = Rule::ObjectKind::PropertyRef;
      rule.object_property = ref->value();
    } else {
      rule.object_kind = Rule::ObjectKind::Constant;
      rule.object_constant = *object;
    }
    return rule;
  }
  if (doc.has_type(node, ns::sh("SPARQLRule"))) {
    rule.kind = Rule::Kind::Construct;
    auto text = doc.one(node, ns::sh("construct"));
    if (!text || !text->is_literal()) {
      throw ShaclError("malformed-shape", "SPARQL rule requires an sh:construct string");
    }
    sparql::QueryAst ast;
    try {
      ast = sparql::parse_query(text->value(), doc_prefixes_);
    } catch (const std::exception& e) {
      throw ShaclError("malformed-shape", std::string("sh:construct does not parse: ") + e.what());
    }
    if (ast.form != sparql::QueryAst::Form::Construct) {
      throw ShaclError("malformed-shape", "sh:construct must hold a CONSTRUCT query");
    }
    rule.construct = std::move(ast);
    return rule;
  }
  throw ShaclError("unsupported-feature", "unsupported rule type (expected sh:TripleRule or sh:SPARQLRule)");
}

}  // namespace

std::vector<NodeShape> parse_shapes(const rdf::TripleSet& ts) {
  Doc doc(ts);
  doc_prefixes_ = ts.prefixes();
  std::vector<NodeShape> shapes;

  static const std::set<std::string> allowed_on_shape = {
      ns::sh("targetClass"), ns::sh("property"), ns::sh("rule")};

  for (const auto& [subject, triples] : doc.subjects()) {
    if (!doc.has_type(subject, ns::sh("NodeShape"))) continue;

    for (const auto* t : triples) {
      const std::string& p = t->predicate().value();
      if (p == ns::kRdfType) continue;
      if (in_shacl_ns(p) && !allowed_on_shape.count(p)) {
        throw ShaclError("unsupported-feature", "unsupported SHACL component " + p);
      }
    }

    NodeShape shape;
    shape.id = subject.is_iri() ? subject.value() : "_:" + subject.value();
    auto target = doc.one(subject, ns::sh("targetClass"));
    if (!target || !target->is_iri()) {
      throw ShaclError("targetless-shape", "shape " + shape.id + " has no sh:targetClass");
    }
    shape.target_class = target->value();

    for (const auto& ps_node : doc.all(subject, ns::sh("property"))) {
      shape.property_shapes.push_back(parse_property_shape(doc, ps_node));
    }
    for (const auto& rule_node : doc.all(subject, ns::sh("rule"))) {
      shape.rules.push_back(parse_rule(doc, rule_node, shape.id));
    }
    shapes.push_back(std::move(shape));
  }
  return shapes;
}

}  // namespace graphmux::shacl
