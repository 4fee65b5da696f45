#pragma once

#include <cstdint>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphmux/rdf/triple_set.hpp"
#include "graphmux/sparql/ast.hpp"

namespace graphmux::shacl {

struct ShaclError : std::runtime_error {
  ShaclError(std::string code, const std::string& message)
      : std::runtime_error(message), code(std::move(code)) {}

  std::string code;  // "targetless-shape", "unsupported-feature", "malformed-path", ...
};

struct PropertyShape {
  std::string path;  // single-hop property IRI
  std::optional<std::uint64_t> min_count;
  std::optional<std::uint64_t> max_count;
  std::string datatype;          // constraint absent when empty
  std::string pattern;           // sh:pattern source text (unanchored)
  std::optional<std::regex> pattern_re;
  std::string class_constraint;  // expected class of referenced objects

  bool has_any_constraint() const {
    return min_count || max_count || !datatype.empty() || !pattern.empty() ||
           !class_constraint.empty();
  }
};

struct Rule {
  enum class Kind { Triple, Construct };
  enum class ObjectKind { This, Constant, PropertyRef };

  Kind kind = Kind::Triple;
  // triple rule: (focus, predicate, object)
  std::string predicate;
  ObjectKind object_kind = ObjectKind::Constant;
  rdf::Term object_constant;
  std::string object_property;  // for PropertyRef: values of the focus node's property
  // construct rule: template + WHERE with ?this bound to the focus node
  sparql::QueryAst construct;

  std::string origin;  // shape IRI, for diagnostics
};

struct NodeShape {
  std::string id;
  std::string target_class;
  std::vector<PropertyShape> property_shapes;
  std::vector<Rule> rules;
};

struct Violation {
  std::string focus;
  std::string path;
  std::string constraint;  // "minCount", "maxCount", "datatype", "pattern", "class"
  std::string message;
};

struct ValidationReport {
  bool conforms = true;
  std::vector<Violation> violations;
};

/// Extract node shapes from a shapes document. Supported vocabulary:
/// sh:NodeShape, sh:targetClass, sh:property with sh:path/minCount/maxCount/
/// datatype/pattern/class, sh:rule with sh:TripleRule or sh:SPARQLRule.
/// Anything else in the sh: namespace raises an unsupported-feature error.
std::vector<NodeShape> parse_shapes(const rdf::TripleSet& doc);

}  // namespace graphmux::shacl
