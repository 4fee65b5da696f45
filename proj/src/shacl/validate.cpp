#include "graphmux/shacl/validate.hpp"

#include "graphmux/rdf/datatypes.hpp"

namespace graphmux::shacl {

namespace {

void check_property_shape(const storage::ObjectRecord& record, const PropertyShape& ps,
                          const catalog::TBox& tbox, const ClassLookup& lookup_classes,
                          ValidationReport& report) {
  static const std::vector<rdf::Term> no_values;
  const auto* values_ptr = record.values(ps.path);
  const auto& values = values_ptr ? *values_ptr : no_values;

  auto violate = [&](const std::string& constraint, const std::string& message) {
    report.conforms = false;
    report.violations.push_back({record.subject, ps.path, constraint, message});
  };

  if (ps.min_count && values.size() < *ps.min_count) {
    violate("minCount", "expected at least " + std::to_string(*ps.min_count) + " value(s), found " +
                            std::to_string(values.size()));
  }
  if (ps.max_count && values.size() > *ps.max_count) {
    violate("maxCount", "expected at most " + std::to_string(*ps.max_count) + " value(s), found " +
                            std::to_string(values.size()));
  }
  if (!ps.datatype.empty()) {
    for (const auto& v : values) {
      if (!v.is_literal() || v.datatype() != ps.datatype) {
        violate("datatype", "value " + v.to_string() + " is not a literal of " + ps.datatype);
      } else if (!rdf::is_valid_lexical(ps.datatype, v.value())) {
        violate("datatype", "lexical form \"" + v.value() + "\" is invalid for " + ps.datatype);
      }
    }
  }
  if (ps.pattern_re) {
    for (const auto& v : values) {
      if (!std::regex_search(v.value(), *ps.pattern_re)) {
        violate("pattern", "value \"" + v.value() + "\" does not match /" + ps.pattern + "/");
      }
    }
  }
  if (!ps.class_constraint.empty()) {
    for (const auto& v : values) {
      if (!v.is_iri()) {
        violate("class", "value " + v.to_string() + " is not an IRI");
        continue;
      }
      std::vector<std::string> classes;
      if (lookup_classes) classes = lookup_classes(v.value());
      auto expanded = tbox.expand_upward(classes);
      if (!expanded.count(ps.class_constraint)) {
        violate("class", "referenced object " + v.value() + " is not a " + ps.class_constraint);
      }
    }
  }
}

}  // namespace

ValidationReport validate(const storage::ObjectRecord& record,
                          const std::vector<NodeShape>& shapes, const catalog::TBox& tbox,
                          const ClassLookup& lookup_classes) {
  ValidationReport report;
  auto targets = tbox.expand_upward(record.classes);
  for (const auto& shape : shapes) {
    if (!targets.count(shape.target_class)) continue;
    for (const auto& ps : shape.property_shapes) {
      check_property_shape(record, ps, tbox, lookup_classes, report);
    }
  }
  return report;
}

}  // namespace graphmux::shacl
