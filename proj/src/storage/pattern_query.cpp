#include "graphmux/storage/pattern_query.hpp"

#include <stdexcept>

#include "graphmux/rdf/datatypes.hpp"
#include "graphmux/rdf/namespaces.hpp"

namespace graphmux::storage {

namespace ns = rdf::ns;

bool value_satisfies(const rdf::Term& value, PropertyFilter::Op op, const rdf::Term& constant) {
  switch (op) {
    case PropertyFilter::Op::Exists:
      return true;
    case PropertyFilter::Op::Equals:
      if (value.is_literal() && constant.is_literal() &&
          rdf::is_numeric_datatype(value.datatype()) &&
          rdf::is_numeric_datatype(constant.datatype())) {
        auto c = rdf::compare_literal_values(value, constant);
        return c && *c == 0;
      }
      return value == constant;
    case PropertyFilter::Op::Less:
    case PropertyFilter::Op::Greater: {
      if (!value.is_literal() || !constant.is_literal()) return false;
      auto c = rdf::compare_literal_values(value, constant);
      if (!c) return false;
      return op == PropertyFilter::Op::Less ? *c < 0 : *c > 0;
    }
    case PropertyFilter::Op::Contains:
      if (!value.is_literal() || value.datatype() != ns::kXsdString) return false;
      if (!constant.is_literal() || constant.datatype() != ns::kXsdString) return false;
      return value.value().find(constant.value()) != std::string::npos;
  }
  return false;
}

bool record_matches(const ObjectRecord& record, const PropertyFilter& filter) {
  const auto* vals = record.values(filter.property);
  if (!vals || vals->empty()) return false;
  if (filter.op == PropertyFilter::Op::Exists) return true;
  for (const auto& v : *vals) {
    if (value_satisfies(v, filter.op, filter.value)) return true;
  }
  return false;
}

bool record_matches_all(const ObjectRecord& record, const std::vector<PropertyFilter>& filters) {
  for (const auto& f : filters) {
    if (!record_matches(record, f)) return false;
  }
  return true;
}

std::string to_string(PropertyFilter::Op op) {
  switch (op) {
    case PropertyFilter::Op::Equals: return "equals";
    case PropertyFilter::Op::Less: return "less";
    case PropertyFilter::Op::Greater: return "greater";
    case PropertyFilter::Op::Contains: return "contains";
    case PropertyFilter::Op::Exists: return "exists";
  }
  return "?";
}

PropertyFilter::Op op_from_string(const std::string& s) {
  if (s == "equals") return PropertyFilter::Op::Equals;
  if (s == "less") return PropertyFilter::Op::Less;
  if (s == "greater") return PropertyFilter::Op::Greater;
  if (s == "contains") return PropertyFilter::Op::Contains;
  if (s == "exists") return PropertyFilter::Op::Exists;
  throw std::invalid_argument("unknown filter op '" + s + "'");
}

std::string to_string(IndexSpec::Kind kind) {
  switch (kind) {
    case IndexSpec::Kind::Equality: return "equality";
    case IndexSpec::Kind::Ordered: return "ordered";
    case IndexSpec::Kind::SubstringScan: return "substring-scan";
  }
  return "?";
}

IndexSpec::Kind index_kind_from_string(const std::string& s) {
  if (s == "equality") return IndexSpec::Kind::Equality;
  if (s == "ordered") return IndexSpec::Kind::Ordered;
  if (s == "substring-scan") return IndexSpec::Kind::SubstringScan;
  throw std::invalid_argument("unknown index kind '" + s + "'");
}

}  // namespace graphmux::storage
