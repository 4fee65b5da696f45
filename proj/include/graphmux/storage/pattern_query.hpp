#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphmux/rdf/term.hpp"
#include "graphmux/storage/record.hpp"

namespace graphmux::storage {

/// One per-property predicate of a record scan. `Exists` (property present)
/// is internal planner machinery and is not exposed through REST filters.
struct PropertyFilter {
  enum class Op { Equals, Less, Greater, Contains, Exists };

  std::string property;
  Op op = Op::Exists;
  rdf::Term value;

  bool operator==(const PropertyFilter& other) const = default;
};

/// A record scan over one class: property filters, canonical subject order,
/// then offset/limit.
struct PatternQuery {
  std::string clazz;
  std::vector<PropertyFilter> filters;
  std::uint64_t offset = 0;
  std::optional<std::uint64_t> limit;

  bool operator==(const PatternQuery& other) const = default;
};

/// Does one value satisfy the filter? Comparison semantics mirror the SPARQL
/// filter evaluator: numeric literal pairs compare by value, everything else
/// by lexical form; `contains` requires string literals on both sides.
bool value_satisfies(const rdf::Term& value, PropertyFilter::Op op, const rdf::Term& constant);

/// A record satisfies a filter when at least one of its values for the
/// property does (presence alone for Exists).
bool record_matches(const ObjectRecord& record, const PropertyFilter& filter);
bool record_matches_all(const ObjectRecord& record, const std::vector<PropertyFilter>& filters);

std::string to_string(PropertyFilter::Op op);
PropertyFilter::Op op_from_string(const std::string& s);

struct IndexSpec {
  enum class Kind { Equality, Ordered, SubstringScan };

  std::string property;
  Kind kind = Kind::Equality;

  bool operator==(const IndexSpec& other) const = default;
};

std::string to_string(IndexSpec::Kind kind);
IndexSpec::Kind index_kind_from_string(const std::string& s);

}  // namespace graphmux::storage
