#pragma once

#include <functional>

#include "graphmux/catalog/tbox.hpp"
#include "graphmux/shacl/shapes.hpp"
#include "graphmux/storage/record.hpp"

namespace graphmux::shacl {

/// Resolves the classes of a referenced object (engine lookup); empty when
/// the object is unknown.
using ClassLookup = std::function<std::vector<std::string>(const std::string& iri)>;

/// Node-local validation of one record against every shape whose target
/// class matches the record's classes (expanded by superclasses).
/// Violations are results, not errors.
ValidationReport validate(const storage::ObjectRecord& record,
                          const std::vector<NodeShape>& shapes, const catalog::TBox& tbox,
                          const ClassLookup& lookup_classes = {});

}  // namespace graphmux::shacl
