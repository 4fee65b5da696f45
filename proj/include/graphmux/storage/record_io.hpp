#pragma once

#include <string>

#include <json.hpp>

#include "graphmux/storage/pattern_query.hpp"
#include "graphmux/storage/record.hpp"

namespace graphmux::storage {

/// Term <-> JSON in the SPARQL-results style: {"type":"uri"|"literal"|
/// "bnode","value":...} plus "datatype"/"xml:lang" for non-plain literals.
/// The same encoding is used by record documents, the change log, bulk-load
/// lines, and the query results endpoint.
nlohmann::json term_to_json(const rdf::Term& t);
rdf::Term term_from_json(const nlohmann::json& j);

nlohmann::json record_to_json(const ObjectRecord& record);
ObjectRecord record_from_json(const nlohmann::json& j);

/// One-line self-describing record document (bulk load and journal format).
std::string record_to_line(const ObjectRecord& record);
ObjectRecord record_from_line(const std::string& line);

nlohmann::json pattern_query_to_json(const PatternQuery& q);
PatternQuery pattern_query_from_json(const nlohmann::json& j);

}  // namespace graphmux::storage
