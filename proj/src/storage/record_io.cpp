#include "graphmux/storage/record_io.hpp"

#include <stdexcept>

#include "graphmux/rdf/namespaces.hpp"

namespace graphmux::storage {

namespace ns = rdf::ns;
using nlohmann::json;

json term_to_json(const rdf::Term& t) {
  json j;
  switch (t.kind()) {
    case rdf::TermKind::Iri:
      j["type"] = "uri";
      j["value"] = t.value();
      break;
    case rdf::TermKind::Blank:
      j["type"] = "bnode";
      j["value"] = t.value();
      break;
    case rdf::TermKind::Literal:
      j["type"] = "literal";
      j["value"] = t.value();
      if (!t.lang().empty()) {
        j["xml:lang"] = t.lang();
      } else if (t.datatype() != ns::kXsdString) {
        j["datatype"] = t.datatype();
      }
      break;
  }
  return j;
}

rdf::Term term_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.contains("value")) {
    throw std::invalid_argument("term document requires 'type' and 'value'");
  }
  const std::string type = j.at("type").get<std::string>();
  const std::string value = j.at("value").get<std::string>();
  if (type == "uri") return rdf::Term::iri(value);
  if (type == "bnode") return rdf::Term::blank(value);
  if (type == "literal") {
    if (j.contains("xml:lang")) return rdf::Term::lang_literal(value, j.at("xml:lang").get<std::string>());
    if (j.contains("datatype")) return rdf::Term::literal(value, j.at("datatype").get<std::string>());
    return rdf::Term::literal(value);
  }
  throw std::invalid_argument("unknown term type '" + type + "'");
}

json record_to_json(const ObjectRecord& record) {
  json j;
  j["subject"] = record.subject;
  j["classes"] = record.classes;
  json props = json::object();
  for (const auto& [property, values] : record.properties) {
    json arr = json::array();
    for (const auto& v : values) arr.push_back(term_to_json(v));
    props[property] = std::move(arr);
  }
  j["properties"] = std::move(props);
  return j;
}

ObjectRecord record_from_json(const json& j) {
  if (!j.is_object() || !j.contains("subject")) {
    throw std::invalid_argument("record document requires 'subject'");
  }
  ObjectRecord rec;
  rec.subject = j.at("subject").get<std::string>();
  if (rec.subject.empty()) throw std::invalid_argument("record subject must be non-empty");
  if (j.contains("classes")) {
    for (const auto& c : j.at("classes")) rec.add_class(c.get<std::string>());
  }
  if (j.contains("properties")) {
    for (const auto& [property, values] : j.at("properties").items()) {
      if (property == ns::kRdfType) {
        throw std::invalid_argument("rdf:type belongs in 'classes', not 'properties'");
      }
      for (const auto& v : values) rec.add(property, term_from_json(v));
    }
  }
  return rec;
}

std::string record_to_line(const ObjectRecord& record) {
  return record_to_json(record).dump();
}

ObjectRecord record_from_line(const std::string& line) {
  return record_from_json(json::parse(line));
}

json pattern_query_to_json(const PatternQuery& q) {
  json j;
  j["class"] = q.clazz;
  json filters = json::array();
  for (const auto& f : q.filters) {
    json jf;
    jf["property"] = f.property;
    jf["op"] = to_string(f.op);
    if (f.op != PropertyFilter::Op::Exists) jf["value"] = term_to_json(f.value);
    filters.push_back(std::move(jf));
  }
  j["filters"] = std::move(filters);
  j["offset"] = q.offset;
  if (q.limit) j["limit"] = *q.limit;
  return j;
}

PatternQuery pattern_query_from_json(const json& j) {
  PatternQuery q;
  q.clazz = j.at("class").get<std::string>();
  if (j.contains("filters")) {
    for (const auto& jf : j.at("filters")) {
      PropertyFilter f;
      f.property = jf.at("property").get<std::string>();
      f.op = op_from_string(jf.at("op").get<std::string>());
      if (jf.contains("value")) f.value = term_from_json(jf.at("value"));
      q.filters.push_back(std::move(f));
    }
  }
  if (j.contains("offset")) q.offset = j.at("offset").get<std::uint64_t>();
  if (j.contains("limit")) q.limit = j.at("limit").get<std::uint64_t>();
  return q;
}

}  // namespace graphmux::storage
