#pragma once

#include <string>
#include <string_view>

namespace graphmux::rdf::ns {

inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kShacl = "http://www.w3.org/ns/shacl#";

inline std::string rdf(std::string_view local) { return std::string(kRdf) + std::string(local); }
inline std::string rdfs(std::string_view local) { return std::string(kRdfs) + std::string(local); }
inline std::string xsd(std::string_view local) { return std::string(kXsd) + std::string(local); }
inline std::string sh(std::string_view local) { return std::string(kShacl) + std::string(local); }

inline const std::string kRdfType = rdf("type");
inline const std::string kRdfsLabel = rdfs("label");
inline const std::string kRdfsClass = rdfs("Class");
inline const std::string kRdfsSubClassOf = rdfs("subClassOf");
inline const std::string kRdfsRange = rdfs("range");
inline const std::string kOwlClass = std::string(kOwl) + "Class";
inline const std::string kXsdString = xsd("string");
inline const std::string kXsdDate = xsd("date");
inline const std::string kXsdDateTime = xsd("dateTime");
inline const std::string kXsdInteger = xsd("integer");
inline const std::string kXsdDecimal = xsd("decimal");
inline const std::string kXsdDouble = xsd("double");
inline const std::string kXsdBoolean = xsd("boolean");

}  // namespace graphmux::rdf::ns
