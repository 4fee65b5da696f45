#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace graphmux::rdf {

enum class TermKind : std::uint8_t { Iri = 0, Blank = 1, Literal = 2 };

/// An RDF term: IRI, blank node, or literal. Immutable after construction.
///
/// Literals always carry a datatype IRI (xsd:string when none is given).
/// A language tag is only allowed together with the string datatype.
class Term {
 public:
  Term() : kind_(TermKind::Iri), value_("urn:empty") {}

  static Term iri(std::string value);
  static Term blank(std::string label);
  static Term literal(std::string lexical);
  static Term literal(std::string lexical, std::string datatype);
  static Term lang_literal(std::string lexical, std::string lang);

  TermKind kind() const { return kind_; }
  bool is_iri() const { return kind_ == TermKind::Iri; }
  bool is_blank() const { return kind_ == TermKind::Blank; }
  bool is_literal() const { return kind_ == TermKind::Literal; }

  /// IRI string, blank label, or literal lexical form depending on kind.
  const std::string& value() const { return value_; }
  /// Datatype IRI; meaningful for literals only.
  const std::string& datatype() const { return datatype_; }
  /// Language tag; empty unless this is a language-tagged string.
  const std::string& lang() const { return lang_; }

  bool is_string_literal() const;
  bool is_typed(std::string_view datatype) const {
    return is_literal() && datatype_ == datatype;
  }

  bool operator==(const Term& other) const {
    return kind_ == other.kind_ && value_ == other.value_ &&
           datatype_ == other.datatype_ && lang_ == other.lang_;
  }
  bool operator!=(const Term& other) const { return !(*this == other); }

  /// Debug/N-Triples-like rendering: <iri>, _:label, "lex"^^<dt>.
  std::string to_string() const;

 private:
  Term(TermKind kind, std::string value, std::string datatype, std::string lang)
      : kind_(kind), value_(std::move(value)), datatype_(std::move(datatype)), lang_(std::move(lang)) {}

  TermKind kind_;
  std::string value_;
  std::string datatype_;
  std::string lang_;
};

/// Total order over terms: iri < blank < literal, then (value, datatype, lang)
/// lexicographically. Stable across processes for identical inputs.
int compare_terms(const Term& a, const Term& b);

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return compare_terms(a, b) < 0; }
};

}  // namespace graphmux::rdf
