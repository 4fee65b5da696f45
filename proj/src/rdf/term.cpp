#include "graphmux/rdf/term.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "graphmux/rdf/namespaces.hpp"

namespace graphmux::rdf {

namespace {

bool contains_whitespace(const std::string& s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

}  // namespace

Term Term::iri(std::string value) {
  if (value.empty()) {
    throw std::invalid_argument("IRI must be non-empty");
  }
  if (contains_whitespace(value)) {
    throw std::invalid_argument("IRI must not contain whitespace: " + value);
  }
  return Term(TermKind::Iri, std::move(value), "", "");
}

Term Term::blank(std::string label) {
  if (label.empty()) {
    throw std::invalid_argument("blank node label must be non-empty");
  }
  return Term(TermKind::Blank, std::move(label), "", "");
}

Term Term::literal(std::string lexical) {
  return Term(TermKind::Literal, std::move(lexical), std::string(ns::kXsdString), "");
}

Term Term::literal(std::string lexical, std::string datatype) {
  if (datatype.empty()) {
    datatype = ns::kXsdString;
  }
  return Term(TermKind::Literal, std::move(lexical), std::move(datatype), "");
}

Term Term::lang_literal(std::string lexical, std::string lang) {
  if (lang.empty()) {
    throw std::invalid_argument("language tag must be non-empty");
  }
  // lang tags only combine with the string datatype
  return Term(TermKind::Literal, std::move(lexical), std::string(ns::kXsdString), std::move(lang));
}

bool Term::is_string_literal() const {
  return is_literal() && datatype_ == ns::kXsdString;
}

std::string Term::to_string() const {
  switch (kind_) {
    case TermKind::Iri:
      return "<" + value_ + ">";
    case TermKind::Blank:
      return "_:" + value_;
    case TermKind::Literal:
      if (!lang_.empty()) return "\"" + value_ + "\"@" + lang_;
      if (datatype_ != ns::kXsdString) return "\"" + value_ + "\"^^<" + datatype_ + ">";
      return "\"" + value_ + "\"";
  }
  return "";
}

int compare_terms(const Term& a, const Term& b) {
  if (a.kind() != b.kind()) {
    return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  }
  if (int c = a.value().compare(b.value()); c != 0) return c < 0 ? -1 : 1;
  if (int c = a.datatype().compare(b.datatype()); c != 0) return c < 0 ? -1 : 1;
  if (int c = a.lang().compare(b.lang()); c != 0) return c < 0 ? -1 : 1;
  return 0;
}

}  // namespace graphmux::rdf
