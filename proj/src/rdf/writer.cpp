#include "graphmux/rdf/writer.hpp"

#include <cctype>
#include <sstream>

#include "graphmux/rdf/namespaces.hpp"

namespace graphmux::rdf {

namespace {

void escape_string_into(std::ostream& out, const std::string& s) {
  for (unsigned char c : s) {
    switch (c) {
      case '"': out << "\\\""; break;
      case '\\': out << "\\\\"; break;
      case '\n': out << "\\n"; break;
      case '\r': out << "\\r"; break;
      case '\t': out << "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04X", c);
          out << buf;
        } else {
          out << static_cast<char>(c);
        }
    }
  }
}

void write_term_nt(std::ostream& out, const Term& t) {
  switch (t.kind()) {
    case TermKind::Iri:
      out << '<' << t.value() << '>';
      break;
    case TermKind::Blank:
      out << "_:" << t.value();
      break;
    case TermKind::Literal:
      out << '"';
      escape_string_into(out, t.value());
      out << '"';
      if (!t.lang().empty()) {
        out << '@' << t.lang();
      } else if (t.datatype() != ns::kXsdString) {
        out << "^^<" << t.datatype() << '>';
      }
      break;
  }
}

bool local_name_safe(const std::string& local) {
  if (local.empty()) return true;
  for (char c : local) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  }
  return true;
}

// Longest declared prefix whose expansion is a proper prefix with a safe remainder.
std::string compress_iri(const std::string& iri, const std::map<std::string, std::string>& prefixes) {
  const std::string* best_prefix = nullptr;
  const std::string* best_iri = nullptr;
  for (const auto& [prefix, piri] : prefixes) {
    if (iri.size() < piri.size() || iri.compare(0, piri.size(), piri) != 0) continue;
    if (!local_name_safe(iri.substr(piri.size()))) continue;
    if (!best_iri || piri.size() > best_iri->size()) {
      best_prefix = &prefix;
      best_iri = &piri;
    }
  }
  if (!best_iri) return "<" + iri + ">";
  return *best_prefix + ":" + iri.substr(best_iri->size());
}

void write_term_turtle(std::ostream& out, const Term& t,
                       const std::map<std::string, std::string>& prefixes) {
  if (t.is_iri()) {
    out << compress_iri(t.value(), prefixes);
    return;
  }
  if (t.is_literal() && t.lang().empty() && t.datatype() != ns::kXsdString) {
    out << '"';
    escape_string_into(out, t.value());
    out << "\"^^" << compress_iri(t.datatype(), prefixes);
    return;
  }
  write_term_nt(out, t);
}

std::string to_ntriples(const TripleSet& data) {
  std::ostringstream out;
  for (const auto& t : data) {
    write_term_nt(out, t.subject());
    out << ' ';
    write_term_nt(out, t.predicate());
    out << ' ';
    write_term_nt(out, t.object());
    out << " .\n";
  }
  return out.str();
}

std::string to_turtle(const TripleSet& data) {
  std::ostringstream out;
  const auto& prefixes = data.prefixes();
  for (const auto& [prefix, iri] : prefixes) {
    out << "@prefix " << prefix << ": <" << iri << "> .\n";
  }
  if (!prefixes.empty() && !data.empty()) out << '\n';

  // Triples arrive in canonical order, so equal subjects/predicates are adjacent.
  const Term* prev_subject = nullptr;
  const Term* prev_predicate = nullptr;
  for (const auto& t : data) {
    if (prev_subject && t.subject() == *prev_subject) {
      if (prev_predicate && t.predicate() == *prev_predicate) {
        out << " ,\n    ";
      } else {
        out << " ;\n  ";
        if (t.predicate().value() == ns::kRdfType) {
          out << "a";
        } else {
          write_term_turtle(out, t.predicate(), prefixes);
        }
        out << ' ';
      }
    } else {
      if (prev_subject) out << " .\n";
      write_term_turtle(out, t.subject(), prefixes);
      out << ' ';
      if (t.predicate().value() == ns::kRdfType) {
        out << "a";
      } else {
        write_term_turtle(out, t.predicate(), prefixes);
      }
      out << ' ';
    }
    write_term_turtle(out, t.object(), prefixes);
    prev_subject = &t.subject();
    prev_predicate = &t.predicate();
  }
  if (prev_subject) out << " .\n";
  return out.str();
}

}  // namespace

std::string term_to_ntriples(const Term& t) {
  std::ostringstream out;
  write_term_nt(out, t);
  return out.str();
}

std::string serialize(const TripleSet& data, DocumentFormat format) {
  return format == DocumentFormat::NTriples ? to_ntriples(data) : to_turtle(data);
}

}  // namespace graphmux::rdf
