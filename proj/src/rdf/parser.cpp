#include "graphmux/rdf/parser.hpp"

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>

#include "graphmux/rdf/namespaces.hpp"

namespace graphmux::rdf {

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp <= 0x7F) {
    out.push_back(static_cast<char>(cp));
  } else if (cp <= 0x7FF) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp <= 0xFFFF) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool has_scheme(const std::string& iri) {
  for (std::size_t i = 0; i < iri.size(); ++i) {
    char c = iri[i];
    if (c == ':') return i > 0;
    bool scheme_char = std::isalpha(static_cast<unsigned char>(c)) ||
                       (i > 0 && (std::isdigit(static_cast<unsigned char>(c)) || c == '+' ||
                                  c == '-' || c == '.'));
    if (!scheme_char) return false;
  }
  return false;
}

bool is_local_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' ||
         c == '%';
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return eof() ? '\0' : text_[pos_]; }
  char peek2() const { return pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0'; }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_ws_and_comments() {
    while (!eof()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '#') {
        while (!eof() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class TurtleParser {
 public:
  TurtleParser(std::string_view text, bool ntriples) : cur_(text), ntriples_(ntriples) {}

  TripleSet parse() {
    while (true) {
      cur_.skip_ws_and_comments();
      if (cur_.eof()) break;
      if (!ntriples_ && cur_.peek() == '@') {
        parse_directive();
      } else {
        parse_statement();
      }
    }
    return std::move(result_);
  }

 private:
  void parse_directive() {
    std::string word = read_word();
    if (word == "@prefix") {
      cur_.skip_ws_and_comments();
      std::string prefix = read_prefix_label();
      cur_.skip_ws_and_comments();
      std::string iri = read_iri_ref();
      prefixes_[prefix] = iri;
      result_.add_prefix(prefix, iri);
      expect_dot();
    } else if (word == "@base") {
      cur_.skip_ws_and_comments();
      base_ = read_iri_ref();
      expect_dot();
    } else {
      cur_.fail("unknown directive '" + word + "'");
    }
  }

  void parse_statement() {
    Term subject = parse_subject();
    while (true) {
      cur_.skip_ws_and_comments();
      Term predicate = parse_predicate();
      while (true) {
        cur_.skip_ws_and_comments();
        Term object = parse_object();
        result_.insert(Triple(subject, predicate, object));
        cur_.skip_ws_and_comments();
        if (!ntriples_ && cur_.peek() == ',') {
          cur_.advance();
          continue;
        }
        break;
      }
      if (!ntriples_ && cur_.peek() == ';') {
        cur_.advance();
        cur_.skip_ws_and_comments();
        // trailing ';' before '.' is legal
        if (cur_.peek() == '.') break;
        continue;
      }
      break;
    }
    expect_dot();
  }

  Term parse_subject() {
    char c = cur_.peek();
    if (c == '_') return parse_blank();
    return Term::iri(parse_iri());
  }

  Term parse_predicate() {
    if (!ntriples_ && cur_.peek() == 'a') {
      // `a` keyword only if followed by a separator
      char n = cur_.peek2();
      if (n == ' ' || n == '\t' || n == '<' || n == '\r' || n == '\n') {
        cur_.advance();
        return Term::iri(ns::kRdfType);
      }
    }
    return Term::iri(parse_iri());
  }

  Term parse_object() {
    char c = cur_.peek();
    if (c == '"') return parse_literal();
    if (c == '_') return parse_blank();
    if (c == '[' || c == '(') cur_.fail("collections and blank-node property lists are not supported");
    return Term::iri(parse_iri());
  }

  Term parse_blank() {
    expect('_');
    expect(':');
    std::string label;
    while (!cur_.eof() && (std::isalnum(static_cast<unsigned char>(cur_.peek())) ||
                           cur_.peek() == '_' || cur_.peek() == '-')) {
      label.push_back(cur_.advance());
    }
    if (label.empty()) cur_.fail("empty blank node label");
    return Term::blank(label);
  }

  Term parse_literal() {
    std::string lex = read_quoted_string();
    if (!cur_.eof() && cur_.peek() == '@') {
      cur_.advance();
      std::string lang;
      while (!cur_.eof() && (std::isalnum(static_cast<unsigned char>(cur_.peek())) || cur_.peek() == '-')) {
        lang.push_back(cur_.advance());
      }
      if (lang.empty()) cur_.fail("empty language tag");
      return Term::lang_literal(lex, lang);
    }
    if (!cur_.eof() && cur_.peek() == '^') {
      cur_.advance();
      expect('^');
      std::string dt = parse_iri();
      return Term::literal(lex, dt);
    }
    return Term::literal(lex);
  }

  std::string parse_iri() {
    char c = cur_.peek();
    if (c == '<') return read_iri_ref();
    if (ntriples_) cur_.fail("N-Triples requires full IRIs in angle brackets");
    return read_prefixed_name();
  }

  std::string read_iri_ref() {
    expect('<');
    std::string iri;
    while (true) {
      if (cur_.eof()) cur_.fail("unterminated IRI");
      char c = cur_.advance();
      if (c == '>') break;
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') cur_.fail("whitespace inside IRI");
      if (c == '\\') {
        if (cur_.eof()) cur_.fail("truncated escape in IRI");
        char e = cur_.advance();
        if (e == 'u') {
          append_utf8(iri, read_hex(4));
        } else if (e == 'U') {
          append_utf8(iri, read_hex(8));
        } else {
          cur_.fail("invalid escape in IRI");
        }
        continue;
      }
      iri.push_back(c);
    }
    if (iri.empty()) cur_.fail("empty IRI");
    if (has_scheme(iri)) return iri;
    if (base_.empty()) cur_.fail("relative IRI <" + iri + "> with no base");
    // simple join against @base; full RFC 3986 resolution is out of subset
    if (iri[0] == '#' || base_.back() == '/' || base_.back() == '#') return base_ + iri;
    return base_ + "/" + iri;
  }

  std::string read_prefixed_name() {
    std::string prefix;
    while (!cur_.eof() && cur_.peek() != ':' &&
           (std::isalnum(static_cast<unsigned char>(cur_.peek())) || cur_.peek() == '_' ||
            cur_.peek() == '-' || cur_.peek() == '.')) {
      prefix.push_back(cur_.advance());
    }
    if (cur_.eof() || cur_.peek() != ':') {
      cur_.fail(prefix.empty() ? "expected an IRI or prefixed name"
                               : "expected ':' after prefix '" + prefix + "'");
    }
    cur_.advance();
    std::string local;
    while (!cur_.eof() && is_local_name_char(cur_.peek())) {
      local.push_back(cur_.advance());
    }
    // a trailing dot belongs to the statement, not the name
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      pending_dot_ = true;
    }
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) cur_.fail("unknown prefix '" + prefix + ":'");
    return it->second + local;
  }

  std::string read_prefix_label() {
    std::string prefix;
    while (!cur_.eof() && cur_.peek() != ':') {
      char c = cur_.peek();
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.') {
        cur_.fail("invalid character in prefix label");
      }
      prefix.push_back(cur_.advance());
    }
    expect(':');
    return prefix;
  }

  std::string read_quoted_string() {
    expect('"');
    std::string out;
    while (true) {
      if (cur_.eof()) cur_.fail("unterminated string literal");
      char c = cur_.advance();
      if (c == '"') break;
      if (c == '\n') cur_.fail("newline inside string literal");
      if (c == '\\') {
        if (cur_.eof()) cur_.fail("truncated escape");
        char e = cur_.advance();
        switch (e) {
          case 't': out.push_back('\t'); break;
          case 'b': out.push_back('\b'); break;
          case 'n': out.push_back('\n'); break;
          case 'r': out.push_back('\r'); break;
          case 'f': out.push_back('\f'); break;
          case '"': out.push_back('"'); break;
          case '\'': out.push_back('\''); break;
          case '\\': out.push_back('\\'); break;
          case 'u': append_utf8(out, read_hex(4)); break;
          case 'U': append_utf8(out, read_hex(8)); break;
          default: cur_.fail(std::string("invalid escape '\\") + e + "'");
        }
        continue;
      }
      out.push_back(c);
    }
    return out;
  }

  std::uint32_t read_hex(int digits) {
    std::uint32_t cp = 0;
    for (int i = 0; i < digits; ++i) {
      if (cur_.eof()) cur_.fail("truncated unicode escape");
      char c = cur_.advance();
      cp <<= 4;
      if (c >= '0' && c <= '9') cp |= static_cast<std::uint32_t>(c - '0');
      else if (c >= 'a' && c <= 'f') cp |= static_cast<std::uint32_t>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') cp |= static_cast<std::uint32_t>(c - 'A' + 10);
      else cur_.fail("invalid hex digit in unicode escape");
    }
    return cp;
  }

  std::string read_word() {
    std::string w;
    while (!cur_.eof() && !std::isspace(static_cast<unsigned char>(cur_.peek()))) {
      w.push_back(cur_.advance());
    }
    return w;
  }

  void expect(char c) {
    if (cur_.eof() || cur_.peek() != c) {
      cur_.fail(std::string("expected '") + c + "'");
    }
    cur_.advance();
  }

  void expect_dot() {
    if (pending_dot_) {
      pending_dot_ = false;
      return;
    }
    cur_.skip_ws_and_comments();
    expect('.');
  }

  Cursor cur_;
  bool ntriples_;
  std::map<std::string, std::string> prefixes_;
  std::string base_;
  bool pending_dot_ = false;
  TripleSet result_;
};

}  // namespace

TripleSet parse_document(std::string_view text, DocumentFormat format) {
  TurtleParser parser(text, format == DocumentFormat::NTriples);
  return parser.parse();
}

}  // namespace graphmux::rdf
