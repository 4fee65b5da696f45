#include "graphmux/sparql/parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <vector>

#include "graphmux/rdf/namespaces.hpp"

namespace graphmux::sparql {

namespace {

namespace ns = rdf::ns;

enum class TokKind {
  Keyword,   // upper-cased bare word
  Var,       // ?x / $x
  IriRef,    // <...>
  PName,     // pfx:local (raw, unexpanded)
  String,    // quoted literal body (unescaped)
  Integer,
  Decimal,
  Punct,     // single/double char operator
  End,
};

struct Token {
  TokKind kind;
  std::string text;   // keyword upper-cased; var name without sigil
  std::size_t line = 1;
  std::size_t col = 1;
};

const std::set<std::string> kUnsupportedKeywords = {
    "OPTIONAL", "UNION",  "ORDER",  "GROUP",  "HAVING", "MINUS",    "GRAPH",
    "SERVICE",  "BIND",   "VALUES", "DISTINCT", "REDUCED", "ASK",   "DESCRIBE",
    "INSERT",   "DELETE", "FROM",   "NAMED",  "EXISTS", "BASE",     "WITH"};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_ws();
    Token tok;
    tok.line = line_;
    tok.col = col_;
    if (eof()) {
      tok.kind = TokKind::End;
      return tok;
    }
    char c = peek();
    if (c == '?' || c == '$') {
      advance();
      tok.kind = TokKind::Var;
      tok.text = read_name();
      if (tok.text.empty()) fail("empty variable name", tok);
      return tok;
    }
    if (c == '<' && starts_iri_ref()) {
      advance();
      tok.kind = TokKind::IriRef;
      while (!eof() && peek() != '>') {
        char ch = advance();
        if (ch == ' ' || ch == '\n') fail("whitespace inside IRI", tok);
        tok.text.push_back(ch);
      }
      if (eof()) fail("unterminated IRI", tok);
      advance();  // '>'
      return tok;
    }
    if (c == '"') {
      advance();
      tok.kind = TokKind::String;
      while (true) {
        if (eof()) fail("unterminated string", tok);
        char ch = advance();
        if (ch == '"') break;
        if (ch == '\\') {
          if (eof()) fail("truncated escape", tok);
          char e = advance();
          switch (e) {
            case 'n': tok.text.push_back('\n'); break;
            case 't': tok.text.push_back('\t'); break;
            case 'r': tok.text.push_back('\r'); break;
            case '"': tok.text.push_back('"'); break;
            case '\\': tok.text.push_back('\\'); break;
            default: fail("invalid escape in string", tok);
          }
          continue;
        }
        tok.text.push_back(ch);
      }
      return tok;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      tok.kind = TokKind::Integer;
      while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) tok.text.push_back(advance());
      if (!eof() && peek() == '.') {
        // only a decimal if digits follow; otherwise the dot terminates
        if (pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
          tok.kind = TokKind::Decimal;
          tok.text.push_back(advance());
          while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) tok.text.push_back(advance());
        }
      }
      return tok;
    }
    // multi-char operators
    if (c == '&' || c == '|') {
      advance();
      if (eof() || peek() != c) fail(std::string("expected '") + c + c + "'", tok);
      advance();
      tok.kind = TokKind::Punct;
      tok.text = std::string(2, c);
      return tok;
    }
    if (c == '!' || c == '<' || c == '>' || c == '=') {
      advance();
      tok.kind = TokKind::Punct;
      tok.text.push_back(c);
      if (!eof() && peek() == '=') {
        tok.text.push_back(advance());
      }
      return tok;
    }
    if (c == '^') {
      advance();
      tok.kind = TokKind::Punct;
      tok.text = "^";
      if (!eof() && peek() == '^') {
        advance();
        tok.text = "^^";
      }
      return tok;
    }
    if (std::string("{}().,;*").find(c) != std::string::npos) {
      advance();
      tok.kind = TokKind::Punct;
      tok.text.push_back(c);
      return tok;
    }
    if (c == ':') {
      advance();
      tok.kind = TokKind::PName;
      tok.text = ":" + read_local();
      return tok;
    }
    // bare word or prefixed name
    std::string word = read_name();
    if (word.empty()) fail(std::string("unexpected character '") + c + "'", tok);
    if (!eof() && peek() == ':') {
      advance();
      tok.kind = TokKind::PName;
      tok.text = word + ":" + read_local();
      return tok;
    }
    if (word == "a") {
      tok.kind = TokKind::Keyword;
      tok.text = "a";
      return tok;
    }
    std::string upper = word;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    tok.kind = TokKind::Keyword;
    tok.text = upper;
    return tok;
  }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw QueryParseError(msg, at.line, at.col);
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  // '<' opens an IRI reference only if a '>' appears before any whitespace
  // or quote; otherwise it is the less-than operator.
  bool starts_iri_ref() const {
    for (std::size_t i = pos_ + 1; i < text_.size(); ++i) {
      char c = text_[i];
      if (c == '>') return true;
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '"' || c == '<') return false;
    }
    return false;
  }

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

  void skip_ws() {
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

  std::string read_name() {
    std::string out;
    while (!eof()) {
      char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
        out.push_back(advance());
      } else {
        break;
      }
    }
    return out;
  }

  std::string read_local() {
    std::string out;
    while (!eof()) {
      char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
        out.push_back(advance());
      } else if (c == '.') {
        // a dot inside a local name only if followed by a name char
        if (pos_ + 1 < text_.size() &&
            (std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])) || text_[pos_ + 1] == '_')) {
          out.push_back(advance());
        } else {
          break;
        }
      } else {
        break;
      }
    }
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, const std::map<std::string, std::string>& extra_prefixes)
      : lexer_(text) {
    prefixes_["rdf"] = ns::kRdf;
    prefixes_["rdfs"] = ns::kRdfs;
    prefixes_["xsd"] = ns::kXsd;
    prefixes_["sh"] = ns::kShacl;
    for (const auto& [p, iri] : extra_prefixes) prefixes_[p] = iri;
    shift();
  }

  QueryAst parse() {
    parse_prologue();
    if (is_keyword("SELECT")) {
      shift();
      parse_select();
    } else if (is_keyword("CONSTRUCT")) {
      shift();
      parse_construct();
    } else {
      check_unsupported();
      fail("expected SELECT or CONSTRUCT");
    }
    parse_where();
    parse_modifiers();
    if (cur_.kind != TokKind::End) {
      check_unsupported();
      fail("unexpected trailing input '" + cur_.text + "'");
    }
    validate();
    return std::move(ast_);
  }

 private:
  void parse_prologue() {
    while (is_keyword("PREFIX")) {
      shift();
      if (cur_.kind != TokKind::PName) fail("expected prefix name");
      std::string pname = cur_.text;
      auto colon = pname.find(':');
      std::string prefix = pname.substr(0, colon);
      if (colon + 1 != pname.size()) fail("prefix declaration must end with ':'");
      shift();
      if (cur_.kind != TokKind::IriRef) fail("expected IRI in prefix declaration");
      prefixes_[prefix] = cur_.text;
      shift();
    }
  }

  void parse_select() {
    ast_.form = QueryAst::Form::Select;
    if (cur_.kind == TokKind::Punct && cur_.text == "*") {
      ast_.wildcard = true;
      shift();
      return;
    }
    while (cur_.kind == TokKind::Var) {
      ast_.projection.push_back(cur_.text);
      shift();
    }
    if (ast_.projection.empty()) {
      check_unsupported();
      fail("expected '*' or variable list after SELECT");
    }
  }

  void parse_construct() {
    ast_.form = QueryAst::Form::Construct;
    expect_punct("{");
    ast_.construct_template = parse_triples_block(/*allow_filters=*/false, nullptr);
    expect_punct("}");
  }

  void parse_where() {
    if (is_keyword("WHERE")) shift();
    expect_punct("{");
    ast_.patterns = parse_triples_block(/*allow_filters=*/true, &ast_.filters);
    expect_punct("}");
  }

  std::vector<TriplePattern> parse_triples_block(bool allow_filters,
                                                 std::vector<FilterExpr>* filters) {
    std::vector<TriplePattern> patterns;
    while (true) {
      if (cur_.kind == TokKind::Punct && cur_.text == "}") break;
      if (cur_.kind == TokKind::End) break;
      if (is_keyword("FILTER")) {
        if (!allow_filters) fail("FILTER is not allowed in a CONSTRUCT template");
        shift();
        filters->push_back(parse_filter_clause());
        // an optional '.' may follow a filter
        if (cur_.kind == TokKind::Punct && cur_.text == ".") shift();
        continue;
      }
      check_unsupported();
      TermOrVar subject = parse_term_or_var(/*position=*/0);
      while (true) {
        TermOrVar predicate = parse_verb();
        while (true) {
          TermOrVar object = parse_term_or_var(/*position=*/2);
          patterns.push_back({subject, predicate, object});
          if (cur_.kind == TokKind::Punct && cur_.text == ",") {
            shift();
            continue;
          }
          break;
        }
        if (cur_.kind == TokKind::Punct && cur_.text == ";") {
          shift();
          if (cur_.kind == TokKind::Punct && (cur_.text == "." || cur_.text == "}")) break;
          continue;
        }
        break;
      }
      if (cur_.kind == TokKind::Punct && cur_.text == ".") shift();
    }
    return patterns;
  }

  TermOrVar parse_verb() {
    if (is_keyword("a")) {
      shift();
      return TermOrVar::term(rdf::Term::iri(ns::kRdfType));
    }
    if (cur_.kind == TokKind::Punct && (cur_.text == "^" || cur_.text == "(")) {
      throw UnsupportedFeatureError("property paths", cur_.line, cur_.col);
    }
    TermOrVar v = parse_term_or_var(/*position=*/1);
    if (cur_.kind == TokKind::Punct && (cur_.text == "*" || cur_.text == "|")) {
      throw UnsupportedFeatureError("property paths", cur_.line, cur_.col);
    }
    return v;
  }

  TermOrVar parse_term_or_var(int position) {
    switch (cur_.kind) {
      case TokKind::Var: {
        std::string name = cur_.text;
        shift();
        return TermOrVar::var(name);
      }
      case TokKind::IriRef: {
        rdf::Term t = rdf::Term::iri(resolve_iri(cur_.text));
        shift();
        return TermOrVar::term(t);
      }
      case TokKind::PName: {
        rdf::Term t = rdf::Term::iri(expand_pname(cur_.text));
        shift();
        return TermOrVar::term(t);
      }
      case TokKind::String:
        if (position != 2) fail("literals are not allowed in subject or predicate position");
        return TermOrVar::term(parse_literal());
      case TokKind::Integer:
      case TokKind::Decimal:
        if (position != 2) fail("literals are not allowed in subject or predicate position");
        return TermOrVar::term(parse_number());
      case TokKind::Keyword:
        check_unsupported();
        if (cur_.text == "TRUE" || cur_.text == "FALSE") {
          rdf::Term t = rdf::Term::literal(cur_.text == "TRUE" ? "true" : "false", ns::kXsdBoolean);
          shift();
          return TermOrVar::term(t);
        }
        fail("unexpected keyword '" + cur_.text + "' in pattern");
      default:
        fail("expected a term or variable");
    }
  }

  rdf::Term parse_literal() {
    std::string lex = cur_.text;
    shift();
    if (cur_.kind == TokKind::Punct && cur_.text == "^^") {
      shift();
      std::string dt;
      if (cur_.kind == TokKind::IriRef) {
        dt = resolve_iri(cur_.text);
      } else if (cur_.kind == TokKind::PName) {
        dt = expand_pname(cur_.text);
      } else {
        fail("expected datatype IRI after '^^'");
      }
      shift();
      return rdf::Term::literal(lex, dt);
    }
    // language tags arrive as '@'? The lexer has no '@' token; accept none.
    return rdf::Term::literal(lex);
  }

  rdf::Term parse_number() {
    std::string lex = cur_.text;
    bool decimal = cur_.kind == TokKind::Decimal;
    shift();
    return rdf::Term::literal(lex, decimal ? ns::kXsdDecimal : ns::kXsdInteger);
  }

  FilterExpr parse_filter_clause() {
    // FILTER(expr) or FILTER CONTAINS(...): both appear in the wild
    if (cur_.kind == TokKind::Punct && cur_.text == "(") {
      shift();
      FilterExpr e = parse_or();
      expect_punct(")");
      return e;
    }
    return parse_unary();
  }

  FilterExpr parse_or() {
    FilterExpr left = parse_and();
    while (cur_.kind == TokKind::Punct && cur_.text == "||") {
      shift();
      FilterExpr right = parse_and();
      left = FilterExpr::node(FilterExpr::Kind::Or, {std::move(left), std::move(right)});
    }
    return left;
  }

  FilterExpr parse_and() {
    FilterExpr left = parse_relational();
    while (cur_.kind == TokKind::Punct && cur_.text == "&&") {
      shift();
      FilterExpr right = parse_relational();
      left = FilterExpr::node(FilterExpr::Kind::And, {std::move(left), std::move(right)});
    }
    return left;
  }

  FilterExpr parse_relational() {
    FilterExpr left = parse_unary();
    if (cur_.kind == TokKind::Punct) {
      FilterExpr::Kind kind;
      if (cur_.text == "=") kind = FilterExpr::Kind::Eq;
      else if (cur_.text == "!=") kind = FilterExpr::Kind::Ne;
      else if (cur_.text == "<") kind = FilterExpr::Kind::Lt;
      else if (cur_.text == ">") kind = FilterExpr::Kind::Gt;
      else if (cur_.text == "<=") kind = FilterExpr::Kind::Le;
      else if (cur_.text == ">=") kind = FilterExpr::Kind::Ge;
      else return left;
      shift();
      FilterExpr right = parse_unary();
      return FilterExpr::node(kind, {std::move(left), std::move(right)});
    }
    return left;
  }

  FilterExpr parse_unary() {
    if (cur_.kind == TokKind::Punct && cur_.text == "!") {
      shift();
      return FilterExpr::node(FilterExpr::Kind::Not, {parse_unary()});
    }
    if (cur_.kind == TokKind::Punct && cur_.text == "(") {
      shift();
      FilterExpr e = parse_or();
      expect_punct(")");
      return e;
    }
    if (cur_.kind == TokKind::Keyword) {
      if (cur_.text == "CONTAINS") {
        shift();
        expect_punct("(");
        FilterExpr a = parse_or();
        expect_punct(",");
        FilterExpr b = parse_or();
        expect_punct(")");
        return FilterExpr::node(FilterExpr::Kind::Contains, {std::move(a), std::move(b)});
      }
      if (cur_.text == "STR") {
        shift();
        expect_punct("(");
        FilterExpr a = parse_or();
        expect_punct(")");
        return FilterExpr::node(FilterExpr::Kind::Str, {std::move(a)});
      }
      if (cur_.text == "TRUE" || cur_.text == "FALSE") {
        FilterExpr e = FilterExpr::constant_term(
            rdf::Term::literal(cur_.text == "TRUE" ? "true" : "false", ns::kXsdBoolean));
        shift();
        return e;
      }
      check_unsupported();
      throw UnsupportedFeatureError("function " + cur_.text, cur_.line, cur_.col);
    }
    if (cur_.kind == TokKind::Var) {
      FilterExpr e = FilterExpr::variable(cur_.text);
      shift();
      return e;
    }
    if (cur_.kind == TokKind::String) return FilterExpr::constant_term(parse_literal());
    if (cur_.kind == TokKind::Integer || cur_.kind == TokKind::Decimal) {
      return FilterExpr::constant_term(parse_number());
    }
    if (cur_.kind == TokKind::IriRef) {
      FilterExpr e = FilterExpr::constant_term(rdf::Term::iri(resolve_iri(cur_.text)));
      shift();
      return e;
    }
    if (cur_.kind == TokKind::PName) {
      FilterExpr e = FilterExpr::constant_term(rdf::Term::iri(expand_pname(cur_.text)));
      shift();
      return e;
    }
    fail("expected a filter expression");
  }

  void parse_modifiers() {
    bool saw_offset = false;
    bool saw_limit = false;
    while (true) {
      if (is_keyword("OFFSET") && !saw_offset) {
        shift();
        ast_.offset = parse_nonnegative_int();
        saw_offset = true;
      } else if (is_keyword("LIMIT") && !saw_limit) {
        shift();
        std::uint64_t v = parse_nonnegative_int();
        if (v == 0) fail("LIMIT must be positive");
        ast_.limit = v;
        saw_limit = true;
      } else {
        break;
      }
    }
  }

  std::uint64_t parse_nonnegative_int() {
    if (cur_.kind != TokKind::Integer) fail("expected a non-negative integer");
    std::uint64_t v = std::stoull(cur_.text);
    shift();
    return v;
  }

  void validate() {
    auto pattern_vars = ast_.pattern_variables();
    auto known = [&](const std::string& v) {
      return std::find(pattern_vars.begin(), pattern_vars.end(), v) != pattern_vars.end();
    };
    for (const auto& v : ast_.projection) {
      if (!known(v)) fail("projected variable ?" + v + " does not appear in the patterns");
    }
    std::vector<std::string> fvars;
    for (const auto& f : ast_.filters) collect_filter_vars(f, fvars);
    for (const auto& v : fvars) {
      if (!known(v)) fail("filter variable ?" + v + " does not appear in the patterns");
    }
    std::vector<std::string> tvars;
    for (const auto& p : ast_.construct_template) {
      for (const auto* tv : {&p.subject, &p.predicate, &p.object}) {
        if (tv->is_var() && !known(tv->var_name())) {
          fail("template variable ?" + tv->var_name() + " does not appear in the patterns");
        }
      }
    }
    (void)tvars;
  }

  std::string resolve_iri(const std::string& iri) {
    if (iri.empty()) fail("empty IRI");
    return iri;
  }

  std::string expand_pname(const std::string& pname) {
    auto colon = pname.find(':');
    std::string prefix = pname.substr(0, colon);
    std::string local = pname.substr(colon + 1);
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail("unknown prefix '" + prefix + ":'");
    return it->second + local;
  }

  bool is_keyword(const std::string& kw) const {
    return cur_.kind == TokKind::Keyword && cur_.text == kw;
  }

  void check_unsupported() {
    if (cur_.kind == TokKind::Keyword && kUnsupportedKeywords.count(cur_.text)) {
      std::string feature = cur_.text;
      if (feature == "ORDER") feature = "ORDER BY";
      if (feature == "GROUP") feature = "GROUP BY";
      throw UnsupportedFeatureError(feature, cur_.line, cur_.col);
    }
  }

  void expect_punct(const std::string& p) {
    if (cur_.kind != TokKind::Punct || cur_.text != p) {
      check_unsupported();
      fail("expected '" + p + "'");
    }
    shift();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw QueryParseError(msg, cur_.line, cur_.col);
  }

  void shift() { cur_ = lexer_.next(); }

  Lexer lexer_;
  Token cur_;
  std::map<std::string, std::string, std::less<>> prefixes_;
  QueryAst ast_;
};

}  // namespace

QueryAst parse_query(std::string_view text, const std::map<std::string, std::string>& extra_prefixes) {
  Parser parser(text, extra_prefixes);
  return parser.parse();
}

}  // namespace graphmux::sparql
