#include "graphmux/sparql/ast.hpp"

#include <algorithm>
#include <sstream>

#include "graphmux/rdf/writer.hpp"

namespace graphmux::sparql {

void collect_filter_vars(const FilterExpr& e, std::vector<std::string>& out) {
  if (e.kind == FilterExpr::Kind::Var) {
    if (std::find(out.begin(), out.end(), e.var) == out.end()) out.push_back(e.var);
    return;
  }
  for (const auto& a : e.args) collect_filter_vars(a, out);
}

std::vector<std::string> QueryAst::pattern_variables() const {
  std::vector<std::string> vars;
  auto add = [&](const TermOrVar& tv) {
    if (tv.is_var() && std::find(vars.begin(), vars.end(), tv.var_name()) == vars.end()) {
      vars.push_back(tv.var_name());
    }
  };
  for (const auto& p : patterns) {
    add(p.subject);
    add(p.predicate);
    add(p.object);
  }
  return vars;
}

std::vector<std::string> QueryAst::projected_variables() const {
  return wildcard ? pattern_variables() : projection;
}

const rdf::Term* Binding::get(const std::string& var) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), var,
                             [](const auto& e, const std::string& v) { return e.first < v; });
  if (it != entries_.end() && it->first == var) return &it->second;
  return nullptr;
}

bool Binding::bind(const std::string& var, const rdf::Term& t) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), var,
                             [](const auto& e, const std::string& v) { return e.first < v; });
  if (it != entries_.end() && it->first == var) return it->second == t;
  entries_.insert(it, {var, t});
  return true;
}

bool RowLess::operator()(const std::vector<rdf::Term>& a, const std::vector<rdf::Term>& b) const {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = rdf::compare_terms(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

void sort_rows(std::vector<std::vector<rdf::Term>>& rows) {
  std::sort(rows.begin(), rows.end(), RowLess{});
}

std::vector<rdf::Triple> instantiate_template(const std::vector<TriplePattern>& tmpl,
                                              const Binding& binding) {
  std::vector<rdf::Triple> out;
  auto resolve = [&](const TermOrVar& tv) -> const rdf::Term* {
    if (!tv.is_var()) return &tv.term();
    return binding.get(tv.var_name());
  };
  for (const auto& p : tmpl) {
    const rdf::Term* s = resolve(p.subject);
    const rdf::Term* pr = resolve(p.predicate);
    const rdf::Term* o = resolve(p.object);
    if (!s || !pr || !o) continue;
    if (s->is_literal() || !pr->is_iri()) continue;
    out.emplace_back(*s, *pr, *o);
  }
  return out;
}

namespace {

void print_term_or_var(std::ostringstream& out, const TermOrVar& tv) {
  if (tv.is_var()) {
    out << '?' << tv.var_name();
  } else {
    out << rdf::term_to_ntriples(tv.term());
  }
}

void print_patterns(std::ostringstream& out, const std::vector<TriplePattern>& patterns) {
  for (const auto& p : patterns) {
    out << ' ';
    print_term_or_var(out, p.subject);
    out << ' ';
    print_term_or_var(out, p.predicate);
    out << ' ';
    print_term_or_var(out, p.object);
    out << " .";
  }
}

void print_filter(std::ostringstream& out, const FilterExpr& e) {
  using Kind = FilterExpr::Kind;
  switch (e.kind) {
    case Kind::Var:
      out << '?' << e.var;
      return;
    case Kind::Const:
      out << rdf::term_to_ntriples(e.constant);
      return;
    case Kind::Str:
      out << "STR(";
      print_filter(out, e.args[0]);
      out << ')';
      return;
    case Kind::Contains:
      out << "CONTAINS(";
      print_filter(out, e.args[0]);
      out << ", ";
      print_filter(out, e.args[1]);
      out << ')';
      return;
    case Kind::Not:
      out << "(!";
      print_filter(out, e.args[0]);
      out << ')';
      return;
    default:
      break;
  }
  const char* op = "";
  switch (e.kind) {
    case Kind::And: op = " && "; break;
    case Kind::Or: op = " || "; break;
    case Kind::Eq: op = " = "; break;
    case Kind::Ne: op = " != "; break;
    case Kind::Lt: op = " < "; break;
    case Kind::Gt: op = " > "; break;
    case Kind::Le: op = " <= "; break;
    case Kind::Ge: op = " >= "; break;
    default: break;
  }
  out << '(';
  for (std::size_t i = 0; i < e.args.size(); ++i) {
    if (i > 0) out << op;
    print_filter(out, e.args[i]);
  }
  out << ')';
}

}  // namespace

std::string print_query(const QueryAst& ast) {
  std::ostringstream out;
  if (ast.form == QueryAst::Form::Select) {
    out << "SELECT";
    if (ast.wildcard) {
      out << " *";
    } else {
      for (const auto& v : ast.projection) out << " ?" << v;
    }
  } else {
    out << "CONSTRUCT {";
    print_patterns(out, ast.construct_template);
    out << " }";
  }
  out << " WHERE {";
  print_patterns(out, ast.patterns);
  for (const auto& f : ast.filters) {
    out << " FILTER(";
    print_filter(out, f);
    out << ')';
  }
  out << " }";
  if (ast.offset > 0) out << " OFFSET " << ast.offset;
  if (ast.limit) out << " LIMIT " << *ast.limit;
  return out.str();
}

}  // namespace graphmux::sparql
