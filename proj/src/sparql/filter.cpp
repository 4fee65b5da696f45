#include "graphmux/sparql/filter.hpp"

#include <optional>

#include "graphmux/rdf/datatypes.hpp"
#include "graphmux/rdf/namespaces.hpp"

namespace graphmux::sparql {

namespace {

namespace ns = rdf::ns;

// Term-valued sub-expressions; nullopt is the error value.
std::optional<rdf::Term> eval_term(const FilterExpr& e, const Binding& binding) {
  using Kind = FilterExpr::Kind;
  switch (e.kind) {
    case Kind::Const:
      return e.constant;
    case Kind::Var: {
      const rdf::Term* t = binding.get(e.var);
      if (!t) return std::nullopt;
      return *t;
    }
    case Kind::Str: {
      auto v = eval_term(e.args[0], binding);
      if (!v) return std::nullopt;
      if (v->is_blank()) return std::nullopt;
      return rdf::Term::literal(v->value());
    }
    default:
      return std::nullopt;  // boolean-valued node in term position
  }
}

bool string_like(const rdf::Term& t) {
  return t.is_literal() && t.datatype() == ns::kXsdString;
}

Truth truth_of(bool b) { return b ? Truth::True : Truth::False; }

Truth eval_compare(const FilterExpr& e, const Binding& binding) {
  using Kind = FilterExpr::Kind;
  auto a = eval_term(e.args[0], binding);
  auto b = eval_term(e.args[1], binding);
  if (!a || !b) return Truth::Error;

  if (e.kind == Kind::Eq || e.kind == Kind::Ne) {
    bool eq;
    if (a->is_literal() && b->is_literal()) {
      if (rdf::is_numeric_datatype(a->datatype()) && rdf::is_numeric_datatype(b->datatype())) {
        auto c = rdf::compare_literal_values(*a, *b);
        if (!c) return Truth::Error;
        eq = (*c == 0);
      } else {
        eq = (*a == *b);
      }
    } else {
      eq = (*a == *b);
    }
    return truth_of(e.kind == Kind::Eq ? eq : !eq);
  }

  // ordering comparisons require literals
  if (!a->is_literal() || !b->is_literal()) return Truth::Error;
  auto c = rdf::compare_literal_values(*a, *b);
  if (!c) return Truth::Error;
  switch (e.kind) {
    case Kind::Lt: return truth_of(*c < 0);
    case Kind::Gt: return truth_of(*c > 0);
    case Kind::Le: return truth_of(*c <= 0);
    case Kind::Ge: return truth_of(*c >= 0);
    default: return Truth::Error;
  }
}

}  // namespace

Truth eval_filter(const FilterExpr& expr, const Binding& binding) {
  using Kind = FilterExpr::Kind;
  switch (expr.kind) {
    case Kind::And: {
      Truth l = eval_filter(expr.args[0], binding);
      Truth r = eval_filter(expr.args[1], binding);
      if (l == Truth::False || r == Truth::False) return Truth::False;
      if (l == Truth::Error || r == Truth::Error) return Truth::Error;
      return Truth::True;
    }
    case Kind::Or: {
      Truth l = eval_filter(expr.args[0], binding);
      Truth r = eval_filter(expr.args[1], binding);
      if (l == Truth::True || r == Truth::True) return Truth::True;
      if (l == Truth::Error || r == Truth::Error) return Truth::Error;
      return Truth::False;
    }
    case Kind::Not: {
      Truth v = eval_filter(expr.args[0], binding);
      if (v == Truth::Error) return Truth::Error;
      return v == Truth::True ? Truth::False : Truth::True;
    }
    case Kind::Contains: {
      auto hay = eval_term(expr.args[0], binding);
      auto needle = eval_term(expr.args[1], binding);
      if (!hay || !needle) return Truth::Error;
      if (!string_like(*hay) || !string_like(*needle)) return Truth::Error;
      return truth_of(hay->value().find(needle->value()) != std::string::npos);
    }
    case Kind::Eq:
    case Kind::Ne:
    case Kind::Lt:
    case Kind::Gt:
    case Kind::Le:
    case Kind::Ge:
      return eval_compare(expr, binding);
    case Kind::Var: {
      // effective boolean value of a bound term
      const rdf::Term* t = binding.get(expr.var);
      if (!t) return Truth::Error;
      if (t->is_typed(ns::kXsdBoolean)) return truth_of(t->value() == "true" || t->value() == "1");
      if (t->is_string_literal()) return truth_of(!t->value().empty());
      return Truth::Error;
    }
    case Kind::Const: {
      const rdf::Term& t = expr.constant;
      if (t.is_typed(ns::kXsdBoolean)) return truth_of(t.value() == "true" || t.value() == "1");
      if (t.is_string_literal()) return truth_of(!t.value().empty());
      return Truth::Error;
    }
    case Kind::Str:
      return Truth::Error;  // a bare STR(...) is not a boolean
  }
  return Truth::Error;
}

bool passes_filters(const std::vector<FilterExpr>& filters, const Binding& binding) {
  for (const auto& f : filters) {
    if (eval_filter(f, binding) != Truth::True) return false;
  }
  return true;
}

}  // namespace graphmux::sparql
