#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphmux/rdf/term.hpp"
#include "graphmux/rdf/triple.hpp"

namespace graphmux::sparql {

/// One position of a triple pattern: a constant term or a variable.
class TermOrVar {
 public:
  TermOrVar() = default;

  static TermOrVar term(rdf::Term t) {
    TermOrVar tv;
    tv.term_ = std::move(t);
    return tv;
  }
  static TermOrVar var(std::string name) {
    TermOrVar tv;
    tv.is_var_ = true;
    tv.var_ = std::move(name);
    return tv;
  }

  bool is_var() const { return is_var_; }
  const std::string& var_name() const { return var_; }
  const rdf::Term& term() const { return term_; }

  bool operator==(const TermOrVar& other) const = default;

 private:
  bool is_var_ = false;
  rdf::Term term_;
  std::string var_;
};

struct TriplePattern {
  TermOrVar subject;
  TermOrVar predicate;
  TermOrVar object;

  bool operator==(const TriplePattern& other) const = default;
};

/// Filter expression tree. Leaves are variables and constants; inner nodes
/// are boolean connectives, comparisons, and the CONTAINS/STR builtins.
struct FilterExpr {
  enum class Kind { And, Or, Not, Eq, Ne, Lt, Gt, Le, Ge, Contains, Str, Var, Const };

  Kind kind = Kind::Const;
  std::vector<FilterExpr> args;
  std::string var;
  rdf::Term constant;

  bool operator==(const FilterExpr& other) const = default;

  static FilterExpr variable(std::string name) {
    FilterExpr e;
    e.kind = Kind::Var;
    e.var = std::move(name);
    return e;
  }
  static FilterExpr constant_term(rdf::Term t) {
    FilterExpr e;
    e.kind = Kind::Const;
    e.constant = std::move(t);
    return e;
  }
  static FilterExpr node(Kind kind, std::vector<FilterExpr> args) {
    FilterExpr e;
    e.kind = kind;
    e.args = std::move(args);
    return e;
  }
};

/// Collect the variable names referenced by an expression.
void collect_filter_vars(const FilterExpr& e, std::vector<std::string>& out);

struct QueryAst {
  enum class Form { Select, Construct };

  Form form = Form::Select;
  bool wildcard = false;
  std::vector<std::string> projection;  // explicit SELECT variables
  std::vector<TriplePattern> patterns;
  std::vector<FilterExpr> filters;  // one entry per FILTER clause
  std::vector<TriplePattern> construct_template;
  std::uint64_t offset = 0;
  std::optional<std::uint64_t> limit;

  bool operator==(const QueryAst& other) const = default;

  /// Variables of the BGP in first-appearance order (subject, predicate,
  /// object per pattern). This is the projection for SELECT *.
  std::vector<std::string> pattern_variables() const;

  /// Projected variables: the explicit list, or pattern_variables() for *.
  std::vector<std::string> projected_variables() const;
};

/// A solution row: variable -> term, kept sorted by variable name.
class Binding {
 public:
  const rdf::Term* get(const std::string& var) const;

  /// Bind or check consistency; false when var is already bound to a
  /// different term.
  bool bind(const std::string& var, const rdf::Term& t);

  std::size_t size() const { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool operator==(const Binding& other) const = default;

 private:
  std::vector<std::pair<std::string, rdf::Term>> entries_;
};

struct ResultSet {
  std::vector<std::string> variables;
  std::vector<std::vector<rdf::Term>> rows;  // aligned with `variables`

  bool operator==(const ResultSet& other) const = default;
};

/// Lexicographic canonical order over rows, used everywhere a deterministic
/// result order is required.
struct RowLess {
  bool operator()(const std::vector<rdf::Term>& a, const std::vector<rdf::Term>& b) const;
};

void sort_rows(std::vector<std::vector<rdf::Term>>& rows);

/// Instantiate a CONSTRUCT template row; patterns whose instantiation is not
/// a valid triple (unbound variable, literal subject) are skipped.
std::vector<rdf::Triple> instantiate_template(const std::vector<TriplePattern>& tmpl,
                                              const Binding& binding);

/// AST pretty-printer; parse_query(print_query(ast)) == ast.
std::string print_query(const QueryAst& ast);

}  // namespace graphmux::sparql
