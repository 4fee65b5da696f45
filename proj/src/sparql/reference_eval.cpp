#include "graphmux/sparql/reference_eval.hpp"

#include <stdexcept>

#include "graphmux/sparql/filter.hpp"

namespace graphmux::sparql {

namespace {

// One join round: every current binding against every triple in the set.
std::vector<Binding> join_pattern(const std::vector<Binding>& bindings,
                                  const TriplePattern& pattern, const rdf::TripleSet& data) {
  std::vector<Binding> next;
  for (const auto& triple : data) {
    for (const auto& b : bindings) {
      Binding extended = b;
      auto match_pos = [&](const TermOrVar& tv, const rdf::Term& t) {
        if (!tv.is_var()) return tv.term() == t;
        return extended.bind(tv.var_name(), t);
      };
      if (match_pos(pattern.subject, triple.subject()) &&
          match_pos(pattern.predicate, triple.predicate()) &&
          match_pos(pattern.object, triple.object())) {
        next.push_back(std::move(extended));
      }
    }
  }
  return next;
}

}  // namespace

ResultSet eval_reference(const QueryAst& ast, const rdf::TripleSet& data) {
  if (ast.form != QueryAst::Form::Select) {
    throw std::invalid_argument("eval_reference handles SELECT queries only");
  }

  std::vector<Binding> bindings{Binding{}};
  for (const auto& pattern : ast.patterns) {
    bindings = join_pattern(bindings, pattern, data);
    if (bindings.empty()) break;
  }

  ResultSet result;
  result.variables = ast.projected_variables();
  for (const auto& b : bindings) {
    if (!passes_filters(ast.filters, b)) continue;
    std::vector<rdf::Term> row;
    row.reserve(result.variables.size());
    bool complete = true;
    for (const auto& v : result.variables) {
      const rdf::Term* t = b.get(v);
      if (!t) {
        complete = false;
        break;
      }
      row.push_back(*t);
    }
    if (complete) result.rows.push_back(std::move(row));
  }

  sort_rows(result.rows);

  if (ast.offset > 0) {
    if (ast.offset >= result.rows.size()) {
      result.rows.clear();
    } else {
      result.rows.erase(result.rows.begin(),
                        result.rows.begin() + static_cast<std::ptrdiff_t>(ast.offset));
    }
  }
  if (ast.limit && result.rows.size() > *ast.limit) {
    result.rows.resize(*ast.limit);
  }
  return result;
}

}  // namespace graphmux::sparql
