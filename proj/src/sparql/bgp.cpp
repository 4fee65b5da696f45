#include "graphmux/sparql/bgp.hpp"

namespace graphmux::sparql {

bool match_pattern_into(const TriplePattern& pattern, const rdf::Triple& triple, Binding& binding) {
  auto match_pos = [&](const TermOrVar& tv, const rdf::Term& t) {
    if (!tv.is_var()) return tv.term() == t;
    return binding.bind(tv.var_name(), t);
  };
  return match_pos(pattern.subject, triple.subject()) &&
         match_pos(pattern.predicate, triple.predicate()) &&
         match_pos(pattern.object, triple.object());
}

std::vector<Binding> eval_bgp(const std::vector<TriplePattern>& patterns,
                              const TripleSource& source, const Binding& seed) {
  std::vector<Binding> bindings{seed};
  for (const auto& pattern : patterns) {
    std::vector<Binding> next;
    for (const auto& b : bindings) {
      auto resolve = [&](const TermOrVar& tv) -> const rdf::Term* {
        if (!tv.is_var()) return &tv.term();
        return b.get(tv.var_name());
      };
      const rdf::Term* s = resolve(pattern.subject);
      const rdf::Term* p = resolve(pattern.predicate);
      const rdf::Term* o = resolve(pattern.object);
      for (const auto& t : source(s, p, o)) {
        Binding extended = b;
        if (match_pattern_into(pattern, t, extended)) next.push_back(std::move(extended));
      }
    }
    bindings = std::move(next);
    if (bindings.empty()) break;
  }
  return bindings;
}

}  // namespace graphmux::sparql
