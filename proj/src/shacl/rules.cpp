#include "graphmux/shacl/rules.hpp"

#include <set>

namespace graphmux::shacl {

namespace {

// Focus-node triples and derived triples first, then the external source.
sparql::TripleSource overlay_source(const rdf::TripleSet& local,
                                    const sparql::TripleSource& external) {
  return [&local, &external](const rdf::Term* s, const rdf::Term* p,
                             const rdf::Term* o) -> std::vector<rdf::Triple> {
    std::vector<rdf::Triple> out;
    for (const auto& t : local) {
      if (s && !(t.subject() == *s)) continue;
      if (p && !(t.predicate() == *p)) continue;
      if (o && !(t.object() == *o)) continue;
      out.push_back(t);
    }
    if (external) {
      for (auto& t : external(s, p, o)) {
        if (!local.contains(t)) out.push_back(std::move(t));
      }
    }
    return out;
  };
}

}  // namespace

std::vector<rdf::Triple> apply_rules(const storage::ObjectRecord& record,
                                     const std::vector<NodeShape>& shapes,
                                     const catalog::TBox& tbox,
                                     const sparql::TripleSource& external) {
  auto targets = tbox.expand_upward(record.classes);
  std::vector<const Rule*> active;
  for (const auto& shape : shapes) {
    if (!targets.count(shape.target_class)) continue;
    for (const auto& rule : shape.rules) active.push_back(&rule);
  }
  if (active.empty()) return {};

  rdf::Term focus = rdf::Term::iri(record.subject);
  rdf::TripleSet working;
  for (const auto& t : record.to_triples()) working.insert(t);

  rdf::TripleSet derived;
  for (int iteration = 0;; ++iteration) {
    std::vector<rdf::Triple> fresh;
    const Rule* producing = nullptr;
    for (const Rule* rule : active) {
      std::vector<rdf::Triple> candidates;
      if (rule->kind == Rule::Kind::Triple) {
        rdf::Term predicate = rdf::Term::iri(rule->predicate);
        switch (rule->object_kind) {
          case Rule::ObjectKind::This:
            candidates.emplace_back(focus, predicate, focus);
            break;
          case Rule::ObjectKind::Constant:
            candidates.emplace_back(focus, predicate, rule->object_constant);
            break;
          case Rule::ObjectKind::PropertyRef: {
            rdf::Term ref = rdf::Term::iri(rule->object_property);
            for (const auto& t : working) {
              if (t.subject() == focus && t.predicate() == ref) {
                candidates.emplace_back(focus, predicate, t.object());
              }
            }
            break;
          }
        }
      } else {
        sparql::Binding seed;
        seed.bind("this", focus);
        auto source = overlay_source(working, external);
        for (const auto& b : sparql::eval_bgp(rule->construct.patterns, source, seed)) {
          for (auto& t : sparql::instantiate_template(rule->construct.construct_template, b)) {
            candidates.push_back(std::move(t));
          }
        }
      }
      for (auto& t : candidates) {
        if (working.contains(t) || derived.contains(t)) continue;
        if (external && !external(&t.subject(), &t.predicate(), &t.object()).empty()) {
          continue;  // already asserted elsewhere
        }
        fresh.push_back(t);
        if (!producing) producing = rule;
      }
    }
    if (fresh.empty()) break;
    if (iteration + 1 >= kRuleIterationCap) {
      throw ShaclError("rule-iteration-cap",
                       "rules of " + producing->origin + " did not reach a fixpoint after " +
                           std::to_string(kRuleIterationCap) + " iterations");
    }
    for (const auto& t : fresh) {
      derived.insert(t);
      working.insert(t);
    }
  }
  return derived.to_vector();
}

}  // namespace graphmux::shacl
