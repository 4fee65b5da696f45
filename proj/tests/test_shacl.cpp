#include <doctest.h>

#include <algorithm>

#include "generators.hpp"
#include "graphmux/catalog/catalog.hpp"
#include "graphmux/rdf/namespaces.hpp"
#include "graphmux/rdf/parser.hpp"
#include "graphmux/shacl/rules.hpp"
#include "graphmux/shacl/validate.hpp"

using namespace graphmux;
using namespace graphmux::shacl;
namespace ns = graphmux::rdf::ns;

namespace {

std::string model(const std::string& local) { return "http://example.org/model#" + local; }

const char* kShapePrologue =
    "@prefix : <http://example.org/model#> .\n"
    "@prefix sh: <http://www.w3.org/ns/shacl#> .\n"
    "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
    "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n";

std::vector<NodeShape> shapes_of(const std::string& body) {
  return parse_shapes(
      rdf::parse_document(kShapePrologue + body, rdf::DocumentFormat::TurtleSubset));
}

catalog::TBox tbox() {
  return catalog::TBox::from_triples(rdf::parse_document(
      kShapePrologue +
          std::string(":Person a rdfs:Class . :Company a rdfs:Class . :Agent a rdfs:Class .\n"
                      ":Person rdfs:subClassOf :Agent .\n"),
      rdf::DocumentFormat::TurtleSubset));
}

storage::ObjectRecord person(const std::string& name) {
  storage::ObjectRecord rec;
  rec.subject = model("p1");
  rec.add_class(model("Person"));
  if (!name.empty()) rec.add(ns::kRdfsLabel, rdf::Term::literal(name));
  return rec;
}

}  // namespace

TEST_CASE("parse_shapes: basic node shape with one property shape") {
  auto shapes = shapes_of(
      ":PersonShape a sh:NodeShape ; sh:targetClass :Person ; sh:property :PersonShape-label .\n"
      ":PersonShape-label sh:path rdfs:label ; sh:minCount 1 .\n");
  REQUIRE(shapes.size() == 1);
  CHECK(shapes[0].target_class == model("Person"));
  REQUIRE(shapes[0].property_shapes.size() == 1);
  CHECK(shapes[0].property_shapes[0].path == ns::kRdfsLabel);
  CHECK(shapes[0].property_shapes[0].min_count == 1);
}

TEST_CASE("parse_shapes: boundary errors") {
  CHECK(shapes_of("").empty());

  // sequence path via blank node
  CHECK_THROWS_WITH_AS(
      shapes_of(":S a sh:NodeShape ; sh:targetClass :Person ; sh:property :S-p .\n"
                ":S-p sh:path _:seq ; sh:minCount 1 .\n"
                "_:seq :first rdfs:label .\n"),
      doctest::Contains("single-hop"), ShaclError);

  CHECK_THROWS_WITH_AS(shapes_of(":S a sh:NodeShape ; sh:property :S-p .\n"
                                 ":S-p sh:path rdfs:label ; sh:minCount 1 .\n"),
                       doctest::Contains("targetClass"), ShaclError);

  CHECK_THROWS_WITH_AS(
      shapes_of(":S a sh:NodeShape ; sh:targetClass :Person ; sh:property :S-p .\n"
                ":S-p sh:path rdfs:label ; sh:or :x .\n"),
      doctest::Contains("unsupported"), ShaclError);

  // constraint-free property shape
  CHECK_THROWS_AS(shapes_of(":S a sh:NodeShape ; sh:targetClass :Person ; sh:property :S-p .\n"
                            ":S-p sh:path rdfs:label .\n"),
                  ShaclError);
}

TEST_CASE("validate: minCount, datatype, pattern, class, vacuous pass") {
  auto tb = tbox();
  auto shapes = shapes_of(
      ":PersonShape a sh:NodeShape ; sh:targetClass :Person ;\n"
      "  sh:property :PS-label ; sh:property :PS-birth ; sh:property :PS-emp .\n"
      ":PS-label sh:path rdfs:label ; sh:minCount 1 ; sh:maxCount 2 ; sh:pattern \"^[A-Z]\" .\n"
      ":PS-birth sh:path :birthDate ; sh:datatype xsd:date .\n"
      ":PS-emp sh:path :worksIn ; sh:class :Company .\n");

  // missing label -> minCount
  auto report = validate(person(""), shapes, tb);
  CHECK(!report.conforms);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].constraint == "minCount");

  // invalid lexical form for the declared datatype
  auto rec = person("Ann");
  rec.add(model("birthDate"), rdf::Term::literal("not-a-date", ns::kXsdDate));
  report = validate(rec, shapes, tb);
  CHECK(!report.conforms);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].constraint == "datatype");

  // pattern violation (lowercase start)
  report = validate(person("ann"), shapes, tb);
  CHECK(!report.conforms);
  CHECK(report.violations[0].constraint == "pattern");

  // maxCount
  rec = person("Ann");
  rec.add(ns::kRdfsLabel, rdf::Term::literal("Annie"));
  rec.add(ns::kRdfsLabel, rdf::Term::literal("Anna"));
  report = validate(rec, shapes, tb);
  CHECK(!report.conforms);
  CHECK(report.violations[0].constraint == "maxCount");

  // class constraint via lookup
  rec = person("Ann");
  rec.add(model("worksIn"), rdf::Term::iri(model("c1")));
  auto lookup_company = [&](const std::string& iri) -> std::vector<std::string> {
    return iri == model("c1") ? std::vector<std::string>{model("Company")}
                              : std::vector<std::string>{};
  };
  report = validate(rec, shapes, tb, lookup_company);
  CHECK(report.conforms);

  rec = person("Ann");
  rec.add(model("worksIn"), rdf::Term::iri(model("ghost")));
  report = validate(rec, shapes, tb, lookup_company);
  CHECK(!report.conforms);
  CHECK(report.violations[0].constraint == "class");

  // a record of a class no shape targets conforms vacuously
  storage::ObjectRecord untargeted;
  untargeted.subject = model("c9");
  untargeted.add_class(model("Company"));
  report = validate(untargeted, shapes, tb);
  CHECK(report.conforms);
  CHECK(report.violations.empty());
}

TEST_CASE("validate: shapes targeting a superclass apply to subclass records") {
  auto tb = tbox();
  auto shapes = shapes_of(
      ":AgentShape a sh:NodeShape ; sh:targetClass :Agent ; sh:property :AS-label .\n"
      ":AS-label sh:path rdfs:label ; sh:minCount 1 .\n");
  auto report = validate(person(""), shapes, tb);  // Person <: Agent
  CHECK(!report.conforms);
}

TEST_CASE("validation monotonicity and report soundness") {
  auto tb = tbox();
  auto shapes = shapes_of(
      ":PersonShape a sh:NodeShape ; sh:targetClass :Person ; sh:property :PS-label .\n"
      ":PS-label sh:path rdfs:label ; sh:minCount 1 ; sh:maxCount 3 .\n");

  testgen::Rng rng(55);
  for (int iter = 0; iter < 100; ++iter) {
    auto rec = person("");
    std::size_t n = rng.below(6);
    for (std::size_t i = 0; i < n; ++i) rec.add(ns::kRdfsLabel, rdf::Term::literal(rng.word()));
    auto before = validate(rec, shapes, tb);

    auto grown = rec;
    grown.add(ns::kRdfsLabel, rdf::Term::literal(rng.word()));
    auto after = validate(grown, shapes, tb);

    auto has = [](const ValidationReport& r, const char* kind) {
      return std::any_of(r.violations.begin(), r.violations.end(),
                         [&](const Violation& v) { return v.constraint == kind; });
    };
    if (has(before, "maxCount")) CHECK(has(after, "maxCount"));  // adding never fixes maxCount
    if (!has(before, "minCount")) CHECK(!has(after, "minCount"));  // adding never breaks minCount

    // soundness: every violation re-derives by re-checking that constraint alone
    for (const auto& v : before.violations) {
      std::size_t count = rec.values(v.path) ? rec.values(v.path)->size() : 0;
      if (v.constraint == "minCount") CHECK(count < 1);
      if (v.constraint == "maxCount") CHECK(count > 3);
    }
  }
}

TEST_CASE("rules: unconditional triple rule derives one triple") {
  auto tb = tbox();
  auto shapes = shapes_of(
      ":PersonShape a sh:NodeShape ; sh:targetClass :Person ; sh:rule :PS-rule .\n"
      ":PS-rule a sh:TripleRule ; sh:subject sh:this ; sh:predicate :status ; sh:object :active .\n");
  auto derived = apply_rules(person("Ann"), shapes, tb, nullptr);
  REQUIRE(derived.size() == 1);
  CHECK(derived[0] == rdf::Triple(rdf::Term::iri(model("p1")), rdf::Term::iri(model("status")),
                                  rdf::Term::iri(model("active"))));

  // second run over data that already contains the triple derives nothing
  rdf::TripleSet existing;
  existing.insert(derived[0]);
  auto external = [&](const rdf::Term* s, const rdf::Term* p,
                      const rdf::Term* o) -> std::vector<rdf::Triple> {
    std::vector<rdf::Triple> out;
    for (const auto& t : existing) {
      if (s && !(t.subject() == *s)) continue;
      if (p && !(t.predicate() == *p)) continue;
      if (o && !(t.object() == *o)) continue;
      out.push_back(t);
    }
    return out;
  };
  CHECK(apply_rules(person("Ann"), shapes, tb, external).empty());
}

TEST_CASE("rules: construct rule derives the inverse edge, hand-checked") {
  auto tb = tbox();
  auto shapes = shapes_of(
      ":PersonShape a sh:NodeShape ; sh:targetClass :Person ; sh:rule :PS-inv .\n"
      ":PS-inv a sh:SPARQLRule ; sh:construct \"CONSTRUCT { ?proj :hasResponsible $this } WHERE { $this :responsibleFor ?proj }\" .\n");

  auto rec = person("Ann");
  rec.add(model("responsibleFor"), rdf::Term::iri(model("proj1")));
  rec.add(model("responsibleFor"), rdf::Term::iri(model("proj2")));

  auto derived = apply_rules(rec, shapes, tb, nullptr);
  // hand evaluation: two responsibleFor edges -> two inverse edges
  REQUIRE(derived.size() == 2);
  for (const auto& t : derived) {
    CHECK(t.predicate().value() == model("hasResponsible"));
    CHECK(t.object() == rdf::Term::iri(model("p1")));
  }
}

TEST_CASE("rules: property-ref object, fixpoint, and determinism under permutation") {
  auto tb = tbox();
  // copies every rdfs:label value to :displayName; fixpoint after round two
  auto shapes = shapes_of(
      ":PersonShape a sh:NodeShape ; sh:targetClass :Person ; sh:rule :PS-copy ; sh:rule :PS-status .\n"
      ":PS-copy a sh:TripleRule ; sh:subject sh:this ; sh:predicate :displayName ; sh:object :PS-copy-o .\n"
      ":PS-copy-o sh:path rdfs:label .\n"
      ":PS-status a sh:TripleRule ; sh:subject sh:this ; sh:predicate :status ; sh:object :active .\n");
  auto rec = person("Ann");
  auto derived = apply_rules(rec, shapes, tb, nullptr);
  REQUIRE(derived.size() == 2);

  // permuting rule order yields the same derived set
  auto reversed = shapes;
  std::reverse(reversed[0].rules.begin(), reversed[0].rules.end());
  auto derived2 = apply_rules(rec, reversed, tb, nullptr);
  CHECK(derived == derived2);
}

TEST_CASE("rules: iteration cap names the offending rule") {
  auto tb = tbox();
  auto shapes = shapes_of(
      ":PersonShape a sh:NodeShape ; sh:targetClass :Person ; sh:rule :PS-walk .\n"
      ":PS-walk a sh:SPARQLRule ; sh:construct \"CONSTRUCT { $this :reached ?y } WHERE { $this :reached ?x . ?x :next ?y }\" .\n");

  // chain x0 -> x1 -> ... -> x14 takes more rounds than the cap allows
  rdf::TripleSet chain;
  for (int i = 0; i < 14; ++i) {
    chain.insert(rdf::Triple(rdf::Term::iri(model("x" + std::to_string(i))),
                             rdf::Term::iri(model("next")),
                             rdf::Term::iri(model("x" + std::to_string(i + 1)))));
  }
  auto external = [&](const rdf::Term* s, const rdf::Term* p,
                      const rdf::Term* o) -> std::vector<rdf::Triple> {
    std::vector<rdf::Triple> out;
    for (const auto& t : chain) {
      if (s && !(t.subject() == *s)) continue;
      if (p && !(t.predicate() == *p)) continue;
      if (o && !(t.object() == *o)) continue;
      out.push_back(t);
    }
    return out;
  };

  auto rec = person("Ann");
  rec.add(model("reached"), rdf::Term::iri(model("x0")));
  CHECK_THROWS_WITH_AS(apply_rules(rec, shapes, tb, external),
                       doctest::Contains("PersonShape"), ShaclError);
}
