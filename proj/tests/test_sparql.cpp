#include <doctest.h>

#include "generators.hpp"
#include "graphmux/rdf/namespaces.hpp"
#include "graphmux/rdf/parser.hpp"
#include "graphmux/sparql/filter.hpp"
#include "graphmux/sparql/parser.hpp"
#include "graphmux/sparql/reference_eval.hpp"

using namespace graphmux;
using namespace graphmux::sparql;
namespace ns = graphmux::rdf::ns;

namespace {

const std::map<std::string, std::string> kPrefixes = {{"", "http://example.org/model#"}};

std::string model(const std::string& local) { return "http://example.org/model#" + local; }

const char* kQuery1 =
    "SELECT * WHERE { ?org rdf:type :Organization. ?org rdfs:label ?name "
    "FILTER(CONTAINS(STR(?name), \"some text\")) }";

const char* kQuery2 =
    "SELECT * WHERE { ?person rdf:type :Person. ?person :birthDate ?birth. "
    "?person rdfs:label ?name. FILTER(?birth > \"1999-12-27\"^^xsd:date) } LIMIT 10";

const char* kQuery3 =
    "SELECT * WHERE { ?project rdf:type :Project. ?project rdfs:label ?name } "
    "OFFSET 990000 LIMIT 1000";

}  // namespace

TEST_CASE("parse paper-shaped query with contains filter") {
  QueryAst ast = parse_query(kQuery1, kPrefixes);
  CHECK(ast.form == QueryAst::Form::Select);
  CHECK(ast.wildcard);
  REQUIRE(ast.patterns.size() == 2);
  REQUIRE(ast.filters.size() == 1);
  CHECK(ast.patterns[0].predicate.term() == rdf::Term::iri(ns::kRdfType));
  CHECK(ast.patterns[0].object.term() == rdf::Term::iri(model("Organization")));
  CHECK(ast.patterns[1].predicate.term() == rdf::Term::iri(ns::kRdfsLabel));
  CHECK(ast.filters[0].kind == FilterExpr::Kind::Contains);
}

TEST_CASE("parse offset and limit") {
  QueryAst ast = parse_query(kQuery3, kPrefixes);
  CHECK(ast.offset == 990000);
  REQUIRE(ast.limit.has_value());
  CHECK(*ast.limit == 1000);
  CHECK(ast.patterns.size() == 2);
}

TEST_CASE("parse typed-literal date filter") {
  QueryAst ast = parse_query(kQuery2, kPrefixes);
  CHECK(ast.patterns.size() == 3);
  REQUIRE(ast.filters.size() == 1);
  CHECK(ast.filters[0].kind == FilterExpr::Kind::Gt);
  CHECK(ast.filters[0].args[1].constant == rdf::Term::literal("1999-12-27", ns::kXsdDate));
  CHECK(*ast.limit == 10);
}

TEST_CASE("empty query parses to empty AST") {
  QueryAst ast = parse_query("SELECT * WHERE { }");
  CHECK(ast.wildcard);
  CHECK(ast.patterns.empty());
  CHECK(ast.filters.empty());
  CHECK(ast.offset == 0);
  CHECK(!ast.limit.has_value());
}

TEST_CASE("unsupported features are rejected by name") {
  auto expect_unsupported = [](const char* text, const char* feature) {
    try {
      parse_query(text, kPrefixes);
      FAIL_CHECK("expected UnsupportedFeatureError for: " << text);
    } catch (const UnsupportedFeatureError& e) {
      CHECK(e.feature == feature);
    }
  };
  expect_unsupported("SELECT * WHERE { ?s ?p ?o OPTIONAL { ?s :x ?y } }", "OPTIONAL");
  expect_unsupported("SELECT * WHERE { ?s ?p ?o } ORDER BY ?s", "ORDER BY");
  expect_unsupported("SELECT * WHERE { ?s ?p ?o } GROUP BY ?s", "GROUP BY");
  expect_unsupported("SELECT DISTINCT ?s WHERE { ?s ?p ?o }", "DISTINCT");
  expect_unsupported("ASK { ?s ?p ?o }", "ASK");
}

TEST_CASE("syntax errors carry a position and never silently pass") {
  CHECK_THROWS_AS(parse_query("SELECT * WHERE { ?s ?p }"), QueryParseError);
  CHECK_THROWS_AS(parse_query("SELECT ?x WHERE { ?s ?p ?o }"), QueryParseError);  // unbound projection
  CHECK_THROWS_AS(parse_query("SELECT * WHERE { ?s :p ?o }"), QueryParseError);   // unknown prefix
  CHECK_THROWS_AS(parse_query("SELECT * WHERE { \"lit\" rdf:type ?o }"), QueryParseError);
}

TEST_CASE("filter evaluation: contains, dates, unbound errors") {
  Binding b;
  b.bind("name", rdf::Term::literal("Acme some text Ltd"));
  b.bind("birth", rdf::Term::literal("2000-01-01", ns::kXsdDate));

  QueryAst q1 = parse_query(kQuery1, kPrefixes);
  CHECK(eval_filter(q1.filters[0], b) == Truth::True);

  QueryAst q2 = parse_query(kQuery2, kPrefixes);
  CHECK(eval_filter(q2.filters[0], b) == Truth::True);

  Binding earlier;
  earlier.bind("birth", rdf::Term::literal("1980-05-05", ns::kXsdDate));
  CHECK(eval_filter(q2.filters[0], earlier) == Truth::False);

  Binding unbound;
  CHECK(eval_filter(q2.filters[0], unbound) == Truth::Error);
  CHECK(!passes_filters(q2.filters, unbound));

  // numeric comparison uses value order, not lexical
  auto gt = parse_query("SELECT * WHERE { ?s ?p ?n FILTER(?n > 9) }", kPrefixes);
  Binding num;
  num.bind("n", rdf::Term::literal("10", ns::kXsdInteger));
  CHECK(eval_filter(gt.filters[0], num) == Truth::True);

  // three-valued logic: error || true = true, error && false = false
  FilterExpr err_cmp = FilterExpr::node(
      FilterExpr::Kind::Gt,
      {FilterExpr::variable("missing"),
       FilterExpr::constant_term(rdf::Term::literal("1", ns::kXsdInteger))});
  FilterExpr true_cmp = FilterExpr::node(
      FilterExpr::Kind::Gt,
      {FilterExpr::variable("n"), FilterExpr::constant_term(rdf::Term::literal("9", ns::kXsdInteger))});
  CHECK(eval_filter(FilterExpr::node(FilterExpr::Kind::Or, {err_cmp, true_cmp}), num) == Truth::True);
  FilterExpr false_cmp = FilterExpr::node(
      FilterExpr::Kind::Lt,
      {FilterExpr::variable("n"), FilterExpr::constant_term(rdf::Term::literal("9", ns::kXsdInteger))});
  CHECK(eval_filter(FilterExpr::node(FilterExpr::Kind::And, {err_cmp, false_cmp}), num) ==
        Truth::False);
}

TEST_CASE("reference evaluator: direct match count") {
  auto data = rdf::parse_document(
      "@prefix : <http://example.org/model#> .\n"
      ":a a :Company . :b a :Company . :c a :Person .\n",
      rdf::DocumentFormat::TurtleSubset);
  auto ast = parse_query("SELECT * WHERE { ?s rdf:type :Company }", kPrefixes);
  auto rs = eval_reference(ast, data);
  CHECK(rs.rows.size() == 2);
}

TEST_CASE("reference evaluator: traversal join on a toy graph") {
  // Exactly one project is shared between X's participations and Y's
  // responsibilities: p2. Hand enumeration: X participates in {p1, p2},
  // Y is responsible for {p2, p3}.
  auto data = rdf::parse_document(
      "@prefix : <http://example.org/model#> .\n"
      ":X :participatesIn :p1 .\n"
      ":X :participatesIn :p2 .\n"
      ":Y :responsibleFor :p2 .\n"
      ":Y :responsibleFor :p3 .\n"
      ":Z :participatesIn :p3 .\n"
      ":Z :responsibleFor :p1 .\n",
      rdf::DocumentFormat::TurtleSubset);
  auto ast = parse_query("SELECT * WHERE { :X :participatesIn ?p . :Y :responsibleFor ?p }",
                         kPrefixes);
  auto rs = eval_reference(ast, data);
  REQUIRE(rs.rows.size() == 1);
  CHECK(rs.rows[0][0] == rdf::Term::iri(model("p2")));
}

TEST_CASE("reference evaluator: empty BGP yields one empty row") {
  rdf::TripleSet data;
  auto ast = parse_query("SELECT * WHERE { }");
  auto rs = eval_reference(ast, data);
  CHECK(rs.variables.empty());
  REQUIRE(rs.rows.size() == 1);
  CHECK(rs.rows[0].empty());
}

TEST_CASE("oracle determinism and filter exclusion") {
  testgen::Rng rng(99);
  auto data = testgen::random_triple_set(rng, 200);
  auto ast = parse_query("SELECT * WHERE { ?s ?p ?o }");
  auto r1 = eval_reference(ast, data);
  auto r2 = eval_reference(ast, data);
  CHECK(r1 == r2);
  CHECK(r1.rows.size() == data.size());

  // every surviving row re-satisfies the filters
  auto filtered = parse_query(
      "SELECT * WHERE { ?s <http://example.org/p/q> ?o FILTER(CONTAINS(STR(?o), \"a\")) }");
  auto rf = eval_reference(filtered, data);
  for (const auto& row : rf.rows) {
    Binding b;
    b.bind("s", row[0]);
    b.bind("o", row[1]);
    CHECK(passes_filters(filtered.filters, b));
  }
}

TEST_CASE("offset/limit algebra") {
  testgen::Rng rng(5);
  auto data = testgen::random_triple_set(rng, 120);
  auto all = eval_reference(parse_query("SELECT * WHERE { ?s ?p ?o }"), data);

  auto windowed = parse_query("SELECT * WHERE { ?s ?p ?o } OFFSET 40 LIMIT 25");
  auto w = eval_reference(windowed, data);
  CHECK(w.rows.size() <= 25);
  for (std::size_t i = 0; i < w.rows.size(); ++i) {
    CHECK(w.rows[i] == all.rows[40 + i]);
  }

  auto tail = eval_reference(parse_query("SELECT * WHERE { ?s ?p ?o } OFFSET 100"), data);
  CHECK(tail.rows.size() == all.rows.size() - 100);
  auto past = eval_reference(parse_query("SELECT * WHERE { ?s ?p ?o } OFFSET 99999"), data);
  CHECK(past.rows.empty());
}

TEST_CASE("parser totality: parse(print(ast)) == ast") {
  for (const char* text : {kQuery1, kQuery2, kQuery3,
                           "SELECT ?s WHERE { ?s rdf:type :Company . ?s rdfs:label ?n }",
                           "SELECT * WHERE { }",
                           "CONSTRUCT { ?s :derived ?o } WHERE { ?s :src ?o }"}) {
    QueryAst ast = parse_query(text, kPrefixes);
    QueryAst back = parse_query(print_query(ast), kPrefixes);
    CHECK(back == ast);
  }

  // randomized ASTs
  testgen::Rng rng(31337);
  for (int iter = 0; iter < 50; ++iter) {
    QueryAst ast;
    ast.wildcard = true;
    std::size_t n = 1 + rng.below(4);
    for (std::size_t i = 0; i < n; ++i) {
      TriplePattern p;
      p.subject = TermOrVar::var("s" + std::to_string(i == 0 ? 0 : rng.below(3)));
      p.predicate = rng.chance(0.3) ? TermOrVar::var("p" + std::to_string(i))
                                    : TermOrVar::term(rdf::Term::iri(model("prop" + rng.word())));
      p.object = rng.chance(0.5)
                     ? TermOrVar::var("o" + std::to_string(rng.below(3)))
                     : TermOrVar::term(rng.chance(0.5)
                                           ? rdf::Term::literal(rng.word())
                                           : rdf::Term::iri(model("obj" + rng.word())));
      ast.patterns.push_back(p);
    }
    if (rng.chance(0.5)) {
      ast.filters.push_back(FilterExpr::node(
          FilterExpr::Kind::Contains,
          {FilterExpr::node(FilterExpr::Kind::Str, {FilterExpr::variable("s0")}),
           FilterExpr::constant_term(rdf::Term::literal(rng.word()))}));
    }
    if (rng.chance(0.4)) ast.offset = rng.below(100);
    if (rng.chance(0.4)) ast.limit = 1 + rng.below(100);
    QueryAst back = parse_query(print_query(ast), kPrefixes);
    CHECK(back == ast);
  }
}
