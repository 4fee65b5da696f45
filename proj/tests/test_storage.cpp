#include <doctest.h>

#include <filesystem>

#include "generators.hpp"
#include "graphmux/rdf/namespaces.hpp"
#include "graphmux/storage/class_table.hpp"
#include "graphmux/storage/record_io.hpp"
#include "graphmux/storage/triple_index.hpp"

using namespace graphmux;
using namespace graphmux::storage;
namespace ns = graphmux::rdf::ns;

namespace {

std::string model(const std::string& local) { return "http://example.org/model#" + local; }

ObjectRecord company(int i, const std::string& label) {
  ObjectRecord rec;
  rec.subject = model("company" + std::to_string(i));
  rec.add_class(model("Company"));
  rec.add(ns::kRdfsLabel, rdf::Term::literal(label));
  return rec;
}

ObjectRecord person(int i, const std::string& label, const std::string& birth) {
  ObjectRecord rec;
  rec.subject = model("person" + std::to_string(i));
  rec.add_class(model("Person"));
  rec.add(ns::kRdfsLabel, rdf::Term::literal(label));
  rec.add(model("birthDate"), rdf::Term::literal(birth, ns::kXsdDate));
  return rec;
}

ObjectRecord random_record(testgen::Rng& rng, int i) {
  ObjectRecord rec;
  rec.subject = model("obj" + std::to_string(i));
  rec.add_class(model(rng.chance(0.5) ? "Company" : "Person"));
  rec.add(ns::kRdfsLabel, rdf::Term::literal(rng.word(3, 12)));
  if (rng.chance(0.7)) {
    rec.add(model("birthDate"),
            rdf::Term::literal("19" + std::to_string(50 + rng.below(50)) + "-01-0" +
                                   std::to_string(1 + rng.below(9)),
                               ns::kXsdDate));
  }
  if (rng.chance(0.4)) {
    rec.add(model("score"), rdf::Term::literal(std::to_string(rng.below(1000)), ns::kXsdInteger));
  }
  if (rng.chance(0.3)) {
    rec.add(model("knows"), rdf::Term::iri(model("obj" + std::to_string(rng.below(100)))));
  }
  return rec;
}

PatternQuery random_query(testgen::Rng& rng) {
  PatternQuery q;
  q.clazz = model(rng.chance(0.5) ? "Company" : "Person");
  if (rng.chance(0.5)) {
    PropertyFilter f;
    f.property = model("birthDate");
    f.op = rng.chance(0.5) ? PropertyFilter::Op::Greater : PropertyFilter::Op::Less;
    f.value = rdf::Term::literal("1975-06-15", ns::kXsdDate);
    q.filters.push_back(f);
  }
  if (rng.chance(0.4)) {
    PropertyFilter f;
    f.property = ns::kRdfsLabel;
    f.op = PropertyFilter::Op::Contains;
    f.value = rdf::Term::literal(rng.word(1, 2));
    q.filters.push_back(f);
  }
  if (rng.chance(0.3)) {
    PropertyFilter f;
    f.property = model("score");
    f.op = rng.chance(0.5) ? PropertyFilter::Op::Greater : PropertyFilter::Op::Equals;
    f.value = rdf::Term::literal(std::to_string(rng.below(1000)), ns::kXsdInteger);
    q.filters.push_back(f);
  }
  if (rng.chance(0.3)) q.offset = rng.below(20);
  if (rng.chance(0.3)) q.limit = 1 + rng.below(30);
  return q;
}

}  // namespace

TEST_CASE("record json round-trip") {
  testgen::Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    ObjectRecord rec = random_record(rng, i);
    CHECK(record_from_line(record_to_line(rec)) == rec);
  }
}

TEST_CASE("put/get read-your-write and replace semantics") {
  for (auto make : {+[]() -> std::unique_ptr<StorageAdapter> {
                      return std::make_unique<TripleIndexAdapter>("ti");
                    },
                    +[]() -> std::unique_ptr<StorageAdapter> {
                      return std::make_unique<ClassTableAdapter>("ct");
                    }}) {
    auto store = make();
    ObjectRecord rec = company(1, "Acme");
    store->put(rec, 1);
    auto got = store->get(rec.subject);
    REQUIRE(got.has_value());
    CHECK(*got == rec);

    ObjectRecord second = company(1, "Acme Renamed");
    store->put(second, 2);
    got = store->get(rec.subject);
    REQUIRE(got.has_value());
    CHECK(got->values(ns::kRdfsLabel)->size() == 1);
    CHECK(got->values(ns::kRdfsLabel)->front() == rdf::Term::literal("Acme Renamed"));

    // stale revision is ignored (migration copy guard)
    store->put(company(1, "Stale"), 1);
    CHECK(store->get(rec.subject)->values(ns::kRdfsLabel)->front() ==
          rdf::Term::literal("Acme Renamed"));

    CHECK(store->remove(rec.subject));
    CHECK(!store->get(rec.subject).has_value());
    CHECK(!store->remove(rec.subject));
  }
}

TEST_CASE("triple index match_pattern basics") {
  TripleIndexAdapter store("default");
  store.put(company(1, "Acme"), 1);
  store.put(company(2, "Globex"), 2);
  store.put(company(3, "Initech"), 3);

  rdf::Term type = rdf::Term::iri(ns::kRdfType);
  rdf::Term cls = rdf::Term::iri(model("Company"));
  CHECK(store.match(nullptr, &type, &cls).size() == 3);

  ObjectRecord c1 = company(1, "Acme");
  c1.add(model("founded"), rdf::Term::literal("1999", ns::kXsdInteger));
  c1.add(model("hq"), rdf::Term::iri(model("city1")));
  store.put(c1, 4);
  rdf::Term s = rdf::Term::iri(model("company1"));
  CHECK(store.match(&s, nullptr, nullptr).size() == 4);  // type + label + founded + hq
}

TEST_CASE("triple index match equals brute-force scan for random patterns") {
  testgen::Rng rng(4242);
  TripleIndexAdapter store("default");
  auto data = testgen::random_triple_set(rng, 400);
  store.add_triples(data.to_vector());

  std::vector<rdf::Triple> all = data.to_vector();
  std::vector<rdf::Term> pool;
  for (const auto& t : all) {
    pool.push_back(t.subject());
    pool.push_back(t.predicate());
    pool.push_back(t.object());
  }

  for (int iter = 0; iter < 1000; ++iter) {
    const rdf::Term* s = nullptr;
    const rdf::Term* p = nullptr;
    const rdf::Term* o = nullptr;
    rdf::Term st, pt, ot;
    if (rng.chance(0.5)) {
      st = pool[rng.below(pool.size())];
      s = &st;
    }
    if (rng.chance(0.5)) {
      pt = pool[rng.below(pool.size())];
      p = &pt;
    }
    if (rng.chance(0.5)) {
      ot = pool[rng.below(pool.size())];
      o = &ot;
    }
    auto got = store.match(s, p, o);

    std::vector<rdf::Triple> expected;
    for (const auto& t : all) {
      if (s && !(t.subject() == *s)) continue;
      if (p && !(t.predicate() == *p)) continue;
      if (o && !(t.object() == *o)) continue;
      expected.push_back(t);
    }
    REQUIRE(got.size() == expected.size());
    std::sort(got.begin(), got.end(), rdf::TripleLess{});
    std::sort(expected.begin(), expected.end(), rdf::TripleLess{});
    CHECK(got == expected);
  }
}

TEST_CASE("class table: isolation, offset past end, unknown class") {
  ClassTableAdapter store("ct");
  store.put(company(1, "Acme"), 1);
  store.put(person(1, "Ann", "1980-04-02"), 2);
  store.put(person(2, "Bob", "2001-09-10"), 3);

  PatternQuery companies;
  companies.clazz = model("Company");
  CHECK(store.scan(companies).size() == 1);

  PatternQuery persons;
  persons.clazz = model("Person");
  CHECK(store.scan(persons).size() == 2);

  persons.offset = 2;
  CHECK(store.scan(persons).empty());

  PatternQuery unknown;
  unknown.clazz = model("Nope");
  CHECK(store.scan(unknown).empty());
  CHECK(store.count(model("Nope")) == 0);
}

TEST_CASE("class table scan with date filter and limit") {
  ClassTableAdapter store("ct");
  for (int i = 0; i < 50; ++i) {
    store.put(person(i, "P" + std::to_string(i), i % 2 == 0 ? "1980-01-01" : "2001-06-01"),
              static_cast<std::uint64_t>(i + 1));
  }
  PatternQuery q;
  q.clazz = model("Person");
  q.filters.push_back(
      {model("birthDate"), PropertyFilter::Op::Greater, rdf::Term::literal("1999-12-27", ns::kXsdDate)});
  q.limit = 10;
  auto got = store.scan(q);
  REQUIRE(got.size() == 10);
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(got[i].values(model("birthDate"))->front().value() > "1999-12-27");
    if (i > 0) CHECK(got[i - 1].subject < got[i].subject);
  }
}

TEST_CASE("ensure_index: access plan, idempotence, equivalence with seq scan") {
  ClassTableAdapter store("ct");
  for (int i = 0; i < 200; ++i) {
    store.put(person(i, "P" + std::to_string(i),
                     std::to_string(1950 + i % 55) + "-03-0" + std::to_string(1 + i % 9)),
              static_cast<std::uint64_t>(i + 1));
  }
  PatternQuery q;
  q.clazz = model("Person");
  q.filters.push_back(
      {model("birthDate"), PropertyFilter::Op::Greater, rdf::Term::literal("1999-12-27", ns::kXsdDate)});

  CHECK(store.access_plan(q) == "seq-scan(" + model("Person") + ")");
  auto before = store.scan(q);

  store.ensure_index({model("birthDate"), IndexSpec::Kind::Ordered});
  CHECK(store.access_plan(q) == "index-range(" + model("birthDate") + ")");
  auto after = store.scan(q);
  CHECK(before == after);

  store.ensure_index({model("birthDate"), IndexSpec::Kind::Ordered});  // no-op
  CHECK(store.scan(q) == after);

  // equality via ordered index
  PatternQuery eq;
  eq.clazz = model("Person");
  eq.filters.push_back(
      {model("birthDate"), PropertyFilter::Op::Equals, rdf::Term::literal("1975-03-07", ns::kXsdDate)});
  CHECK(store.access_plan(eq) == "index-eq(" + model("birthDate") + ")");
  auto eq_rows = store.scan(eq);
  for (const auto& r : eq_rows) {
    CHECK(r.values(model("birthDate"))->front().value() == "1975-03-07");
  }

  // ordered index on IRI-valued property is rejected
  ClassTableAdapter bad("ct2");
  ObjectRecord rec = company(1, "Acme");
  rec.add(model("hq"), rdf::Term::iri(model("city1")));
  bad.put(rec, 1);
  CHECK_THROWS_AS(bad.ensure_index({model("hq"), IndexSpec::Kind::Ordered}), StorageError);
}

TEST_CASE("adapter equivalence: triple index and class table answer scans identically") {
  testgen::Rng rng(777);
  TripleIndexAdapter ti("ti");
  ClassTableAdapter ct("ct");
  ct.ensure_index({model("birthDate"), IndexSpec::Kind::Ordered});
  ct.ensure_index({model("score"), IndexSpec::Kind::Ordered});
  for (int i = 0; i < 300; ++i) {
    ObjectRecord rec = random_record(rng, i);
    ti.put(rec, static_cast<std::uint64_t>(i + 1));
    ct.put(rec, static_cast<std::uint64_t>(i + 1));
  }
  for (int iter = 0; iter < 200; ++iter) {
    PatternQuery q = random_query(rng);
    auto a = ti.scan(q);
    auto b = ct.scan(q);
    REQUIRE(a.size() == b.size());
    CHECK(a == b);
    CHECK(ti.count(q.clazz) == ct.count(q.clazz));
  }
}

TEST_CASE("persistence: records and indexes survive reopen") {
  auto dir = std::filesystem::temp_directory_path() / "graphmux-test-store";
  std::filesystem::remove_all(dir);

  {
    ClassTableAdapter store("ct", Persistence(dir, "class-table"));
    store.ensure_index({model("birthDate"), IndexSpec::Kind::Ordered});
    for (int i = 0; i < 20; ++i) {
      store.put(person(i, "P" + std::to_string(i), "1990-05-05"), static_cast<std::uint64_t>(i + 1));
    }
    store.remove(model("person3"));
  }
  {
    ClassTableAdapter store("ct", Persistence(dir, "class-table"));
    CHECK(store.count(model("Person")) == 19);
    CHECK(!store.get(model("person3")).has_value());
    auto got = store.get_versioned(model("person7"));
    REQUIRE(got.has_value());
    CHECK(got->second == 8);
    PatternQuery q;
    q.clazz = model("Person");
    q.filters.push_back({model("birthDate"), PropertyFilter::Op::Greater,
                         rdf::Term::literal("1980-01-01", ns::kXsdDate)});
    CHECK(store.access_plan(q) == "index-range(" + model("birthDate") + ")");
    CHECK(store.scan(q).size() == 19);
  }

  // triple index: records plus raw triples
  auto dir2 = std::filesystem::temp_directory_path() / "graphmux-test-ti";
  std::filesystem::remove_all(dir2);
  {
    TripleIndexAdapter store("default", Persistence(dir2, "triple-index"));
    store.put(company(1, "Acme"), 1);
    rdf::TripleSet raw;
    raw.insert(rdf::Triple(rdf::Term::iri(model("Company")), rdf::Term::iri(ns::kRdfsSubClassOf),
                           rdf::Term::iri(model("Organization"))));
    store.add_triples(raw.to_vector());
  }
  {
    TripleIndexAdapter store("default", Persistence(dir2, "triple-index"));
    CHECK(store.triple_count() == 3);
    CHECK(store.get(model("company1")).has_value());
    rdf::Term p = rdf::Term::iri(ns::kRdfsSubClassOf);
    CHECK(store.match(nullptr, &p, nullptr).size() == 1);
  }

  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(dir2);
}

TEST_CASE("snapshot compaction keeps recovery correct") {
  auto dir = std::filesystem::temp_directory_path() / "graphmux-test-snap";
  std::filesystem::remove_all(dir);
  {
    ClassTableAdapter store("ct", Persistence(dir, "class-table"));
    // force several snapshot cycles
    for (std::size_t i = 0; i < Persistence::kSnapshotEvery * 2 + 10; ++i) {
      store.put(person(static_cast<int>(i % 100), "P", "1990-01-01"), i + 1);
    }
  }
  {
    ClassTableAdapter store("ct", Persistence(dir, "class-table"));
    CHECK(store.count(model("Person")) == 100);
  }
  std::filesystem::remove_all(dir);
}
