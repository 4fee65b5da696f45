#include <doctest.h>

#include <filesystem>
#include <set>

#include "generators.hpp"
#include "graphmux/catalog/catalog.hpp"
#include "graphmux/rdf/namespaces.hpp"
#include "graphmux/rdf/parser.hpp"
#include "graphmux/storage/class_table.hpp"

using namespace graphmux;
using namespace graphmux::catalog;
using graphmux::storage::StorageDescriptor;
namespace ns = graphmux::rdf::ns;

namespace {

std::string model(const std::string& local) { return "http://example.org/model#" + local; }

rdf::TripleSet benchmark_schema() {
  return rdf::parse_document(
      "@prefix : <http://example.org/model#> .\n"
      "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
      ":Organization a rdfs:Class .\n"
      ":Company a rdfs:Class ; rdfs:subClassOf :Organization .\n"
      ":Person a rdfs:Class .\n"
      ":Project a rdfs:Class .\n",
      rdf::DocumentFormat::TurtleSubset);
}

storage::ObjectRecord company(int i) {
  storage::ObjectRecord rec;
  rec.subject = model("company" + std::to_string(i));
  rec.add_class(model("Company"));
  rec.add(ns::kRdfsLabel, rdf::Term::literal("Company " + std::to_string(i)));
  return rec;
}

StorageDescriptor class_table_desc(const std::string& id) {
  StorageDescriptor d;
  d.id = id;
  d.kind = StorageDescriptor::Kind::ClassTable;
  return d;
}

}  // namespace

TEST_CASE("load_tbox: classes, edges, cycles") {
  Catalog cat;
  cat.load_tbox(benchmark_schema());
  auto tbox = cat.tbox();
  CHECK(tbox->classes().size() == 4);
  CHECK(tbox->has_class(model("Company")));
  CHECK(tbox->subclass_closure(model("Organization")) ==
        std::set<std::string>{model("Organization"), model("Company")});
  CHECK(tbox->subclass_closure(model("Company")) == std::set<std::string>{model("Company")});
  CHECK(tbox->superclasses(model("Company")) ==
        std::set<std::string>{model("Company"), model("Organization")});

  auto cyclic = rdf::parse_document(
      "@prefix : <http://x/> .\n"
      "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
      ":A a rdfs:Class ; rdfs:subClassOf :B .\n"
      ":B a rdfs:Class ; rdfs:subClassOf :A .\n",
      rdf::DocumentFormat::TurtleSubset);
  CHECK_THROWS_AS(TBox::from_triples(cyclic), TBoxError);

  auto dangling = rdf::parse_document(
      "@prefix : <http://x/> .\n"
      "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
      ":A a rdfs:Class ; rdfs:subClassOf :Missing .\n",
      rdf::DocumentFormat::TurtleSubset);
  CHECK_THROWS_AS(TBox::from_triples(dangling), TBoxError);

  CHECK_THROWS_AS(tbox->subclass_closure(model("Nope")), TBoxError);
}

TEST_CASE("subclass closure equals brute-force reachability on random DAGs") {
  testgen::Rng rng(2024);
  for (int iter = 0; iter < 20; ++iter) {
    const int n = 20;
    // edges i -> j (i subClassOf j) only for i > j keeps it acyclic
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) {
        if (rng.chance(0.15)) edges.push_back({i, j});
      }
    }
    rdf::TripleSet schema;
    for (int i = 0; i < n; ++i) {
      schema.insert(rdf::Triple(rdf::Term::iri(model("C" + std::to_string(i))),
                                rdf::Term::iri(ns::kRdfType), rdf::Term::iri(ns::kRdfsClass)));
    }
    for (auto [i, j] : edges) {
      schema.insert(rdf::Triple(rdf::Term::iri(model("C" + std::to_string(i))),
                                rdf::Term::iri(ns::kRdfsSubClassOf),
                                rdf::Term::iri(model("C" + std::to_string(j)))));
    }
    TBox tbox = TBox::from_triples(schema);

    for (int probe = 0; probe < 5; ++probe) {
      int target = static_cast<int>(rng.below(n));
      // oracle: fixpoint over the child relation
      std::set<int> expected{target};
      bool grew = true;
      while (grew) {
        grew = false;
        for (auto [i, j] : edges) {
          if (expected.count(j) && !expected.count(i)) {
            expected.insert(i);
            grew = true;
          }
        }
      }
      std::set<std::string> expected_iris;
      for (int i : expected) expected_iris.insert(model("C" + std::to_string(i)));
      CHECK(tbox.subclass_closure(model("C" + std::to_string(target))) == expected_iris);
    }
  }
}

TEST_CASE("registry: registration, duplicates, listing") {
  Catalog cat;
  cat.load_tbox(benchmark_schema());
  cat.register_storage(class_table_desc("pg-a"));
  auto storages = cat.list_storages();
  REQUIRE(storages.size() == 2);  // default + pg-a
  CHECK(storages[0].id == Catalog::kDefaultStorageId);
  CHECK(storages[1].id == "pg-a");
  CHECK_THROWS_AS(cat.register_storage(class_table_desc("pg-a")), CatalogError);

  StorageDescriptor bad;
  bad.id = "r1";
  bad.kind = StorageDescriptor::Kind::Remote;
  bad.mode = StorageDescriptor::Mode::OnDemand;
  bad.endpoint = "http://127.0.0.1:1";  // nothing listens there
  CHECK_THROWS_AS(cat.register_storage(bad), CatalogError);
}

TEST_CASE("assignment and routing") {
  Catalog cat;
  cat.load_tbox(benchmark_schema());
  cat.register_storage(class_table_desc("pg-a"));
  cat.register_storage(class_table_desc("pg-b"));

  CHECK_THROWS_AS(cat.assign_class(model("Nope"), {"pg-a"}), CatalogError);
  CHECK_THROWS_AS(cat.assign_class(model("Company"), {}), CatalogError);
  CHECK_THROWS_AS(cat.assign_class(model("Company"), {"ghost"}), CatalogError);

  cat.assign_class(model("Person"), {"pg-a", "pg-b"});
  auto state = cat.snapshot();
  CHECK(cat.read_storages(*state, model("Person")) == std::vector<std::string>{"pg-a", "pg-b"});
  CHECK(cat.read_storages(*state, model("Project")) ==
        std::vector<std::string>{Catalog::kDefaultStorageId});
  CHECK(cat.write_storages(*state, model("Person")) == std::vector<std::string>{"pg-a", "pg-b"});

  // draining: still read, never written
  cat.set_storage_status("pg-b", StorageDescriptor::Status::Draining);
  state = cat.snapshot();
  CHECK(cat.read_storages(*state, model("Person")) == std::vector<std::string>{"pg-a", "pg-b"});
  CHECK(cat.write_storages(*state, model("Person")) == std::vector<std::string>{"pg-a"});
  CHECK_THROWS_AS(cat.checked_put(*state, "pg-b", company(1), 1), storage::StorageError);

  cat.unassign_class(model("Person"));
  state = cat.snapshot();
  CHECK(cat.read_storages(*state, model("Person")) ==
        std::vector<std::string>{Catalog::kDefaultStorageId});
}

TEST_CASE("redistribute: no loss, no duplication, phases in order") {
  CatalogConfig cfg;
  cfg.migration_batch = 100;
  cfg.migration_pause = std::chrono::milliseconds(1);
  cfg.migration_switch_grace = std::chrono::milliseconds(10);
  Catalog cat(cfg);
  cat.load_tbox(benchmark_schema());
  cat.register_storage(class_table_desc("pg-a"));
  cat.register_storage(class_table_desc("pg-b"));
  cat.assign_class(model("Company"), {"pg-a"});

  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    auto state = cat.snapshot();
    for (const auto& id : cat.write_storages(*state, model("Company"))) {
      cat.checked_put(*state, id, company(i), static_cast<std::uint64_t>(i + 1));
    }
  }
  CHECK(cat.adapter("pg-a")->count(model("Company")) == n);

  CHECK_THROWS_AS(cat.redistribute(model("Company"), "pg-a", "ghost"), CatalogError);
  CHECK_THROWS_AS(cat.redistribute(model("Project"), "pg-a", "pg-b"), CatalogError);

  auto job_id = cat.redistribute(model("Company"), "pg-a", "pg-b");
  std::set<std::string> phases_seen;

  // reads must observe exactly n distinct subjects at every instant
  while (true) {
    auto info = cat.job_info(job_id);
    REQUIRE(info.has_value());
    phases_seen.insert(to_string(info->phase));
    auto state = cat.snapshot();
    std::set<std::string> subjects;
    for (const auto& id : cat.read_storages(*state, model("Company"))) {
      for (const auto& s : cat.adapter(id)->class_subjects(model("Company"))) subjects.insert(s);
    }
    CHECK(subjects.size() == n);
    if (info->phase == MigrationPhase::Done || info->phase == MigrationPhase::Failed) break;
    std::this_thread::sleep_for(std::chrono::milliseconds(2));
  }

  auto info = cat.job_info(job_id);
  CHECK(info->phase == MigrationPhase::Done);
  CHECK(info->copied == n);
  CHECK(info->total == n);
  CHECK(cat.adapter("pg-b")->count(model("Company")) == n);
  CHECK(cat.adapter("pg-a")->count(model("Company")) == 0);
  auto state = cat.snapshot();
  CHECK(cat.read_storages(*state, model("Company")) == std::vector<std::string>{"pg-b"});

  // empty-class migration completes immediately with total 0
  cat.assign_class(model("Project"), {"pg-a"});
  auto empty_job = cat.redistribute(model("Project"), "pg-a", "pg-b");
  CHECK(cat.wait_for_job(empty_job, std::chrono::seconds(5)));
  auto empty_info = cat.job_info(empty_job);
  CHECK(empty_info->total == 0);
  CHECK(empty_info->phase == MigrationPhase::Done);
}

TEST_CASE("registry and assignments survive restart") {
  auto dir = std::filesystem::temp_directory_path() / "graphmux-test-catalog";
  std::filesystem::remove_all(dir);

  CatalogConfig cfg;
  cfg.data_dir = dir;
  {
    Catalog cat(cfg);
    cat.load_tbox(benchmark_schema());
    cat.register_storage(class_table_desc("pg-a"));
    cat.assign_class(model("Company"), {"pg-a"});
    auto state = cat.snapshot();
    cat.checked_put(*state, "pg-a", company(7), 1);
  }
  {
    Catalog cat(cfg);
    auto tbox = cat.tbox();
    CHECK(tbox->has_class(model("Company")));
    auto storages = cat.list_storages();
    REQUIRE(storages.size() == 2);
    CHECK(storages[1].id == "pg-a");
    auto state = cat.snapshot();
    CHECK(cat.read_storages(*state, model("Company")) == std::vector<std::string>{"pg-a"});
    auto rec = cat.adapter("pg-a")->get(model("company7"));
    REQUIRE(rec.has_value());
    // schema triples are back in the default store too
    rdf::Term p = rdf::Term::iri(ns::kRdfsSubClassOf);
    CHECK(cat.default_store()->match(nullptr, &p, nullptr).size() == 1);
  }
  std::filesystem::remove_all(dir);
}
