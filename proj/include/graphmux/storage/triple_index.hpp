#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <shared_mutex>
#include <unordered_map>

#include "graphmux/storage/adapter.hpp"
#include "graphmux/storage/persistence.hpp"
#include "graphmux/rdf/triple_set.hpp"

namespace graphmux::storage {

/// The built-in triple store: an interned term dictionary plus SPO/POS/OSP
/// permutation indexes over id-triples. Doubles as a storage adapter (records
/// are expanded to triples; a verbatim copy is kept so get() returns exactly
/// what was put) and as the raw pattern-matching source for BGP evaluation.
class TripleIndexAdapter : public StorageAdapter {
 public:
  explicit TripleIndexAdapter(std::string storage_id, Persistence persistence = {});

  void put(const ObjectRecord& record, std::uint64_t revision) override;
  bool remove(const std::string& subject) override;
  std::optional<ObjectRecord> get(const std::string& subject) const override;
  std::optional<std::pair<ObjectRecord, std::uint64_t>> get_versioned(
      const std::string& subject) const override;
  std::vector<ObjectRecord> scan(const PatternQuery& query) const override;
  std::size_t count(const std::string& clazz) const override;
  std::vector<std::string> class_subjects(const std::string& clazz) const override;
  void ensure_index(const IndexSpec& spec) override;
  std::string access_plan(const PatternQuery& query) const override;

  /// All triples matching the bound positions, served from the permutation
  /// index whose leading bound prefix is longest.
  std::vector<rdf::Triple> match(const rdf::Term* s, const rdf::Term* p,
                                 const rdf::Term* o) const;

  /// Raw triple load (schema documents, blank-subject data). Not reflected
  /// in verbatim records.
  void add_triples(const std::vector<rdf::Triple>& triples);

  std::size_t triple_count() const;

 private:
  using IdTriple = std::array<std::uint32_t, 3>;  // always (s, p, o)
  static constexpr std::uint32_t kUnbound = 0xFFFFFFFF;

  // Orders id-triples by the canonical term order of the rotated positions;
  // kUnbound sorts below everything (probe sentinels only).
  struct RotatedLess {
    const TripleIndexAdapter* self;
    int p0, p1, p2;
    bool operator()(const IdTriple& a, const IdTriple& b) const;
  };
  using Index = std::set<IdTriple, RotatedLess>;

  std::uint32_t intern(const rdf::Term& t);
  std::optional<std::uint32_t> find_id(const rdf::Term& t) const;
  const rdf::Term& term(std::uint32_t id) const { return *terms_[id]; }

  bool insert_triple_unlocked(const rdf::Triple& t);
  void erase_subject_triples_unlocked(std::uint32_t subject_id);
  std::optional<ObjectRecord> get_unlocked(const std::string& subject) const;
  std::vector<std::uint32_t> class_subject_ids_unlocked(const std::string& clazz) const;
  void collect_range(const Index& index, const IdTriple& probe, int bound,
                     std::vector<IdTriple>& out) const;
  std::vector<std::string> dump_lines_unlocked() const;
  void apply_line(const std::string& line);

  std::string storage_id_;
  mutable std::shared_mutex mutex_;

  std::map<rdf::Term, std::uint32_t, rdf::TermLess> term_ids_;
  std::vector<const rdf::Term*> terms_;
  std::uint32_t rdf_type_id_;

  Index spo_;
  Index pos_;
  Index osp_;
  std::unordered_map<std::uint32_t, std::size_t> class_counts_;
  std::map<std::string, std::pair<ObjectRecord, std::uint64_t>> records_;
  Persistence persist_;
  bool recovering_ = false;
};

}  // namespace graphmux::storage
