#pragma once

#include <map>
#include <memory>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include "graphmux/storage/adapter.hpp"
#include "graphmux/storage/persistence.hpp"

namespace graphmux::storage {

/// Relational-style adapter: one partition (table) per class, one column per
/// property seen in any record of the class, multi-valued properties as
/// ordered value lists. Partitions keep records in canonical subject order;
/// equality/ordered property indexes serve filter pushdown, `contains` stays
/// a sequential column scan.
class ClassTableAdapter : public StorageAdapter {
 public:
  explicit ClassTableAdapter(std::string storage_id, Persistence persistence = {});

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

  /// Declared columns of a class partition (REST/metadata surface).
  std::vector<std::string> columns(const std::string& clazz) const;
  std::vector<IndexSpec> indexes(const std::string& clazz) const;

 private:
  struct StoredRecord {
    ObjectRecord record;
    std::uint64_t revision = 0;
  };

  // Candidates come from an index; every candidate is re-verified against
  // the actual record, so index lookups only need superset semantics.
  struct PropertyIndex {
    IndexSpec::Kind kind = IndexSpec::Kind::Equality;
    std::multimap<long double, std::string> numeric;  // numeric-typed values
    std::multimap<std::string, std::string> lexical;  // everything else
    bool has_numeric = false;
    bool has_non_numeric = false;
  };

  struct Partition {
    std::map<std::string, StoredRecord> records;  // subject IRI -> record
    std::set<std::string> columns;
    std::map<std::string, PropertyIndex> indexes;  // property -> index
  };

  void index_record_unlocked(Partition& part, const ObjectRecord& record);
  void unindex_record_unlocked(Partition& part, const ObjectRecord& record);
  void put_unlocked(const ObjectRecord& record, std::uint64_t revision);
  const PropertyIndex* pick_index(const Partition& part, const PatternQuery& query,
                                  const PropertyFilter** chosen) const;
  std::vector<std::string> dump_lines_unlocked() const;
  void apply_line(const std::string& line);

  std::string storage_id_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, Partition> partitions_;             // class IRI -> partition
  std::unordered_map<std::string, std::vector<std::string>> subject_classes_;
  std::map<std::string, IndexSpec::Kind> declared_indexes_;  // property -> kind
  Persistence persist_;
  bool recovering_ = false;
};

}  // namespace graphmux::storage
