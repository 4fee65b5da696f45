#include "graphmux/storage/class_table.hpp"

#include <algorithm>
#include <mutex>

#include "graphmux/rdf/datatypes.hpp"
#include "graphmux/rdf/namespaces.hpp"
#include "graphmux/storage/record_io.hpp"

namespace graphmux::storage {

namespace ns = rdf::ns;

ClassTableAdapter::ClassTableAdapter(std::string storage_id, Persistence persistence)
    : storage_id_(std::move(storage_id)), persist_(std::move(persistence)) {
  recovering_ = true;
  for (const auto& line : persist_.recover()) apply_line(line);
  recovering_ = false;
}

void ClassTableAdapter::index_record_unlocked(Partition& part, const ObjectRecord& record) {
  for (const auto& [property, values] : record.properties) {
    part.columns.insert(property);
    auto declared = declared_indexes_.find(property);
    if (declared == declared_indexes_.end()) continue;
    PropertyIndex& idx = part.indexes[property];
    idx.kind = declared->second;
    for (const auto& v : values) {
      if (v.is_literal() && rdf::is_numeric_datatype(v.datatype())) {
        auto num = rdf::parse_numeric(v.value());
        if (num) {
          idx.numeric.emplace(*num, record.subject);
          idx.has_numeric = true;
          continue;
        }
      }
      idx.lexical.emplace(v.value(), record.subject);
      idx.has_non_numeric = true;
    }
  }
}

void ClassTableAdapter::unindex_record_unlocked(Partition& part, const ObjectRecord& record) {
  auto erase_entries = [&](auto& map, const auto& key) {
    auto [lo, hi] = map.equal_range(key);
    for (auto it = lo; it != hi;) {
      if (it->second == record.subject) {
        it = map.erase(it);
      } else {
        ++it;
      }
    }
  };
  for (const auto& [property, values] : record.properties) {
    auto idx = part.indexes.find(property);
    if (idx == part.indexes.end()) continue;
    for (const auto& v : values) {
      if (v.is_literal() && rdf::is_numeric_datatype(v.datatype())) {
        auto num = rdf::parse_numeric(v.value());
        if (num) {
          erase_entries(idx->second.numeric, *num);
          continue;
        }
      }
      erase_entries(idx->second.lexical, v.value());
    }
  }
}

void ClassTableAdapter::put_unlocked(const ObjectRecord& record, std::uint64_t revision) {
  auto prev_classes = subject_classes_.find(record.subject);
  if (prev_classes != subject_classes_.end()) {
    // revision guard: the newest write wins regardless of arrival order
    for (const auto& c : prev_classes->second) {
      auto part = partitions_.find(c);
      if (part == partitions_.end()) continue;
      auto it = part->second.records.find(record.subject);
      if (it != part->second.records.end() && it->second.revision > revision) return;
      break;
    }
    for (const auto& c : prev_classes->second) {
      auto part = partitions_.find(c);
      if (part == partitions_.end()) continue;
      auto it = part->second.records.find(record.subject);
      if (it != part->second.records.end()) {
        unindex_record_unlocked(part->second, it->second.record);
        part->second.records.erase(it);
      }
    }
  }
  for (const auto& c : record.classes) {
    Partition& part = partitions_[c];
    part.records[record.subject] = {record, revision};
    index_record_unlocked(part, record);
  }
  subject_classes_[record.subject] = record.classes;
}

void ClassTableAdapter::put(const ObjectRecord& record, std::uint64_t revision) {
  std::unique_lock lock(mutex_);
  put_unlocked(record, revision);
  if (!recovering_) {
    persist_.append("P " + std::to_string(revision) + " " + record_to_line(record));
    persist_.maybe_snapshot([this] { return dump_lines_unlocked(); });
  }
}

bool ClassTableAdapter::remove(const std::string& subject) {
  std::unique_lock lock(mutex_);
  auto it = subject_classes_.find(subject);
  if (it == subject_classes_.end()) return false;
  for (const auto& c : it->second) {
    auto part = partitions_.find(c);
    if (part == partitions_.end()) continue;
    auto rec = part->second.records.find(subject);
    if (rec != part->second.records.end()) {
      unindex_record_unlocked(part->second, rec->second.record);
      part->second.records.erase(rec);
    }
  }
  subject_classes_.erase(it);
  if (!recovering_) persist_.append("D " + subject);
  return true;
}

std::optional<ObjectRecord> ClassTableAdapter::get(const std::string& subject) const {
  auto v = get_versioned(subject);
  if (!v) return std::nullopt;
  return v->first;
}

std::optional<std::pair<ObjectRecord, std::uint64_t>> ClassTableAdapter::get_versioned(
    const std::string& subject) const {
  std::shared_lock lock(mutex_);
  auto it = subject_classes_.find(subject);
  if (it == subject_classes_.end() || it->second.empty()) return std::nullopt;
  auto part = partitions_.find(it->second.front());
  if (part == partitions_.end()) return std::nullopt;
  auto rec = part->second.records.find(subject);
  if (rec == part->second.records.end()) return std::nullopt;
  return std::make_pair(rec->second.record, rec->second.revision);
}

const ClassTableAdapter::PropertyIndex* ClassTableAdapter::pick_index(
    const Partition& part, const PatternQuery& query, const PropertyFilter** chosen) const {
  // equality lookups first, then ranges; contains/exists never use an index
  for (auto wanted : {PropertyFilter::Op::Equals, PropertyFilter::Op::Less,
                      PropertyFilter::Op::Greater}) {
    for (const auto& f : query.filters) {
      if (f.op != wanted) continue;
      auto it = part.indexes.find(f.property);
      if (it == part.indexes.end()) continue;
      if (it->second.kind == IndexSpec::Kind::SubstringScan) continue;
      if (wanted != PropertyFilter::Op::Equals && it->second.kind != IndexSpec::Kind::Ordered) {
        continue;
      }
      // mixed-type partitions fall back to a scan when the constant's side
      // of the order cannot be served from one map
      bool constant_numeric =
          f.value.is_literal() && rdf::is_numeric_datatype(f.value.datatype());
      if (wanted != PropertyFilter::Op::Equals && !constant_numeric && it->second.has_numeric) {
        continue;
      }
      *chosen = &f;
      return &it->second;
    }
  }
  return nullptr;
}

std::vector<ObjectRecord> ClassTableAdapter::scan(const PatternQuery& query) const {
  std::shared_lock lock(mutex_);
  std::vector<ObjectRecord> out;
  auto part_it = partitions_.find(query.clazz);
  if (part_it == partitions_.end()) return out;
  const Partition& part = part_it->second;

  const PropertyFilter* chosen = nullptr;
  const PropertyIndex* index = pick_index(part, query, &chosen);

  auto emit_windowed = [&](const auto& subjects) {
    std::uint64_t skipped = 0;
    for (const auto& subject : subjects) {
      auto rec = part.records.find(subject);
      if (rec == part.records.end()) continue;
      if (!record_matches_all(rec->second.record, query.filters)) continue;
      if (skipped < query.offset) {
        ++skipped;
        continue;
      }
      out.push_back(rec->second.record);
      if (query.limit && out.size() >= *query.limit) break;
    }
  };

  if (!index) {
    std::uint64_t skipped = 0;
    for (const auto& [subject, stored] : part.records) {
      if (!record_matches_all(stored.record, query.filters)) continue;
      if (skipped < query.offset) {
        ++skipped;
        continue;
      }
      out.push_back(stored.record);
      if (query.limit && out.size() >= *query.limit) break;
    }
    return out;
  }

  // candidate subjects from the index, deduplicated and in canonical order
  std::set<std::string> candidates;
  bool constant_numeric =
      chosen->value.is_literal() && rdf::is_numeric_datatype(chosen->value.datatype());
  auto numeric_const = constant_numeric ? rdf::parse_numeric(chosen->value.value()) : std::nullopt;

  switch (chosen->op) {
    case PropertyFilter::Op::Equals: {
      if (numeric_const) {
        auto [lo, hi] = index->numeric.equal_range(*numeric_const);
        for (auto it = lo; it != hi; ++it) candidates.insert(it->second);
      }
      auto [lo, hi] = index->lexical.equal_range(chosen->value.value());
      for (auto it = lo; it != hi; ++it) candidates.insert(it->second);
      break;
    }
    case PropertyFilter::Op::Less: {
      if (numeric_const) {
        for (auto it = index->numeric.begin();
             it != index->numeric.end() && it->first < *numeric_const; ++it) {
          candidates.insert(it->second);
        }
      }
      for (auto it = index->lexical.begin(),
                end = index->lexical.lower_bound(chosen->value.value());
           it != end; ++it) {
        candidates.insert(it->second);
      }
      break;
    }
    case PropertyFilter::Op::Greater: {
      if (numeric_const) {
        for (auto it = index->numeric.upper_bound(*numeric_const); it != index->numeric.end();
             ++it) {
          candidates.insert(it->second);
        }
      }
      for (auto it = index->lexical.upper_bound(chosen->value.value());
           it != index->lexical.end(); ++it) {
        candidates.insert(it->second);
      }
      break;
    }
    default:
      break;
  }
  emit_windowed(candidates);
  return out;
}

std::size_t ClassTableAdapter::count(const std::string& clazz) const {
  std::shared_lock lock(mutex_);
  auto it = partitions_.find(clazz);
  return it == partitions_.end() ? 0 : it->second.records.size();
}

std::vector<std::string> ClassTableAdapter::class_subjects(const std::string& clazz) const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  auto it = partitions_.find(clazz);
  if (it == partitions_.end()) return out;
  out.reserve(it->second.records.size());
  for (const auto& [subject, stored] : it->second.records) out.push_back(subject);
  return out;
}

void ClassTableAdapter::ensure_index(const IndexSpec& spec) {
  std::unique_lock lock(mutex_);
  auto declared = declared_indexes_.find(spec.property);
  if (declared != declared_indexes_.end() && declared->second == spec.kind) return;  // idempotent

  if (spec.kind == IndexSpec::Kind::Ordered) {
    // ordered indexes require comparable values (date/dateTime/numeric/string)
    for (const auto& [clazz, part] : partitions_) {
      for (const auto& [subject, stored] : part.records) {
        const auto* vals = stored.record.values(spec.property);
        if (!vals) continue;
        for (const auto& v : *vals) {
          if (!v.is_literal() || !rdf::is_comparable_datatype(v.datatype())) {
            throw StorageError("index-not-comparable", storage_id_,
                               "ordered index on " + spec.property +
                                   " rejected: non-comparable value on " + subject);
          }
        }
      }
    }
  }

  declared_indexes_[spec.property] = spec.kind;
  for (auto& [clazz, part] : partitions_) {
    PropertyIndex fresh;
    fresh.kind = spec.kind;
    part.indexes[spec.property] = std::move(fresh);
    PropertyIndex& idx = part.indexes[spec.property];
    for (const auto& [subject, stored] : part.records) {
      const auto* vals = stored.record.values(spec.property);
      if (!vals) continue;
      for (const auto& v : *vals) {
        if (v.is_literal() && rdf::is_numeric_datatype(v.datatype())) {
          auto num = rdf::parse_numeric(v.value());
          if (num) {
            idx.numeric.emplace(*num, subject);
            idx.has_numeric = true;
            continue;
          }
        }
        idx.lexical.emplace(v.value(), subject);
        idx.has_non_numeric = true;
      }
    }
  }
  if (!recovering_) persist_.append("X " + to_string(spec.kind) + " " + spec.property);
}

std::string ClassTableAdapter::access_plan(const PatternQuery& query) const {
  std::shared_lock lock(mutex_);
  auto part_it = partitions_.find(query.clazz);
  if (part_it == partitions_.end()) return "seq-scan(" + query.clazz + ")";
  const PropertyFilter* chosen = nullptr;
  const PropertyIndex* index = pick_index(part_it->second, query, &chosen);
  if (!index) return "seq-scan(" + query.clazz + ")";
  if (chosen->op == PropertyFilter::Op::Equals) return "index-eq(" + chosen->property + ")";
  return "index-range(" + chosen->property + ")";
}

std::vector<std::string> ClassTableAdapter::columns(const std::string& clazz) const {
  std::shared_lock lock(mutex_);
  auto it = partitions_.find(clazz);
  if (it == partitions_.end()) return {};
  return {it->second.columns.begin(), it->second.columns.end()};
}

std::vector<IndexSpec> ClassTableAdapter::indexes(const std::string& clazz) const {
  std::shared_lock lock(mutex_);
  std::vector<IndexSpec> out;
  auto it = partitions_.find(clazz);
  if (it == partitions_.end()) return out;
  for (const auto& [property, idx] : it->second.indexes) out.push_back({property, idx.kind});
  return out;
}

std::vector<std::string> ClassTableAdapter::dump_lines_unlocked() const {
  std::vector<std::string> lines;
  for (const auto& [property, kind] : declared_indexes_) {
    lines.push_back("X " + to_string(kind) + " " + property);
  }
  std::set<std::string> dumped;
  for (const auto& [clazz, part] : partitions_) {
    for (const auto& [subject, stored] : part.records) {
      if (!dumped.insert(subject).second) continue;
      lines.push_back("P " + std::to_string(stored.revision) + " " +
                      record_to_line(stored.record));
    }
  }
  return lines;
}

void ClassTableAdapter::apply_line(const std::string& line) {
  if (line.size() < 2) return;
  char tag = line[0];
  std::string rest = line.substr(2);
  if (tag == 'P') {
    auto space = rest.find(' ');
    put(record_from_line(rest.substr(space + 1)), std::stoull(rest.substr(0, space)));
  } else if (tag == 'D') {
    remove(rest);
  } else if (tag == 'X') {
    auto space = rest.find(' ');
    ensure_index({rest.substr(space + 1), index_kind_from_string(rest.substr(0, space))});
  }
}

}  // namespace graphmux::storage
