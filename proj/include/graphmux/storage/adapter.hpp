#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "graphmux/storage/descriptor.hpp"
#include "graphmux/storage/pattern_query.hpp"
#include "graphmux/storage/record.hpp"

namespace graphmux::storage {

/// The unified adapter contract every storage implements. Reads are safe
/// concurrently; writes are serialized per adapter. `revision` is a
/// monotonic stamp assigned by the write path — an adapter keeps the
/// highest-revision record per subject, which makes migration copies safe
/// against concurrent dual writes.
class StorageAdapter {
 public:
  virtual ~StorageAdapter() = default;

  /// Full upsert: replaces all prior properties of the subject.
  virtual void put(const ObjectRecord& record, std::uint64_t revision) = 0;

  /// Remove a subject; false when it was absent.
  virtual bool remove(const std::string& subject) = 0;

  virtual std::optional<ObjectRecord> get(const std::string& subject) const = 0;
  virtual std::optional<std::pair<ObjectRecord, std::uint64_t>> get_versioned(
      const std::string& subject) const = 0;

  /// Records of query.clazz satisfying every filter, in canonical subject
  /// order, after offset/limit. Unknown class yields an empty result.
  virtual std::vector<ObjectRecord> scan(const PatternQuery& query) const = 0;

  /// Exact number of individuals of the class on this storage.
  virtual std::size_t count(const std::string& clazz) const = 0;

  /// All subjects of a class in canonical order (migration enumeration).
  virtual std::vector<std::string> class_subjects(const std::string& clazz) const = 0;

  virtual void ensure_index(const IndexSpec& spec) = 0;

  /// Human-readable access path the adapter would take for this query,
  /// e.g. "index-range(<p>)", "index-eq(<p>)", "seq-scan", "triple-scan".
  virtual std::string access_plan(const PatternQuery& query) const = 0;
};

}  // namespace graphmux::storage
