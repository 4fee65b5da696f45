#pragma once

#include <memory>
#include <string>

#include "graphmux/storage/adapter.hpp"

namespace graphmux::storage {

/// Logical-data-mart adapter: individuals live on another platform instance
/// and are fetched on demand through its REST scan/object endpoints. Writes
/// are rejected (on-demand storages are read-only from this side).
class RemoteAdapter : public StorageAdapter {
 public:
  RemoteAdapter(std::string storage_id, std::string endpoint, int timeout_seconds = 10);
  ~RemoteAdapter() override;

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

  /// One cheap reachability probe (used at registration time).
  bool probe() const;

  const std::string& endpoint() const { return endpoint_; }

 private:
  struct Impl;

  std::string storage_id_;
  std::string endpoint_;
  int timeout_seconds_;
  std::unique_ptr<Impl> impl_;
};

std::string url_encode(const std::string& raw);

}  // namespace graphmux::storage
