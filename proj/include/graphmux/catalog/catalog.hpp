#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "graphmux/catalog/tbox.hpp"
#include "graphmux/storage/adapter.hpp"
#include "graphmux/storage/triple_index.hpp"

namespace graphmux::catalog {

struct CatalogError : std::runtime_error {
  CatalogError(std::string code, const std::string& message)
      : std::runtime_error(message), code(std::move(code)) {}

  std::string code;
};

/// Dual-write target while a class is being copied between storages.
struct MigrationState {
  std::string from;
  std::string to;

  bool operator==(const MigrationState& other) const = default;
};

/// Immutable catalog snapshot: queries plan against one of these and never
/// see a half-applied registry change.
struct CatalogState {
  std::map<std::string, storage::StorageDescriptor> storages;
  std::map<std::string, std::vector<std::string>> assignments;  // class -> storage ids
  std::map<std::string, MigrationState> migrations;             // class -> dual-write
};

enum class MigrationPhase { Copying, Switching, Cleaning, Done, Failed };

std::string to_string(MigrationPhase phase);

struct MigrationJobInfo {
  std::string id;
  std::string clazz;
  std::string from;
  std::string to;
  MigrationPhase phase = MigrationPhase::Copying;
  std::uint64_t copied = 0;
  std::uint64_t total = 0;
  std::string error;
};

struct CatalogConfig {
  std::filesystem::path data_dir;  // empty -> nothing persisted
  std::size_t migration_batch = 500;
  std::chrono::milliseconds migration_pause{2};
  // lets in-flight readers holding a pre-switch snapshot drain before the
  // source copy is deleted
  std::chrono::milliseconds migration_switch_grace{150};
  int remote_timeout_seconds = 10;
  bool probe_remotes = true;
};

/// TBox store, runtime storage registry, class assignment table, and live
/// redistribution. Registry and assignments mutate under one writer lock;
/// readers take lock-free-ish snapshots. Both are durable under data_dir.
class Catalog {
 public:
  static constexpr const char* kDefaultStorageId = "default";

  explicit Catalog(CatalogConfig cfg = {});
  ~Catalog();

  Catalog(const Catalog&) = delete;
  Catalog& operator=(const Catalog&) = delete;

  // -- schema
  void load_tbox(const rdf::TripleSet& schema);
  std::shared_ptr<const TBox> tbox() const;

  // -- registry
  std::string register_storage(const storage::StorageDescriptor& desc);
  /// Registration with a caller-supplied adapter (tests, fault injection);
  /// skips the remote reachability probe.
  std::string register_storage_with_adapter(storage::StorageDescriptor desc,
                                            std::unique_ptr<storage::StorageAdapter> adapter);
  std::vector<storage::StorageDescriptor> list_storages() const;
  void set_storage_status(const std::string& id, storage::StorageDescriptor::Status status);
  storage::StorageAdapter* adapter(const std::string& id) const;
  storage::TripleIndexAdapter* default_store() const { return default_store_; }

  // -- assignment
  void assign_class(const std::string& clazz, const std::vector<std::string>& storage_ids);
  void unassign_class(const std::string& clazz);
  std::shared_ptr<const CatalogState> snapshot() const;

  /// Storages a read of `clazz` consults, in assignment order (the default
  /// store when unassigned). Draining storages stay readable.
  std::vector<std::string> read_storages(const CatalogState& state, const std::string& clazz) const;

  /// Storages a write of `clazz` must reach: the assignment minus draining
  /// storages, plus the dual-write target of a running migration.
  std::vector<std::string> write_storages(const CatalogState& state, const std::string& clazz) const;

  /// Status-checked write to one storage (offline/draining rejected).
  void checked_put(const CatalogState& state, const std::string& storage_id,
                   const storage::ObjectRecord& record, std::uint64_t revision);

  // -- migration
  std::string redistribute(const std::string& clazz, const std::string& from,
                           const std::string& to);
  std::optional<MigrationJobInfo> job_info(const std::string& id) const;
  std::vector<MigrationJobInfo> list_jobs() const;
  bool wait_for_job(const std::string& id, std::chrono::milliseconds timeout) const;

 private:
  struct Job {
    std::string id;
    std::string clazz;
    std::string from;
    std::string to;
    std::atomic<MigrationPhase> phase{MigrationPhase::Copying};
    std::atomic<std::uint64_t> copied{0};
    std::atomic<std::uint64_t> total{0};
    mutable std::mutex error_mutex;
    std::string error;
  };

  void run_migration(std::shared_ptr<Job> job);
  void swap_state_unlocked(CatalogState next);
  void persist_unlocked() const;
  void recover();
  std::unique_ptr<storage::StorageAdapter> make_adapter(const storage::StorageDescriptor& desc);
  storage::Persistence storage_persistence(const std::string& id,
                                           storage::StorageDescriptor::Kind kind) const;
  MigrationJobInfo info_of(const Job& job) const;

  CatalogConfig cfg_;
  mutable std::mutex mutex_;
  std::shared_ptr<const CatalogState> state_;
  std::shared_ptr<const TBox> tbox_;
  std::map<std::string, std::unique_ptr<storage::StorageAdapter>> adapters_;
  storage::TripleIndexAdapter* default_store_ = nullptr;
  std::map<std::string, std::shared_ptr<Job>> jobs_;
  std::vector<std::thread> workers_;
  std::atomic<std::uint64_t> job_seq_{0};
};

}  // namespace graphmux::catalog
