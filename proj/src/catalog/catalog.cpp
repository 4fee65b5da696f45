#include "graphmux/catalog/catalog.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "graphmux/rdf/parser.hpp"
#include "graphmux/rdf/writer.hpp"
#include "graphmux/storage/class_table.hpp"
#include "graphmux/storage/remote.hpp"

namespace graphmux::catalog {

using nlohmann::json;
using storage::StorageDescriptor;

namespace {

constexpr const char* kCatalogHeader = "GMXCAT1";

json descriptor_to_json(const StorageDescriptor& d) {
  json j;
  j["id"] = d.id;
  j["kind"] = storage::to_string(d.kind);
  j["mode"] = storage::to_string(d.mode);
  j["status"] = storage::to_string(d.status);
  if (!d.endpoint.empty()) j["endpoint"] = d.endpoint;
  return j;
}

StorageDescriptor descriptor_from_json(const json& j) {
  StorageDescriptor d;
  d.id = j.at("id").get<std::string>();
  d.kind = storage::kind_from_string(j.at("kind").get<std::string>());
  d.mode = storage::mode_from_string(j.at("mode").get<std::string>());
  if (j.contains("status")) d.status = storage::status_from_string(j.at("status").get<std::string>());
  if (j.contains("endpoint")) d.endpoint = j.at("endpoint").get<std::string>();
  return d;
}

}  // namespace

std::string to_string(MigrationPhase phase) {
  switch (phase) {
    case MigrationPhase::Copying: return "copying";
    case MigrationPhase::Switching: return "switching";
    case MigrationPhase::Cleaning: return "cleaning";
    case MigrationPhase::Done: return "done";
    case MigrationPhase::Failed: return "failed";
  }
  return "?";
}

Catalog::Catalog(CatalogConfig cfg) : cfg_(std::move(cfg)) {
  state_ = std::make_shared<const CatalogState>();
  tbox_ = std::make_shared<const TBox>();

  StorageDescriptor def;
  def.id = kDefaultStorageId;
  def.kind = StorageDescriptor::Kind::TripleIndex;
  def.mode = StorageDescriptor::Mode::Materialized;

  auto store = std::make_unique<storage::TripleIndexAdapter>(
      def.id, storage_persistence(def.id, def.kind));
  default_store_ = store.get();
  adapters_[def.id] = std::move(store);

  CatalogState next;
  next.storages[def.id] = def;
  state_ = std::make_shared<const CatalogState>(std::move(next));  // not yet persisted
  recover();
}

Catalog::~Catalog() {
  for (auto& w : workers_) {
    if (w.joinable()) w.join();
  }
}

storage::Persistence Catalog::storage_persistence(const std::string& id,
                                                  StorageDescriptor::Kind kind) const {
  if (cfg_.data_dir.empty() || kind == StorageDescriptor::Kind::Remote) return {};
  return storage::Persistence(cfg_.data_dir / "storages" / id, storage::to_string(kind));
}

void Catalog::load_tbox(const rdf::TripleSet& schema) {
  auto tbox = std::make_shared<const TBox>(TBox::from_triples(schema));
  {
    std::lock_guard lock(mutex_);
    tbox_ = tbox;
    if (!cfg_.data_dir.empty()) {
      std::filesystem::create_directories(cfg_.data_dir);
      std::ofstream out(cfg_.data_dir / "tbox.nt", std::ios::trunc);
      out << rdf::serialize(schema, rdf::DocumentFormat::NTriples);
    }
  }
  // schema stays queryable through the default triple store
  default_store_->add_triples(schema.to_vector());
}

std::shared_ptr<const TBox> Catalog::tbox() const {
  std::lock_guard lock(mutex_);
  return tbox_;
}

std::unique_ptr<storage::StorageAdapter> Catalog::make_adapter(const StorageDescriptor& desc) {
  switch (desc.kind) {
    case StorageDescriptor::Kind::TripleIndex:
      return std::make_unique<storage::TripleIndexAdapter>(desc.id,
                                                           storage_persistence(desc.id, desc.kind));
    case StorageDescriptor::Kind::ClassTable:
      return std::make_unique<storage::ClassTableAdapter>(desc.id,
                                                          storage_persistence(desc.id, desc.kind));
    case StorageDescriptor::Kind::Remote:
      return std::make_unique<storage::RemoteAdapter>(desc.id, desc.endpoint,
                                                      cfg_.remote_timeout_seconds);
  }
  throw CatalogError("unknown-storage", "unhandled storage kind");
}

std::string Catalog::register_storage(const StorageDescriptor& desc) {
  desc.validate();
  auto adapter = make_adapter(desc);
  if (desc.kind == StorageDescriptor::Kind::Remote && cfg_.probe_remotes) {
    auto* remote = static_cast<storage::RemoteAdapter*>(adapter.get());
    if (!remote->probe()) {
      throw CatalogError("unreachable-endpoint",
                         "probe of " + desc.endpoint + " failed for storage " + desc.id);
    }
  }
  return register_storage_with_adapter(desc, std::move(adapter));
}

std::string Catalog::register_storage_with_adapter(
    StorageDescriptor desc, std::unique_ptr<storage::StorageAdapter> adapter) {
  desc.validate();
  std::lock_guard lock(mutex_);
  if (state_->storages.count(desc.id)) {
    throw CatalogError("duplicate-storage", "duplicate storage id '" + desc.id + "'");
  }
  adapters_[desc.id] = std::move(adapter);
  CatalogState next = *state_;
  next.storages[desc.id] = desc;
  swap_state_unlocked(std::move(next));
  return desc.id;
}

std::vector<StorageDescriptor> Catalog::list_storages() const {
  auto state = snapshot();
  std::vector<StorageDescriptor> out;
  out.reserve(state->storages.size());
  for (const auto& [id, desc] : state->storages) out.push_back(desc);
  return out;
}

void Catalog::set_storage_status(const std::string& id, StorageDescriptor::Status status) {
  std::lock_guard lock(mutex_);
  auto it = state_->storages.find(id);
  if (it == state_->storages.end()) {
    throw CatalogError("unknown-storage", "unknown storage '" + id + "'");
  }
  CatalogState next = *state_;
  next.storages[id].status = status;
  swap_state_unlocked(std::move(next));
}

storage::StorageAdapter* Catalog::adapter(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = adapters_.find(id);
  return it == adapters_.end() ? nullptr : it->second.get();
}

void Catalog::assign_class(const std::string& clazz, const std::vector<std::string>& storage_ids) {
  if (storage_ids.empty()) {
    throw CatalogError("empty-assignment",
                       "assignment needs at least one storage; use unassign instead");
  }
  std::lock_guard lock(mutex_);
  if (!tbox_->has_class(clazz)) {
    throw CatalogError("unknown-class", "class " + clazz + " is not declared in the TBox");
  }
  for (const auto& id : storage_ids) {
    auto it = state_->storages.find(id);
    if (it == state_->storages.end()) {
      throw CatalogError("unknown-storage", "unknown storage '" + id + "'");
    }
    if (it->second.status != StorageDescriptor::Status::Active) {
      throw CatalogError("storage-not-active", "storage '" + id + "' is not active");
    }
  }
  CatalogState next = *state_;
  next.assignments[clazz] = storage_ids;
  swap_state_unlocked(std::move(next));
}

void Catalog::unassign_class(const std::string& clazz) {
  std::lock_guard lock(mutex_);
  CatalogState next = *state_;
  next.assignments.erase(clazz);
  swap_state_unlocked(std::move(next));
}

std::shared_ptr<const CatalogState> Catalog::snapshot() const {
  std::lock_guard lock(mutex_);
  return state_;
}

std::vector<std::string> Catalog::read_storages(const CatalogState& state,
                                                const std::string& clazz) const {
  auto it = state.assignments.find(clazz);
  if (it == state.assignments.end() || it->second.empty()) return {kDefaultStorageId};
  return it->second;
}

std::vector<std::string> Catalog::write_storages(const CatalogState& state,
                                                 const std::string& clazz) const {
  std::vector<std::string> out;
  for (const auto& id : read_storages(state, clazz)) {
    auto desc = state.storages.find(id);
    if (desc != state.storages.end() &&
        desc->second.status == StorageDescriptor::Status::Draining) {
      continue;
    }
    out.push_back(id);
  }
  auto mig = state.migrations.find(clazz);
  if (mig != state.migrations.end()) {
    if (std::find(out.begin(), out.end(), mig->second.to) == out.end()) {
      out.push_back(mig->second.to);
    }
  }
  return out;
}

void Catalog::checked_put(const CatalogState& state, const std::string& storage_id,
                          const storage::ObjectRecord& record, std::uint64_t revision) {
  auto desc = state.storages.find(storage_id);
  if (desc == state.storages.end()) {
    throw storage::StorageError("unknown-storage", storage_id, "storage is not registered");
  }
  switch (desc->second.status) {
    case StorageDescriptor::Status::Offline:
      throw storage::StorageError("storage-offline", storage_id, "storage is offline");
    case StorageDescriptor::Status::Draining:
      throw storage::StorageError("storage-draining", storage_id, "storage is draining");
    case StorageDescriptor::Status::Active:
      break;
  }
  auto* a = adapter(storage_id);
  if (!a) throw storage::StorageError("unknown-storage", storage_id, "no adapter");
  a->put(record, revision);
}

void Catalog::swap_state_unlocked(CatalogState next) {
  state_ = std::make_shared<const CatalogState>(std::move(next));
  persist_unlocked();
}

void Catalog::persist_unlocked() const {
  if (cfg_.data_dir.empty()) return;
  std::filesystem::create_directories(cfg_.data_dir);
  auto tmp = cfg_.data_dir / "catalog.tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << kCatalogHeader << '\n';
    for (const auto& [id, desc] : state_->storages) {
      out << "storage " << descriptor_to_json(desc).dump() << '\n';
    }
    for (const auto& [clazz, ids] : state_->assignments) {
      json j;
      j["class"] = clazz;
      j["storages"] = ids;
      out << "assign " << j.dump() << '\n';
    }
    out.flush();
    if (!out.good()) throw CatalogError("persist-failed", "cannot write catalog document");
  }
  std::filesystem::rename(tmp, cfg_.data_dir / "catalog.txt");
}

void Catalog::recover() {
  if (cfg_.data_dir.empty()) return;

  auto tbox_file = cfg_.data_dir / "tbox.nt";
  if (std::filesystem::exists(tbox_file)) {
    std::ifstream in(tbox_file);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto schema = rdf::parse_document(text, rdf::DocumentFormat::NTriples);
    std::lock_guard lock(mutex_);
    tbox_ = std::make_shared<const TBox>(TBox::from_triples(schema));
    // triples are already in the default store via its own journal
  }

  auto file = cfg_.data_dir / "catalog.txt";
  std::ifstream in(file);
  if (!in.is_open()) return;
  std::string line;
  if (!std::getline(in, line) || line != kCatalogHeader) {
    throw CatalogError("persist-failed", "unrecognized catalog document header");
  }
  CatalogState next = *state_;
  while (std::getline(in, line)) {
    if (line.rfind("storage ", 0) == 0) {
      StorageDescriptor desc = descriptor_from_json(json::parse(line.substr(8)));
      if (desc.id == kDefaultStorageId) {
        next.storages[desc.id] = desc;
        continue;
      }
      next.storages[desc.id] = desc;
      adapters_[desc.id] = make_adapter(desc);
    } else if (line.rfind("assign ", 0) == 0) {
      json j = json::parse(line.substr(7));
      next.assignments[j.at("class").get<std::string>()] =
          j.at("storages").get<std::vector<std::string>>();
    }
  }
  std::lock_guard lock(mutex_);
  swap_state_unlocked(std::move(next));
}

MigrationJobInfo Catalog::info_of(const Job& job) const {
  MigrationJobInfo info;
  info.id = job.id;
  info.clazz = job.clazz;
  info.from = job.from;
  info.to = job.to;
  info.phase = job.phase.load();
  info.copied = job.copied.load();
  info.total = job.total.load();
  {
    std::lock_guard lock(job.error_mutex);
    info.error = job.error;
  }
  return info;
}

std::optional<MigrationJobInfo> Catalog::job_info(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = jobs_.find(id);
  if (it == jobs_.end()) return std::nullopt;
  return info_of(*it->second);
}

std::vector<MigrationJobInfo> Catalog::list_jobs() const {
  std::lock_guard lock(mutex_);
  std::vector<MigrationJobInfo> out;
  for (const auto& [id, job] : jobs_) out.push_back(info_of(*job));
  return out;
}

bool Catalog::wait_for_job(const std::string& id, std::chrono::milliseconds timeout) const {
  auto deadline = std::chrono::steady_clock::now() + timeout;
  while (std::chrono::steady_clock::now() < deadline) {
    auto info = job_info(id);
    if (!info) return false;
    if (info->phase == MigrationPhase::Done) return true;
    if (info->phase == MigrationPhase::Failed) return false;
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  return false;
}

}  // namespace graphmux::catalog
