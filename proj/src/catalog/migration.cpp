#include <algorithm>

#include "graphmux/catalog/catalog.hpp"

namespace graphmux::catalog {

using storage::StorageDescriptor;

std::string Catalog::redistribute(const std::string& clazz, const std::string& from,
                                  const std::string& to) {
  std::lock_guard lock(mutex_);
  auto from_desc = state_->storages.find(from);
  auto to_desc = state_->storages.find(to);
  if (from_desc == state_->storages.end()) {
    throw CatalogError("unknown-storage", "unknown source storage '" + from + "'");
  }
  if (to_desc == state_->storages.end()) {
    throw CatalogError("unknown-storage", "unknown target storage '" + to + "'");
  }
  if (from == to) throw CatalogError("bad-migration", "source and target are the same storage");
  if (to_desc->second.status != StorageDescriptor::Status::Active) {
    throw CatalogError("storage-not-active", "target storage '" + to + "' is not active");
  }
  auto assigned = state_->assignments.find(clazz);
  if (assigned == state_->assignments.end() ||
      std::find(assigned->second.begin(), assigned->second.end(), from) ==
          assigned->second.end()) {
    throw CatalogError("not-assigned", "class " + clazz + " is not assigned to '" + from + "'");
  }
  for (const auto& [id, job] : jobs_) {
    if (job->clazz == clazz) {
      auto phase = job->phase.load();
      if (phase != MigrationPhase::Done && phase != MigrationPhase::Failed) {
        throw CatalogError("migration-running", "a migration for " + clazz + " is already running");
      }
    }
  }

  auto job = std::make_shared<Job>();
  job->id = "job-" + std::to_string(++job_seq_);
  job->clazz = clazz;
  job->from = from;
  job->to = to;
  jobs_[job->id] = job;

  // copying phase starts now: dual-write to source and target
  CatalogState next = *state_;
  next.migrations[clazz] = {from, to};
  swap_state_unlocked(std::move(next));

  workers_.emplace_back([this, job] { run_migration(job); });
  return job->id;
}

void Catalog::run_migration(std::shared_ptr<Job> job) {
  auto fail = [&](const std::string& message) {
    {
      std::lock_guard lock(job->error_mutex);
      job->error = message;
    }
    job->phase.store(MigrationPhase::Failed);
    // assignment stays unchanged; stop dual-writing
    std::lock_guard lock(mutex_);
    CatalogState next = *state_;
    next.migrations.erase(job->clazz);
    swap_state_unlocked(std::move(next));
  };

  storage::StorageAdapter* source = adapter(job->from);
  storage::StorageAdapter* target = adapter(job->to);
  if (!source || !target) {
    fail("adapter vanished");
    return;
  }

  // -- copying: reads still serve from the source; writes go to both
  std::vector<std::string> subjects;
  try {
    subjects = source->class_subjects(job->clazz);
  } catch (const std::exception& e) {
    fail(std::string("source enumeration failed: ") + e.what());
    return;
  }
  job->total.store(subjects.size());

  std::size_t in_batch = 0;
  for (const auto& subject : subjects) {
    try {
      auto stored = source->get_versioned(subject);
      if (stored) {
        // keep-max revision semantics make a stale copy harmless against a
        // concurrent dual write
        try {
          target->put(stored->first, stored->second);
        } catch (const std::exception&) {
          target->put(stored->first, stored->second);  // one retry
        }
      }
    } catch (const std::exception& e) {
      fail(std::string("copy failed on ") + subject + ": " + e.what());
      return;
    }
    job->copied.fetch_add(1);
    if (++in_batch >= cfg_.migration_batch) {
      in_batch = 0;
      std::this_thread::sleep_for(cfg_.migration_pause);
    }
  }

  // -- switching: flip the assignment atomically
  job->phase.store(MigrationPhase::Switching);
  {
    std::lock_guard lock(mutex_);
    CatalogState next = *state_;
    auto& ids = next.assignments[job->clazz];
    for (auto& id : ids) {
      if (id == job->from) id = job->to;
    }
    std::vector<std::string> deduped;
    for (const auto& id : ids) {
      if (std::find(deduped.begin(), deduped.end(), id) == deduped.end()) deduped.push_back(id);
    }
    ids = std::move(deduped);
    next.migrations.erase(job->clazz);
    swap_state_unlocked(std::move(next));
  }

  // -- cleaning: drop the class from the source once readers have drained
  job->phase.store(MigrationPhase::Cleaning);
  std::this_thread::sleep_for(cfg_.migration_switch_grace);

  auto state = snapshot();
  std::vector<std::string> leftover;
  try {
    leftover = source->class_subjects(job->clazz);
  } catch (const std::exception&) {
    leftover.clear();  // source gone; nothing left to clean
  }
  for (const auto& subject : leftover) {
    try {
      auto rec = source->get(subject);
      if (!rec) continue;
      // a subject whose other classes still live on the source stays put
      bool keep = false;
      for (const auto& other : rec->classes) {
        if (other == job->clazz) continue;
        auto reads = read_storages(*state, other);
        if (std::find(reads.begin(), reads.end(), job->from) != reads.end()) {
          keep = true;
          break;
        }
      }
      if (!keep) source->remove(subject);
    } catch (const std::exception&) {
      // cleaning is best-effort; the copy is already authoritative
    }
  }

  job->phase.store(MigrationPhase::Done);
}

}  // namespace graphmux::catalog
