#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

namespace graphmux::storage {

/// Append-only journal plus periodic snapshot for a single store. Layout:
///   <dir>/snapshot.dat   "GMXSNAP" <version> <kind> header, then one record per line
///   <dir>/journal.dat    "GMXLOG"  <version> <kind> header, then one entry per line
/// Recovery replays the snapshot, then the journal. A default-constructed
/// instance persists nothing (in-memory store).
class Persistence {
 public:
  Persistence() = default;
  Persistence(std::filesystem::path dir, std::string kind);

  bool enabled() const { return !dir_.empty(); }

  /// Snapshot lines followed by journal lines, in write order.
  std::vector<std::string> recover();

  void append(const std::string& line);

  /// Write a fresh snapshot (atomically) and truncate the journal when the
  /// journal has grown past the threshold.
  void maybe_snapshot(const std::function<std::vector<std::string>()>& dump);
  void force_snapshot(const std::function<std::vector<std::string>()>& dump);

  static constexpr std::size_t kSnapshotEvery = 20000;

 private:
  void open_journal(bool truncate);

  std::filesystem::path dir_;
  std::string kind_;
  std::ofstream journal_;
  std::size_t journal_entries_ = 0;
};

}  // namespace graphmux::storage
