#include "graphmux/storage/persistence.hpp"

#include <stdexcept>

namespace graphmux::storage {

namespace {

constexpr char kSnapMagic[] = "GMXSNAP";
constexpr char kLogMagic[] = "GMXLOG";
constexpr char kFormatVersion = '1';

std::string header(const char* magic, const std::string& kind) {
  return std::string(magic) + kFormatVersion + " " + kind;
}

std::vector<std::string> read_lines_checked(const std::filesystem::path& file, const char* magic,
                                            const std::string& kind) {
  std::vector<std::string> lines;
  std::ifstream in(file);
  if (!in.is_open()) return lines;
  std::string first;
  if (!std::getline(in, first)) return lines;
  if (first != header(magic, kind)) {
    throw std::runtime_error("unrecognized store file header in " + file.string() + ": " + first);
  }
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

Persistence::Persistence(std::filesystem::path dir, std::string kind)
    : dir_(std::move(dir)), kind_(std::move(kind)) {
  std::filesystem::create_directories(dir_);
}

std::vector<std::string> Persistence::recover() {
  if (!enabled()) return {};
  std::vector<std::string> lines = read_lines_checked(dir_ / "snapshot.dat", kSnapMagic, kind_);
  auto journal = read_lines_checked(dir_ / "journal.dat", kLogMagic, kind_);
  journal_entries_ = journal.size();
  lines.insert(lines.end(), journal.begin(), journal.end());
  open_journal(/*truncate=*/false);
  return lines;
}

void Persistence::append(const std::string& line) {
  if (!enabled()) return;
  if (!journal_.is_open()) open_journal(false);
  journal_ << line << '\n';
  journal_.flush();
  ++journal_entries_;
}

void Persistence::maybe_snapshot(const std::function<std::vector<std::string>()>& dump) {
  if (!enabled() || journal_entries_ < kSnapshotEvery) return;
  force_snapshot(dump);
}

void Persistence::force_snapshot(const std::function<std::vector<std::string>()>& dump) {
  if (!enabled()) return;
  auto tmp = dir_ / "snapshot.tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << header(kSnapMagic, kind_) << '\n';
    for (const auto& line : dump()) out << line << '\n';
    out.flush();
    if (!out.good()) throw std::runtime_error("snapshot write failed in " + dir_.string());
  }
  std::filesystem::rename(tmp, dir_ / "snapshot.dat");
  open_journal(/*truncate=*/true);
  journal_entries_ = 0;
}

void Persistence::open_journal(bool truncate) {
  auto path = dir_ / "journal.dat";
  bool fresh = truncate || !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  journal_.close();
  journal_.open(path, fresh ? std::ios::trunc : std::ios::app);
  if (!journal_.is_open()) throw std::runtime_error("cannot open journal in " + dir_.string());
  if (fresh) {
    journal_ << header(kLogMagic, kind_) << '\n';
    journal_.flush();
  }
}

}  // namespace graphmux::storage
