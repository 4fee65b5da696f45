#pragma once

#include <stdexcept>
#include <string>

namespace graphmux::storage {

/// Faults surfaced by storage adapters and the routing layer. `code` is a
/// stable machine-readable identifier; the API layer maps it to HTTP.
struct StorageError : std::runtime_error {
  StorageError(std::string code, std::string storage_id, const std::string& message)
      : std::runtime_error("[" + storage_id + "] " + message),
        code(std::move(code)),
        storage_id(std::move(storage_id)) {}

  std::string code;
  std::string storage_id;
};

struct StorageDescriptor {
  enum class Kind { TripleIndex, ClassTable, Remote };
  enum class Mode { Materialized, OnDemand };
  enum class Status { Active, Draining, Offline };

  std::string id;
  Kind kind = Kind::ClassTable;
  Mode mode = Mode::Materialized;
  std::string endpoint;  // remote only
  Status status = Status::Active;

  /// Enforces the descriptor invariants; throws std::invalid_argument.
  void validate() const;

  bool operator==(const StorageDescriptor& other) const = default;
};

std::string to_string(StorageDescriptor::Kind kind);
std::string to_string(StorageDescriptor::Mode mode);
std::string to_string(StorageDescriptor::Status status);
StorageDescriptor::Kind kind_from_string(const std::string& s);
StorageDescriptor::Mode mode_from_string(const std::string& s);
StorageDescriptor::Status status_from_string(const std::string& s);

}  // namespace graphmux::storage
