#include "graphmux/storage/descriptor.hpp"

namespace graphmux::storage {

void StorageDescriptor::validate() const {
  if (id.empty()) throw std::invalid_argument("storage id must be non-empty");
  if (kind == Kind::Remote && endpoint.empty()) {
    throw std::invalid_argument("remote storage requires an endpoint");
  }
  if (kind != Kind::Remote && mode == Mode::OnDemand) {
    throw std::invalid_argument("triple-index and class-table storages are materialized");
  }
}

std::string to_string(StorageDescriptor::Kind kind) {
  switch (kind) {
    case StorageDescriptor::Kind::TripleIndex: return "triple-index";
    case StorageDescriptor::Kind::ClassTable: return "class-table";
    case StorageDescriptor::Kind::Remote: return "remote";
  }
  return "?";
}

std::string to_string(StorageDescriptor::Mode mode) {
  return mode == StorageDescriptor::Mode::Materialized ? "materialized" : "on-demand";
}

std::string to_string(StorageDescriptor::Status status) {
  switch (status) {
    case StorageDescriptor::Status::Active: return "active";
    case StorageDescriptor::Status::Draining: return "draining";
    case StorageDescriptor::Status::Offline: return "offline";
  }
  return "?";
}

StorageDescriptor::Kind kind_from_string(const std::string& s) {
  if (s == "triple-index") return StorageDescriptor::Kind::TripleIndex;
  if (s == "class-table") return StorageDescriptor::Kind::ClassTable;
  if (s == "remote") return StorageDescriptor::Kind::Remote;
  throw std::invalid_argument("unknown storage kind '" + s + "'");
}

StorageDescriptor::Mode mode_from_string(const std::string& s) {
  if (s == "materialized") return StorageDescriptor::Mode::Materialized;
  if (s == "on-demand") return StorageDescriptor::Mode::OnDemand;
  throw std::invalid_argument("unknown storage mode '" + s + "'");
}

StorageDescriptor::Status status_from_string(const std::string& s) {
  if (s == "active") return StorageDescriptor::Status::Active;
  if (s == "draining") return StorageDescriptor::Status::Draining;
  if (s == "offline") return StorageDescriptor::Status::Offline;
  throw std::invalid_argument("unknown storage status '" + s + "'");
}

}  // namespace graphmux::storage
