#include "graphmux/storage/remote.hpp"

#include <httplib.h>

#include <json.hpp>

#include "graphmux/storage/record_io.hpp"

namespace graphmux::storage {

using nlohmann::json;

std::string url_encode(const std::string& raw) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  out.reserve(raw.size() * 2);
  for (unsigned char c : raw) {
    bool plain = std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~';
    if (plain) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xF]);
    }
  }
  return out;
}

struct RemoteAdapter::Impl {
  httplib::Client client;

  Impl(const std::string& endpoint, int timeout_seconds) : client(endpoint) {
    client.set_connection_timeout(timeout_seconds, 0);
    client.set_read_timeout(timeout_seconds, 0);
    client.set_keep_alive(true);
  }
};

RemoteAdapter::RemoteAdapter(std::string storage_id, std::string endpoint, int timeout_seconds)
    : storage_id_(std::move(storage_id)),
      endpoint_(std::move(endpoint)),
      timeout_seconds_(timeout_seconds),
      impl_(std::make_unique<Impl>(endpoint_, timeout_seconds)) {}

RemoteAdapter::~RemoteAdapter() = default;

void RemoteAdapter::put(const ObjectRecord&, std::uint64_t) {
  throw StorageError("write-to-on-demand", storage_id_,
                     "on-demand storages reject writes; write on the owning instance");
}

bool RemoteAdapter::remove(const std::string&) {
  throw StorageError("write-to-on-demand", storage_id_, "on-demand storages reject writes");
}

std::optional<ObjectRecord> RemoteAdapter::get(const std::string& subject) const {
  auto res = impl_->client.Get("/object/" + url_encode(subject) + "?hydrate=0");
  if (!res) {
    throw StorageError("transport", storage_id_, "remote fetch failed: " + endpoint_);
  }
  if (res->status == 404) return std::nullopt;
  if (res->status != 200) {
    throw StorageError("transport", storage_id_,
                       "remote object read returned HTTP " + std::to_string(res->status));
  }
  return record_from_json(json::parse(res->body));
}

std::optional<std::pair<ObjectRecord, std::uint64_t>> RemoteAdapter::get_versioned(
    const std::string& subject) const {
  auto rec = get(subject);
  if (!rec) return std::nullopt;
  return std::make_pair(*rec, std::uint64_t{0});
}

std::vector<ObjectRecord> RemoteAdapter::scan(const PatternQuery& query) const {
  json body = pattern_query_to_json(query);
  body["hydrate"] = false;
  auto res = impl_->client.Post("/objects/" + url_encode(query.clazz), body.dump(),
                                "application/json");
  if (!res) {
    throw StorageError("transport", storage_id_, "remote scan failed: " + endpoint_);
  }
  if (res->status != 200) {
    throw StorageError("transport", storage_id_,
                       "remote scan returned HTTP " + std::to_string(res->status));
  }
  json doc = json::parse(res->body);
  std::vector<ObjectRecord> out;
  for (const auto& jr : doc.at("objects")) out.push_back(record_from_json(jr));
  return out;
}

std::size_t RemoteAdapter::count(const std::string& clazz) const {
  json body;
  body["class"] = clazz;
  body["count_only"] = true;
  auto res = impl_->client.Post("/objects/" + url_encode(clazz), body.dump(), "application/json");
  if (!res || res->status != 200) {
    throw StorageError("transport", storage_id_, "remote count failed: " + endpoint_);
  }
  return json::parse(res->body).at("count").get<std::size_t>();
}

std::vector<std::string> RemoteAdapter::class_subjects(const std::string& clazz) const {
  PatternQuery q;
  q.clazz = clazz;
  std::vector<std::string> out;
  for (const auto& rec : scan(q)) out.push_back(rec.subject);
  return out;
}

void RemoteAdapter::ensure_index(const IndexSpec&) {
  throw StorageError("unsupported-index", storage_id_,
                     "indexes are managed by the owning instance");
}

std::string RemoteAdapter::access_plan(const PatternQuery&) const {
  return "remote(" + storage_id_ + ")";
}

bool RemoteAdapter::probe() const {
  auto res = impl_->client.Get("/health");
  return res && res->status == 200;
}

}  // namespace graphmux::storage
