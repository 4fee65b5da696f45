#include "graphmux/storage/triple_index.hpp"

#include <algorithm>
#include <mutex>

#include "graphmux/rdf/namespaces.hpp"
#include "graphmux/rdf/parser.hpp"
#include "graphmux/rdf/writer.hpp"
#include "graphmux/storage/record_io.hpp"

namespace graphmux::storage {

namespace ns = rdf::ns;

bool TripleIndexAdapter::RotatedLess::operator()(const IdTriple& a, const IdTriple& b) const {
  for (int pos : {p0, p1, p2}) {
    std::uint32_t x = a[pos];
    std::uint32_t y = b[pos];
    if (x == y) continue;
    if (x == kUnbound) return true;
    if (y == kUnbound) return false;
    int c = rdf::compare_terms(self->term(x), self->term(y));
    if (c != 0) return c < 0;
  }
  return false;
}

TripleIndexAdapter::TripleIndexAdapter(std::string storage_id, Persistence persistence)
    : storage_id_(std::move(storage_id)),
      spo_(RotatedLess{this, 0, 1, 2}),
      pos_(RotatedLess{this, 1, 2, 0}),
      osp_(RotatedLess{this, 2, 0, 1}),
      persist_(std::move(persistence)) {
  rdf_type_id_ = intern(rdf::Term::iri(ns::kRdfType));
  recovering_ = true;
  for (const auto& line : persist_.recover()) apply_line(line);
  recovering_ = false;
}

std::uint32_t TripleIndexAdapter::intern(const rdf::Term& t) {
  auto [it, inserted] = term_ids_.try_emplace(t, static_cast<std::uint32_t>(terms_.size()));
  if (inserted) terms_.push_back(&it->first);
  return it->second;
}

std::optional<std::uint32_t> TripleIndexAdapter::find_id(const rdf::Term& t) const {
  auto it = term_ids_.find(t);
  if (it == term_ids_.end()) return std::nullopt;
  return it->second;
}

bool TripleIndexAdapter::insert_triple_unlocked(const rdf::Triple& t) {
  IdTriple id{intern(t.subject()), intern(t.predicate()), intern(t.object())};
  if (!spo_.insert(id).second) return false;
  pos_.insert(id);
  osp_.insert(id);
  if (id[1] == rdf_type_id_) ++class_counts_[id[2]];
  return true;
}

void TripleIndexAdapter::erase_subject_triples_unlocked(std::uint32_t subject_id) {
  IdTriple probe{subject_id, kUnbound, kUnbound};
  std::vector<IdTriple> doomed;
  collect_range(spo_, probe, 1, doomed);
  for (const auto& id : doomed) {
    spo_.erase(id);
    pos_.erase(id);
    osp_.erase(id);
    if (id[1] == rdf_type_id_) {
      auto it = class_counts_.find(id[2]);
      if (it != class_counts_.end() && --it->second == 0) class_counts_.erase(it);
    }
  }
}

void TripleIndexAdapter::collect_range(const Index& index, const IdTriple& probe, int bound,
                                       std::vector<IdTriple>& out) const {
  const auto& cmp = index.key_comp();
  int positions[3] = {cmp.p0, cmp.p1, cmp.p2};
  for (auto it = index.lower_bound(probe); it != index.end(); ++it) {
    bool prefix_ok = true;
    for (int i = 0; i < bound; ++i) {
      if ((*it)[positions[i]] != probe[positions[i]]) {
        prefix_ok = false;
        break;
      }
    }
    if (!prefix_ok) break;
    out.push_back(*it);
  }
}

void TripleIndexAdapter::put(const ObjectRecord& record, std::uint64_t revision) {
  std::unique_lock lock(mutex_);
  auto existing = records_.find(record.subject);
  if (existing != records_.end() && existing->second.second > revision) return;

  std::uint32_t sid = intern(rdf::Term::iri(record.subject));
  erase_subject_triples_unlocked(sid);
  for (const auto& t : record.to_triples()) insert_triple_unlocked(t);
  records_[record.subject] = {record, revision};

  if (!recovering_) {
    persist_.append("P " + std::to_string(revision) + " " + record_to_line(record));
    persist_.maybe_snapshot([this] { return dump_lines_unlocked(); });
  }
}

bool TripleIndexAdapter::remove(const std::string& subject) {
  std::unique_lock lock(mutex_);
  auto id = find_id(rdf::Term::iri(subject));
  bool existed = records_.erase(subject) > 0;
  if (id) {
    IdTriple probe{*id, kUnbound, kUnbound};
    std::vector<IdTriple> doomed;
    collect_range(spo_, probe, 1, doomed);
    existed = existed || !doomed.empty();
    erase_subject_triples_unlocked(*id);
  }
  if (existed && !recovering_) persist_.append("D " + subject);
  return existed;
}

std::optional<ObjectRecord> TripleIndexAdapter::get(const std::string& subject) const {
  std::shared_lock lock(mutex_);
  return get_unlocked(subject);
}

std::optional<std::pair<ObjectRecord, std::uint64_t>> TripleIndexAdapter::get_versioned(
    const std::string& subject) const {
  std::shared_lock lock(mutex_);
  auto it = records_.find(subject);
  if (it != records_.end()) return it->second;
  auto rec = get_unlocked(subject);
  if (!rec) return std::nullopt;
  return std::make_pair(*rec, std::uint64_t{0});
}

std::optional<ObjectRecord> TripleIndexAdapter::get_unlocked(const std::string& subject) const {
  auto it = records_.find(subject);
  if (it != records_.end()) return it->second.first;
  // raw triples only: assemble a view
  auto id = find_id(rdf::Term::iri(subject));
  if (!id) return std::nullopt;
  IdTriple probe{*id, kUnbound, kUnbound};
  std::vector<IdTriple> ids;
  collect_range(spo_, probe, 1, ids);
  if (ids.empty()) return std::nullopt;
  std::vector<rdf::Triple> triples;
  triples.reserve(ids.size());
  for (const auto& t : ids) triples.emplace_back(term(t[0]), term(t[1]), term(t[2]));
  return ObjectRecord::from_triples(subject, triples);
}

std::vector<std::uint32_t> TripleIndexAdapter::class_subject_ids_unlocked(
    const std::string& clazz) const {
  std::vector<std::uint32_t> subjects;
  auto cid = find_id(rdf::Term::iri(clazz));
  if (!cid) return subjects;
  IdTriple probe{kUnbound, rdf_type_id_, *cid};
  std::vector<IdTriple> ids;
  collect_range(pos_, probe, 2, ids);
  subjects.reserve(ids.size());
  for (const auto& t : ids) subjects.push_back(t[0]);
  return subjects;
}

std::vector<ObjectRecord> TripleIndexAdapter::scan(const PatternQuery& query) const {
  std::shared_lock lock(mutex_);
  std::vector<ObjectRecord> out;
  std::uint64_t skipped = 0;
  for (std::uint32_t sid : class_subject_ids_unlocked(query.clazz)) {
    const rdf::Term& s = term(sid);
    if (!s.is_iri()) continue;  // blank-subject data is reachable via match() only
    auto rec = get_unlocked(s.value());
    if (!rec || !record_matches_all(*rec, query.filters)) continue;
    if (skipped < query.offset) {
      ++skipped;
      continue;
    }
    out.push_back(std::move(*rec));
    if (query.limit && out.size() >= *query.limit) break;
  }
  return out;
}

std::size_t TripleIndexAdapter::count(const std::string& clazz) const {
  std::shared_lock lock(mutex_);
  auto cid = find_id(rdf::Term::iri(clazz));
  if (!cid) return 0;
  auto it = class_counts_.find(*cid);
  return it == class_counts_.end() ? 0 : it->second;
}

std::vector<std::string> TripleIndexAdapter::class_subjects(const std::string& clazz) const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (std::uint32_t sid : class_subject_ids_unlocked(clazz)) {
    const rdf::Term& s = term(sid);
    if (s.is_iri()) out.push_back(s.value());
  }
  return out;
}

void TripleIndexAdapter::ensure_index(const IndexSpec&) {
  throw StorageError("unsupported-index", storage_id_,
                     "property indexes apply to class-table storages only");
}

std::string TripleIndexAdapter::access_plan(const PatternQuery& query) const {
  return "triple-scan(" + query.clazz + ")";
}

std::vector<rdf::Triple> TripleIndexAdapter::match(const rdf::Term* s, const rdf::Term* p,
                                                   const rdf::Term* o) const {
  std::shared_lock lock(mutex_);
  std::vector<rdf::Triple> out;
  if (s && s->is_literal()) return out;
  if (p && !p->is_iri()) return out;

  std::uint32_t sid = kUnbound, pid = kUnbound, oid = kUnbound;
  if (s) {
    auto id = find_id(*s);
    if (!id) return out;
    sid = *id;
  }
  if (p) {
    auto id = find_id(*p);
    if (!id) return out;
    pid = *id;
  }
  if (o) {
    auto id = find_id(*o);
    if (!id) return out;
    oid = *id;
  }

  IdTriple probe{sid, pid, oid};
  std::vector<IdTriple> ids;
  // longest bound leading prefix wins: SPO serves s / s,p / s,p,o;
  // POS serves p / p,o; OSP serves o / o,s
  if (sid != kUnbound && pid != kUnbound && oid != kUnbound) {
    if (spo_.count(probe)) ids.push_back(probe);
  } else if (sid != kUnbound && pid != kUnbound) {
    collect_range(spo_, probe, 2, ids);
  } else if (pid != kUnbound && oid != kUnbound) {
    collect_range(pos_, probe, 2, ids);
  } else if (oid != kUnbound && sid != kUnbound) {
    collect_range(osp_, probe, 2, ids);
  } else if (sid != kUnbound) {
    collect_range(spo_, probe, 1, ids);
  } else if (pid != kUnbound) {
    collect_range(pos_, probe, 1, ids);
  } else if (oid != kUnbound) {
    collect_range(osp_, probe, 1, ids);
  } else {
    ids.assign(spo_.begin(), spo_.end());
  }

  out.reserve(ids.size());
  for (const auto& t : ids) out.emplace_back(term(t[0]), term(t[1]), term(t[2]));
  return out;
}

void TripleIndexAdapter::add_triples(const std::vector<rdf::Triple>& triples) {
  std::unique_lock lock(mutex_);
  for (const auto& t : triples) {
    if (insert_triple_unlocked(t) && !recovering_) {
      rdf::TripleSet one;
      one.insert(t);
      std::string line = rdf::serialize(one, rdf::DocumentFormat::NTriples);
      if (!line.empty() && line.back() == '\n') line.pop_back();
      persist_.append("T " + line);
    }
  }
  if (!recovering_) {
    persist_.maybe_snapshot([this] { return dump_lines_unlocked(); });
  }
}

std::size_t TripleIndexAdapter::triple_count() const {
  std::shared_lock lock(mutex_);
  return spo_.size();
}

std::vector<std::string> TripleIndexAdapter::dump_lines_unlocked() const {
  std::vector<std::string> lines;
  for (const auto& [subject, stored] : records_) {
    lines.push_back("P " + std::to_string(stored.second) + " " + record_to_line(stored.first));
  }
  // raw triples whose subject has no verbatim record
  rdf::TripleSet raw;
  for (const auto& id : spo_) {
    const rdf::Term& s = term(id[0]);
    if (s.is_iri() && records_.count(s.value())) continue;
    raw.insert(rdf::Triple(s, term(id[1]), term(id[2])));
  }
  std::string nt = rdf::serialize(raw, rdf::DocumentFormat::NTriples);
  std::size_t start = 0;
  while (start < nt.size()) {
    std::size_t end = nt.find('\n', start);
    if (end == std::string::npos) end = nt.size();
    lines.push_back("T " + nt.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

void TripleIndexAdapter::apply_line(const std::string& line) {
  if (line.size() < 2) return;
  char tag = line[0];
  std::string rest = line.substr(2);
  if (tag == 'P') {
    auto space = rest.find(' ');
    std::uint64_t rev = std::stoull(rest.substr(0, space));
    ObjectRecord rec = record_from_line(rest.substr(space + 1));
    put(rec, rev);
  } else if (tag == 'D') {
    remove(rest);
  } else if (tag == 'T') {
    auto ts = rdf::parse_document(rest, rdf::DocumentFormat::NTriples);
    add_triples(ts.to_vector());
  }
}

}  // namespace graphmux::storage
