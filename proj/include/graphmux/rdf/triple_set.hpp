#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "graphmux/rdf/triple.hpp"

namespace graphmux::rdf {

/// A deduplicated set of triples in canonical order, plus the prefix table
/// collected from the source document. All terms are stored fully expanded;
/// prefixes are presentation metadata only. Equality compares triples only.
class TripleSet {
 public:
  using const_iterator = std::set<Triple, TripleLess>::const_iterator;

  TripleSet() = default;

  bool insert(Triple t) { return triples_.insert(std::move(t)).second; }
  bool contains(const Triple& t) const { return triples_.count(t) > 0; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }

  const_iterator begin() const { return triples_.begin(); }
  const_iterator end() const { return triples_.end(); }

  void add_prefix(std::string prefix, std::string iri) { prefixes_[std::move(prefix)] = std::move(iri); }
  const std::map<std::string, std::string>& prefixes() const { return prefixes_; }

  /// Union with another set; prefixes from `other` win on collision.
  void merge(const TripleSet& other);

  /// Union with blank-node labels of `other` rewritten to "b<seq>_<label>".
  /// Used when importing documents into a shared store so that labels from
  /// independent documents cannot collide. `import_seq` is the caller's
  /// per-import counter.
  void merge_renaming_blanks(const TripleSet& other, std::size_t import_seq);

  bool operator==(const TripleSet& other) const { return triples_ == other.triples_; }
  bool operator!=(const TripleSet& other) const { return !(*this == other); }

  std::vector<Triple> to_vector() const { return {triples_.begin(), triples_.end()}; }

 private:
  std::set<Triple, TripleLess> triples_;
  std::map<std::string, std::string> prefixes_;
};

}  // namespace graphmux::rdf
