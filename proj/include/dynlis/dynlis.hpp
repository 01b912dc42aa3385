#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dynlis/counters.hpp"
#include "dynlis/element.hpp"
#include "dynlis/level_set.hpp"

namespace dynlis {

struct InvariantReport {
  bool ok = true;
  std::string detail;

  explicit operator bool() const { return ok; }
};

// Full structural audit over a plain snapshot of the forest. Factored out of
// DynLis so tests can feed it deliberately corrupted states.
InvariantReport validate_level_structure(
    const std::vector<std::vector<Element>>& levels, const std::vector<Element>& tails,
    std::size_t element_count,
    const std::unordered_map<IndexKey, std::size_t>& level_of_index);

// Dynamic LIS structure: a forest of level sets, where level k holds the
// elements whose longest increasing run ending there has length k. Supports
// keyed insertion anywhere, deletion, O(1) length queries and witness
// extraction. A tails directory over the per-level maximum-index elements
// serves the end-of-sequence append fast path.
//
// Single writer; read-only queries may run concurrently with each other but
// never with a mutation.
class DynLis {
 public:
  DynLis();

  DynLis(DynLis&&) noexcept = default;
  DynLis& operator=(DynLis&&) noexcept = default;
  DynLis(const DynLis&) = delete;
  DynLis& operator=(const DynLis&) = delete;

  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  // Current LIS length, i.e. the number of levels.
  std::size_t lis_length() const { return levels_.size(); }

  bool contains(IndexKey index) const { return level_by_index_.contains(index); }

  // Level the element would land on, without mutating. Binary search over
  // levels; valid because "some element below e supports it at level k" is
  // downward-closed in k.
  std::size_t find_insert_level(Element e) const;

  // General insertion with promotion propagation. Throws DuplicateIndex.
  void insert(Element e);

  // Fast path for e.index above every present index: one level set changes,
  // found by binary search on the tails directory. Throws NotAnAppend /
  // DuplicateIndex. Produces the same structure insert() would.
  void insert_append(Element e);

  // Deletion with demotion propagation. Throws IndexNotFound.
  void erase(IndexKey index);

  // Drops every element; cost counters keep accumulating so callers timing a
  // rebuild see one monotone stream.
  void clear();

  // Level of a present element, via the side dictionary. Throws IndexNotFound.
  std::size_t level_of(IndexKey index) const;

  // Deterministic maximum witness: starts at the maximum-index element of the
  // top level and walks index-predecessors downward. Strictly increasing in
  // both index and value; empty when the structure is empty.
  std::vector<Element> extract_lis() const;

  InvariantReport check_invariants() const;

  // Per-level element listing in index order; levels_snapshot()[k] is level k+1.
  std::vector<std::vector<Element>> levels_snapshot() const;

  // Per-level maximum-index elements; values strictly increase with level.
  const std::vector<Element>& tails() const { return tails_; }

  std::optional<IndexKey> max_index() const { return max_index_; }

  DynLis clone() const;

  const CostCounters& counters() const { return stats_->counters; }
  std::uint64_t nodes_touched() const { return stats_->nodes_touched; }
  std::uint64_t side_map_updates() const { return side_map_updates_; }
  void reset_counters() {
    stats_->reset();
    side_map_updates_ = 0;
  }

 private:
  void merge_carry(LevelSet carry, std::size_t target_level);
  void note_level(IndexKey index, std::size_t level) {
    level_by_index_[index] = level;
    ++side_map_updates_;
  }

  // stats_ lives behind a stable address because every level set points at it.
  std::unique_ptr<TreeStats> stats_;
  std::vector<LevelSet> levels_;
  std::vector<Element> tails_;
  std::unordered_map<IndexKey, std::size_t> level_by_index_;
  std::size_t count_ = 0;
  std::optional<IndexKey> max_index_;
  std::uint64_t side_map_updates_ = 0;
};

}  // namespace dynlis
