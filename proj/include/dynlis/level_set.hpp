#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dynlis/counters.hpp"
#include "dynlis/element.hpp"
#include "dynlis/join_tree.hpp"

namespace dynlis {

// One level set: elements ordered by index, with values non-increasing along
// the index order. The mutation entry points enforce that invariant; split
// results inherit it automatically because any contiguous index range of a
// valid level set is valid.
class LevelSet {
 public:
  explicit LevelSet(TreeStats& stats) : tree_(&stats) {}

  bool empty() const { return tree_.empty(); }
  std::size_t size() const { return tree_.size(); }

  TreeStats& stats() const { return *tree_.stats(); }
  void bind_stats(TreeStats& stats) { tree_.bind_stats(&stats); }

  std::optional<Element> min_element() const { return to_element(tree_.min()); }
  std::optional<Element> max_element() const { return to_element(tree_.max()); }

  // Largest index strictly below `index`.
  std::optional<Element> pred_before(IndexKey index) const {
    return to_element(tree_.pred(index));
  }

  // Smallest index strictly above `index`.
  std::optional<Element> succ_after(IndexKey index) const {
    return to_element(tree_.succ(index));
  }

  // Maximum-index element with value strictly above `floor`; the qualifying
  // elements always form a prefix in index order.
  std::optional<Element> last_with_value_above(Value floor) const {
    return to_element(tree_.last_value_above(floor));
  }

  bool contains(IndexKey index) const { return tree_.contains(index); }

  // Appends at the maximum-index end. Throws PreconditionViolated unless
  // e.index exceeds every present index and e.value keeps values
  // non-increasing.
  void insert_max(Element e);

  LevelSet clone_with(TreeStats& stats) const {
    LevelSet out(stats);
    out.tree_ = tree_.clone(&stats);
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    tree_.for_each([&](const Tree::Entry& entry) { f(Element{entry.key, entry.value}); });
  }

  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(size());
    for_each([&](const Element& e) { out.push_back(e); });
    return out;
  }

  bool tree_well_formed() const { return tree_.well_formed(); }

  // (indices <= at, indices > at)
  friend std::pair<LevelSet, LevelSet> split_at(LevelSet ls, IndexKey at);
  // (indices < at, indices >= at)
  friend std::pair<LevelSet, LevelSet> split_before(LevelSet ls, IndexKey at);
  // Ordered union. Throws PreconditionViolated when index ranges overlap or
  // the value order would break across the seam.
  friend LevelSet join(LevelSet left, LevelSet right);

 private:
  using Tree = JoinTree<IndexKey, Value>;

  explicit LevelSet(Tree tree) : tree_(std::move(tree)) {}

  static std::optional<Element> to_element(const std::optional<Tree::Entry>& entry) {
    if (!entry) return std::nullopt;
    return Element{entry->key, entry->value};
  }

  Tree tree_;
};

std::pair<LevelSet, LevelSet> split_at(LevelSet ls, IndexKey at);
std::pair<LevelSet, LevelSet> split_before(LevelSet ls, IndexKey at);
LevelSet join(LevelSet left, LevelSet right);

}  // namespace dynlis
