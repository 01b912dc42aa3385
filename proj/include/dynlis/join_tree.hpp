#pragma once

#include <cassert>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dynlis/counters.hpp"

namespace dynlis {

// Join-based AVL map. Split and join are the primitive mutations and every
// other mutation is expressed through them, so the height invariant gives
// worst-case O(log n) for splits, joins and directional searches.
//
// last_value_above assumes values are non-increasing in key order; the
// wrapper that owns the tree maintains that invariant.
template <typename K, typename V>
class JoinTree {
 public:
  struct Entry {
    K key;
    V value;
  };

  explicit JoinTree(TreeStats* stats) : stats_(stats) { assert(stats_ != nullptr); }

  ~JoinTree() { destroy(root_); }

  JoinTree(JoinTree&& other) noexcept
      : root_(std::exchange(other.root_, nullptr)), stats_(other.stats_) {}

  JoinTree& operator=(JoinTree&& other) noexcept {
    if (this != &other) {
      destroy(root_);
      root_ = std::exchange(other.root_, nullptr);
      stats_ = other.stats_;
    }
    return *this;
  }

  JoinTree(const JoinTree&) = delete;
  JoinTree& operator=(const JoinTree&) = delete;

  bool empty() const { return root_ == nullptr; }
  std::size_t size() const { return subtree_size(root_); }
  TreeStats* stats() const { return stats_; }
  void bind_stats(TreeStats* stats) {
    assert(stats != nullptr);
    stats_ = stats;
  }

  std::optional<Entry> min() const {
    ++stats_->counters.pred_queries;
    Node* n = root_;
    if (!n) return std::nullopt;
    while (n->left) {
      touch(n);
      n = n->left;
    }
    touch(n);
    return n->entry;
  }

  std::optional<Entry> max() const {
    ++stats_->counters.succ_queries;
    Node* n = root_;
    if (!n) return std::nullopt;
    while (n->right) {
      touch(n);
      n = n->right;
    }
    touch(n);
    return n->entry;
  }

  // Largest key strictly below `key`.
  std::optional<Entry> pred(K key) const {
    ++stats_->counters.pred_queries;
    Node* best = nullptr;
    for (Node* n = root_; n;) {
      touch(n);
      if (n->entry.key < key) {
        best = n;
        n = n->right;
      } else {
        n = n->left;
      }
    }
    if (!best) return std::nullopt;
    return best->entry;
  }

  // Smallest key strictly above `key`.
  std::optional<Entry> succ(K key) const {
    ++stats_->counters.succ_queries;
    Node* best = nullptr;
    for (Node* n = root_; n;) {
      touch(n);
      if (key < n->entry.key) {
        best = n;
        n = n->left;
      } else {
        n = n->right;
      }
    }
    if (!best) return std::nullopt;
    return best->entry;
  }

  bool contains(K key) const {
    Node* n = root_;
    while (n) {
      if (key < n->entry.key) {
        n = n->left;
      } else if (n->entry.key < key) {
        n = n->right;
      } else {
        return true;
      }
    }
    return false;
  }

  // Largest key whose value is strictly above `floor`. Correct only while
  // values are non-increasing in key order: qualifying keys form a prefix.
  std::optional<Entry> last_value_above(V floor) const {
    ++stats_->counters.pred_queries;
    Node* best = nullptr;
    for (Node* n = root_; n;) {
      touch(n);
      if (floor < n->entry.value) {
        best = n;
        n = n->right;
      } else {
        n = n->left;
      }
    }
    if (!best) return std::nullopt;
    return best->entry;
  }

  // Caller guarantees `e.key` exceeds every key present.
  void push_max(Entry e) {
    Node* m = new Node{e, nullptr, nullptr, 1, 1};
    root_ = node_join(root_, m, nullptr);
  }

  // Ordered union; caller guarantees max key of `left` < min key of `right`.
  static JoinTree join(JoinTree left, JoinTree right) {
    assert(left.stats_ == right.stats_);
    JoinTree out(left.stats_);
    if (!left.root_) {
      out.root_ = std::exchange(right.root_, nullptr);
      return out;
    }
    if (!right.root_) {
      out.root_ = std::exchange(left.root_, nullptr);
      return out;
    }
    ++out.stats_->counters.splits;  // the split-last below
    Node* last = nullptr;
    Node* rest = out.split_last(std::exchange(left.root_, nullptr), &last);
    out.root_ = out.node_join(rest, last, std::exchange(right.root_, nullptr));
    return out;
  }

  // (keys <= key, keys > key)
  std::pair<JoinTree, JoinTree> split_le(K key) && {
    ++stats_->counters.splits;
    auto [lo, hi] = split_rec<true>(std::exchange(root_, nullptr), key);
    return {JoinTree(lo, stats_), JoinTree(hi, stats_)};
  }

  // (keys < key, keys >= key)
  std::pair<JoinTree, JoinTree> split_lt(K key) && {
    ++stats_->counters.splits;
    auto [lo, hi] = split_rec<false>(std::exchange(root_, nullptr), key);
    return {JoinTree(lo, stats_), JoinTree(hi, stats_)};
  }

  JoinTree clone(TreeStats* stats) const {
    JoinTree out(stats);
    out.root_ = clone_rec(root_);
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    walk(root_, f);
  }

  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    out.reserve(size());
    walk(root_, [&](const Entry& e) { out.push_back(e); });
    return out;
  }

  // Test support: key order, AVL balance and cached height/size all hold.
  bool well_formed() const {
    bool ok = true;
    check_rec(root_, ok);
    return ok;
  }

 private:
  struct Node {
    Entry entry;
    Node* left;
    Node* right;
    int height;
    std::size_t size;
  };

  JoinTree(Node* root, TreeStats* stats) : root_(root), stats_(stats) {}

  static int node_height(const Node* n) { return n ? n->height : 0; }
  static std::size_t subtree_size(const Node* n) { return n ? n->size : 0; }

  void touch(const Node*) const { ++stats_->nodes_touched; }

  static void refresh(Node* n) {
    int hl = node_height(n->left);
    int hr = node_height(n->right);
    n->height = (hl > hr ? hl : hr) + 1;
    n->size = subtree_size(n->left) + subtree_size(n->right) + 1;
  }

  Node* rotate_left(Node* x) const {
    ++stats_->counters.rotations_or_rebalances;
    touch(x);
    Node* y = x->right;
    touch(y);
    x->right = y->left;
    y->left = x;
    refresh(x);
    refresh(y);
    return y;
  }

  Node* rotate_right(Node* y) const {
    ++stats_->counters.rotations_or_rebalances;
    touch(y);
    Node* x = y->left;
    touch(x);
    y->left = x->right;
    x->right = y;
    refresh(y);
    refresh(x);
    return x;
  }

  // AVL join: `m` becomes an interior node holding l and r as neighbours in
  // key order. Worst-case O(|height(l) - height(r)|).
  Node* node_join(Node* l, Node* m, Node* r) const {
    ++stats_->counters.joins;
    touch(m);
    int hl = node_height(l);
    int hr = node_height(r);
    if (hl > hr + 1) return join_right(l, m, r);
    if (hr > hl + 1) return join_left(l, m, r);
    m->left = l;
    m->right = r;
    refresh(m);
    return m;
  }

  Node* join_right(Node* tl, Node* m, Node* r) const {
    // height(tl) > height(r) + 1; descend tl's right spine.
    ++stats_->counters.rotations_or_rebalances;
    touch(tl);
    Node* l = tl->left;
    Node* c = tl->right;
    if (node_height(c) <= node_height(r) + 1) {
      m->left = c;
      m->right = r;
      refresh(m);
      if (m->height <= node_height(l) + 1) {
        tl->right = m;
        refresh(tl);
        return tl;
      }
      tl->right = rotate_right(m);
      refresh(tl);
      return rotate_left(tl);
    }
    Node* t2 = join_right(c, m, r);
    tl->right = t2;
    refresh(tl);
    if (t2->height <= node_height(l) + 1) return tl;
    return rotate_left(tl);
  }

  Node* join_left(Node* l, Node* m, Node* tr) const {
    ++stats_->counters.rotations_or_rebalances;
    touch(tr);
    Node* c = tr->left;
    Node* r = tr->right;
    if (node_height(c) <= node_height(l) + 1) {
      m->left = l;
      m->right = c;
      refresh(m);
      if (m->height <= node_height(r) + 1) {
        tr->left = m;
        refresh(tr);
        return tr;
      }
      tr->left = rotate_left(m);
      refresh(tr);
      return rotate_right(tr);
    }
    Node* t2 = join_left(l, m, c);
    tr->left = t2;
    refresh(tr);
    if (t2->height <= node_height(r) + 1) return tr;
    return rotate_right(tr);
  }

  // Detaches the maximum node into *out and returns the remainder.
  Node* split_last(Node* t, Node** out) const {
    touch(t);
    if (!t->right) {
      *out = t;
      Node* l = t->left;
      t->left = nullptr;
      return l;
    }
    Node* rest = split_last(t->right, out);
    Node* l = t->left;
    t->left = nullptr;
    t->right = nullptr;
    return node_join(l, t, rest);
  }

  template <bool Inclusive>
  std::pair<Node*, Node*> split_rec(Node* t, K key) const {
    if (!t) return {nullptr, nullptr};
    touch(t);
    Node* l = t->left;
    Node* r = t->right;
    t->left = nullptr;
    t->right = nullptr;
    bool goes_low = Inclusive ? !(key < t->entry.key) : (t->entry.key < key);
    if (goes_low) {
      auto [a, b] = split_rec<Inclusive>(r, key);
      return {node_join(l, t, a), b};
    }
    auto [a, b] = split_rec<Inclusive>(l, key);
    return {a, node_join(b, t, r)};
  }

  static Node* clone_rec(const Node* n) {
    if (!n) return nullptr;
    return new Node{n->entry, clone_rec(n->left), clone_rec(n->right), n->height, n->size};
  }

  static void destroy(Node* n) {
    if (!n) return;
    destroy(n->left);
    destroy(n->right);
    delete n;
  }

  template <typename F>
  static void walk(const Node* n, F& f) {
    if (!n) return;
    walk(n->left, f);
    f(n->entry);
    walk(n->right, f);
  }

  struct CheckInfo {
    int height = 0;
    std::size_t size = 0;
    const Node* min = nullptr;
    const Node* max = nullptr;
  };

  static CheckInfo check_rec(const Node* n, bool& ok) {
    if (!n) return {};
    CheckInfo l = check_rec(n->left, ok);
    CheckInfo r = check_rec(n->right, ok);
    if (l.max && !(l.max->entry.key < n->entry.key)) ok = false;
    if (r.min && !(n->entry.key < r.min->entry.key)) ok = false;
    int diff = l.height - r.height;
    if (diff < -1 || diff > 1) ok = false;
    CheckInfo me;
    me.height = (l.height > r.height ? l.height : r.height) + 1;
    me.size = l.size + r.size + 1;
    if (me.height != n->height || me.size != n->size) ok = false;
    me.min = l.min ? l.min : n;
    me.max = r.max ? r.max : n;
    return me;
  }

  Node* root_ = nullptr;
  TreeStats* stats_;
};

}  // namespace dynlis
