#include "dynlis/level_set.hpp"

#include <string>

namespace dynlis {

namespace {

std::string describe(const Element& e) {
  return "(" + std::to_string(e.index) + "," + std::to_string(e.value) + ")";
}

}  // namespace

void LevelSet::insert_max(Element e) {
  if (auto cur = max_element()) {
    if (!(cur->index < e.index)) {
      throw PreconditionViolated("insert_max: index " + std::to_string(e.index) +
                                 " not above current maximum " + describe(*cur));
    }
    if (cur->value < e.value) {
      throw PreconditionViolated("insert_max: value order broken, " + describe(e) +
                                 " after " + describe(*cur));
    }
  }
  tree_.push_max({e.index, e.value});
}

std::pair<LevelSet, LevelSet> split_at(LevelSet ls, IndexKey at) {
  auto [lo, hi] = std::move(ls.tree_).split_le(at);
  return {LevelSet(std::move(lo)), LevelSet(std::move(hi))};
}

std::pair<LevelSet, LevelSet> split_before(LevelSet ls, IndexKey at) {
  auto [lo, hi] = std::move(ls.tree_).split_lt(at);
  return {LevelSet(std::move(lo)), LevelSet(std::move(hi))};
}

LevelSet join(LevelSet left, LevelSet right) {
  if (!left.empty() && !right.empty()) {
    Element seam_left = *left.max_element();
    Element seam_right = *right.min_element();
    if (!(seam_left.index < seam_right.index)) {
      throw PreconditionViolated("join: index ranges overlap at " + describe(seam_left) +
                                 " / " + describe(seam_right));
    }
    if (seam_left.value < seam_right.value) {
      throw PreconditionViolated("join: value order broken across seam " +
                                 describe(seam_left) + " / " + describe(seam_right));
    }
  }
  return LevelSet(LevelSet::Tree::join(std::move(left.tree_), std::move(right.tree_)));
}

}  // namespace dynlis
