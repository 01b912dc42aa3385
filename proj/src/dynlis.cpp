#include "dynlis/dynlis.hpp"

#include <utility>

namespace dynlis {

namespace {

std::string describe(const Element& e) {
  return "(" + std::to_string(e.index) + "," + std::to_string(e.value) + ")";
}

}  // namespace

DynLis::DynLis() : stats_(std::make_unique<TreeStats>()) {}

std::size_t DynLis::find_insert_level(Element e) const {
  // Supported-at-level-k is downward-closed in k, so the largest supporting
  // level is found by binary search. A level supports e iff its nearest
  // element below e.index has a smaller value; anything further left only
  // has larger-or-equal values.
  std::size_t lo = 1;
  std::size_t hi = levels_.size();
  std::size_t best = 0;
  while (lo <= hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    auto p = levels_[mid - 1].pred_before(e.index);
    if (p && p->value < e.value) {
      best = mid;
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  return best + 1;
}

void DynLis::merge_carry(LevelSet carry, std::size_t target) {
  while (true) {
    Element carry_min = *carry.min_element();
    Element carry_max = *carry.max_element();

    if (target > levels_.size()) {
      carry.for_each([&](const Element& e) { note_level(e.index, target); });
      tails_.push_back(carry_max);
      levels_.push_back(std::move(carry));
      return;
    }

    // Everything in the destination that sits above carry_min's index and
    // still beats carry_max's value moves up one level; it is a contiguous
    // index range ending at `boundary`.
    LevelSet& dest = levels_[target - 1];
    auto boundary = dest.last_with_value_above(carry_max.value);
    IndexKey cut = (boundary && boundary->index > carry_min.index) ? boundary->index
                                                                   : carry_min.index;
    auto [prefix, rest] = split_at(std::move(dest), carry_min.index);
    auto [promoted, suffix] = split_at(std::move(rest), cut);

    carry.for_each([&](const Element& e) { note_level(e.index, target); });
    LevelSet merged = join(join(std::move(prefix), std::move(carry)), std::move(suffix));
    tails_[target - 1] = *merged.max_element();
    levels_[target - 1] = std::move(merged);

    if (promoted.empty()) return;
    carry = std::move(promoted);
    ++target;
  }
}

void DynLis::insert(Element e) {
  if (contains(e.index)) {
    throw DuplicateIndex("insert: index " + std::to_string(e.index) + " already present");
  }
  std::size_t target = find_insert_level(e);
  LevelSet carry(*stats_);
  carry.insert_max(e);
  merge_carry(std::move(carry), target);
  ++count_;
  if (!max_index_ || *max_index_ < e.index) max_index_ = e.index;
}

void DynLis::insert_append(Element e) {
  if (contains(e.index)) {
    throw DuplicateIndex("insert_append: index " + std::to_string(e.index) +
                         " already present");
  }
  if (max_index_ && !(*max_index_ < e.index)) {
    throw NotAnAppend("insert_append: index " + std::to_string(e.index) +
                      " not above current maximum " + std::to_string(*max_index_));
  }

  // Tails values increase strictly with level, so the landing level is one
  // past the last tail below e.value. No propagation can occur: promotion
  // out of the landing level would need an index above e.index.
  std::size_t lo = 0;
  std::size_t hi = tails_.size();
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (tails_[mid].value < e.value) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  std::size_t level = lo + 1;

  if (level > levels_.size()) {
    LevelSet fresh(*stats_);
    fresh.insert_max(e);
    levels_.push_back(std::move(fresh));
    tails_.push_back(e);
  } else {
    levels_[level - 1].insert_max(e);
    tails_[level - 1] = e;
  }
  note_level(e.index, level);
  ++count_;
  max_index_ = e.index;
}

void DynLis::erase(IndexKey index) {
  auto it = level_by_index_.find(index);
  if (it == level_by_index_.end()) {
    throw IndexNotFound("erase: no element with index " + std::to_string(index));
  }
  std::size_t start_level = it->second;
  level_by_index_.erase(it);
  ++side_map_updates_;

  {
    auto [before, rest] = split_before(std::move(levels_[start_level - 1]), index);
    auto [victim, after] = split_at(std::move(rest), index);
    if (victim.size() != 1) {
      throw PreconditionViolated("erase: level " + std::to_string(start_level) +
                                 " does not hold index " + std::to_string(index));
    }
    levels_[start_level - 1] = join(std::move(before), std::move(after));
    if (!levels_[start_level - 1].empty()) {
      tails_[start_level - 1] = *levels_[start_level - 1].max_element();
    }
  }

  // The removed range leaves a hole in its level. An element one level up
  // falls back down iff every supporter it had sits inside the hole: its
  // index lies between the hole start and the first survivor above the hole,
  // and its value is at most the last survivor's below the hole. Those
  // elements form a contiguous index range, extracted with two cuts.
  IndexKey hole_min = index;
  IndexKey hole_max = index;
  for (std::size_t k = start_level; k < levels_.size(); ++k) {
    LevelSet& below = levels_[k - 1];
    auto survivor_before = below.pred_before(hole_min);
    auto survivor_after = below.succ_after(hole_max);

    IndexKey cut_low = hole_min;
    if (survivor_before) {
      auto blocked = levels_[k].last_with_value_above(survivor_before->value);
      if (blocked && blocked->index > cut_low) cut_low = blocked->index;
    }

    auto [keep_lo, rest] = split_at(std::move(levels_[k]), cut_low);
    LevelSet demoted(*stats_);
    LevelSet keep_hi(*stats_);
    if (survivor_after) {
      auto [d, kh] = split_before(std::move(rest), survivor_after->index);
      demoted = std::move(d);
      keep_hi = std::move(kh);
    } else {
      demoted = std::move(rest);
    }
    levels_[k] = join(std::move(keep_lo), std::move(keep_hi));

    if (demoted.empty()) break;

    Element demoted_min = *demoted.min_element();
    Element demoted_max = *demoted.max_element();
    demoted.for_each([&](const Element& e) { note_level(e.index, k); });

    auto [prefix, suffix] = split_at(std::move(below), hole_min);
    levels_[k - 1] = join(join(std::move(prefix), std::move(demoted)), std::move(suffix));
    tails_[k - 1] = *levels_[k - 1].max_element();
    if (!levels_[k].empty()) tails_[k] = *levels_[k].max_element();

    hole_min = demoted_min.index;
    hole_max = demoted_max.index;
  }

  // Only the top level can end up empty; intermediate holes are always
  // refilled by the cascade.
  while (!levels_.empty() && levels_.back().empty()) {
    levels_.pop_back();
    tails_.pop_back();
  }

  --count_;
  if (max_index_ && *max_index_ == index) {
    max_index_.reset();
    for (const Element& t : tails_) {
      if (!max_index_ || *max_index_ < t.index) max_index_ = t.index;
    }
  }
}

void DynLis::clear() {
  levels_.clear();
  tails_.clear();
  level_by_index_.clear();
  count_ = 0;
  max_index_.reset();
}

std::size_t DynLis::level_of(IndexKey index) const {
  auto it = level_by_index_.find(index);
  if (it == level_by_index_.end()) {
    throw IndexNotFound("level_of: no element with index " + std::to_string(index));
  }
  return it->second;
}

std::vector<Element> DynLis::extract_lis() const {
  std::vector<Element> witness(levels_.size(), Element{});
  if (levels_.empty()) return witness;
  Element cur = *levels_.back().max_element();
  witness.back() = cur;
  for (std::size_t level = levels_.size() - 1; level >= 1; --level) {
    auto p = levels_[level - 1].pred_before(cur.index);
    if (!p || !(p->value < cur.value)) {
      throw PreconditionViolated("extract: predecessor support missing below " +
                                 describe(cur) + " at level " + std::to_string(level + 1));
    }
    cur = *p;
    witness[level - 1] = cur;
  }
  return witness;
}

std::vector<std::vector<Element>> DynLis::levels_snapshot() const {
  std::vector<std::vector<Element>> out;
  out.reserve(levels_.size());
  for (const LevelSet& ls : levels_) out.push_back(ls.elements());
  return out;
}

InvariantReport DynLis::check_invariants() const {
  return validate_level_structure(levels_snapshot(), tails_, count_, level_by_index_);
}

DynLis DynLis::clone() const {
  DynLis out;
  out.levels_.reserve(levels_.size());
  for (const LevelSet& ls : levels_) out.levels_.push_back(ls.clone_with(*out.stats_));
  out.tails_ = tails_;
  out.level_by_index_ = level_by_index_;
  out.count_ = count_;
  out.max_index_ = max_index_;
  return out;
}

InvariantReport validate_level_structure(
    const std::vector<std::vector<Element>>& levels, const std::vector<Element>& tails,
    std::size_t element_count,
    const std::unordered_map<IndexKey, std::size_t>& level_of_index) {
  auto fail = [](std::string detail) { return InvariantReport{false, std::move(detail)}; };

  if (tails.size() != levels.size()) {
    return fail("tails directory has " + std::to_string(tails.size()) + " entries for " +
                std::to_string(levels.size()) + " levels");
  }

  std::size_t total = 0;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const auto& level = levels[k];
    const std::string level_name = "level " + std::to_string(k + 1);
    if (level.empty()) return fail(level_name + " is empty");
    total += level.size();

    for (std::size_t i = 1; i < level.size(); ++i) {
      if (!(level[i - 1].index < level[i].index)) {
        return fail(level_name + ": index order broken at " + describe(level[i - 1]) +
                    " -> " + describe(level[i]));
      }
      if (level[i - 1].value < level[i].value) {
        return fail(level_name + ": value increases with index, " + describe(level[i - 1]) +
                    " -> " + describe(level[i]));
      }
    }

    if (!(tails[k] == level.back())) {
      return fail("tails entry for " + level_name + " is " + describe(tails[k]) +
                  " but the maximum-index element is " + describe(level.back()));
    }
    if (k > 0 && !(tails[k - 1].value < tails[k].value)) {
      return fail("tails values not strictly increasing from level " + std::to_string(k) +
                  " to " + std::to_string(k + 1));
    }

    if (k > 0) {
      const auto& prev = levels[k - 1];
      std::size_t j = 0;
      for (const Element& e : level) {
        while (j < prev.size() && prev[j].index < e.index) ++j;
        if (j == 0) {
          return fail("predecessor support missing: " + describe(e) + " at " + level_name +
                      " has no predecessor in level " + std::to_string(k));
        }
        const Element& p = prev[j - 1];
        if (!(p.value < e.value)) {
          return fail("predecessor support violated: " + describe(p) + " at level " +
                      std::to_string(k) + " does not support " + describe(e) + " at " +
                      level_name);
        }
      }
    }

    for (const Element& e : level) {
      auto it = level_of_index.find(e.index);
      if (it == level_of_index.end() || it->second != k + 1) {
        return fail("level dictionary mismatch for " + describe(e) + " at " + level_name);
      }
    }
  }

  if (total != element_count) {
    return fail("element count mismatch: levels hold " + std::to_string(total) +
                ", structure reports " + std::to_string(element_count));
  }
  if (level_of_index.size() != element_count) {
    return fail("level dictionary holds " + std::to_string(level_of_index.size()) +
                " entries for " + std::to_string(element_count) + " elements");
  }
  return {};
}

}  // namespace dynlis
