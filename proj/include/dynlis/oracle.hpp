#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "dynlis/element.hpp"

// Independent reference implementations used as ground truth by the tests.
// Nothing here shares code with the dynamic structure.
namespace dynlis::oracle {

// Quadratic DP: for each element, the length of the longest strictly
// increasing subsequence ending there. Input must be sorted by index with
// distinct indices.
std::unordered_map<IndexKey, std::size_t> levels(const std::vector<Element>& sequence);

// Classic patience tails, maintained incrementally: tails()[k] is the
// smallest possible last value of an increasing subsequence of length k+1,
// and is strictly increasing.
class PatienceTails {
 public:
  void push(Value v);
  const std::vector<Value>& tails() const { return tails_; }
  std::size_t length() const { return tails_.size(); }

 private:
  std::vector<Value> tails_;
};

// O(n log n) LIS length via patience tails.
std::size_t length_fast(const std::vector<Element>& sequence);

// True iff `witness` is a maximum-length strictly increasing subsequence of
// `sequence` (strict in both index and value).
bool is_valid_lis(const std::vector<Element>& sequence, const std::vector<Element>& witness);

}  // namespace dynlis::oracle
