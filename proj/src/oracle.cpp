#include "dynlis/oracle.hpp"

#include <algorithm>
#include <cassert>

namespace dynlis::oracle {

std::unordered_map<IndexKey, std::size_t> levels(const std::vector<Element>& sequence) {
  std::unordered_map<IndexKey, std::size_t> out;
  out.reserve(sequence.size());
  std::vector<std::size_t> best(sequence.size(), 1);
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    assert(i == 0 || sequence[i - 1].index < sequence[i].index);
    for (std::size_t j = 0; j < i; ++j) {
      if (sequence[j].value < sequence[i].value && best[j] + 1 > best[i]) {
        best[i] = best[j] + 1;
      }
    }
    out[sequence[i].index] = best[i];
  }
  return out;
}

void PatienceTails::push(Value v) {
  auto it = std::lower_bound(tails_.begin(), tails_.end(), v);
  if (it == tails_.end()) {
    tails_.push_back(v);
  } else {
    *it = v;
  }
}

std::size_t length_fast(const std::vector<Element>& sequence) {
  PatienceTails tails;
  for (const Element& e : sequence) tails.push(e.value);
  return tails.length();
}

bool is_valid_lis(const std::vector<Element>& sequence, const std::vector<Element>& witness) {
  if (witness.size() != length_fast(sequence)) return false;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < witness.size(); ++i) {
    if (i > 0) {
      if (!(witness[i - 1].index < witness[i].index)) return false;
      if (!(witness[i - 1].value < witness[i].value)) return false;
    }
    // Subsequence check: each witness element must appear in the sequence.
    while (cursor < sequence.size() && sequence[cursor].index < witness[i].index) ++cursor;
    if (cursor == sequence.size() || sequence[cursor].index != witness[i].index ||
        sequence[cursor].value != witness[i].value) {
      return false;
    }
    ++cursor;
  }
  return true;
}

}  // namespace dynlis::oracle
