#pragma once

#include <cstdint>

namespace dynlis {

// Tree-primitive invocation counts. The tree layer maintains these itself so
// complexity measurements cannot be bypassed from above. Within one public
// operation the counts only grow; harnesses reset them between operations.
//
// Accounting: splits counts each split invocation (including the split-last
// inside a bare two-tree join); joins counts every join-algorithm call,
// including the ones split recursion performs; rotations_or_rebalances counts
// every rotation plus every spine step of a join descent; pred_queries counts
// pred / min / value-threshold descents; succ_queries counts succ / max.
struct CostCounters {
  std::uint64_t splits = 0;
  std::uint64_t joins = 0;
  std::uint64_t pred_queries = 0;
  std::uint64_t succ_queries = 0;
  std::uint64_t rotations_or_rebalances = 0;

  std::uint64_t total() const {
    return splits + joins + pred_queries + succ_queries + rotations_or_rebalances;
  }

  void reset() { *this = CostCounters{}; }
};

// Counters plus a raw tally of nodes visited by primitive calls; the tally
// backs the per-call O(log n) budget tests and is not part of CostCounters.
struct TreeStats {
  CostCounters counters;
  std::uint64_t nodes_touched = 0;

  void reset() {
    counters.reset();
    nodes_touched = 0;
  }
};

}  // namespace dynlis
