#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dynlis/dynlis.hpp"
#include "dynlis/workload.hpp"

namespace dynlis {

struct ApplyOutcome {
  bool mutated = false;
  bool relabeled = false;
  // Primitive cost of the rebuild after a relabel, reported so benchmarks can
  // account for it separately from the op itself.
  std::uint64_t relabel_tree_ops = 0;
  std::uint64_t relabel_side_ops = 0;
  std::optional<Element> inserted;
  std::optional<IndexKey> erased;
  std::optional<std::size_t> length;
  std::optional<std::vector<Element>> witness;
};

// Drives one DynLis plus the positional adapter through a trace. Keeps a
// value mirror aligned with adapter positions so the live sequence (sorted by
// index) is always available for the oracles.
class Replayer {
 public:
  ApplyOutcome apply(const WorkloadOp& op);

  const DynLis& structure() const { return d_; }
  std::size_t live_count() const { return adapter_.size(); }
  std::uint64_t relabel_count() const { return relabels_; }
  std::vector<Element> sequence() const;

  // True when applying `op` would insert at an index above every live one.
  bool append_eligible(const WorkloadOp& op) const;

 private:
  ApplyOutcome insert_positional(const WorkloadOp& op, std::size_t slot);
  void rebuild_after_relabel(ApplyOutcome& outcome);

  DynLis d_;
  PositionalAdapter adapter_;
  std::vector<Value> values_;
  std::uint64_t relabels_ = 0;
};

enum class VerifyMode { full, length_only };

struct VerifyResult {
  bool ok = true;
  std::size_t ops_applied = 0;
  std::string report;  // deterministic, no timing fields
};

// Replays a trace checking each mutation against the oracles; `full` also
// audits the structural invariants, the per-element levels while the live
// set holds at most 512 elements, and any extracted witness. Stops at the
// first mismatch.
VerifyResult run_verify(const std::vector<WorkloadOp>& ops, VerifyMode mode);

struct BenchRecord {
  std::size_t op_index;
  OpKind op_kind;
  std::size_t n_before;
  std::size_t r_before;
  std::uint64_t tree_ops;
  std::uint64_t side_ops;
  std::uint64_t ns;
};

struct BenchResult {
  std::vector<BenchRecord> records;  // one per mutation
  std::uint64_t relabels = 0;
  double max_mutation_ratio = 0.0;  // all mutations over the insert budget
  double max_insert_ratio = 0.0;    // general-path inserts only
  double max_append_ratio = 0.0;    // appends over the log budget
  double max_delete_ratio = 0.0;
};

// Cost-bound denominators: (r+1)*(log2(n/max(r,1))+2) and log2(n)+2, with
// n clamped to 1 so empty-structure mutations stay well defined.
double insert_budget(std::size_t n_before, std::size_t r_before);
double append_budget(std::size_t n_before);

BenchResult run_bench(const std::vector<WorkloadOp>& ops);
void write_bench_csv(std::ostream& out, const BenchResult& result);

}  // namespace dynlis
