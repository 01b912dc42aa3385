#include "dynlis/replay.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "dynlis/oracle.hpp"

namespace dynlis {

std::vector<Element> Replayer::sequence() const {
  std::vector<Element> out;
  out.reserve(adapter_.size());
  for (std::size_t i = 0; i < adapter_.size(); ++i) {
    out.push_back({adapter_.keys()[i], values_[i]});
  }
  return out;
}

bool Replayer::append_eligible(const WorkloadOp& op) const {
  switch (op.op) {
    case OpKind::append:
      return true;
    case OpKind::insert_front:
      return adapter_.size() == 0;
    case OpKind::insert_after_pos:
      return adapter_.size() > 0 && op.pos && *op.pos == adapter_.size() - 1;
    case OpKind::insert_key:
      return op.key && !d_.contains(*op.key) &&
             (!d_.max_index() || *d_.max_index() < *op.key);
    default:
      return false;
  }
}

void Replayer::rebuild_after_relabel(ApplyOutcome& outcome) {
  adapter_.relabel();
  ++relabels_;
  outcome.relabeled = true;
  std::uint64_t tree_before = d_.counters().total();
  std::uint64_t side_before = d_.side_map_updates();
  d_.clear();
  for (std::size_t i = 0; i < adapter_.size(); ++i) {
    d_.insert_append({adapter_.keys()[i], values_[i]});
  }
  outcome.relabel_tree_ops = d_.counters().total() - tree_before;
  outcome.relabel_side_ops = d_.side_map_updates() - side_before;
}

ApplyOutcome Replayer::insert_positional(const WorkloadOp& op, std::size_t slot) {
  ApplyOutcome outcome;
  if (!adapter_.can_alloc(slot)) {
    rebuild_after_relabel(outcome);
  }
  IndexKey key = adapter_.alloc_at(slot);
  values_.insert(values_.begin() + static_cast<std::ptrdiff_t>(slot), *op.value);
  Element e{key, *op.value};
  if (op.op == OpKind::append) {
    d_.insert_append(e);
  } else {
    d_.insert(e);
  }
  outcome.mutated = true;
  outcome.inserted = e;
  return outcome;
}

ApplyOutcome Replayer::apply(const WorkloadOp& op) {
  switch (op.op) {
    case OpKind::insert_key: {
      if (d_.contains(*op.key)) {
        throw DuplicateIndex("insert_key: index " + std::to_string(*op.key) +
                             " already present");
      }
      adapter_.register_key(*op.key);
      std::size_t pos = adapter_.position_of(*op.key);
      values_.insert(values_.begin() + static_cast<std::ptrdiff_t>(pos), *op.value);
      Element e{*op.key, *op.value};
      d_.insert(e);
      ApplyOutcome outcome;
      outcome.mutated = true;
      outcome.inserted = e;
      return outcome;
    }
    case OpKind::insert_front:
      return insert_positional(op, 0);
    case OpKind::insert_after_pos: {
      if (*op.pos >= adapter_.size()) {
        throw PositionOutOfRange("insert_after_pos: position " + std::to_string(*op.pos) +
                                 " out of range, size " + std::to_string(adapter_.size()));
      }
      return insert_positional(op, *op.pos + 1);
    }
    case OpKind::append:
      return insert_positional(op, adapter_.size());
    case OpKind::delete_key: {
      d_.erase(*op.key);  // throws IndexNotFound before any bookkeeping
      std::size_t pos = adapter_.position_of(*op.key);
      adapter_.erase_at(pos);
      values_.erase(values_.begin() + static_cast<std::ptrdiff_t>(pos));
      ApplyOutcome outcome;
      outcome.mutated = true;
      outcome.erased = *op.key;
      return outcome;
    }
    case OpKind::delete_pos: {
      IndexKey key = adapter_.key_at(*op.pos);
      d_.erase(key);
      adapter_.erase_at(*op.pos);
      values_.erase(values_.begin() + static_cast<std::ptrdiff_t>(*op.pos));
      ApplyOutcome outcome;
      outcome.mutated = true;
      outcome.erased = key;
      return outcome;
    }
    case OpKind::query_length: {
      ApplyOutcome outcome;
      outcome.length = d_.lis_length();
      return outcome;
    }
    case OpKind::extract: {
      ApplyOutcome outcome;
      outcome.witness = d_.extract_lis();
      outcome.length = outcome.witness->size();
      return outcome;
    }
  }
  throw Error("unhandled op kind");
}

namespace {

void print_element(std::ostream& out, const Element& e) {
  out << '(' << e.index << ',' << e.value << ')';
}

}  // namespace

VerifyResult run_verify(const std::vector<WorkloadOp>& ops, VerifyMode mode) {
  VerifyResult result;
  std::ostringstream report;
  report << "# verify mode=" << (mode == VerifyMode::full ? "full" : "length_only") << '\n';

  Replayer replayer;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const WorkloadOp& op = ops[i];
    ApplyOutcome outcome;
    try {
      outcome = replayer.apply(op);
    } catch (const Error& err) {
      report << "op " << i << ' ' << op_name(op.op) << ": error " << err.what() << '\n';
      report << "FAIL at op " << i << '\n';
      result.ok = false;
      result.report = report.str();
      return result;
    }
    ++result.ops_applied;

    if (outcome.relabeled) report << "op " << i << ": relabel event\n";
    if (outcome.witness) {
      report << "op " << i << " extract -> " << outcome.witness->size();
      for (const Element& e : *outcome.witness) {
        report << ' ';
        print_element(report, e);
      }
      report << '\n';
    } else if (outcome.length) {
      report << "op " << i << " query -> " << *outcome.length << '\n';
    }

    auto mismatch = [&](const std::string& what) {
      report << "op " << i << ' ' << op_name(op.op) << ": " << what << '\n';
      report << "FAIL at op " << i << '\n';
      result.ok = false;
      result.report = report.str();
    };

    if (outcome.mutated) {
      std::vector<Element> seq = replayer.sequence();
      std::size_t expected = oracle::length_fast(seq);
      std::size_t got = replayer.structure().lis_length();
      if (got != expected) {
        mismatch("length mismatch: structure " + std::to_string(got) + ", oracle " +
                 std::to_string(expected));
        return result;
      }
      if (mode == VerifyMode::full) {
        InvariantReport inv = replayer.structure().check_invariants();
        if (!inv.ok) {
          mismatch("invariant violation: " + inv.detail);
          return result;
        }
        if (seq.size() <= 512) {
          auto level_truth = oracle::levels(seq);
          for (const Element& e : seq) {
            std::size_t level = replayer.structure().level_of(e.index);
            if (level != level_truth.at(e.index)) {
              mismatch("level mismatch at index " + std::to_string(e.index) + ": structure " +
                       std::to_string(level) + ", oracle " +
                       std::to_string(level_truth.at(e.index)));
              return result;
            }
          }
        }
      }
    }

    if (mode == VerifyMode::full && outcome.witness) {
      if (!oracle::is_valid_lis(replayer.sequence(), *outcome.witness)) {
        mismatch("extracted witness rejected by oracle");
        return result;
      }
    }
  }

  report << "ok: " << ops.size() << " ops, " << replayer.live_count() << " elements, length "
         << replayer.structure().lis_length() << ", relabels " << replayer.relabel_count()
         << '\n';
  result.report = report.str();
  return result;
}

double insert_budget(std::size_t n_before, std::size_t r_before) {
  double n = static_cast<double>(n_before < 1 ? 1 : n_before);
  double r = static_cast<double>(r_before < 1 ? 1 : r_before);
  return (static_cast<double>(r_before) + 1.0) * (std::log2(n / r) + 2.0);
}

double append_budget(std::size_t n_before) {
  double n = static_cast<double>(n_before < 1 ? 1 : n_before);
  return std::log2(n) + 2.0;
}

BenchResult run_bench(const std::vector<WorkloadOp>& ops) {
  BenchResult result;
  Replayer replayer;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const WorkloadOp& op = ops[i];
    std::size_t n_before = replayer.live_count();
    std::size_t r_before = replayer.structure().lis_length();
    std::uint64_t tree_before = replayer.structure().counters().total();
    std::uint64_t side_before = replayer.structure().side_map_updates();

    auto t0 = std::chrono::steady_clock::now();
    ApplyOutcome outcome = replayer.apply(op);
    auto t1 = std::chrono::steady_clock::now();

    if (!outcome.mutated) continue;

    // A relabel rebuild is charged separately, not to the op that tripped it.
    std::uint64_t tree_ops =
        replayer.structure().counters().total() - tree_before - outcome.relabel_tree_ops;
    std::uint64_t side_ops =
        replayer.structure().side_map_updates() - side_before - outcome.relabel_side_ops;

    BenchRecord record{
        i,
        op.op,
        n_before,
        r_before,
        tree_ops,
        side_ops,
        static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()),
    };
    result.records.push_back(record);

    double mutation_ratio = static_cast<double>(tree_ops) / insert_budget(n_before, r_before);
    if (mutation_ratio > result.max_mutation_ratio) result.max_mutation_ratio = mutation_ratio;
    if (is_general_insert(op.op) && mutation_ratio > result.max_insert_ratio) {
      result.max_insert_ratio = mutation_ratio;
    }
    if (is_delete(op.op) && mutation_ratio > result.max_delete_ratio) {
      result.max_delete_ratio = mutation_ratio;
    }
    if (op.op == OpKind::append) {
      double append_ratio = static_cast<double>(tree_ops) / append_budget(n_before);
      if (append_ratio > result.max_append_ratio) result.max_append_ratio = append_ratio;
    }
  }
  result.relabels = replayer.relabel_count();
  return result;
}

void write_bench_csv(std::ostream& out, const BenchResult& result) {
  out << "op_index,op_kind,n_before,r_before,tree_ops,side_ops,ns\n";
  for (const BenchRecord& r : result.records) {
    out << r.op_index << ',' << op_name(r.op_kind) << ',' << r.n_before << ',' << r.r_before
        << ',' << r.tree_ops << ',' << r.side_ops << ',' << r.ns << '\n';
  }
  out << std::fixed << std::setprecision(4);
  out << "# relabels " << result.relabels << '\n';
  out << "# max_mutation_ratio " << result.max_mutation_ratio << '\n';
  out << "# max_insert_ratio " << result.max_insert_ratio << '\n';
  out << "# max_append_ratio " << result.max_append_ratio << '\n';
  out << "# max_delete_ratio " << result.max_delete_ratio << '\n';
}

}  // namespace dynlis
