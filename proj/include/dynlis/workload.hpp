#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dynlis/element.hpp"

namespace dynlis {

enum class OpKind {
  insert_key,
  insert_after_pos,
  insert_front,
  append,
  delete_key,
  delete_pos,
  query_length,
  extract,
};

std::string_view op_name(OpKind kind);

inline bool is_mutation(OpKind kind) {
  return kind != OpKind::query_length && kind != OpKind::extract;
}

// General-path insertions (everything but the append fast path).
inline bool is_general_insert(OpKind kind) {
  return kind == OpKind::insert_key || kind == OpKind::insert_after_pos ||
         kind == OpKind::insert_front;
}

inline bool is_delete(OpKind kind) {
  return kind == OpKind::delete_key || kind == OpKind::delete_pos;
}

// One replayable trace record. Line grammar: `<opname> [p=<int>] [k=<int>]
// [v=<int>]`, with exactly the fields the op kind requires.
struct WorkloadOp {
  OpKind op;
  std::optional<IndexKey> key;
  std::optional<std::size_t> pos;
  std::optional<Value> value;

  friend bool operator==(const WorkloadOp&, const WorkloadOp&) = default;
};

// Throws ParseError with a 1-based line number. Blank lines and lines
// starting with '#' are skipped; emit_trace never produces either.
std::vector<WorkloadOp> parse_trace(std::string_view text);
std::string emit_trace(const std::vector<WorkloadOp>& ops);

struct Mix {
  double append = 0.4;
  double insert = 0.3;
  double erase = 0.2;
  double query = 0.1;

  void validate() const;  // throws BadMix unless nonnegative and summing to 1
};

// "append=0.4,insert=0.3,delete=0.2,query=0.1"; omitted kinds are zero.
Mix parse_mix(const std::string& text);

std::vector<WorkloadOp> gen_workload(std::uint64_t seed, std::size_t n, const Mix& mix,
                                     Value value_min = 0, Value value_max = 1 << 20);

// "increasing" (LIS = n), "decreasing" (LIS = 1) or "sawtooth" (bounded LIS).
std::vector<WorkloadOp> gen_adversarial(const std::string& name, std::size_t n);

// Bridges position-addressed operations to the keyed structure: keeps the
// live keys in position order and mints fresh keys by midpoint labeling over
// the full 64-bit range. Position order always equals key order, so the
// sorted key vector serves as both directions of the bijection.
class PositionalAdapter {
 public:
  std::size_t size() const { return keys_.size(); }
  IndexKey key_at(std::size_t pos) const;  // throws PositionOutOfRange
  bool contains(IndexKey key) const;
  std::size_t position_of(IndexKey key) const;  // throws KeyNotFound

  // Whether a fresh key fits between the neighbours of `slot` (0..size()).
  bool can_alloc(std::size_t slot) const;

  // Mints and records the midpoint key for `slot`. Callers check can_alloc
  // first and relabel when it fails.
  IndexKey alloc_at(std::size_t slot);

  // Even respacing of every live key across the 64-bit range; order
  // preserving. Callers rebuild any keyed structure afterwards.
  void relabel();

  void register_key(IndexKey key);  // externally chosen key
  void erase_at(std::size_t pos);
  void erase_key(IndexKey key);

  const std::vector<IndexKey>& keys() const { return keys_; }

 private:
  std::vector<IndexKey> keys_;
};

}  // namespace dynlis
