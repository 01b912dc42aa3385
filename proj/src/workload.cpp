#include "dynlis/workload.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace dynlis {

namespace {

struct FieldSpec {
  bool pos = false;
  bool key = false;
  bool value = false;
};

FieldSpec fields_for(OpKind kind) {
  switch (kind) {
    case OpKind::insert_key:
      return {false, true, true};
    case OpKind::insert_after_pos:
      return {true, false, true};
    case OpKind::insert_front:
    case OpKind::append:
      return {false, false, true};
    case OpKind::delete_key:
      return {false, true, false};
    case OpKind::delete_pos:
      return {true, false, false};
    case OpKind::query_length:
    case OpKind::extract:
      return {};
  }
  return {};
}

std::optional<OpKind> kind_from_name(std::string_view name) {
  if (name == "insert_key") return OpKind::insert_key;
  if (name == "insert_after_pos") return OpKind::insert_after_pos;
  if (name == "insert_front") return OpKind::insert_front;
  if (name == "append") return OpKind::append;
  if (name == "delete_key") return OpKind::delete_key;
  if (name == "delete_pos") return OpKind::delete_pos;
  if (name == "query") return OpKind::query_length;
  if (name == "extract") return OpKind::extract;
  return std::nullopt;
}

std::int64_t parse_int(std::string_view text, std::size_t line) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(line, "bad integer '" + std::string(text) + "'");
  }
  return out;
}

// Signed midpoint with truncation toward zero; exact for the full range.
IndexKey midpoint(IndexKey lo, IndexKey hi) {
  return static_cast<IndexKey>((static_cast<__int128>(lo) + static_cast<__int128>(hi)) / 2);
}

constexpr IndexKey kLowSentinel = std::numeric_limits<IndexKey>::min();
constexpr IndexKey kHighSentinel = std::numeric_limits<IndexKey>::max();

}  // namespace

std::string_view op_name(OpKind kind) {
  switch (kind) {
    case OpKind::insert_key:
      return "insert_key";
    case OpKind::insert_after_pos:
      return "insert_after_pos";
    case OpKind::insert_front:
      return "insert_front";
    case OpKind::append:
      return "append";
    case OpKind::delete_key:
      return "delete_key";
    case OpKind::delete_pos:
      return "delete_pos";
    case OpKind::query_length:
      return "query";
    case OpKind::extract:
      return "extract";
  }
  return "?";
}

std::vector<WorkloadOp> parse_trace(std::string_view text) {
  std::vector<WorkloadOp> ops;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = (eol == std::string_view::npos) ? std::string_view{} : text.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::size_t at = line.find_first_not_of(" \t");
    if (at == std::string_view::npos || line[at] == '#') continue;

    std::vector<std::string_view> tokens;
    while (at != std::string_view::npos) {
      std::size_t end = line.find_first_of(" \t", at);
      tokens.push_back(line.substr(at, end == std::string_view::npos ? end : end - at));
      at = line.find_first_not_of(" \t", end);
    }

    auto kind = kind_from_name(tokens[0]);
    if (!kind) throw ParseError(line_no, "unknown op '" + std::string(tokens[0]) + "'");

    WorkloadOp op{*kind, std::nullopt, std::nullopt, std::nullopt};
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      std::string_view token = tokens[i];
      if (token.size() < 3 || token[1] != '=') {
        throw ParseError(line_no, "bad field '" + std::string(token) + "'");
      }
      std::int64_t num = parse_int(token.substr(2), line_no);
      switch (token[0]) {
        case 'p':
          if (num < 0) throw ParseError(line_no, "negative position");
          if (op.pos) throw ParseError(line_no, "duplicate field p");
          op.pos = static_cast<std::size_t>(num);
          break;
        case 'k':
          if (op.key) throw ParseError(line_no, "duplicate field k");
          op.key = num;
          break;
        case 'v':
          if (op.value) throw ParseError(line_no, "duplicate field v");
          op.value = num;
          break;
        default:
          throw ParseError(line_no, "bad field '" + std::string(token) + "'");
      }
    }

    FieldSpec spec = fields_for(*kind);
    if (spec.pos != op.pos.has_value() || spec.key != op.key.has_value() ||
        spec.value != op.value.has_value()) {
      throw ParseError(line_no,
                       "wrong fields for op '" + std::string(op_name(*kind)) + "'");
    }
    ops.push_back(op);
  }
  return ops;
}

std::string emit_trace(const std::vector<WorkloadOp>& ops) {
  std::ostringstream out;
  for (const WorkloadOp& op : ops) {
    out << op_name(op.op);
    if (op.pos) out << " p=" << *op.pos;
    if (op.key) out << " k=" << *op.key;
    if (op.value) out << " v=" << *op.value;
    out << '\n';
  }
  return out.str();
}

void Mix::validate() const {
  if (append < 0 || insert < 0 || erase < 0 || query < 0) {
    throw BadMix("mix fractions must be nonnegative");
  }
  double sum = append + insert + erase + query;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw BadMix("mix fractions sum to " + std::to_string(sum) + ", expected 1");
  }
}

Mix parse_mix(const std::string& text) {
  Mix mix{0, 0, 0, 0};
  std::size_t at = 0;
  while (at < text.size()) {
    std::size_t end = text.find(',', at);
    if (end == std::string::npos) end = text.size();
    std::string part = text.substr(at, end - at);
    std::size_t eq = part.find('=');
    if (eq == std::string::npos) throw BadMix("bad mix entry '" + part + "'");
    std::string name = part.substr(0, eq);
    double frac = 0;
    try {
      std::size_t used = 0;
      frac = std::stod(part.substr(eq + 1), &used);
      if (used != part.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw BadMix("bad mix fraction in '" + part + "'");
    }
    if (name == "append") {
      mix.append = frac;
    } else if (name == "insert") {
      mix.insert = frac;
    } else if (name == "delete") {
      mix.erase = frac;
    } else if (name == "query") {
      mix.query = frac;
    } else {
      throw BadMix("unknown mix kind '" + name + "'");
    }
    at = end + 1;
  }
  mix.validate();
  return mix;
}

std::vector<WorkloadOp> gen_workload(std::uint64_t seed, std::size_t n, const Mix& mix,
                                     Value value_min, Value value_max) {
  mix.validate();
  if (!(value_min < value_max)) throw BadMix("empty value range");
  const std::uint64_t span = static_cast<std::uint64_t>(value_max - value_min);

  // mt19937_64 has a standard-mandated sequence; bounded draws use plain
  // modulo so traces are identical across platforms.
  std::mt19937_64 rng(seed);
  auto uniform = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  auto draw_value = [&]() { return value_min + static_cast<Value>(rng() % span); };

  std::vector<WorkloadOp> ops;
  ops.reserve(n);
  std::size_t live = 0;
  std::size_t queries = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double pick = uniform();
    if (pick < mix.append) {
      ops.push_back({OpKind::append, std::nullopt, std::nullopt, draw_value()});
      ++live;
    } else if (pick < mix.append + mix.insert) {
      Value v = draw_value();
      if (live == 0) {
        ops.push_back({OpKind::insert_front, std::nullopt, std::nullopt, v});
      } else {
        std::size_t slot = static_cast<std::size_t>(rng() % (live + 1));
        if (slot == 0) {
          ops.push_back({OpKind::insert_front, std::nullopt, std::nullopt, v});
        } else {
          ops.push_back({OpKind::insert_after_pos, std::nullopt, slot - 1, v});
        }
      }
      ++live;
    } else if (pick < mix.append + mix.insert + mix.erase) {
      if (live == 0) {
        ops.push_back({OpKind::append, std::nullopt, std::nullopt, draw_value()});
        ++live;
      } else {
        std::size_t pos = static_cast<std::size_t>(rng() % live);
        ops.push_back({OpKind::delete_pos, std::nullopt, pos, std::nullopt});
        --live;
      }
    } else {
      // Every fourth query asks for the witness, not just the length.
      if (queries++ % 4 == 3) {
        ops.push_back({OpKind::extract, std::nullopt, std::nullopt, std::nullopt});
      } else {
        ops.push_back({OpKind::query_length, std::nullopt, std::nullopt, std::nullopt});
      }
    }
  }
  return ops;
}

std::vector<WorkloadOp> gen_adversarial(const std::string& name, std::size_t n) {
  std::vector<WorkloadOp> ops;
  ops.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Value v = 0;
    if (name == "increasing") {
      v = static_cast<Value>(i);
    } else if (name == "decreasing") {
      v = static_cast<Value>(n - i);
    } else if (name == "sawtooth") {
      v = static_cast<Value>(i % 32);
    } else {
      throw BadMix("unknown adversarial workload '" + name + "'");
    }
    ops.push_back({OpKind::append, std::nullopt, std::nullopt, v});
  }
  return ops;
}

IndexKey PositionalAdapter::key_at(std::size_t pos) const {
  if (pos >= keys_.size()) {
    throw PositionOutOfRange("position " + std::to_string(pos) + " out of range, size " +
                             std::to_string(keys_.size()));
  }
  return keys_[pos];
}

bool PositionalAdapter::contains(IndexKey key) const {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  return it != keys_.end() && *it == key;
}

std::size_t PositionalAdapter::position_of(IndexKey key) const {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) {
    throw KeyNotFound("key " + std::to_string(key) + " not live");
  }
  return static_cast<std::size_t>(it - keys_.begin());
}

bool PositionalAdapter::can_alloc(std::size_t slot) const {
  assert(slot <= keys_.size());
  __int128 lo = slot == 0 ? kLowSentinel : keys_[slot - 1];
  __int128 hi = slot == keys_.size() ? kHighSentinel : keys_[slot];
  return hi - lo >= 2;
}

IndexKey PositionalAdapter::alloc_at(std::size_t slot) {
  if (slot > keys_.size()) {
    throw PositionOutOfRange("slot " + std::to_string(slot) + " out of range, size " +
                             std::to_string(keys_.size()));
  }
  if (!can_alloc(slot)) {
    throw PreconditionViolated("alloc_at: key gap exhausted at slot " + std::to_string(slot));
  }
  IndexKey lo = slot == 0 ? kLowSentinel : keys_[slot - 1];
  IndexKey hi = slot == keys_.size() ? kHighSentinel : keys_[slot];
  IndexKey key = midpoint(lo, hi);
  keys_.insert(keys_.begin() + static_cast<std::ptrdiff_t>(slot), key);
  return key;
}

void PositionalAdapter::relabel() {
  const std::uint64_t count = keys_.size();
  const std::uint64_t step = std::numeric_limits<std::uint64_t>::max() / (count + 1);
  for (std::uint64_t i = 0; i < count; ++i) {
    // Unsigned rank scaled across the range, then mapped order-preserving
    // onto the signed domain.
    keys_[i] = static_cast<IndexKey>(((i + 1) * step) ^ (std::uint64_t{1} << 63));
  }
}

void PositionalAdapter::register_key(IndexKey key) {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it != keys_.end() && *it == key) {
    throw PreconditionViolated("register_key: key " + std::to_string(key) + " already live");
  }
  keys_.insert(it, key);
}

void PositionalAdapter::erase_at(std::size_t pos) {
  if (pos >= keys_.size()) {
    throw PositionOutOfRange("position " + std::to_string(pos) + " out of range, size " +
                             std::to_string(keys_.size()));
  }
  keys_.erase(keys_.begin() + static_cast<std::ptrdiff_t>(pos));
}

void PositionalAdapter::erase_key(IndexKey key) {
  erase_at(position_of(key));
}

}  // namespace dynlis
