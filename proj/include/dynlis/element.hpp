#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dynlis {

// Sequence position key. Keys are unique across one structure and totally
// ordered; the positional adapter allocates them so that key order equals
// list order.
using IndexKey = std::int64_t;

// Stored value. Duplicates are legal; "increasing" is always strict.
using Value = std::int64_t;

struct Element {
  IndexKey index;
  Value value;

  friend bool operator==(const Element&, const Element&) = default;
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A structural precondition broke. When this fires inside propagation it
// means a logic bug; the mutation aborts, there is no partial recovery.
struct PreconditionViolated : Error {
  using Error::Error;
};

struct DuplicateIndex : Error {
  using Error::Error;
};

struct IndexNotFound : Error {
  using Error::Error;
};

struct NotAnAppend : Error {
  using Error::Error;
};

struct PositionOutOfRange : Error {
  using Error::Error;
};

struct KeyNotFound : Error {
  using Error::Error;
};

struct BadMix : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_number(line) {}

  std::size_t line_number;
};

}  // namespace dynlis
