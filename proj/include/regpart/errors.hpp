#pragma once

#include <stdexcept>
#include <string>

namespace regpart {

/// Violated precondition on an argument (bad k, empty range, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Index outside the range covered by a table.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// An exact identity that must hold did not. Always a bug, never bad input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class CacheErrorKind { Version, Mismatch, Corrupt, Io };

class CacheError : public std::runtime_error {
 public:
  CacheError(CacheErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  CacheErrorKind kind() const noexcept { return kind_; }

 private:
  CacheErrorKind kind_;
};

/// Interval evaluation could not decide a sign below the precision cap.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace regpart
