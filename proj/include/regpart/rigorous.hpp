#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>

#include "regpart/arith.hpp"
#include "regpart/errors.hpp"

namespace regpart {

/// Closed interval [lower, upper] with dyadic-rational endpoints that encloses
/// a real number. Every operation rounds the lower endpoint down and the
/// upper endpoint up, so the enclosure is preserved.
class RigorousReal {
 public:
  static constexpr mpfr_prec_t kStartBits = 128;
  static constexpr mpfr_prec_t kMaxBits = 2048;

  explicit RigorousReal(mpfr_prec_t bits = kStartBits);
  RigorousReal(const Int& value, mpfr_prec_t bits);
  RigorousReal(long value, mpfr_prec_t bits);
  /// num / den.
  static RigorousReal ratio(const Int& num, const Int& den, mpfr_prec_t bits);

  RigorousReal(const RigorousReal& other);
  RigorousReal(RigorousReal&& other) noexcept;
  RigorousReal& operator=(RigorousReal other) noexcept;
  ~RigorousReal();

  mpfr_prec_t precision() const noexcept { return bits_; }
  mpq_class lower() const;
  mpq_class upper() const;
  /// Endpoints as doubles, rounded outward.
  double lower_double() const;
  double upper_double() const;
  /// Interval width, rounded up.
  double width() const;
  bool contains(const mpq_class& value) const;

  /// -1, 0 or +1 when decided; nullopt while 0 is interior or an endpoint of a
  /// nondegenerate interval.
  std::optional<int> sign() const;
  /// Certified comparison with an exact integer: -1 when the whole interval is
  /// below `value`, +1 when above, 0 only for the degenerate interval [value, value].
  std::optional<int> compare(const Int& value) const;
  /// Sign of lower - value and of upper - value.
  int cmp_lower(const Int& value) const;
  int cmp_upper(const Int& value) const;

  friend RigorousReal operator+(const RigorousReal& x, const RigorousReal& y);
  friend RigorousReal operator-(const RigorousReal& x, const RigorousReal& y);
  friend RigorousReal operator*(const RigorousReal& x, const RigorousReal& y);
  friend RigorousReal operator-(const RigorousReal& x);

  /// Natural logarithm; requires a strictly positive enclosure.
  friend RigorousReal log(const RigorousReal& x);
  /// Square root; negative parts of the enclosure are clamped to 0.
  friend RigorousReal sqrt(const RigorousReal& x);
  /// 2^x.
  friend RigorousReal exp2(const RigorousReal& x);

  std::string to_string() const;

 private:
  mpfr_t lo_;
  mpfr_t hi_;
  mpfr_prec_t bits_;
};

/// Runs `eval(bits)` at kStartBits, doubling while it returns nullopt, and
/// throws PrecisionExhausted past kMaxBits. Returns the value and the bits used.
template <class Eval>
auto escalate(Eval&& eval, const std::string& what) {
  for (mpfr_prec_t bits = RigorousReal::kStartBits; bits <= RigorousReal::kMaxBits; bits *= 2) {
    if (auto decided = eval(bits)) return std::make_pair(*decided, bits);
  }
  throw PrecisionExhausted(what + ": undecided at " + std::to_string(RigorousReal::kMaxBits) + " bits");
}

}  // namespace regpart
