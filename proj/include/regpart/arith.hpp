#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace regpart {

/// Arbitrary-precision nonnegative integer.
using Nat = mpz_class;
/// Arbitrary-precision signed integer.
using Int = mpz_class;

/// The modulus k of the k-regular partition function: a finite k >= 2, or
/// infinity, which stands for the ordinary partition function p(n).
class KIndex {
 public:
  static KIndex finite(std::uint64_t k);
  static KIndex infinity() noexcept { return KIndex{}; }
  /// Accepts a decimal integer >= 2 or "inf".
  static KIndex parse(std::string_view text);

  bool is_infinite() const noexcept { return !value_; }
  /// Finite value; only valid when !is_infinite().
  std::uint64_t value() const { return *value_; }
  /// True when k divides n (never for infinity).
  bool divides(std::uint64_t n) const noexcept { return value_ && n % *value_ == 0; }
  /// "inf" or the decimal value.
  std::string to_string() const;

  friend bool operator==(const KIndex&, const KIndex&) = default;

 private:
  KIndex() = default;
  explicit KIndex(std::uint64_t k) : value_(k) {}

  std::optional<std::uint64_t> value_;
};

/// Sum of the positive divisors of n. Requires n >= 1.
Nat sigma(std::uint64_t n);
std::uint64_t sigma_u64(std::uint64_t n);

/// g_k(n) = sigma(n) - k sigma(n/k), the second term vanishing when k does
/// not divide n; g_inf = sigma. Requires n >= 1. Always >= 1.
Nat g_k(const KIndex& k, std::uint64_t n);
std::uint64_t g_k_u64(const KIndex& k, std::uint64_t n);

/// Immutable table p_k(0..n_max). Copies share storage.
class PartitionTable {
 public:
  PartitionTable(KIndex k, std::vector<Nat> values);

  const KIndex& k() const noexcept { return k_; }
  std::size_t n_max() const noexcept { return values_->size() - 1; }
  /// p_k(n), range-checked.
  const Nat& at(std::size_t n) const;
  const Nat& operator[](std::size_t n) const noexcept { return (*values_)[n]; }
  std::span<const Nat> values() const noexcept { return *values_; }
  /// Natural logarithm of every entry (double precision).
  std::span<const double> log_values() const noexcept { return *logs_; }

  friend bool operator==(const PartitionTable& a, const PartitionTable& b) {
    return a.k_ == b.k_ && *a.values_ == *b.values_;
  }

 private:
  KIndex k_;
  std::shared_ptr<const std::vector<Nat>> values_;
  std::shared_ptr<const std::vector<double>> logs_;
};

/// n p_k(n) = sum_{l=1}^{n} g_k(l) p_k(n-l), p_k(0) = 1. Throws
/// ConsistencyError if a division is ever inexact.
PartitionTable build_table_recurrence(const KIndex& k, std::size_t n_max);

/// Coefficients of prod_{m>=1} (1 - q^{km}) / (1 - q^m) mod q^{n_max+1}.
PartitionTable build_table_series(const KIndex& k, std::size_t n_max);

enum class CountMode { ForbiddenMultiples, BoundedMultiplicity };

inline constexpr std::size_t kBruteForceLimit = 60;

/// Counts k-regular partitions of n by explicit enumeration. ForbiddenMultiples
/// excludes parts divisible by k; BoundedMultiplicity allows each part at most
/// k-1 times. Rejects n > kBruteForceLimit.
Nat brute_force_count(const KIndex& k, std::size_t n, CountMode mode);

}  // namespace regpart
