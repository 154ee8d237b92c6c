#pragma once

#include <chrono>
#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "regpart/arith.hpp"

namespace regpart {

class TableStore;

/// Normalized pair 1 < a <= b.
struct Pair {
  std::size_t a = 2;
  std::size_t b = 2;

  Pair() = default;
  /// Throws PreconditionError unless 1 < a <= b.
  Pair(std::size_t a, std::size_t b);
  /// Orders the arguments before validating.
  static Pair normalized(std::size_t x, std::size_t y);

  std::size_t sum() const noexcept { return a + b; }

  friend auto operator<=>(const Pair&, const Pair&) = default;
};

enum class DeltaSign { Negative = -1, Zero = 0, Positive = 1 };

const char* to_string(DeltaSign sign) noexcept;
DeltaSign parse_sign(std::string_view text);

struct Delta {
  Int value;
  DeltaSign sign;
};

/// p_k(a) p_k(b) - p_k(a+b), exact. Throws RangeError if a+b > n_max.
Delta delta(const PartitionTable& table, Pair pair);

/// "Delta(a0, b) < 0 for every b >= b_from", certified up to verified_to.
struct InfiniteFamily {
  std::size_t a0;
  std::size_t b_from;
  DeltaSign sign;
  std::size_t verified_to;

  friend bool operator==(const InfiniteFamily&, const InfiniteFamily&) = default;
};

struct ExceptionReport {
  KIndex k = KIndex::infinity();
  std::size_t search_bound = 0;
  std::vector<Pair> equality_pairs;   // Delta == 0, sorted
  std::vector<Pair> reversed_pairs;   // Delta < 0, sorted, minus pairs covered by a family
  std::vector<InfiniteFamily> infinite_families;
};

/// Scans every pair with a + b <= sum_bound. A value a0 >= 2 with p_k(a0) = 1
/// becomes a Negative family when p_k(n + a0) > p_k(n) for a0 <= n <= sum_bound - a0;
/// its pairs are then not repeated in reversed_pairs.
ExceptionReport enumerate_exceptions(const PartitionTable& table, std::size_t sum_bound, unsigned jobs = 1);

/// True when every listed pair and family re-checks against `table`.
bool recheck(const ExceptionReport& report, const PartitionTable& table);

/// Known (finite + family) exception data, as printed in the published tables.
struct KnownFamily {
  std::size_t a0;
  std::size_t b_from;
  DeltaSign sign;
};

struct KnownExceptions {
  std::vector<Pair> equality;
  std::vector<Pair> reversed;
  std::vector<KnownFamily> families;

  /// Expected sign of Delta at `pair`, or nullopt when the pair is not an exception.
  std::optional<DeltaSign> expected(Pair pair) const;
};

/// Differences between a computed report and a reference set, restricted to
/// pairs with a + b <= report.search_bound.
struct ExceptionDiff {
  std::vector<Pair> missing_equality;
  std::vector<Pair> extra_equality;
  std::vector<Pair> missing_reversed;
  std::vector<Pair> extra_reversed;
  std::vector<KnownFamily> missing_families;
  std::vector<InfiniteFamily> extra_families;

  bool empty() const noexcept;
};

ExceptionDiff compare_exceptions(const ExceptionReport& report, const KnownExceptions& known);

enum class KClass { K2, K3, KGreater3 };

const char* to_string(KClass k_class) noexcept;

/// Constants of the inductive proof: S(n) covers a, b >= A with a + b >= B,
/// and is checked directly for B <= a + b <= N0.
struct VerificationParams {
  KClass k_class;
  std::size_t A;
  std::size_t B;
  std::size_t N0;

  static VerificationParams for_class(KClass k_class);
  static KClass class_of(std::uint64_t k);
  /// (n_k, m_k) for 2 <= k <= 6.
  static const std::map<std::uint64_t, std::pair<std::size_t, std::size_t>>& thresholds();
};

struct ThresholdReport {
  std::uint64_t k;
  std::size_t n_k;
  std::size_t m_k;
  std::size_t sum_bound;
  std::size_t pairs_checked = 0;
  std::vector<Pair> violations;

  bool passed() const noexcept { return violations.empty(); }
};

/// Checks Delta_k(a, b) > 0 for a, b >= n_k and m_k <= a + b <= sum_bound.
ThresholdReport check_thresholds(const PartitionTable& table, std::uint64_t k, std::size_t sum_bound);

/// Smallest (n_k, m_k) consistent with an exception report: n_k exceeds every
/// family's a0, m_k exceeds every finite exception sum with a >= n_k.
std::pair<std::size_t, std::size_t> derive_thresholds(const ExceptionReport& report);

struct StabilizationEntry {
  std::uint64_t k;
  ExceptionDiff diff;
};

struct StabilizationReport {
  std::uint64_t k_from;
  std::uint64_t k_to;
  std::size_t sum_bound;
  std::vector<StabilizationEntry> entries;

  bool all_equal() const noexcept;
};

/// Compares E_k, F_k against E_inf, F_inf for every k in [k_from, k_to].
StabilizationReport stabilization_scan(std::uint64_t k_from, std::uint64_t k_to, std::size_t sum_bound,
                                       TableStore& store, unsigned jobs = 1);

struct CampaignOptions {
  std::optional<std::size_t> n0_override;
  /// When false every nonpositive Delta in the whole region is a violation.
  bool apply_exclusions = true;
  unsigned jobs = 1;
  /// Pairs whose log-margin log p(a) + log p(b) - log p(a+b) reaches this
  /// value are accepted without the exact check.
  double filter_margin = 1.0;
  /// Completed k are appended here and skipped on a later run.
  std::optional<std::filesystem::path> progress_file;
  std::optional<std::chrono::steady_clock::duration> time_limit;
};

struct PairFinding {
  Pair pair;
  DeltaSign sign;

  friend bool operator==(const PairFinding&, const PairFinding&) = default;
};

struct CampaignEntry {
  KIndex k = KIndex::infinity();
  std::size_t pairs_checked = 0;
  std::size_t exact_checks = 0;
  /// Nonpositive Delta in the S(m) region not covered by the known sets
  /// (or, without exclusions, every nonpositive Delta).
  std::vector<PairFinding> unexpected;
  /// Exceptions found in the region a < A or a + b < B.
  std::size_t below_threshold_exceptions = 0;
  /// Pairs whose computed sign disagrees with the known tables outside the
  /// `unexpected` case: below-threshold disagreements, or a tabulated
  /// exception that computes as Positive.
  std::vector<PairFinding> table_mismatches;
  bool resumed = false;
};

struct CampaignReport {
  VerificationParams params;
  std::size_t n0 = 0;
  std::uint64_t k_max = 0;
  /// True when every k <= n0 was scanned and an infinity entry stands in for n0 < k <= k_max.
  bool complete = true;
  std::vector<CampaignEntry> entries;

  std::size_t unexpected_count() const noexcept;
};

/// Finite verification of S(m) for B <= m <= N0 (or the override) for every
/// k of the class up to k_max. Tables for k > N0 agree with p on 0..N0, so a
/// single k = inf entry covers them.
CampaignReport induction_campaign(const VerificationParams& params, std::uint64_t k_max,
                                  const CampaignOptions& options, TableStore& store);

}  // namespace regpart
