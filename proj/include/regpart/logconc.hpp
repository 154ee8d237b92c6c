#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regpart/arith.hpp"

namespace regpart {

class TableStore;

struct LogConcavityReport {
  KIndex k = KIndex::infinity();
  std::size_t n_max = 0;
  /// Indices 1 <= n <= n_max with p_k(n)^2 < p_k(n-1) p_k(n+1), sorted.
  std::vector<std::size_t> failures;
  /// 1 + max(failures), or 1 when there are none.
  std::size_t estimated_N_k = 1;
  /// estimated_N_k is only known to be minimal up to n_max.
  bool horizon_caveat = true;
};

/// p_k(n)^2 - p_k(n-1) p_k(n+1). Requires 1 <= n <= n_max - 1.
Int logconc_defect(const PartitionTable& table, std::size_t n);

/// Requires n_max <= table.n_max() - 1.
LogConcavityReport enumerate_failures(const PartitionTable& table, std::size_t n_max);

/// Failure set of the ordinary partition function: odd n with 1 <= n <= 25.
std::vector<std::size_t> p_infinity_failures();
inline constexpr std::size_t kNInfinity = 26;

struct ConjectureEntry {
  std::uint64_t k;
  std::vector<std::size_t> failures;
  std::size_t estimated_N_k;
  bool matches_p;  // failures == odd 1..25
};

struct ConjectureReport {
  std::uint64_t k_from;
  std::uint64_t k_to;
  std::size_t n_max;
  std::vector<ConjectureEntry> entries;

  /// Every k >= 30 in range reproduces the failure set of p within the horizon.
  bool conjecture_holds() const noexcept;
  /// Smallest k0 in range such that every k >= k0 in range matches p, or 0.
  std::uint64_t stabilization_start() const noexcept;
};

inline constexpr std::uint64_t kConjectureFromK = 30;

ConjectureReport conjecture_scan(std::uint64_t k_from, std::uint64_t k_to, std::size_t n_max, TableStore& store,
                                 unsigned jobs = 1);

/// Bullet grid: grid[n-1][k-k_from] is true when n is a failure index for k.
struct Table3Grid {
  std::uint64_t k_from;
  std::uint64_t k_to;
  std::size_t n_max;
  std::vector<std::vector<bool>> cells;

  friend bool operator==(const Table3Grid&, const Table3Grid&) = default;
};

Table3Grid emit_table3(TableStore& store, std::uint64_t k_from = 2, std::uint64_t k_to = 20,
                       std::size_t n_max = 45);

/// Header "n,<k...>", then one row per n with "1" for a bullet, "" otherwise.
std::string to_csv(const Table3Grid& grid);
Table3Grid parse_table3_csv(std::string_view csv);
std::string to_markdown(const Table3Grid& grid);

}  // namespace regpart
