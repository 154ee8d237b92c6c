#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <utility>

#include "regpart/arith.hpp"

namespace regpart {

/// Writes the text cache format:
///   RPKT 1
///   k=<decimal|inf> nmax=<decimal>
///   p_k(0)
///   ...
///   p_k(n_max)
void save_table(const PartitionTable& table, const std::filesystem::path& path);

/// Loads and validates a cached table. Throws CacheError with kind Version
/// (bad magic), Mismatch (header disagrees with k/n_max), Corrupt (bad line
/// count or entry) or Io (unreadable).
PartitionTable load_table(const KIndex& k, std::size_t n_max, const std::filesystem::path& path);

/// Cache file name used inside a cache directory.
std::filesystem::path cache_file_name(const KIndex& k, std::size_t n_max);

/// Builds tables by the recurrence, memoizes them in memory and, when a cache
/// directory is configured, on disk. Thread-safe.
class TableStore {
 public:
  explicit TableStore(std::optional<std::filesystem::path> cache_dir = std::nullopt);

  /// With memoize = false the table is not retained in memory (disk cache still applies).
  PartitionTable get(const KIndex& k, std::size_t n_max, bool memoize = true);

  /// Number of tables built from scratch (not served from memory or disk).
  std::size_t builds() const;

 private:
  std::optional<std::filesystem::path> cache_dir_;
  mutable std::mutex mutex_;
  std::map<std::pair<std::string, std::size_t>, PartitionTable> memo_;
  std::size_t builds_ = 0;
};

}  // namespace regpart
