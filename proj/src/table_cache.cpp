#include "regpart/table_cache.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <thread>

#include "regpart/errors.hpp"

namespace regpart {

namespace {

constexpr const char* kMagic = "RPKT 1";

std::string header_line(const KIndex& k, std::size_t n_max) {
  return "k=" + k.to_string() + " nmax=" + std::to_string(n_max);
}

bool is_decimal(const std::string& line) {
  if (line.empty()) return false;
  for (char c : line)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

std::filesystem::path cache_file_name(const KIndex& k, std::size_t n_max) {
  return "p_k" + k.to_string() + "_n" + std::to_string(n_max) + ".rpkt";
}

void save_table(const PartitionTable& table, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  // Written to a per-thread temp name and renamed into place.
  auto tmp = path;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError(CacheErrorKind::Io, "cannot write " + tmp.string());
    out << kMagic << '\n' << header_line(table.k(), table.n_max()) << '\n';
    for (const Nat& v : table.values()) out << v.get_str() << '\n';
    if (!out) throw CacheError(CacheErrorKind::Io, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

PartitionTable load_table(const KIndex& k, std::size_t n_max, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError(CacheErrorKind::Io, "cannot read " + path.string());

  std::string line;
  if (!std::getline(in, line) || line != kMagic)
    throw CacheError(CacheErrorKind::Version, path.string() + ": bad magic/version line");
  if (!std::getline(in, line))
    throw CacheError(CacheErrorKind::Corrupt, path.string() + ": missing header");

  std::istringstream header(line);
  std::string k_field, n_field, extra;
  header >> k_field >> n_field;
  if (k_field.rfind("k=", 0) != 0 || n_field.rfind("nmax=", 0) != 0 || (header >> extra) ||
      !is_decimal(n_field.substr(5)))
    throw CacheError(CacheErrorKind::Corrupt, path.string() + ": malformed header '" + line + "'");
  if (line != header_line(k, n_max))
    throw CacheError(CacheErrorKind::Mismatch, path.string() + ": header '" + line +
                                                   "' does not match requested " +
                                                   header_line(k, n_max));

  std::vector<Nat> values;
  values.reserve(n_max + 1);
  while (std::getline(in, line)) {
    if (!is_decimal(line))
      throw CacheError(CacheErrorKind::Corrupt,
                       path.string() + ": entry " + std::to_string(values.size()) + " is not a decimal integer");
    values.emplace_back(line, 10);
  }
  if (values.size() != n_max + 1)
    throw CacheError(CacheErrorKind::Corrupt, path.string() + ": expected " + std::to_string(n_max + 1) +
                                                  " entries, found " + std::to_string(values.size()));
  try {
    return PartitionTable(k, std::move(values));
  } catch (const ConsistencyError& e) {
    throw CacheError(CacheErrorKind::Corrupt, path.string() + ": " + e.what());
  }
}

TableStore::TableStore(std::optional<std::filesystem::path> cache_dir) : cache_dir_(std::move(cache_dir)) {}

PartitionTable TableStore::get(const KIndex& k, std::size_t n_max, bool memoize) {
  const auto key = std::make_pair(k.to_string(), n_max);
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }

  std::optional<PartitionTable> table;
  if (cache_dir_) {
    const auto path = *cache_dir_ / cache_file_name(k, n_max);
    if (std::filesystem::exists(path)) table = load_table(k, n_max, path);
  }
  if (!table) {
    table = build_table_recurrence(k, n_max);
    if (cache_dir_) save_table(*table, *cache_dir_ / cache_file_name(k, n_max));
    std::lock_guard lock(mutex_);
    ++builds_;
  }

  if (!memoize) return *table;
  std::lock_guard lock(mutex_);
  return memo_.try_emplace(key, *table).first->second;
}

std::size_t TableStore::builds() const {
  std::lock_guard lock(mutex_);
  return builds_;
}

}  // namespace regpart
