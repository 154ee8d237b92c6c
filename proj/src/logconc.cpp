#include "regpart/logconc.hpp"

#include <algorithm>
#include <sstream>

#include "regpart/errors.hpp"
#include "regpart/parallel.hpp"
#include "regpart/table_cache.hpp"

namespace regpart {

Int logconc_defect(const PartitionTable& table, std::size_t n) {
  if (n < 1 || n + 1 > table.n_max())
    throw RangeError("log-concavity defect needs 1 <= n <= " + std::to_string(table.n_max()) + " - 1");
  return table[n] * table[n] - table[n - 1] * table[n + 1];
}

LogConcavityReport enumerate_failures(const PartitionTable& table, std::size_t n_max) {
  if (n_max + 1 > table.n_max())
    throw RangeError("enumerate_failures needs n_max <= table.n_max - 1 = " + std::to_string(table.n_max() - 1));
  LogConcavityReport report;
  report.k = table.k();
  report.n_max = n_max;
  for (std::size_t n = 1; n <= n_max; ++n)
    if (sgn(logconc_defect(table, n)) < 0) report.failures.push_back(n);
  report.estimated_N_k = report.failures.empty() ? 1 : report.failures.back() + 1;
  return report;
}

std::vector<std::size_t> p_infinity_failures() {
  std::vector<std::size_t> odd;
  for (std::size_t n = 1; n < kNInfinity; n += 2) odd.push_back(n);
  return odd;
}

bool ConjectureReport::conjecture_holds() const noexcept {
  return std::all_of(entries.begin(), entries.end(),
                     [](const ConjectureEntry& e) { return e.k < kConjectureFromK || e.matches_p; });
}

std::uint64_t ConjectureReport::stabilization_start() const noexcept {
  std::uint64_t start = 0;
  for (auto it = entries.rbegin(); it != entries.rend() && it->matches_p; ++it) start = it->k;
  return start;
}

ConjectureReport conjecture_scan(std::uint64_t k_from, std::uint64_t k_to, std::size_t n_max, TableStore& store,
                                 unsigned jobs) {
  if (k_from < 2) throw PreconditionError("k_from must be >= 2");
  if (k_to < k_from) throw PreconditionError("empty k range");
  if (n_max < 100) throw PreconditionError("n_max must be >= 100");

  const auto expected = p_infinity_failures();
  ConjectureReport report{k_from, k_to, n_max, {}};
  report.entries = parallel_map(k_to - k_from + 1, jobs, [&](std::size_t i) {
    const std::uint64_t k = k_from + i;
    const auto table = store.get(KIndex::finite(k), n_max + 1, /*memoize=*/false);
    auto failures = enumerate_failures(table, n_max);
    const bool matches = failures.failures == expected;
    return ConjectureEntry{k, std::move(failures.failures), failures.estimated_N_k, matches};
  });
  return report;
}

Table3Grid emit_table3(TableStore& store, std::uint64_t k_from, std::uint64_t k_to, std::size_t n_max) {
  if (k_from < 2 || k_to < k_from) throw PreconditionError("invalid k range for the bullet grid");
  Table3Grid grid{k_from, k_to, n_max, std::vector<std::vector<bool>>(n_max, std::vector<bool>(k_to - k_from + 1))};
  for (std::uint64_t k = k_from; k <= k_to; ++k) {
    const auto report = enumerate_failures(store.get(KIndex::finite(k), n_max + 1), n_max);
    for (std::size_t n : report.failures) grid.cells[n - 1][k - k_from] = true;
  }
  return grid;
}

std::string to_csv(const Table3Grid& grid) {
  std::ostringstream out;
  out << "n";
  for (std::uint64_t k = grid.k_from; k <= grid.k_to; ++k) out << ',' << k;
  out << '\n';
  for (std::size_t n = 1; n <= grid.n_max; ++n) {
    out << n;
    for (bool bullet : grid.cells[n - 1]) out << ',' << (bullet ? "1" : "");
    out << '\n';
  }
  return out.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

Table3Grid parse_table3_csv(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line)) throw PreconditionError("empty grid CSV");
  const auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "n") throw PreconditionError("grid CSV header must start with 'n'");

  Table3Grid grid{std::stoull(header[1]), std::stoull(header.back()), 0, {}};
  if (grid.k_to - grid.k_from + 2 != header.size()) throw PreconditionError("grid CSV k columns are not contiguous");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) throw PreconditionError("grid CSV row has wrong width: " + line);
    if (std::stoull(fields[0]) != grid.n_max + 1) throw PreconditionError("grid CSV rows must be n = 1, 2, ...");
    std::vector<bool> row;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (fields[i] != "" && fields[i] != "1") throw PreconditionError("grid CSV cell must be '1' or empty");
      row.push_back(fields[i] == "1");
    }
    grid.cells.push_back(std::move(row));
    ++grid.n_max;
  }
  return grid;
}

std::string to_markdown(const Table3Grid& grid) {
  std::ostringstream out;
  out << "| n\\k |";
  for (std::uint64_t k = grid.k_from; k <= grid.k_to; ++k) out << ' ' << k << " |";
  out << "\n|---:|";
  for (std::uint64_t k = grid.k_from; k <= grid.k_to; ++k) out << ":-:|";
  out << '\n';
  for (std::size_t n = 1; n <= grid.n_max; ++n) {
    out << "| " << n << " |";
    for (bool bullet : grid.cells[n - 1]) out << (bullet ? " • |" : "  |");
    out << '\n';
  }
  return out.str();
}

}  // namespace regpart
