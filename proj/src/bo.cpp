#include "regpart/bo.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <set>
#include <string>

#include "json.hpp"

#include "regpart/errors.hpp"
#include "regpart/golden.hpp"
#include "regpart/parallel.hpp"
#include "regpart/table_cache.hpp"

namespace regpart {

Pair::Pair(std::size_t a_, std::size_t b_) : a(a_), b(b_) {
  if (a <= 1 || a > b)
    throw PreconditionError("pair (" + std::to_string(a) + "," + std::to_string(b) + ") violates 1 < a <= b");
}

Pair Pair::normalized(std::size_t x, std::size_t y) { return x <= y ? Pair(x, y) : Pair(y, x); }

const char* to_string(DeltaSign sign) noexcept {
  switch (sign) {
    case DeltaSign::Negative: return "negative";
    case DeltaSign::Zero: return "zero";
    case DeltaSign::Positive: return "positive";
  }
  return "?";
}

DeltaSign parse_sign(std::string_view text) {
  if (text == "negative") return DeltaSign::Negative;
  if (text == "zero") return DeltaSign::Zero;
  if (text == "positive") return DeltaSign::Positive;
  throw PreconditionError("unknown sign '" + std::string(text) + "'");
}

const char* to_string(KClass k_class) noexcept {
  switch (k_class) {
    case KClass::K2: return "k=2";
    case KClass::K3: return "k=3";
    case KClass::KGreater3: return "k>3";
  }
  return "?";
}

namespace {

DeltaSign sign_of(int s) noexcept {
  return s > 0 ? DeltaSign::Positive : (s < 0 ? DeltaSign::Negative : DeltaSign::Zero);
}

void require_sum_in_table(const PartitionTable& table, std::size_t sum) {
  if (sum > table.n_max())
    throw RangeError("a+b=" + std::to_string(sum) + " exceeds table n_max=" + std::to_string(table.n_max()));
}

/// Sign of p(a) p(b) - p(a+b) without materializing the difference.
DeltaSign exact_sign(const PartitionTable& table, std::size_t a, std::size_t b, Int& scratch) {
  mpz_mul(scratch.get_mpz_t(), table[a].get_mpz_t(), table[b].get_mpz_t());
  return sign_of(mpz_cmp(scratch.get_mpz_t(), table[a + b].get_mpz_t()));
}

bool contains(const std::vector<Pair>& sorted, Pair p) {
  return std::binary_search(sorted.begin(), sorted.end(), p);
}

std::vector<Pair> difference(const std::vector<Pair>& lhs, const std::vector<Pair>& rhs) {
  std::vector<Pair> out;
  std::set_difference(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), std::back_inserter(out));
  return out;
}

std::vector<Pair> within(const std::vector<Pair>& pairs, std::size_t sum_bound) {
  std::vector<Pair> out;
  std::copy_if(pairs.begin(), pairs.end(), std::back_inserter(out),
               [&](Pair p) { return p.sum() <= sum_bound; });
  return out;
}

}  // namespace

Delta delta(const PartitionTable& table, Pair pair) {
  require_sum_in_table(table, pair.sum());
  Int value = table[pair.a] * table[pair.b] - table[pair.sum()];
  return {value, sign_of(sgn(value))};
}

ExceptionReport enumerate_exceptions(const PartitionTable& table, std::size_t sum_bound, unsigned jobs) {
  if (sum_bound < 4) throw PreconditionError("sum_bound must be >= 4");
  require_sum_in_table(table, sum_bound);

  ExceptionReport report;
  report.k = table.k();
  report.search_bound = sum_bound;

  for (std::size_t a0 = 2; 2 * a0 <= sum_bound; ++a0) {
    if (table[a0] != 1) continue;
    bool grows = true;
    for (std::size_t n = a0; n + a0 <= sum_bound && grows; ++n) grows = table[n + a0] > table[n];
    if (grows) report.infinite_families.push_back({a0, a0, DeltaSign::Negative, sum_bound - a0});
  }
  auto covered = [&](std::size_t a) {
    return std::any_of(report.infinite_families.begin(), report.infinite_families.end(),
                       [&](const InfiniteFamily& f) { return f.a0 == a; });
  };

  struct Row {
    std::vector<Pair> equality, reversed;
  };
  const std::size_t rows = sum_bound / 2 - 1;  // a = 2 .. sum_bound/2
  auto scanned = parallel_map(rows, jobs, [&](std::size_t i) {
    const std::size_t a = i + 2;
    Row row;
    Int scratch;
    const bool family_row = covered(a);
    for (std::size_t b = a; a + b <= sum_bound; ++b) {
      switch (exact_sign(table, a, b, scratch)) {
        case DeltaSign::Zero: row.equality.emplace_back(a, b); break;
        case DeltaSign::Negative:
          if (!family_row) row.reversed.emplace_back(a, b);
          break;
        case DeltaSign::Positive: break;
      }
    }
    return row;
  });
  for (auto& row : scanned) {
    report.equality_pairs.insert(report.equality_pairs.end(), row.equality.begin(), row.equality.end());
    report.reversed_pairs.insert(report.reversed_pairs.end(), row.reversed.begin(), row.reversed.end());
  }
  return report;
}

bool recheck(const ExceptionReport& report, const PartitionTable& table) {
  for (Pair p : report.equality_pairs)
    if (delta(table, p).sign != DeltaSign::Zero) return false;
  for (Pair p : report.reversed_pairs)
    if (delta(table, p).sign != DeltaSign::Negative) return false;
  for (const auto& f : report.infinite_families) {
    if (table.at(f.a0) != 1) return false;
    for (std::size_t b = f.b_from; b <= f.verified_to; ++b)
      if (delta(table, Pair(f.a0, b)).sign != f.sign) return false;
  }
  return true;
}

std::optional<DeltaSign> KnownExceptions::expected(Pair pair) const {
  if (contains(equality, pair)) return DeltaSign::Zero;
  if (contains(reversed, pair)) return DeltaSign::Negative;
  for (const auto& f : families)
    if (f.a0 == pair.a && pair.b >= f.b_from) return f.sign;
  return std::nullopt;
}

bool ExceptionDiff::empty() const noexcept {
  return missing_equality.empty() && extra_equality.empty() && missing_reversed.empty() &&
         extra_reversed.empty() && missing_families.empty() && extra_families.empty();
}

ExceptionDiff compare_exceptions(const ExceptionReport& report, const KnownExceptions& known) {
  ExceptionDiff diff;
  const auto eq = within(known.equality, report.search_bound);
  const auto rev = within(known.reversed, report.search_bound);
  diff.missing_equality = difference(eq, report.equality_pairs);
  diff.extra_equality = difference(report.equality_pairs, eq);
  diff.missing_reversed = difference(rev, report.reversed_pairs);
  diff.extra_reversed = difference(report.reversed_pairs, rev);
  for (const auto& f : known.families) {
    const bool found = std::any_of(report.infinite_families.begin(), report.infinite_families.end(),
                                   [&](const InfiniteFamily& g) {
                                     return g.a0 == f.a0 && g.b_from == f.b_from && g.sign == f.sign;
                                   });
    if (!found) diff.missing_families.push_back(f);
  }
  for (const auto& g : report.infinite_families) {
    const bool found = std::any_of(known.families.begin(), known.families.end(), [&](const KnownFamily& f) {
      return g.a0 == f.a0 && g.b_from == f.b_from && g.sign == f.sign;
    });
    if (!found) diff.extra_families.push_back(g);
  }
  return diff;
}

VerificationParams VerificationParams::for_class(KClass k_class) {
  switch (k_class) {
    case KClass::K2: return {k_class, 3, 22, 3662};
    case KClass::K3: return {k_class, 2, 17, 3776};
    case KClass::KGreater3: return {k_class, 2, 10, 2938};
  }
  throw PreconditionError("unknown k class");
}

KClass VerificationParams::class_of(std::uint64_t k) {
  if (k < 2) throw PreconditionError("k must be >= 2");
  return k == 2 ? KClass::K2 : (k == 3 ? KClass::K3 : KClass::KGreater3);
}

const std::map<std::uint64_t, std::pair<std::size_t, std::size_t>>& VerificationParams::thresholds() {
  static const std::map<std::uint64_t, std::pair<std::size_t, std::size_t>> table{
      {2, {3, 22}}, {3, {2, 17}}, {4, {2, 9}}, {5, {2, 9}}, {6, {2, 9}}};
  return table;
}

ThresholdReport check_thresholds(const PartitionTable& table, std::uint64_t k, std::size_t sum_bound) {
  const auto& thresholds = VerificationParams::thresholds();
  auto it = thresholds.find(k);
  if (it == thresholds.end()) throw PreconditionError("thresholds are only tabulated for 2 <= k <= 6");
  if (!(table.k() == KIndex::finite(k))) throw PreconditionError("table is for k=" + table.k().to_string());
  require_sum_in_table(table, sum_bound);

  ThresholdReport report{k, it->second.first, it->second.second, sum_bound, 0, {}};
  Int scratch;
  for (std::size_t a = report.n_k; 2 * a <= sum_bound; ++a) {
    for (std::size_t b = std::max(a, report.m_k > a ? report.m_k - a : a); a + b <= sum_bound; ++b) {
      ++report.pairs_checked;
      if (exact_sign(table, a, b, scratch) != DeltaSign::Positive) report.violations.emplace_back(a, b);
    }
  }
  return report;
}

std::pair<std::size_t, std::size_t> derive_thresholds(const ExceptionReport& report) {
  std::size_t n_k = 2;
  for (const auto& f : report.infinite_families) n_k = std::max(n_k, f.a0 + 1);
  std::size_t m_k = 4;
  for (const auto* list : {&report.equality_pairs, &report.reversed_pairs})
    for (Pair p : *list)
      if (p.a >= n_k) m_k = std::max(m_k, p.sum() + 1);
  return {n_k, m_k};
}

bool StabilizationReport::all_equal() const noexcept {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.diff.empty(); });
}

StabilizationReport stabilization_scan(std::uint64_t k_from, std::uint64_t k_to, std::size_t sum_bound,
                                       TableStore& store, unsigned jobs) {
  if (k_from < 10) throw PreconditionError("stabilization is only claimed for k >= 10");
  if (k_to < k_from) throw PreconditionError("empty k range");
  if (sum_bound < 20) throw PreconditionError("sum_bound must be >= 20");

  const KnownExceptions& reference = golden::exceptions(KIndex::infinity());
  StabilizationReport report{k_from, k_to, sum_bound, {}};
  report.entries = parallel_map(k_to - k_from + 1, jobs, [&](std::size_t i) {
    const std::uint64_t k = k_from + i;
    const auto table = store.get(KIndex::finite(k), sum_bound);
    return StabilizationEntry{k, compare_exceptions(enumerate_exceptions(table, sum_bound), reference)};
  });
  return report;
}

std::size_t CampaignReport::unexpected_count() const noexcept {
  std::size_t count = 0;
  for (const auto& e : entries) count += e.unexpected.size() + e.table_mismatches.size();
  return count;
}

namespace {

using json = nlohmann::json;

json findings_to_json(const std::vector<PairFinding>& findings) {
  json out = json::array();
  for (const auto& f : findings) out.push_back({f.pair.a, f.pair.b, to_string(f.sign)});
  return out;
}

std::vector<PairFinding> findings_from_json(const json& list) {
  std::vector<PairFinding> out;
  for (const auto& f : list)
    out.push_back({Pair(f.at(0).get<std::size_t>(), f.at(1).get<std::size_t>()),
                   parse_sign(f.at(2).get<std::string>())});
  return out;
}

struct ProgressKey {
  std::string k_class;
  std::size_t n0;
  bool exclusions;
};

json progress_line(const ProgressKey& key, const CampaignEntry& e) {
  return {{"class", key.k_class},
          {"n0", key.n0},
          {"exclusions", key.exclusions},
          {"k", e.k.to_string()},
          {"pairs_checked", e.pairs_checked},
          {"exact_checks", e.exact_checks},
          {"unexpected", findings_to_json(e.unexpected)},
          {"below_threshold_exceptions", e.below_threshold_exceptions},
          {"table_mismatches", findings_to_json(e.table_mismatches)}};
}

std::map<std::string, CampaignEntry> load_progress(const std::filesystem::path& path, const ProgressKey& key) {
  std::map<std::string, CampaignEntry> done;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    // A truncated trailing line from an aborted run is ignored; that k is simply redone.
    const json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) continue;
    if (j.value("class", "") != key.k_class || j.value("n0", std::size_t{0}) != key.n0 ||
        j.value("exclusions", !key.exclusions) != key.exclusions)
      continue;
    CampaignEntry e;
    e.k = KIndex::parse(j.at("k").get<std::string>());
    e.pairs_checked = j.at("pairs_checked").get<std::size_t>();
    e.exact_checks = j.at("exact_checks").get<std::size_t>();
    e.unexpected = findings_from_json(j.at("unexpected"));
    e.below_threshold_exceptions = j.at("below_threshold_exceptions").get<std::size_t>();
    e.table_mismatches = findings_from_json(j.at("table_mismatches"));
    e.resumed = true;
    done[e.k.to_string()] = std::move(e);
  }
  return done;
}

CampaignEntry scan_campaign_k(const PartitionTable& table, const VerificationParams& params, std::size_t n0,
                              const CampaignOptions& options) {
  const KnownExceptions& known = golden::known_exceptions(table.k());
  const auto logs = table.log_values();
  CampaignEntry entry;
  entry.k = table.k();
  Int scratch;

  auto classify = [&](std::size_t a, std::size_t b) {
    if (logs[a] + logs[b] - logs[a + b] >= options.filter_margin) return DeltaSign::Positive;
    ++entry.exact_checks;
    return exact_sign(table, a, b, scratch);
  };

  for (std::size_t a = 2; 2 * a <= n0; ++a) {
    for (std::size_t b = a; a + b <= n0; ++b) {
      ++entry.pairs_checked;
      const DeltaSign sign = classify(a, b);
      const Pair pair(a, b);
      if (!options.apply_exclusions) {
        if (sign != DeltaSign::Positive) entry.unexpected.push_back({pair, sign});
        continue;
      }
      const auto expected = known.expected(pair);
      const bool main_region = a >= params.A && a + b >= params.B;
      if (sign != DeltaSign::Positive) {
        if (!main_region) ++entry.below_threshold_exceptions;
        if (expected == sign) continue;
        (main_region ? entry.unexpected : entry.table_mismatches).push_back({pair, sign});
      } else if (expected) {
        entry.table_mismatches.push_back({pair, sign});
      }
    }
  }
  return entry;
}

}  // namespace

CampaignReport induction_campaign(const VerificationParams& params, std::uint64_t k_max,
                                  const CampaignOptions& options, TableStore& store) {
  if (k_max < 2) throw PreconditionError("k_max must be >= 2");
  const std::size_t n0 = options.n0_override.value_or(params.N0);
  if (n0 < params.B) throw PreconditionError("N0 must be >= B=" + std::to_string(params.B));

  CampaignReport report;
  report.params = params;
  report.n0 = n0;
  report.k_max = k_max;

  std::vector<KIndex> ks;
  switch (params.k_class) {
    case KClass::K2: ks.push_back(KIndex::finite(2)); break;
    case KClass::K3:
      if (k_max >= 3) ks.push_back(KIndex::finite(3));
      break;
    case KClass::KGreater3:
      for (std::uint64_t k = 4; k <= std::min<std::uint64_t>(k_max, n0); ++k) ks.push_back(KIndex::finite(k));
      if (k_max > n0) ks.push_back(KIndex::infinity());
      break;
  }

  const ProgressKey key{to_string(params.k_class), n0, options.apply_exclusions};
  std::map<std::string, CampaignEntry> done;
  if (options.progress_file && std::filesystem::exists(*options.progress_file))
    done = load_progress(*options.progress_file, key);

  std::mutex progress_mutex;
  const auto started = std::chrono::steady_clock::now();
  auto results = parallel_map(ks.size(), options.jobs, [&](std::size_t i) -> std::optional<CampaignEntry> {
    if (auto it = done.find(ks[i].to_string()); it != done.end()) return it->second;
    if (options.time_limit && std::chrono::steady_clock::now() - started > *options.time_limit)
      return std::nullopt;
    const auto table = store.get(ks[i], n0, /*memoize=*/false);
    CampaignEntry entry = scan_campaign_k(table, params, n0, options);
    if (options.progress_file) {
      std::lock_guard lock(progress_mutex);
      std::ofstream out(*options.progress_file, std::ios::app);
      out << progress_line(key, entry).dump() << '\n';
    }
    return entry;
  });

  for (auto& r : results) {
    if (r)
      report.entries.push_back(std::move(*r));
    else
      report.complete = false;
  }
  return report;
}

}  // namespace regpart
