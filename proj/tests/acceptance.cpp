// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "../tools/cli.hpp"
#include "regpart/bo.hpp"
#include "regpart/bounds.hpp"
#include "regpart/errors.hpp"
#include "regpart/golden.hpp"
#include "regpart/logconc.hpp"
#include "regpart/report_io.hpp"
#include "regpart/table_cache.hpp"

using namespace regpart;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (o.ok && secs >= limit_s) {
    o.ok = false;
    o.detail = "over time limit";
  }
  if (!o.ok) ++failures;
  std::printf("%s %d %s (%.2f s, limit %.0f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), secs, limit_s,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
}

std::vector<std::size_t> odd_up_to(std::size_t last) {
  std::vector<std::size_t> out;
  for (std::size_t n = 1; n <= last; n += 2) out.push_back(n);
  return out;
}

bool divisibility_holds(const PartitionTable& t) {
  Int sum;
  for (std::size_t n = 1; n <= t.n_max(); ++n) {
    sum = 0;
    for (std::size_t l = 1; l <= n; ++l) sum += g_k(t.k(), l) * t[n - l];
    if (!mpz_divisible_ui_p(sum.get_mpz_t(), n) || sum / n != t[n]) return false;
  }
  return true;
}

std::string run_cli(std::vector<std::string> args, int& code) {
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return out.str();
}

}  // namespace

int main() {
  const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  criterion(1, "exceptions of p at sum bound 200", 1, [] {
    Outcome o;
    const auto r = enumerate_exceptions(build_table_recurrence(KIndex::infinity(), 200), 200);
    o.require(r.equality_pairs == std::vector<Pair>{{2, 6}, {2, 7}, {3, 4}}, "equality set");
    o.require(r.reversed_pairs == std::vector<Pair>{{2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 3}, {3, 5}},
              "reversed set");
    o.require(r.infinite_families.empty(), "unexpected family");
    return o;
  });

  criterion(2, "exception tables for 2 <= k <= 10 at sum bound 200", 5, [&] {
    Outcome o;
    for (std::uint64_t k = 2; k <= 10; ++k) {
      const auto kk = KIndex::finite(k);
      const auto r = enumerate_exceptions(build_table_recurrence(kk, 200), 200, jobs);
      const auto diff = compare_exceptions(r, golden::exceptions(kk));
      o.require(diff.empty(), "k=" + std::to_string(k) + ": " + first_difference(diff));
      if (k == 2) {
        o.require(r.infinite_families.size() == 1 && r.infinite_families[0].a0 == 2 &&
                      r.infinite_families[0].b_from == 2 && r.infinite_families[0].sign == DeltaSign::Negative &&
                      r.infinite_families[0].verified_to + 2 == 200,
                  "k=2 family");
      }
    }
    return o;
  });

  criterion(3, "thresholds n_k, m_k for k = 2..6 up to a+b = 1000", 30, [] {
    Outcome o;
    for (std::uint64_t k = 2; k <= 6; ++k) {
      const auto r = check_thresholds(build_table_recurrence(KIndex::finite(k), 1000), k, 1000);
      o.require(r.passed(), "k=" + std::to_string(k) + " has " + std::to_string(r.violations.size()) +
                                " violations");
    }
    return o;
  });

  criterion(4, "stabilization for 10 <= k <= 60 at sum bound 500", 120, [&] {
    Outcome o;
    TableStore store;
    const auto r = stabilization_scan(10, 60, 500, store, jobs);
    o.require(r.entries.size() == 51, "entry count");
    for (const auto& e : r.entries)
      o.require(e.diff.empty(), "k=" + std::to_string(e.k) + ": " + first_difference(e.diff));
    return o;
  });

  criterion(5, "scaled induction campaign, N0 = 300, k <= 50", 600, [&] {
    Outcome o;
    TableStore store;
    CampaignOptions opts;
    opts.n0_override = 300;
    opts.jobs = jobs;
    for (auto cls : {KClass::K2, KClass::K3, KClass::KGreater3}) {
      const auto r = induction_campaign(VerificationParams::for_class(cls), 50, opts, store);
      o.require(r.complete, std::string(to_string(cls)) + " incomplete");
      o.require(r.unexpected_count() == 0,
                std::string(to_string(cls)) + ": " + std::to_string(r.unexpected_count()) + " unexpected");
    }
    return o;
  });

  criterion(6, "log-concavity grid and failure sets", 5, [] {
    Outcome o;
    TableStore store;
    o.require(emit_table3(store) == parse_table3_csv(golden::table3_csv()), "grid differs from golden");
    const auto inf = enumerate_failures(build_table_recurrence(KIndex::infinity(), 101), 100);
    o.require(inf.failures == odd_up_to(25) && inf.estimated_N_k == 26, "k=inf failures");
    const auto k3 = enumerate_failures(build_table_recurrence(KIndex::finite(3), 101), 100);
    o.require(k3.failures == odd_up_to(57), "k=3 failures");
    return o;
  });

  criterion(7, "conjecture scan 30 <= k <= 100, n <= 1000", 180, [&] {
    Outcome o;
    TableStore store;
    const auto r = conjecture_scan(30, 100, 1000, store, jobs);
    o.require(r.entries.size() == 71, "entry count");
    for (const auto& e : r.entries) o.require(e.failures == odd_up_to(25), "k=" + std::to_string(e.k));
    return o;
  });

  criterion(8, "rigorous bound checks", 120, [&] {
    Outcome o;
    auto note = [&](const BoundCheckReport& r) {
      o.require(r.passed, r.check + " " + r.range + ": " + r.first_failure.value_or("failed"));
    };
    for (auto k : {KIndex::finite(2), KIndex::finite(3), KIndex::finite(5), KIndex::infinity()})
      note(check_g_bound(k, 10000));
    for (auto k : {KIndex::finite(2), KIndex::finite(4), KIndex::finite(10), KIndex::infinity()}) {
      const auto t = build_table_recurrence(k, 2000);
      note(check_p_lower_bound(t, 2000, PBoundVariant::Lemma));
      note(check_p_lower_bound(t, 2000, PBoundVariant::Remark));
    }
    o.require(final_expression_sign(1470).sign == DeltaSign::Positive, "sign at 1470");
    note(final_expression_scan(1470, 100000, jobs));
    return o;  // PrecisionExhausted would surface as an exception, i.e. FAIL
  });

  criterion(9, "oracle properties, cache round trip, worker-count determinism", 300, [] {
    Outcome o;
    std::vector<KIndex> ks{KIndex::infinity()};
    for (std::uint64_t k = 2; k <= 12; ++k) ks.push_back(KIndex::finite(k));
    for (const auto& k : ks) {
      const auto rec = build_table_recurrence(k, 40);
      o.require(rec == build_table_series(k, 40), "series k=" + k.to_string());
      for (std::size_t n = 0; n <= 40; ++n) {
        const Nat f = brute_force_count(k, n, CountMode::ForbiddenMultiples);
        o.require(f == rec[n], "enumeration k=" + k.to_string() + " n=" + std::to_string(n));
        o.require(f == brute_force_count(k, n, CountMode::BoundedMultiplicity),
                  "Glaisher k=" + k.to_string() + " n=" + std::to_string(n));
      }
      o.require(divisibility_holds(build_table_recurrence(k, 600)), "divisibility k=" + k.to_string());
    }

    std::random_device rd;
    const fs::path dir = fs::temp_directory_path() / ("regpart_acceptance_" + std::to_string(rd()));
    fs::create_directories(dir);
    for (const auto& k : {KIndex::finite(2), KIndex::finite(5), KIndex::infinity()}) {
      const auto t = build_table_recurrence(k, 500);
      const auto file = dir / cache_file_name(k, 500);
      save_table(t, file);
      o.require(load_table(k, 500, file) == t, "cache round trip k=" + k.to_string());
    }
    int c1 = 0, c8 = 0, c_warm = 0;
    const std::vector<std::string> cmd{"--cache-dir", dir.string(), "--format", "json", "verify", "bo", "--k",
                                       "2..30", "--sum-bound", "300"};
    auto one = cmd, eight = cmd;
    one.insert(one.begin(), {"--jobs", "1"});
    eight.insert(eight.begin(), {"--jobs", "8"});
    const auto out1 = run_cli(one, c1);
    const auto out8 = run_cli(eight, c8);
    const auto warm = run_cli(one, c_warm);
    fs::remove_all(dir);
    o.require(c1 == 0 && c8 == 0 && c_warm == 0, "cli exit codes");
    o.require(out1 == out8, "--jobs 1 and --jobs 8 outputs differ");
    o.require(out1 == warm, "warm cache output differs");
    return o;
  });

  std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASS" : "SOME CRITERIA FAILED");
  return failures == 0 ? 0 : 1;
}
