#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "regpart/arith.hpp"
#include "regpart/bo.hpp"
#include "regpart/bounds.hpp"
#include "regpart/errors.hpp"
#include "regpart/golden.hpp"
#include "regpart/logconc.hpp"
#include "regpart/parallel.hpp"
#include "regpart/report_io.hpp"
#include "regpart/table_cache.hpp"

namespace regpart::cli {

namespace {

struct RunConfig {
  std::string command;
  std::string target;
  std::string k_text;
  std::optional<std::size_t> n_max;
  std::optional<std::size_t> sum_bound;
  std::optional<std::size_t> n0;
  std::optional<std::size_t> a_max;
  std::optional<std::uint64_t> k_max;
  std::string format;
  std::optional<std::filesystem::path> cache_dir;
  unsigned jobs = 1;
  bool full = false;
  bool no_exclusions = false;
  std::string k_class = "all";
  std::optional<double> time_limit;
};

/// --k accepts "7", "inf" or "lo..hi".
struct KRange {
  KIndex from = KIndex::infinity();
  std::optional<std::uint64_t> to;

  std::vector<KIndex> expand() const {
    if (!to) return {from};
    std::vector<KIndex> ks;
    for (std::uint64_t k = from.value(); k <= *to; ++k) ks.push_back(KIndex::finite(k));
    return ks;
  }
};

KRange parse_k_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return {KIndex::parse(text), std::nullopt};
  KRange range{KIndex::parse(text.substr(0, dots)), KIndex::parse(text.substr(dots + 2)).value()};
  if (*range.to < range.from.value()) throw PreconditionError("empty k range '" + text + "'");
  return range;
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (cfg.format == f) return;
  throw PreconditionError("format '" + cfg.format + "' is not supported by '" + cfg.command +
                          (cfg.target.empty() ? "" : " " + cfg.target) + "'");
}

// ---------------------------------------------------------------------------
// table

int cmd_table(const RunConfig& cfg, TableStore& store, std::ostream& out) {
  if (cfg.k_text.empty()) throw PreconditionError("table needs --k");
  if (!cfg.n_max) throw PreconditionError("table needs --n-max");
  const KRange range = parse_k_range(cfg.k_text);
  if (range.to) throw PreconditionError("table takes a single k");
  require_format(cfg, {"text", "json", "csv", "markdown"});

  const auto table = store.get(range.from, *cfg.n_max);
  if (cfg.format == "json") {
    Json values = Json::array();
    for (const Nat& v : table.values()) values.push_back(v.get_str());
    out << Json{{"k", table.k().to_string()}, {"n_max", table.n_max()}, {"values", values}}.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    out << "n,p_k(n)\n";
    for (std::size_t n = 0; n <= table.n_max(); ++n) out << n << ',' << table[n].get_str() << '\n';
  } else if (cfg.format == "markdown") {
    out << "| n | p_" << table.k().to_string() << "(n) |\n|---:|---:|\n";
    for (std::size_t n = 0; n <= table.n_max(); ++n) out << "| " << n << " | " << table[n].get_str() << " |\n";
  } else {
    for (std::size_t n = 0; n <= table.n_max(); ++n) out << n << ' ' << table[n].get_str() << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// reproduce

int finish_reproduction(const RunConfig& cfg, std::ostream& out, const std::string& rendered, Json reproduction,
                        const std::string& difference) {
  const bool match = difference.empty();
  if (cfg.format == "json") {
    out << Json{{"which", cfg.target},
                {"match", match},
                {"first_difference", match ? Json(nullptr) : Json(difference)},
                {"reproduction", std::move(reproduction)}}
               .dump(2)
        << '\n';
  } else {
    out << rendered;
    out << (match ? "status: match\n" : "status: mismatch: " + difference + "\n");
  }
  return match ? kOk : kMismatch;
}

int reproduce_exceptions(const RunConfig& cfg, TableStore& store, std::ostream& out, const std::vector<KIndex>& ks) {
  require_format(cfg, {"markdown", "json"});
  const std::size_t sum_bound = cfg.sum_bound.value_or(200);
  auto reports = parallel_map(ks.size(), cfg.jobs, [&](std::size_t i) {
    return enumerate_exceptions(store.get(ks[i], sum_bound), sum_bound);
  });
  std::string difference;
  Json reproduction = Json::array();
  for (const auto& r : reports) {
    reproduction.push_back(to_json(r));
    const auto diff = compare_exceptions(r, golden::exceptions(r.k));
    if (difference.empty() && !diff.empty()) difference = "k=" + r.k.to_string() + ": " + first_difference(diff);
  }
  return finish_reproduction(cfg, out, exceptions_markdown(reports), std::move(reproduction), difference);
}

int reproduce_table3(const RunConfig& cfg, TableStore& store, std::ostream& out) {
  require_format(cfg, {"markdown", "json", "csv"});
  const Table3Grid computed = emit_table3(store);
  const Table3Grid expected = parse_table3_csv(golden::table3_csv());
  std::string difference;
  for (std::size_t n = 1; n <= std::min(computed.n_max, expected.n_max) && difference.empty(); ++n) {
    for (std::uint64_t k = computed.k_from; k <= computed.k_to; ++k) {
      const bool c = computed.cells[n - 1][k - computed.k_from];
      const bool p = expected.cells[n - 1][k - expected.k_from];
      if (c != p) {
        difference = "cell n=" + std::to_string(n) + " k=" + std::to_string(k) + ": computed " +
                     (c ? "bullet" : "blank") + ", expected " + (p ? "bullet" : "blank");
        break;
      }
    }
  }
  if (difference.empty() && !(computed == expected)) difference = "grid shape differs";

  Json reproduction = Json::object();
  for (std::uint64_t k = computed.k_from; k <= computed.k_to; ++k) {
    Json failures = Json::array();
    for (std::size_t n = 1; n <= computed.n_max; ++n)
      if (computed.cells[n - 1][k - computed.k_from]) failures.push_back(n);
    reproduction[std::to_string(k)] = failures;
  }
  const std::string rendered = cfg.format == "csv" ? to_csv(computed) : to_markdown(computed);
  return finish_reproduction(cfg, out, rendered, std::move(reproduction), difference);
}

int reproduce_thresholds(const RunConfig& cfg, TableStore& store, std::ostream& out) {
  require_format(cfg, {"markdown", "json"});
  const std::size_t sum_bound = cfg.sum_bound.value_or(200);
  const auto& expected = golden::thresholds();
  std::string difference;
  Json reproduction = Json::array();
  std::ostringstream n_row, m_row, check_row, header, rule;
  header << "| k |";
  rule << "|---|";
  n_row << "| n_k |";
  m_row << "| m_k |";
  check_row << "| check |";
  for (std::uint64_t k = 2; k <= 6; ++k) {
    const auto table = store.get(KIndex::finite(k), sum_bound);
    const auto derived = derive_thresholds(enumerate_exceptions(table, sum_bound));
    const auto check = check_thresholds(table, k, sum_bound);
    header << ' ' << k << " |";
    rule << "---:|";
    n_row << ' ' << derived.first << " |";
    m_row << ' ' << derived.second << " |";
    check_row << ' ' << (check.passed() ? "pass" : "fail") << " |";
    reproduction.push_back({{"k", k}, {"n_k", derived.first}, {"m_k", derived.second}, {"check", to_json(check)}});
    if (!difference.empty()) continue;
    const auto it = expected.find(k);
    if (it == expected.end() || it->second != derived)
      difference = "k=" + std::to_string(k) + ": derived (n_k,m_k)=(" + std::to_string(derived.first) + "," +
                   std::to_string(derived.second) + ")";
    else if (!check.passed())
      difference = "k=" + std::to_string(k) + ": threshold violated at (" + std::to_string(check.violations[0].a) +
                   "," + std::to_string(check.violations[0].b) + ")";
  }
  const std::string rendered =
      header.str() + "\n" + rule.str() + "\n" + n_row.str() + "\n" + m_row.str() + "\n" + check_row.str() + "\n";
  return finish_reproduction(cfg, out, rendered, std::move(reproduction), difference);
}

int cmd_reproduce(const RunConfig& cfg, TableStore& store, std::ostream& out) {
  if (cfg.target == "theorem1") return reproduce_exceptions(cfg, store, out, {KIndex::infinity()});
  if (cfg.target == "table1" || cfg.target == "table2") {
    std::vector<KIndex> ks;
    const std::uint64_t from = cfg.target == "table1" ? 2 : 7;
    for (std::uint64_t k = from; k <= from + (cfg.target == "table1" ? 4 : 3); ++k) ks.push_back(KIndex::finite(k));
    return reproduce_exceptions(cfg, store, out, ks);
  }
  if (cfg.target == "table3") return reproduce_table3(cfg, store, out);
  if (cfg.target == "thresholds") return reproduce_thresholds(cfg, store, out);
  throw PreconditionError("unknown reproduction target '" + cfg.target + "'");
}

// ---------------------------------------------------------------------------
// verify

int verify_bo(const RunConfig& cfg, TableStore& store, std::ostream& out) {
  require_format(cfg, {"json", "markdown"});
  if (cfg.k_text.empty()) throw PreconditionError("verify bo needs --k");
  const std::size_t sum_bound = cfg.sum_bound.value_or(200);
  const auto ks = parse_k_range(cfg.k_text).expand();
  auto reports = parallel_map(ks.size(), cfg.jobs, [&](std::size_t i) {
    return enumerate_exceptions(store.get(ks[i], sum_bound), sum_bound);
  });

  bool ok = true;
  Json results = Json::array();
  for (const auto& r : reports) {
    const auto diff = compare_exceptions(r, golden::known_exceptions(r.k));
    ok = ok && diff.empty();
    results.push_back({{"k", r.k.to_string()}, {"matches_known", diff.empty()}, {"diff", to_json(diff)},
                       {"report", to_json(r)}});
  }
  if (cfg.format == "markdown")
    out << exceptions_markdown(reports) << (ok ? "status: ok\n" : "status: violation\n");
  else
    out << Json{{"command", "verify bo"}, {"sum_bound", sum_bound}, {"ok", ok}, {"results", results}}.dump(2) << '\n';
  return ok ? kOk : kMismatch;
}

int verify_logconc(const RunConfig& cfg, TableStore& store, std::ostream& out) {
  require_format(cfg, {"json"});
  if (cfg.k_text.empty()) throw PreconditionError("verify logconc needs --k");
  const std::size_t n_max = cfg.n_max.value_or(1000);
  const KRange range = parse_k_range(cfg.k_text);
  if (range.from.is_infinite()) {
    const auto report = enumerate_failures(store.get(range.from, n_max + 1), n_max);
    const bool ok = report.failures == p_infinity_failures();
    out << Json{{"command", "verify logconc"}, {"ok", ok}, {"report", to_json(report)}}.dump(2) << '\n';
    return ok ? kOk : kMismatch;
  }
  const auto report = conjecture_scan(range.from.value(), range.to.value_or(range.from.value()), n_max, store, cfg.jobs);
  const bool ok = report.conjecture_holds();
  out << Json{{"command", "verify logconc"}, {"ok", ok}, {"report", to_json(report)}}.dump(2) << '\n';
  return ok ? kOk : kMismatch;
}

int verify_bounds(const RunConfig& cfg, TableStore& store, std::ostream& out) {
  require_format(cfg, {"json"});
  std::vector<KIndex> g_ks{KIndex::finite(2), KIndex::finite(3), KIndex::finite(5), KIndex::infinity()};
  std::vector<KIndex> p_ks{KIndex::finite(2), KIndex::finite(4), KIndex::finite(10), KIndex::infinity()};
  if (!cfg.k_text.empty()) g_ks = p_ks = parse_k_range(cfg.k_text).expand();
  const std::size_t g_n = cfg.n_max.value_or(10000);
  const std::size_t p_n = cfg.n_max.value_or(2000);
  const std::size_t a_max = cfg.a_max.value_or(100000);

  std::vector<BoundCheckReport> reports;
  for (const auto& k : g_ks) reports.push_back(check_g_bound(k, g_n));
  for (const auto& k : p_ks) {
    const auto table = store.get(k, p_n);
    reports.push_back(check_p_lower_bound(table, p_n, PBoundVariant::Lemma));
    reports.push_back(check_p_lower_bound(table, p_n, PBoundVariant::Remark));
  }
  reports.push_back(check_bound_consistency(p_n));

  const auto at_boundary = final_expression_sign(kFinalExpressionFrom);
  BoundCheckReport boundary{"final_expression_sign", "a=1470"};
  boundary.checked = 1;
  boundary.max_precision_bits_used = at_boundary.bits_used;
  if (at_boundary.sign != DeltaSign::Positive) {
    boundary.passed = false;
    boundary.first_failure = std::string("sign ") + to_string(at_boundary.sign);
  }
  reports.push_back(boundary);
  reports.push_back(final_expression_scan(kFinalExpressionFrom, std::max(a_max, kFinalExpressionFrom), cfg.jobs));

  bool ok = true;
  Json list = Json::array();
  for (const auto& r : reports) {
    ok = ok && r.passed;
    list.push_back(to_json(r));
  }
  out << Json{{"command", "verify bounds"}, {"ok", ok}, {"reports", list}}.dump(2) << '\n';
  return ok ? kOk : kMismatch;
}

std::string class_slug(KClass c) {
  switch (c) {
    case KClass::K2: return "k2";
    case KClass::K3: return "k3";
    case KClass::KGreater3: return "kgt3";
  }
  return "k";
}

int verify_campaign(const RunConfig& cfg, TableStore& store, std::ostream& out, std::ostream& err) {
  require_format(cfg, {"json"});
  if (!cfg.n0 && !cfg.full)
    throw PreconditionError("the full-scale campaign (N0 up to 3776, every k) takes minutes and ~300 MB of cache; pass --full, or --n0 N");

  std::vector<KClass> classes;
  if (cfg.k_class == "all")
    classes = {KClass::K2, KClass::K3, KClass::KGreater3};
  else if (cfg.k_class == "2")
    classes = {KClass::K2};
  else if (cfg.k_class == "3")
    classes = {KClass::K3};
  else if (cfg.k_class == "gt3")
    classes = {KClass::KGreater3};
  else
    throw PreconditionError("--class must be one of all, 2, 3, gt3");

  bool ok = true;
  Json reports = Json::array();
  for (KClass c : classes) {
    const auto params = VerificationParams::for_class(c);
    CampaignOptions options;
    options.n0_override = cfg.n0;
    options.apply_exclusions = !cfg.no_exclusions;
    options.jobs = cfg.jobs;
    const std::size_t n0 = cfg.n0.value_or(params.N0);
    if (cfg.time_limit)
      options.time_limit = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double>(*cfg.time_limit));
    if (cfg.cache_dir) {
      std::filesystem::create_directories(*cfg.cache_dir);
      options.progress_file = *cfg.cache_dir / ("campaign_" + class_slug(c) + "_n0" + std::to_string(n0) +
                                                (options.apply_exclusions ? "" : "_all") + ".jsonl");
    }
    const auto report = induction_campaign(params, cfg.k_max.value_or(n0 + 1), options, store);
    if (!report.complete) err << "campaign " << to_string(c) << " stopped at the time limit; re-run to resume\n";
    ok = ok && report.complete && report.unexpected_count() == 0;
    reports.push_back(to_json(report));
  }
  out << Json{{"command", "verify campaign"}, {"ok", ok}, {"campaigns", reports}}.dump(2) << '\n';
  return ok ? kOk : kMismatch;
}

int cmd_verify(const RunConfig& cfg, TableStore& store, std::ostream& out, std::ostream& err) {
  if (cfg.target == "bo") return verify_bo(cfg, store, out);
  if (cfg.target == "logconc") return verify_logconc(cfg, store, out);
  if (cfg.target == "bounds") return verify_bounds(cfg, store, out);
  if (cfg.target == "campaign") return verify_campaign(cfg, store, out, err);
  throw PreconditionError("unknown verification scope '" + cfg.target + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string cache_dir;

  CLI::App app{"Exact k-regular partition computations and inequality verification"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--cache-dir", cache_dir, "Directory for cached tables (REGPART_CACHE overrides)");
  app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Output format: text, json, csv or markdown")
      ->check(CLI::IsMember({"text", "json", "csv", "markdown"}));

  auto* table = app.add_subcommand("table", "Print p_k(0..n_max)");
  table->add_option("--k", cfg.k_text, "Modulus k (integer >= 2 or inf)")->required();
  table->add_option("--n-max", cfg.n_max, "Largest n")->required();

  auto* reproduce = app.add_subcommand("reproduce", "Recompute a published table and diff it");
  reproduce->add_option("which", cfg.target, "table1, table2, table3, theorem1 or thresholds")
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "table3", "theorem1", "thresholds"}));
  reproduce->add_option("--sum-bound", cfg.sum_bound, "Largest a+b scanned");

  auto* verify = app.add_subcommand("verify", "Run a verification scan");
  verify->add_option("scope", cfg.target, "bo, logconc, bounds or campaign")
      ->required()
      ->check(CLI::IsMember({"bo", "logconc", "bounds", "campaign"}));
  verify->add_option("--k", cfg.k_text, "k, inf or lo..hi");
  verify->add_option("--n-max", cfg.n_max, "Largest n");
  verify->add_option("--sum-bound", cfg.sum_bound, "Largest a+b scanned");
  verify->add_option("--n0", cfg.n0, "Override N0 for the campaign");
  verify->add_option("--k-max", cfg.k_max, "Largest k in the campaign");
  verify->add_option("--a-max", cfg.a_max, "Upper end of the final-expression scan");
  verify->add_option("--class", cfg.k_class, "Campaign class: all, 2, 3 or gt3");
  verify->add_option("--time-limit", cfg.time_limit, "Stop the campaign after this many seconds");
  verify->add_flag("--full", cfg.full, "Run the campaign at full scale");
  verify->add_flag("--no-exclusions", cfg.no_exclusions, "Report every nonpositive Delta in the campaign");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfig;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.format.empty()) cfg.format = cfg.command == "table" ? "text" : (cfg.command == "reproduce" ? "markdown" : "json");
  if (const char* env = std::getenv("REGPART_CACHE"); env && *env)
    cfg.cache_dir = env;
  else if (!cache_dir.empty())
    cfg.cache_dir = cache_dir;

  try {
    TableStore store(cfg.cache_dir);
    if (cfg.command == "table") return cmd_table(cfg, store, out);
    if (cfg.command == "reproduce") return cmd_reproduce(cfg, store, out);
    return cmd_verify(cfg, store, out, err);
  } catch (const CacheError& e) {
    err << "cache error: " << e.what() << '\n';
    return kCache;
  } catch (const PrecisionExhausted& e) {
    err << "precision exhausted: " << e.what() << '\n';
    return kPrecision;
  } catch (const PreconditionError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kConfig;
  } catch (const RangeError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kConfig;
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << '\n';
    return kMismatch;
  }
}

}  // namespace regpart::cli
