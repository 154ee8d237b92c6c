#include "regpart/report_io.hpp"

#include <sstream>

namespace regpart {

namespace {

Json pairs_json(const std::vector<Pair>& pairs) {
  Json out = Json::array();
  for (Pair p : pairs) out.push_back(to_json(p));
  return out;
}

Json findings_json(const std::vector<PairFinding>& findings) {
  Json out = Json::array();
  for (const auto& f : findings) out.push_back({{"pair", to_json(f.pair)}, {"sign", to_string(f.sign)}});
  return out;
}

std::string pair_text(Pair p) { return "(" + std::to_string(p.a) + "," + std::to_string(p.b) + ")"; }

}  // namespace

Json to_json(Pair pair) { return Json::array({pair.a, pair.b}); }

Json to_json(const ExceptionReport& report) {
  Json families = Json::array();
  for (const auto& f : report.infinite_families)
    families.push_back({{"a0", f.a0}, {"b_from", f.b_from}, {"sign", to_string(f.sign)}, {"verified_to", f.verified_to}});
  return {{"k", report.k.to_string()},
          {"search_bound", report.search_bound},
          {"equality_pairs", pairs_json(report.equality_pairs)},
          {"reversed_pairs", pairs_json(report.reversed_pairs)},
          {"infinite_families", families}};
}

ExceptionReport exception_report_from_json(const Json& j) {
  ExceptionReport report;
  report.k = KIndex::parse(j.at("k").get<std::string>());
  report.search_bound = j.at("search_bound").get<std::size_t>();
  for (const auto& p : j.at("equality_pairs")) report.equality_pairs.emplace_back(p.at(0), p.at(1));
  for (const auto& p : j.at("reversed_pairs")) report.reversed_pairs.emplace_back(p.at(0), p.at(1));
  for (const auto& f : j.at("infinite_families"))
    report.infinite_families.push_back({f.at("a0"), f.at("b_from"), parse_sign(f.at("sign").get<std::string>()),
                                        f.at("verified_to")});
  return report;
}

Json to_json(const ExceptionDiff& diff) {
  Json missing_families = Json::array();
  for (const auto& f : diff.missing_families)
    missing_families.push_back({{"a0", f.a0}, {"b_from", f.b_from}, {"sign", to_string(f.sign)}});
  Json extra_families = Json::array();
  for (const auto& f : diff.extra_families)
    extra_families.push_back({{"a0", f.a0}, {"b_from", f.b_from}, {"sign", to_string(f.sign)}});
  return {{"missing_equality", pairs_json(diff.missing_equality)},
          {"extra_equality", pairs_json(diff.extra_equality)},
          {"missing_reversed", pairs_json(diff.missing_reversed)},
          {"extra_reversed", pairs_json(diff.extra_reversed)},
          {"missing_families", missing_families},
          {"extra_families", extra_families}};
}

Json to_json(const ThresholdReport& report) {
  return {{"k", report.k},
          {"n_k", report.n_k},
          {"m_k", report.m_k},
          {"sum_bound", report.sum_bound},
          {"pairs_checked", report.pairs_checked},
          {"violations", pairs_json(report.violations)},
          {"result", report.passed() ? "pass" : "fail"}};
}

Json to_json(const StabilizationReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries)
    entries.push_back({{"k", e.k}, {"equal", e.diff.empty()}, {"diff", to_json(e.diff)}});
  return {{"k_from", report.k_from},
          {"k_to", report.k_to},
          {"sum_bound", report.sum_bound},
          {"all_equal", report.all_equal()},
          {"entries", entries}};
}

Json to_json(const CampaignReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries)
    entries.push_back({{"k", e.k.to_string()},
                       {"pairs_checked", e.pairs_checked},
                       {"exact_checks", e.exact_checks},
                       {"unexpected", findings_json(e.unexpected)},
                       {"below_threshold_exceptions", e.below_threshold_exceptions},
                       {"table_mismatches", findings_json(e.table_mismatches)}});
  return {{"class", to_string(report.params.k_class)},
          {"A", report.params.A},
          {"B", report.params.B},
          {"N0", report.n0},
          {"k_max", report.k_max},
          {"complete", report.complete},
          {"unexpected_count", report.unexpected_count()},
          {"entries", entries}};
}

Json to_json(const LogConcavityReport& report) {
  return {{"k", report.k.to_string()},
          {"n_max", report.n_max},
          {"failures", report.failures},
          {"estimated_N_k", report.estimated_N_k},
          {"horizon_caveat", report.horizon_caveat}};
}

Json to_json(const ConjectureReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries)
    entries.push_back({{"k", e.k},
                       {"failures", e.failures},
                       {"estimated_N_k", e.estimated_N_k},
                       {"matches_p", e.matches_p},
                       {"horizon_caveat", true}});
  Json start = report.stabilization_start() ? Json(report.stabilization_start()) : Json(nullptr);
  return {{"k_from", report.k_from},
          {"k_to", report.k_to},
          {"n_max", report.n_max},
          {"conjecture_holds", report.conjecture_holds()},
          {"stabilization_start", start},
          {"entries", entries}};
}

Json to_json(const BoundCheckReport& report) {
  Json j = {{"check", report.check},
            {"range", report.range},
            {"result", report.passed ? "pass" : "fail"},
            {"checked", report.checked},
            {"max_precision_bits_used", report.max_precision_bits_used}};
  if (report.first_failure) j["first_failure"] = *report.first_failure;
  return j;
}

std::string format_pairs(const std::vector<Pair>& pairs, const std::vector<InfiniteFamily>& families) {
  std::ostringstream out;
  bool first = true;
  for (const auto& f : families) {
    out << (first ? "" : ", ") << "(" << f.a0 << ",b), b >= " << f.b_from;
    first = false;
  }
  for (Pair p : pairs) {
    out << (first ? "" : ", ") << pair_text(p);
    first = false;
  }
  return out.str();
}

std::string exceptions_markdown(const std::vector<ExceptionReport>& reports) {
  std::ostringstream out;
  out << "| k | Elements of E_k | Elements of F_k |\n|---:|---|---|\n";
  for (const auto& r : reports)
    out << "| " << r.k.to_string() << " | " << format_pairs(r.equality_pairs) << " | "
        << format_pairs(r.reversed_pairs, r.infinite_families) << " |\n";
  return out.str();
}

std::string first_difference(const ExceptionDiff& diff) {
  if (!diff.missing_equality.empty()) return "E_k is missing " + pair_text(diff.missing_equality.front());
  if (!diff.extra_equality.empty()) return "E_k has unexpected " + pair_text(diff.extra_equality.front());
  if (!diff.missing_reversed.empty()) return "F_k is missing " + pair_text(diff.missing_reversed.front());
  if (!diff.extra_reversed.empty()) return "F_k has unexpected " + pair_text(diff.extra_reversed.front());
  if (!diff.missing_families.empty())
    return "F_k is missing family (" + std::to_string(diff.missing_families.front().a0) + ",b)";
  if (!diff.extra_families.empty())
    return "F_k has unexpected family (" + std::to_string(diff.extra_families.front().a0) + ",b)";
  return "";
}

}  // namespace regpart
