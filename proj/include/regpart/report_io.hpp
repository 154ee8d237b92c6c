#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "regpart/bo.hpp"
#include "regpart/bounds.hpp"
#include "regpart/logconc.hpp"

namespace regpart {

using Json = nlohmann::json;

Json to_json(Pair pair);
Json to_json(const ExceptionReport& report);
ExceptionReport exception_report_from_json(const Json& j);
Json to_json(const ExceptionDiff& diff);
Json to_json(const ThresholdReport& report);
Json to_json(const StabilizationReport& report);
Json to_json(const CampaignReport& report);
Json to_json(const LogConcavityReport& report);
Json to_json(const ConjectureReport& report);
Json to_json(const BoundCheckReport& report);

/// "(a,b), (a,b), ..." with families rendered as "(a0,b), b >= b_from" first.
std::string format_pairs(const std::vector<Pair>& pairs, const std::vector<InfiniteFamily>& families = {});

/// Markdown table with one row per report: k | elements of E_k | elements of F_k.
std::string exceptions_markdown(const std::vector<ExceptionReport>& reports);

/// First human-readable disagreement in a diff, or "" when it is empty.
std::string first_difference(const ExceptionDiff& diff);

}  // namespace regpart
