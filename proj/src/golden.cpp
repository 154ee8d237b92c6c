#include "regpart/golden.hpp"

#include <algorithm>

#include "json.hpp"

#include "regpart/errors.hpp"

namespace regpart::golden {

namespace detail {
std::string_view bo_json_text();
std::string_view table3_csv_text();
}  // namespace detail

std::string_view bo_json() { return detail::bo_json_text(); }
std::string_view table3_csv() { return detail::table3_csv_text(); }

namespace {

using json = nlohmann::json;

std::vector<Pair> parse_pairs(const json& list) {
  std::vector<Pair> pairs;
  for (const auto& p : list) pairs.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

struct Parsed {
  std::map<std::string, KnownExceptions> by_k;
  std::map<std::uint64_t, std::pair<std::size_t, std::size_t>> thresholds;
};

const Parsed& parsed() {
  static const Parsed data = [] {
    Parsed out;
    const json doc = json::parse(bo_json());
    for (const auto& [key, entry] : doc.items()) {
      if (key == "thresholds") {
        for (const auto& [k, nm] : entry.items())
          out.thresholds[std::stoull(k)] = {nm.at(0).get<std::size_t>(), nm.at(1).get<std::size_t>()};
        continue;
      }
      KnownExceptions known;
      known.equality = parse_pairs(entry.at("equality"));
      known.reversed = parse_pairs(entry.at("reversed"));
      for (const auto& f : entry.at("families"))
        known.families.push_back({f.at("a0").get<std::size_t>(), f.at("b_from").get<std::size_t>(),
                                  parse_sign(f.at("sign").get<std::string>())});
      out.by_k.emplace(key, std::move(known));
    }
    return out;
  }();
  return data;
}

}  // namespace

const KnownExceptions& exceptions(const KIndex& k) {
  const auto& by_k = parsed().by_k;
  auto it = by_k.find(k.to_string());
  if (it == by_k.end())
    throw PreconditionError("no published exception table for k=" + k.to_string());
  return it->second;
}

const KnownExceptions& known_exceptions(const KIndex& k) {
  if (k.is_infinite() || k.value() > 10) return exceptions(KIndex::infinity());
  return exceptions(k);
}

const std::map<std::uint64_t, std::pair<std::size_t, std::size_t>>& thresholds() {
  return parsed().thresholds;
}

}  // namespace regpart::golden
