#pragma once

#include <cstdint>
#include <map>
#include <string_view>
#include <utility>

#include "regpart/bo.hpp"

namespace regpart::golden {

/// Raw transcriptions shipped in data/.
std::string_view bo_json();
std::string_view table3_csv();

/// Published exception sets for k in 2..10 and k = inf. Throws
/// PreconditionError for other k.
const KnownExceptions& exceptions(const KIndex& k);

/// Published sets for k <= 10, and E_inf / F_inf for every larger k.
const KnownExceptions& known_exceptions(const KIndex& k);

/// Published (n_k, m_k) for 2 <= k <= 6.
const std::map<std::uint64_t, std::pair<std::size_t, std::size_t>>& thresholds();

}  // namespace regpart::golden
