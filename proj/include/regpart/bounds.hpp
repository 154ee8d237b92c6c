#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "regpart/arith.hpp"
#include "regpart/bo.hpp"
#include "regpart/rigorous.hpp"

namespace regpart {

struct BoundCheckReport {
  BoundCheckReport() = default;
  BoundCheckReport(std::string check_, std::string range_) : check(std::move(check_)), range(std::move(range_)) {}

  std::string check;
  std::string range;
  bool passed = true;
  std::size_t checked = 0;
  std::optional<std::string> first_failure;
  mpfr_prec_t max_precision_bits_used = 0;
};

/// g_k(n) <= n (1 + ln n) for 1 <= n <= n_max. An n passes only when the
/// certified lower bound of the right-hand side is >= g_k(n).
BoundCheckReport check_g_bound(const KIndex& k, std::size_t n_max, std::size_t n_from = 1);

enum class PBoundVariant {
  Lemma,   // p_k(n) > 2^(sqrt(2n/3 + 1/4) - 3/2)
  Remark,  // p_k(n) >= 2^floor(sqrt(2n/3 + 1/4) - 1/2)
};

const char* to_string(PBoundVariant variant) noexcept;

/// Checks the chosen lower bound for 1 <= n <= n_max against a table.
BoundCheckReport check_p_lower_bound(const PartitionTable& table, std::size_t n_max, PBoundVariant variant);

/// floor(sqrt(2n/3 + 1/4) - 1/2), computed in exact integer arithmetic.
std::size_t remark_exponent(std::size_t n);

/// Enclosure of sqrt(2n/3 + 1/4) - 3/2.
RigorousReal lemma_exponent(std::size_t n, mpfr_prec_t bits);

/// The lemma's real exponent never exceeds the remark's integer exponent, so
/// the remark bound is at least as strong; checked for 1 <= n <= n_max.
BoundCheckReport check_bound_consistency(std::size_t n_max);

/// Enclosure of -48 a^2 (1 + ln 2a) + 2^(sqrt(2(a-1)/3 + 1/4) - 3/2).
RigorousReal final_expression(std::size_t a, mpfr_prec_t bits);

struct CertifiedSign {
  DeltaSign sign;
  mpfr_prec_t bits_used;
};

/// Certified sign of final_expression(a). Requires a >= 2.
CertifiedSign final_expression_sign(std::size_t a);

/// Smallest a >= 2 with a positive final expression, searching up to a_limit.
std::optional<std::size_t> smallest_positive_final_expression(std::size_t a_limit);

inline constexpr std::size_t kFinalExpressionFrom = 1470;

/// Every a in [a_from, a_to] is Positive, and consecutive values are
/// nondecreasing. Requires a_from >= 1470.
BoundCheckReport final_expression_scan(std::size_t a_from, std::size_t a_to, unsigned jobs = 1);

}  // namespace regpart
