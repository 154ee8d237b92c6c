#include "regpart/bounds.hpp"

#include <algorithm>

#include "regpart/errors.hpp"
#include "regpart/parallel.hpp"

namespace regpart {

namespace {

RigorousReal from_size(std::size_t v, mpfr_prec_t bits) { return RigorousReal(static_cast<long>(v), bits); }

std::string n_range(const std::string& prefix, std::size_t from, std::size_t to) {
  return prefix + "n=" + std::to_string(from) + ".." + std::to_string(to);
}

void record_failure(BoundCheckReport& report, std::string message) {
  if (report.passed) report.first_failure = std::move(message);
  report.passed = false;
}

}  // namespace

const char* to_string(PBoundVariant variant) noexcept {
  return variant == PBoundVariant::Lemma ? "lemma" : "remark";
}

BoundCheckReport check_g_bound(const KIndex& k, std::size_t n_max, std::size_t n_from) {
  if (n_from < 1 || n_max < n_from) throw PreconditionError("check_g_bound needs 1 <= n_from <= n_max");
  BoundCheckReport report{"g_bound", n_range("k=" + k.to_string() + " ", n_from, n_max)};
  for (std::size_t n = n_from; n <= n_max; ++n) {
    const Nat g = g_k(k, n);
    auto [holds, bits] = escalate(
        [&](mpfr_prec_t bits) -> std::optional<bool> {
          const RigorousReal x = from_size(n, bits);
          const RigorousReal rhs = x * (RigorousReal(1L, bits) + log(x));
          if (rhs.cmp_lower(g) >= 0) return true;
          if (rhs.cmp_upper(g) < 0) return false;
          return std::nullopt;
        },
        "g_bound at n=" + std::to_string(n));
    ++report.checked;
    report.max_precision_bits_used = std::max(report.max_precision_bits_used, bits);
    if (!holds) record_failure(report, "n=" + std::to_string(n) + " g=" + g.get_str());
  }
  return report;
}

std::size_t remark_exponent(std::size_t n) {
  // Largest m with 3 (2m + 1)^2 <= 8n + 3.
  const auto fits = [n](std::size_t m) { return 3 * (2 * m + 1) * (2 * m + 1) <= 8 * n + 3; };
  Nat root;
  mpz_sqrt(root.get_mpz_t(), Nat((8 * n + 3) / 3).get_mpz_t());
  std::size_t m = root.get_ui() / 2;
  while (m > 0 && !fits(m)) --m;
  while (fits(m + 1)) ++m;
  return m;
}

RigorousReal lemma_exponent(std::size_t n, mpfr_prec_t bits) {
  return sqrt(RigorousReal::ratio(Int(8 * n + 3), Int(12), bits)) - RigorousReal::ratio(3, 2, bits);
}

BoundCheckReport check_p_lower_bound(const PartitionTable& table, std::size_t n_max, PBoundVariant variant) {
  if (n_max < 1) throw PreconditionError("check_p_lower_bound needs n_max >= 1");
  if (n_max > table.n_max()) throw RangeError("n_max exceeds the table");
  BoundCheckReport report{std::string("p_lower_bound_") + to_string(variant),
                          n_range("k=" + table.k().to_string() + " ", 1, n_max)};

  for (std::size_t n = 1; n <= n_max; ++n) {
    const Nat& p = table[n];
    bool holds = false;
    if (variant == PBoundVariant::Remark) {
      Nat power;
      mpz_setbit(power.get_mpz_t(), remark_exponent(n));
      holds = p >= power;
    } else {
      mpfr_prec_t bits = 0;
      std::tie(holds, bits) = escalate(
          [&](mpfr_prec_t bits) -> std::optional<bool> {
            const RigorousReal bound = exp2(lemma_exponent(n, bits));
            if (bound.cmp_upper(p) < 0) return true;
            if (bound.cmp_lower(p) >= 0) return false;
            return std::nullopt;
          },
          "p lemma bound at n=" + std::to_string(n));
      report.max_precision_bits_used = std::max(report.max_precision_bits_used, bits);
    }
    ++report.checked;
    if (!holds) record_failure(report, "n=" + std::to_string(n) + " p=" + p.get_str());
  }
  return report;
}

BoundCheckReport check_bound_consistency(std::size_t n_max) {
  BoundCheckReport report{"bound_consistency", n_range("", 1, n_max)};
  for (std::size_t n = 1; n <= n_max; ++n) {
    const Int e(static_cast<unsigned long>(remark_exponent(n)));
    auto [holds, bits] = escalate(
        [&](mpfr_prec_t bits) -> std::optional<bool> {
          const RigorousReal lemma = lemma_exponent(n, bits);
          if (lemma.cmp_upper(e) <= 0) return true;
          if (lemma.cmp_lower(e) > 0) return false;
          return std::nullopt;
        },
        "bound consistency at n=" + std::to_string(n));
    ++report.checked;
    report.max_precision_bits_used = std::max(report.max_precision_bits_used, bits);
    if (!holds) record_failure(report, "n=" + std::to_string(n));
  }
  return report;
}

RigorousReal final_expression(std::size_t a, mpfr_prec_t bits) {
  if (a < 2) throw PreconditionError("final expression needs a >= 2");
  const RigorousReal x = from_size(a, bits);
  const RigorousReal polylog = RigorousReal(48L, bits) * x * x * (RigorousReal(1L, bits) + log(from_size(2 * a, bits)));
  // 2(a-1)/3 + 1/4 = (8a - 5)/12
  const RigorousReal exponent =
      sqrt(RigorousReal::ratio(Int(8 * a - 5), Int(12), bits)) - RigorousReal::ratio(3, 2, bits);
  return exp2(exponent) - polylog;
}

namespace {

DeltaSign to_delta_sign(int s) {
  return s > 0 ? DeltaSign::Positive : (s < 0 ? DeltaSign::Negative : DeltaSign::Zero);
}

}  // namespace

CertifiedSign final_expression_sign(std::size_t a) {
  if (a < 2) throw PreconditionError("final expression needs a >= 2");
  auto [sign, bits] = escalate([&](mpfr_prec_t bits) { return final_expression(a, bits).sign(); },
                               "final expression sign at a=" + std::to_string(a));
  return {to_delta_sign(sign), bits};
}

std::optional<std::size_t> smallest_positive_final_expression(std::size_t a_limit) {
  for (std::size_t a = 2; a <= a_limit; ++a)
    if (final_expression_sign(a).sign == DeltaSign::Positive) return a;
  return std::nullopt;
}

BoundCheckReport final_expression_scan(std::size_t a_from, std::size_t a_to, unsigned jobs) {
  if (a_from < kFinalExpressionFrom)
    throw PreconditionError("the final expression is only claimed positive for a >= 1470");
  if (a_to < a_from) throw PreconditionError("empty a range");

  constexpr std::size_t kChunk = 1024;
  const std::size_t chunks = (a_to - a_from) / kChunk + 1;
  auto partial = parallel_map(chunks, jobs, [&](std::size_t c) {
    BoundCheckReport part;
    const std::size_t lo = a_from + c * kChunk;
    const std::size_t hi = std::min(a_to, lo + kChunk - 1);
    for (std::size_t a = lo; a <= hi; ++a) {
      const auto s = final_expression_sign(a);
      part.max_precision_bits_used = std::max(part.max_precision_bits_used, s.bits_used);
      ++part.checked;
      if (s.sign != DeltaSign::Positive) {
        record_failure(part, "a=" + std::to_string(a) + " not positive");
        break;
      }
      if (a == a_to) break;
      auto [nondecreasing, bits] = escalate(
          [&](mpfr_prec_t bits) -> std::optional<bool> {
            const auto step = final_expression(a + 1, bits) - final_expression(a, bits);
            const auto sign = step.sign();
            if (!sign) return std::nullopt;
            return *sign >= 0;
          },
          "final expression monotonicity at a=" + std::to_string(a));
      part.max_precision_bits_used = std::max(part.max_precision_bits_used, bits);
      if (!nondecreasing) {
        record_failure(part, "decrease between a=" + std::to_string(a) + " and a+1");
        break;
      }
    }
    return part;
  });

  BoundCheckReport report{"final_expression_scan", "a=" + std::to_string(a_from) + ".." + std::to_string(a_to)};
  for (auto& part : partial) {
    report.checked += part.checked;
    report.max_precision_bits_used = std::max(report.max_precision_bits_used, part.max_precision_bits_used);
    if (!part.passed && report.passed) {
      report.passed = false;
      report.first_failure = part.first_failure;
    }
  }
  return report;
}

}  // namespace regpart
