#include "regpart/arith.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "regpart/errors.hpp"

namespace regpart {

KIndex KIndex::finite(std::uint64_t k) {
  if (k < 2) throw PreconditionError("k must be >= 2, got " + std::to_string(k));
  return KIndex{k};
}

KIndex KIndex::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "oo") return infinity();
  std::uint64_t k = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, k);
  if (ec != std::errc{} || ptr != end || text.empty())
    throw PreconditionError("cannot parse k from '" + std::string(text) + "'");
  return finite(k);
}

std::string KIndex::to_string() const {
  return is_infinite() ? std::string("inf") : std::to_string(*value_);
}

std::uint64_t sigma_u64(std::uint64_t n) {
  if (n == 0) throw PreconditionError("sigma(0) is undefined");
  std::uint64_t sum = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    sum += d;
    if (d != n / d) sum += n / d;
  }
  return sum;
}

Nat sigma(std::uint64_t n) {
  Nat result;
  mpz_set_ui(result.get_mpz_t(), sigma_u64(n));
  return result;
}

std::uint64_t g_k_u64(const KIndex& k, std::uint64_t n) {
  const std::uint64_t s = sigma_u64(n);
  if (!k.divides(n)) return s;
  return s - k.value() * sigma_u64(n / k.value());
}

Nat g_k(const KIndex& k, std::uint64_t n) {
  Nat result;
  mpz_set_ui(result.get_mpz_t(), g_k_u64(k, n));
  return result;
}

namespace {

std::vector<double> natural_logs(const std::vector<Nat>& values) {
  std::vector<double> logs;
  logs.reserve(values.size());
  for (const Nat& v : values) {
    long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, v.get_mpz_t());
    logs.push_back(std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2);
  }
  return logs;
}

}  // namespace

PartitionTable::PartitionTable(KIndex k, std::vector<Nat> values) : k_(k) {
  if (values.empty()) throw PreconditionError("a partition table needs at least p_k(0)");
  for (const Nat& v : values)
    if (sgn(v) <= 0) throw ConsistencyError("partition table entries must be positive");
  logs_ = std::make_shared<const std::vector<double>>(natural_logs(values));
  values_ = std::make_shared<const std::vector<Nat>>(std::move(values));
}

const Nat& PartitionTable::at(std::size_t n) const {
  if (n > n_max())
    throw RangeError("p_" + k_.to_string() + "(" + std::to_string(n) + ") is outside table 0.." +
                     std::to_string(n_max()));
  return (*values_)[n];
}

PartitionTable build_table_recurrence(const KIndex& k, std::size_t n_max) {
  std::vector<unsigned long> g(n_max + 1, 0);
  for (std::size_t l = 1; l <= n_max; ++l) g[l] = g_k_u64(k, l);

  std::vector<Nat> p(n_max + 1);
  p[0] = 1;
  Nat sum;
  for (std::size_t n = 1; n <= n_max; ++n) {
    sum = 0;
    for (std::size_t l = 1; l <= n; ++l) mpz_addmul_ui(sum.get_mpz_t(), p[n - l].get_mpz_t(), g[l]);
    if (!mpz_divisible_ui_p(sum.get_mpz_t(), n))
      throw ConsistencyError("recurrence sum for p_" + k.to_string() + "(" + std::to_string(n) +
                             ") is not divisible by n");
    mpz_divexact_ui(p[n].get_mpz_t(), sum.get_mpz_t(), n);
  }
  return PartitionTable(k, std::move(p));
}

PartitionTable build_table_series(const KIndex& k, std::size_t n_max) {
  std::vector<Int> c(n_max + 1, 0);
  c[0] = 1;
  // 1 / (1 - q^m)
  for (std::size_t m = 1; m <= n_max; ++m)
    for (std::size_t i = m; i <= n_max; ++i) c[i] += c[i - m];
  // (1 - q^{km})
  if (!k.is_infinite()) {
    const std::size_t step = k.value();
    for (std::size_t m = step; m <= n_max; m += step)
      for (std::size_t i = n_max; i >= m; --i) c[i] -= c[i - m];
  }
  return PartitionTable(k, std::move(c));
}

namespace {

std::uint64_t count_forbidden(std::size_t remaining, std::size_t max_part, const KIndex& k) {
  if (remaining == 0) return 1;
  std::uint64_t count = 0;
  for (std::size_t part = std::min(max_part, remaining); part >= 1; --part) {
    if (k.divides(part)) continue;
    count += count_forbidden(remaining - part, part, k);
  }
  return count;
}

std::uint64_t count_bounded(std::size_t remaining, std::size_t max_part, const KIndex& k) {
  if (remaining == 0) return 1;
  std::uint64_t count = 0;
  for (std::size_t part = std::min(max_part, remaining); part >= 1; --part) {
    std::size_t max_mult = remaining / part;
    if (!k.is_infinite()) max_mult = std::min<std::size_t>(max_mult, k.value() - 1);
    for (std::size_t mult = 1; mult <= max_mult; ++mult)
      count += count_bounded(remaining - mult * part, part - 1, k);
  }
  return count;
}

}  // namespace

Nat brute_force_count(const KIndex& k, std::size_t n, CountMode mode) {
  if (n > kBruteForceLimit)
    throw PreconditionError("brute-force enumeration is limited to n <= " +
                            std::to_string(kBruteForceLimit));
  const std::uint64_t count =
      mode == CountMode::ForbiddenMultiples ? count_forbidden(n, n, k) : count_bounded(n, n, k);
  Nat result;
  mpz_set_ui(result.get_mpz_t(), count);
  return result;
}

}  // namespace regpart
