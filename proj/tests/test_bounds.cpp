#include "doctest.h"

#include <cmath>

#include "regpart/bounds.hpp"
#include "regpart/errors.hpp"

using namespace regpart;

TEST_CASE("g bound") {
  const auto r2 = check_g_bound(KIndex::finite(2), 10000);
  CHECK(r2.passed);
  CHECK(r2.checked == 10000);
  CHECK(r2.max_precision_bits_used == RigorousReal::kStartBits);
  CHECK(check_g_bound(KIndex::infinity(), 1).passed);  // 1 <= 1 (1 + ln 1)
  CHECK(check_g_bound(KIndex::finite(3), 6, 6).passed);
  for (auto k : {KIndex::finite(3), KIndex::finite(5), KIndex::infinity()}) CHECK(check_g_bound(k, 10000).passed);
  CHECK_THROWS_AS(check_g_bound(KIndex::finite(2), 0), PreconditionError);
}

TEST_CASE("remark exponent matches a floating oracle away from integer boundaries") {
  for (std::size_t n = 1; n <= 20000; ++n) {
    const double x = std::sqrt(2.0 * n / 3.0 + 0.25) - 0.5;
    const double fl = std::floor(x);
    if (x - fl < 1e-9 || fl + 1 - x < 1e-9) continue;
    REQUIRE(remark_exponent(n) == static_cast<std::size_t>(fl));
  }
  CHECK(remark_exponent(1) == 0);
  // 2n/3 + 1/4 = (m + 1/2)^2 exactly when 8n + 3 = 3(2m + 1)^2, e.g. n = 3, m = 1.
  CHECK(remark_exponent(3) == 1);
  CHECK(remark_exponent(2) == 0);
}

TEST_CASE("p lower bounds") {
  const auto t2 = build_table_recurrence(KIndex::finite(2), 100);
  CHECK(check_p_lower_bound(t2, 100, PBoundVariant::Lemma).passed);
  const auto p = build_table_recurrence(KIndex::infinity(), 2000);
  CHECK(check_p_lower_bound(p, 1, PBoundVariant::Remark).passed);
  for (auto k : {KIndex::finite(2), KIndex::finite(4), KIndex::finite(10), KIndex::infinity()}) {
    const auto t = build_table_recurrence(k, 2000);
    for (auto v : {PBoundVariant::Lemma, PBoundVariant::Remark}) {
      const auto r = check_p_lower_bound(t, 2000, v);
      CAPTURE(k.to_string());
      CAPTURE(to_string(v));
      CHECK(r.passed);
      CHECK(r.checked == 2000);
    }
  }
  CHECK_THROWS_AS(check_p_lower_bound(t2, 101, PBoundVariant::Lemma), RangeError);
}

TEST_CASE("a failing table is reported") {
  std::vector<Nat> values(51, Nat(1));
  const PartitionTable flat(KIndex::finite(2), values);
  const auto r = check_p_lower_bound(flat, 50, PBoundVariant::Remark);
  CHECK_FALSE(r.passed);
  CHECK(r.first_failure.has_value());
}

TEST_CASE("lemma and remark exponents are consistent") { CHECK(check_bound_consistency(20000).passed); }

TEST_CASE("final expression sign") {
  CHECK(final_expression_sign(1470).sign == DeltaSign::Positive);
  CHECK(final_expression_sign(2).sign == DeltaSign::Negative);
  CHECK(final_expression_sign(1469).sign == DeltaSign::Negative);
  CHECK_THROWS_AS(final_expression_sign(1), PreconditionError);
  CHECK(smallest_positive_final_expression(5000) == 1470);
  CHECK_FALSE(smallest_positive_final_expression(1000).has_value());
}

TEST_CASE("certified signs survive doubling the precision") {
  for (std::size_t a : {2u, 10u, 500u, 1469u, 1470u, 1471u, 3000u, 99999u}) {
    const auto s = final_expression_sign(a);
    const auto twice = final_expression(a, 2 * s.bits_used).sign();
    REQUIRE(twice.has_value());
    CHECK(*twice == static_cast<int>(s.sign));
  }
}

TEST_CASE("final expression scan") {
  CHECK(final_expression_scan(1470, 1470).passed);
  const auto r = final_expression_scan(1470, 20000, 4);
  CHECK(r.passed);
  CHECK(r.checked == 20000 - 1470 + 1);
  CHECK_THROWS_AS(final_expression_scan(1469, 2000), PreconditionError);
  CHECK_THROWS_AS(final_expression_scan(2000, 1999), PreconditionError);
}
