#include "doctest.h"

#include <random>

#include "regpart/bounds.hpp"
#include "regpart/rigorous.hpp"

using namespace regpart;

namespace {

constexpr mpfr_prec_t kBits = RigorousReal::kStartBits;

// Parses a plain decimal like "-12.5" or "1.8e+77" into an exact rational.
mpq_class decimal(const std::string& text) {
  std::string mant = text;
  long exp10 = 0;
  if (auto e = mant.find_first_of("eE"); e != std::string::npos) {
    exp10 = std::stol(mant.substr(e + 1));
    mant.resize(e);
  }
  if (auto dot = mant.find('.'); dot != std::string::npos) {
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  mpq_class value{mpz_class(mant, 10)};
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  if (exp10 < 0) value /= scale;
  else value *= scale;
  value.canonicalize();
  return value;
}

// The interval meets [ref - tol, ref + tol], tol relative to |ref|, and is narrow.
void check_encloses(const RigorousReal& x, const std::string& ref_text, double rel_tol = 1e-36) {
  const mpq_class ref = decimal(ref_text);
  const mpq_class tol = abs(ref) * mpq_class(rel_tol) + mpq_class(1, 1000000000) * mpq_class(rel_tol);
  CAPTURE(ref_text);
  CAPTURE(x.to_string());
  CHECK(x.lower() <= ref + tol);
  CHECK(x.upper() >= ref - tol);
  CHECK(mpq_class(x.upper() - x.lower()) <= abs(ref) * mpq_class(1e-30) + mpq_class(1e-30));
}

RigorousReal num(long v) { return RigorousReal(v, kBits); }

}  // namespace

TEST_CASE("exact construction") {
  const RigorousReal x(Int(12345), kBits);
  CHECK(x.lower() == 12345);
  CHECK(x.upper() == 12345);
  CHECK(x.sign() == 1);
  CHECK(RigorousReal(0L, kBits).sign() == 0);
  const auto third = RigorousReal::ratio(1, 3, kBits);
  CHECK(third.contains(mpq_class(1, 3)));
  CHECK(third.lower() < third.upper());
  CHECK(third.sign() == 1);
}

TEST_CASE("enclosures against 40-digit references") {
  check_encloses(num(6) * (num(1) + log(num(6))), "16.75055681536833000487486415028421363634");
  check_encloses(exp2(lemma_exponent(100, kBits)), "102.555481507701802513422443466832527358");
  check_encloses(final_expression(2, kBits), "-457.4819718987025467158863466897653465292");
  check_encloses(final_expression(1469, kBits), "-3960522.176814810367884758068518788091863");
  check_encloses(final_expression(1470, kBits), "1569384.549447483516936895953409691660802");
  check_encloses(final_expression(100000, kBits), "1.878550068213687884369316470133903283946e+77");
  check_encloses(log(RigorousReal::ratio(7, 3, kBits)), "0.8472978603872036137101075065206540249896");
  check_encloses(sqrt(num(2)), "1.41421356237309504880168872420969807857");
  check_encloses(exp2(-RigorousReal::ratio(5, 7, kBits)), "0.6095068271022377204558455012962804286387");
}

TEST_CASE("enclosures on random inputs against a 4096-bit reference") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> pick_num(1, 1000000), pick_den(1, 997);
  mpfr_t x_ref, y_ref, acc, tmp;
  mpfr_inits2(4096, x_ref, y_ref, acc, tmp, static_cast<mpfr_ptr>(nullptr));
  mpq_class eps(1);
  eps /= mpq_class(mpz_class(1) << 3900);
  for (int trial = 0; trial < 200; ++trial) {
    const long n1 = pick_num(rng), d1 = pick_den(rng), n2 = pick_num(rng), d2 = pick_den(rng);
    const auto x = RigorousReal::ratio(n1, d1, kBits);
    const auto y = RigorousReal::ratio(n2, d2, kBits);
    // log(x) * sqrt(y) - 2^(x/1000) + y
    const auto got = log(x) * sqrt(y) - exp2(x * RigorousReal::ratio(1, 1000, kBits)) + y;

    mpfr_set_si(x_ref, n1, MPFR_RNDN);
    mpfr_div_si(x_ref, x_ref, d1, MPFR_RNDN);
    mpfr_set_si(y_ref, n2, MPFR_RNDN);
    mpfr_div_si(y_ref, y_ref, d2, MPFR_RNDN);
    mpfr_log(acc, x_ref, MPFR_RNDN);
    mpfr_sqrt(tmp, y_ref, MPFR_RNDN);
    mpfr_mul(acc, acc, tmp, MPFR_RNDN);
    mpfr_div_ui(tmp, x_ref, 1000, MPFR_RNDN);
    mpfr_exp2(tmp, tmp, MPFR_RNDN);
    mpfr_sub(acc, acc, tmp, MPFR_RNDN);
    mpfr_add(acc, acc, y_ref, MPFR_RNDN);
    mpq_class ref;
    mpfr_get_q(ref.get_mpq_t(), acc);

    const mpq_class tol = abs(ref) * eps + eps;
    CAPTURE(trial);
    REQUIRE(got.lower() <= got.upper());
    REQUIRE(got.lower() <= ref + tol);
    REQUIRE(got.upper() >= ref - tol);
  }
  mpfr_clears(x_ref, y_ref, acc, tmp, static_cast<mpfr_ptr>(nullptr));
}

TEST_CASE("sign is undecided when zero is inside") {
  const auto x = sqrt(num(2)) - sqrt(num(2));
  CHECK_FALSE(x.sign().has_value());
  CHECK(x.contains(0));
}

TEST_CASE("integer comparisons") {
  const auto x = num(6) * (num(1) + log(num(6)));  // 16.75...
  CHECK(x.compare(16) == 1);
  CHECK(x.compare(17) == -1);
  CHECK(x.cmp_lower(16) > 0);
  CHECK(x.cmp_upper(17) < 0);
  CHECK(num(5).compare(5) == 0);
}

TEST_CASE("log requires a positive enclosure") {
  CHECK_THROWS_AS(log(num(0)), PreconditionError);
  CHECK_THROWS_AS(log(num(-3)), PreconditionError);
}

TEST_CASE("precision grows with the working precision") {
  const auto lo = log(RigorousReal::ratio(7, 3, 128));
  const auto hi = log(RigorousReal::ratio(7, 3, 1024));
  CHECK(hi.width() < lo.width());
  CHECK(hi.precision() == 1024);
}

TEST_CASE("escalation") {
  int calls = 0;
  const auto [value, bits] = escalate(
      [&](mpfr_prec_t b) -> std::optional<int> {
        ++calls;
        return b >= 512 ? std::optional<int>(1) : std::nullopt;
      },
      "test");
  CHECK(value == 1);
  CHECK(bits == 512);
  CHECK(calls == 3);
  CHECK_THROWS_AS(escalate([](mpfr_prec_t) -> std::optional<int> { return std::nullopt; }, "never"),
                  PrecisionExhausted);
}

TEST_CASE("copies are independent") {
  auto a = num(3);
  auto b = a;
  b = b + num(1);
  CHECK(a.upper() == 3);
  CHECK(b.upper() == 4);
  auto c = std::move(b);
  CHECK(c.lower() == 4);
}
