#include "regpart/rigorous.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace regpart {

RigorousReal::RigorousReal(mpfr_prec_t bits) : bits_(bits) {
  mpfr_init2(lo_, bits);
  mpfr_init2(hi_, bits);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

RigorousReal::RigorousReal(const Int& value, mpfr_prec_t bits) : RigorousReal(bits) {
  mpfr_set_z(lo_, value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_, value.get_mpz_t(), MPFR_RNDU);
}

RigorousReal::RigorousReal(long value, mpfr_prec_t bits) : RigorousReal(bits) {
  mpfr_set_si(lo_, value, MPFR_RNDD);
  mpfr_set_si(hi_, value, MPFR_RNDU);
}

RigorousReal RigorousReal::ratio(const Int& num, const Int& den, mpfr_prec_t bits) {
  if (sgn(den) == 0) throw PreconditionError("RigorousReal::ratio with zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  RigorousReal r(bits);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

RigorousReal::RigorousReal(const RigorousReal& other) : bits_(other.bits_) {
  mpfr_init2(lo_, bits_);
  mpfr_init2(hi_, bits_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

RigorousReal::RigorousReal(RigorousReal&& other) noexcept : RigorousReal(other) {}

RigorousReal& RigorousReal::operator=(RigorousReal other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  std::swap(bits_, other.bits_);
  return *this;
}

RigorousReal::~RigorousReal() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

mpq_class RigorousReal::lower() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

mpq_class RigorousReal::upper() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

double RigorousReal::lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double RigorousReal::upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double RigorousReal::width() const {
  mpfr_t w;
  mpfr_init2(w, bits_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  const double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

bool RigorousReal::contains(const mpq_class& value) const {
  return mpfr_cmp_q(lo_, value.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, value.get_mpq_t()) >= 0;
}

std::optional<int> RigorousReal::sign() const {
  if (mpfr_sgn(lo_) > 0) return 1;
  if (mpfr_sgn(hi_) < 0) return -1;
  if (mpfr_zero_p(lo_) && mpfr_zero_p(hi_)) return 0;
  return std::nullopt;
}

std::optional<int> RigorousReal::compare(const Int& value) const {
  const int lo_cmp = mpfr_cmp_z(lo_, value.get_mpz_t());
  const int hi_cmp = mpfr_cmp_z(hi_, value.get_mpz_t());
  if (lo_cmp > 0) return 1;
  if (hi_cmp < 0) return -1;
  if (lo_cmp == 0 && hi_cmp == 0) return 0;
  return std::nullopt;
}

int RigorousReal::cmp_lower(const Int& value) const { return mpfr_cmp_z(lo_, value.get_mpz_t()); }
int RigorousReal::cmp_upper(const Int& value) const { return mpfr_cmp_z(hi_, value.get_mpz_t()); }

namespace {

mpfr_prec_t joint(const RigorousReal& x, const RigorousReal& y) { return std::max(x.precision(), y.precision()); }

}  // namespace

RigorousReal operator+(const RigorousReal& x, const RigorousReal& y) {
  RigorousReal r(joint(x, y));
  mpfr_add(r.lo_, x.lo_, y.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, x.hi_, y.hi_, MPFR_RNDU);
  return r;
}

RigorousReal operator-(const RigorousReal& x, const RigorousReal& y) {
  RigorousReal r(joint(x, y));
  mpfr_sub(r.lo_, x.lo_, y.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, x.hi_, y.lo_, MPFR_RNDU);
  return r;
}

RigorousReal operator-(const RigorousReal& x) {
  RigorousReal r(x.bits_);
  mpfr_neg(r.lo_, x.hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, x.lo_, MPFR_RNDU);
  return r;
}

RigorousReal operator*(const RigorousReal& x, const RigorousReal& y) {
  RigorousReal r(joint(x, y));
  mpfr_t down, up;
  mpfr_init2(down, r.bits_);
  mpfr_init2(up, r.bits_);
  bool first = true;
  for (mpfr_srcptr a : {x.lo_, x.hi_}) {
    for (mpfr_srcptr b : {y.lo_, y.hi_}) {
      mpfr_mul(down, a, b, MPFR_RNDD);
      mpfr_mul(up, a, b, MPFR_RNDU);
      if (first || mpfr_less_p(down, r.lo_)) mpfr_set(r.lo_, down, MPFR_RNDD);
      if (first || mpfr_greater_p(up, r.hi_)) mpfr_set(r.hi_, up, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(down);
  mpfr_clear(up);
  return r;
}

RigorousReal log(const RigorousReal& x) {
  if (mpfr_sgn(x.lo_) <= 0) throw PreconditionError("log of an enclosure that reaches 0: " + x.to_string());
  RigorousReal r(x.bits_);
  mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

RigorousReal sqrt(const RigorousReal& x) {
  if (mpfr_sgn(x.hi_) < 0) throw PreconditionError("sqrt of a negative enclosure: " + x.to_string());
  RigorousReal r(x.bits_);
  if (mpfr_sgn(x.lo_) <= 0)
    mpfr_set_zero(r.lo_, 1);
  else
    mpfr_sqrt(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

RigorousReal exp2(const RigorousReal& x) {
  RigorousReal r(x.bits_);
  mpfr_exp2(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_exp2(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

std::string RigorousReal::to_string() const {
  std::ostringstream out;
  out << '[' << lower_double() << ", " << upper_double() << "] @" << bits_ << " bits";
  return out.str();
}

}  // namespace regpart
