#include "tcert/real.hpp"

#include <algorithm>
#include <cstdlib>

#include "tcert/error.hpp"

namespace tcert {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidTruncation: return "invalid-truncation";
    case ErrorKind::PoleNotCancelled: return "pole-not-cancelled";
    case ErrorKind::PrecisionInsufficient: return "precision-insufficient";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::CannotCertify: return "cannot-certify";
    case ErrorKind::Underdetermined: return "underdetermined-violation";
    case ErrorKind::EnumerationTooLarge: return "enumeration-too-large";
    case ErrorKind::IncreaseTruncation: return "increase-truncation";
    case ErrorKind::InternalInvariant: return "internal-invariant";
    case ErrorKind::Exhausted: return "exhausted";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::InconsistentWitness: return "inconsistent-witness";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Determination: return "determination";
    case ErrorKind::Budget: return "budget";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

std::string to_decimal(const Mpfr& x, mpfr_rnd_t rnd, int digits) {
  char* buf = nullptr;
  int n = 0;
  switch (rnd) {
    case MPFR_RNDD: n = mpfr_asprintf(&buf, "%.*RDe", digits, x.get()); break;
    case MPFR_RNDU: n = mpfr_asprintf(&buf, "%.*RUe", digits, x.get()); break;
    default: n = mpfr_asprintf(&buf, "%.*RNe", digits, x.get()); break;
  }
  if (n < 0 || buf == nullptr) return "nan";
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

namespace {

mpfr_prec_t join_prec(const Real& a, const Real& b) { return std::max(a.prec(), b.prec()); }

}  // namespace

Real::Real(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

Real Real::from_int(long v, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
  mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
  return r;
}

Real Real::from_mpz(const mpz_class& v, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_z(r.lo_.get(), v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_.get(), v.get_mpz_t(), MPFR_RNDU);
  return r;
}

Real Real::from_mpq(const mpq_class& v, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_q(r.lo_.get(), v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), v.get_mpq_t(), MPFR_RNDU);
  return r;
}

Real Real::from_double(double v, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_d(r.lo_.get(), v, MPFR_RNDD);
  mpfr_set_d(r.hi_.get(), v, MPFR_RNDU);
  return r;
}

Real Real::from_decimal(const std::string& text, mpfr_prec_t prec) {
  Real r(prec);
  if (mpfr_set_str(r.lo_.get(), text.c_str(), 10, MPFR_RNDD) != 0 ||
      mpfr_set_str(r.hi_.get(), text.c_str(), 10, MPFR_RNDU) != 0) {
    throw Error(ErrorKind::Parse, "not a decimal number: '" + text + "'");
  }
  return r;
}

Real Real::from_bounds(const Mpfr& lo, const Mpfr& hi) {
  Real r(std::max(lo.prec(), hi.prec()));
  mpfr_set(r.lo_.get(), lo.get(), MPFR_RNDD);
  mpfr_set(r.hi_.get(), hi.get(), MPFR_RNDU);
  if (mpfr_greater_p(r.lo_.get(), r.hi_.get())) mpfr_swap(r.lo_.get(), r.hi_.get());
  return r;
}

Real Real::pi(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
  mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
  return r;
}

Real Real::log2(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_log2(r.lo_.get(), MPFR_RNDD);
  mpfr_const_log2(r.hi_.get(), MPFR_RNDU);
  return r;
}

double Real::lower() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
double Real::upper() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }
double Real::approx() const {
  Mpfr m(prec());
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return mpfr_get_d(m.get(), MPFR_RNDN);
}

Real Real::with_prec(mpfr_prec_t prec) const {
  Real r(prec);
  mpfr_set(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

bool Real::contains_zero() const {
  return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}
bool Real::contains(const Real& o) const {
  return mpfr_lessequal_p(lo_.get(), o.lo_.get()) && mpfr_greaterequal_p(hi_.get(), o.hi_.get());
}
bool Real::overlaps(const Real& o) const {
  return mpfr_lessequal_p(lo_.get(), o.hi_.get()) && mpfr_lessequal_p(o.lo_.get(), hi_.get());
}
bool Real::is_positive() const { return mpfr_sgn(lo_.get()) > 0; }
bool Real::is_negative() const { return mpfr_sgn(hi_.get()) < 0; }
bool Real::is_nonnegative() const { return mpfr_sgn(lo_.get()) >= 0; }
bool Real::is_finite() const {
  return mpfr_number_p(lo_.get()) && mpfr_number_p(hi_.get());
}
bool Real::certainly_lt(const Real& o) const { return mpfr_less_p(hi_.get(), o.lo_.get()); }
bool Real::certainly_le(const Real& o) const { return mpfr_lessequal_p(hi_.get(), o.lo_.get()); }

Real Real::midpoint() const {
  Real r(prec());
  Mpfr m(prec());
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  if (mpfr_less_p(m.get(), lo_.get())) mpfr_set(m.get(), lo_.get(), MPFR_RNDN);
  if (mpfr_greater_p(m.get(), hi_.get())) mpfr_set(m.get(), hi_.get(), MPFR_RNDN);
  mpfr_set(r.lo_.get(), m.get(), MPFR_RNDD);
  mpfr_set(r.hi_.get(), m.get(), MPFR_RNDU);
  return r;
}

Real Real::width() const {
  Real r(prec());
  mpfr_sub(r.lo_.get(), hi_.get(), lo_.get(), MPFR_RNDD);
  mpfr_sub(r.hi_.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return r;
}

Real Real::radius() const {
  Real w = width();
  mpfr_div_2ui(w.lo_.get(), w.lo_.get(), 1, MPFR_RNDD);
  mpfr_div_2ui(w.hi_.get(), w.hi_.get(), 1, MPFR_RNDU);
  return w;
}

Real Real::upper_only() const { return Real::from_bounds(hi_, hi_); }
Real Real::lower_only() const { return Real::from_bounds(lo_, lo_); }

Real Real::operator-() const {
  Real r(prec());
  mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  return r;
}

Real operator+(const Real& a, const Real& b) {
  Real r(join_prec(a, b));
  mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(join_prec(a, b));
  mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  const mpfr_prec_t p = join_prec(a, b);
  Real r(p);
  // Sign-case analysis avoids the four-product fallback in the common case.
  if (a.is_nonnegative() && b.is_nonnegative()) {
    mpfr_mul(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_mul(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    return r;
  }
  Mpfr t(p);
  mpfr_srcptr al[2] = {a.lo_.get(), a.hi_.get()};
  mpfr_srcptr bl[2] = {b.lo_.get(), b.hi_.get()};
  bool first = true;
  for (auto x : al) {
    for (auto y : bl) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Real operator/(const Real& a, const Real& b) {
  if (b.contains_zero()) {
    throw Error(ErrorKind::PrecisionInsufficient, "interval division by an enclosure of zero");
  }
  const mpfr_prec_t p = join_prec(a, b);
  Real r(p);
  Mpfr t(p);
  mpfr_srcptr al[2] = {a.lo_.get(), a.hi_.get()};
  mpfr_srcptr bl[2] = {b.lo_.get(), b.hi_.get()};
  bool first = true;
  for (auto x : al) {
    for (auto y : bl) {
      mpfr_div(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Real& Real::operator+=(const Real& o) { return *this = *this + o; }
Real& Real::operator-=(const Real& o) { return *this = *this - o; }
Real& Real::operator*=(const Real& o) { return *this = *this * o; }
Real& Real::operator/=(const Real& o) { return *this = *this / o; }

Real abs(const Real& x) {
  if (x.is_nonnegative()) return x;
  if (x.is_negative()) return -x;
  Real r(x.prec());
  mpfr_set_zero(r.lo_.get(), 1);
  if (mpfr_cmpabs(x.lo_.get(), x.hi_.get()) > 0) {
    mpfr_abs(r.hi_.get(), x.lo_.get(), MPFR_RNDU);
  } else {
    mpfr_set(r.hi_.get(), x.hi_.get(), MPFR_RNDU);
  }
  return r;
}

Real sqrt(const Real& x) {
  if (x.is_negative()) throw Error(ErrorKind::Domain, "sqrt of a negative interval");
  Real r(x.prec());
  if (mpfr_sgn(x.lo_.get()) <= 0) {
    mpfr_set_zero(r.lo_.get(), 1);
  } else {
    mpfr_sqrt(r.lo_.get(), x.lo_.get(), MPFR_RNDD);
  }
  mpfr_sqrt(r.hi_.get(), x.hi_.get(), MPFR_RNDU);
  return r;
}

Real exp(const Real& x) {
  Real r(x.prec());
  mpfr_exp(r.lo_.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_exp(r.hi_.get(), x.hi_.get(), MPFR_RNDU);
  return r;
}

Real log(const Real& x) {
  if (mpfr_sgn(x.lo_.get()) <= 0) {
    throw Error(ErrorKind::PrecisionInsufficient, "log of an interval reaching zero");
  }
  Real r(x.prec());
  mpfr_log(r.lo_.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_log(r.hi_.get(), x.hi_.get(), MPFR_RNDU);
  return r;
}

namespace {

// Encloses f over [lo, hi] for a 1-Lipschitz f bounded by one in modulus,
// using the value at the midpoint.
template <typename Fn>
Real lipschitz_trig(const Real& x, Fn fn) {
  const mpfr_prec_t p = x.prec();
  Mpfr mid(p), w1(p), w2(p), w(p);
  mpfr_add(mid.get(), x.lo().get(), x.hi().get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  mpfr_sub(w1.get(), x.hi().get(), mid.get(), MPFR_RNDU);
  mpfr_sub(w2.get(), mid.get(), x.lo().get(), MPFR_RNDU);
  mpfr_max(w.get(), w1.get(), w2.get(), MPFR_RNDU);
  Mpfr lo(p), hi(p);
  fn(lo.get(), mid.get(), MPFR_RNDD);
  fn(hi.get(), mid.get(), MPFR_RNDU);
  mpfr_sub(lo.get(), lo.get(), w.get(), MPFR_RNDD);
  mpfr_add(hi.get(), hi.get(), w.get(), MPFR_RNDU);
  if (mpfr_cmp_si(lo.get(), -1) < 0) mpfr_set_si(lo.get(), -1, MPFR_RNDD);
  if (mpfr_cmp_si(hi.get(), 1) > 0) mpfr_set_si(hi.get(), 1, MPFR_RNDU);
  return Real::from_bounds(lo, hi);
}

}  // namespace

Real sin(const Real& x) {
  return lipschitz_trig(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_sin(r, a, rnd); });
}

Real cos(const Real& x) {
  return lipschitz_trig(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_cos(r, a, rnd); });
}

Real pow(const Real& x, long n) {
  if (n == 0) return Real::from_int(1, x.prec());
  if (n < 0) return Real::from_int(1, x.prec()) / pow(x, -n);
  const auto un = static_cast<unsigned long>(n);
  Real r(x.prec());
  if (x.is_nonnegative() || (n % 2 == 1)) {
    mpfr_pow_ui(r.lo_.get(), x.lo_.get(), un, MPFR_RNDD);
    mpfr_pow_ui(r.hi_.get(), x.hi_.get(), un, MPFR_RNDU);
    return r;
  }
  if (x.is_negative()) {
    mpfr_pow_ui(r.lo_.get(), x.hi_.get(), un, MPFR_RNDD);
    mpfr_pow_ui(r.hi_.get(), x.lo_.get(), un, MPFR_RNDU);
    return r;
  }
  Real a = abs(x);
  mpfr_set_zero(r.lo_.get(), 1);
  mpfr_pow_ui(r.hi_.get(), a.hi_.get(), un, MPFR_RNDU);
  return r;
}

Real pow(const Real& x, const Real& y) { return exp(y * log(x)); }

Real max(const Real& a, const Real& b) {
  Real r(join_prec(a, b));
  mpfr_max(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

Real min(const Real& a, const Real& b) {
  Real r(join_prec(a, b));
  mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_min(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

Real hull(const Real& a, const Real& b) {
  Real r(join_prec(a, b));
  mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

Real log_factorial(unsigned long n, mpfr_prec_t prec) {
  Mpfr arg(prec), lo(prec), hi(prec);
  mpfr_set_ui(arg.get(), n + 1, MPFR_RNDN);
  mpfr_lngamma(lo.get(), arg.get(), MPFR_RNDD);
  mpfr_lngamma(hi.get(), arg.get(), MPFR_RNDU);
  return Real::from_bounds(lo, hi);
}

}  // namespace tcert
