#include "tcert/ball.hpp"

#include <algorithm>

#include "tcert/error.hpp"

namespace tcert {

namespace {

Real point(const Mpfr& x) { return Real::from_bounds(x, x); }

}  // namespace

Ball::Ball(mpfr_prec_t prec) : re_(prec), im_(prec), rad_(prec) {}

Ball Ball::from_rect(const Real& re, const Real& im, const Mpfr& extra) {
  const mpfr_prec_t p = std::max(re.prec(), im.prec());
  Ball b(p);
  Real mre = re.midpoint();
  Real mim = im.midpoint();
  mpfr_set(b.re_.get(), mre.lo().get(), MPFR_RNDN);
  mpfr_set(b.im_.get(), mim.lo().get(), MPFR_RNDN);
  // Half-widths measured from the chosen centre, rounded up.
  Mpfr t1(p), t2(p), rr(p), ri(p);
  mpfr_sub(t1.get(), re.hi().get(), b.re_.get(), MPFR_RNDU);
  mpfr_sub(t2.get(), b.re_.get(), re.lo().get(), MPFR_RNDU);
  mpfr_max(rr.get(), t1.get(), t2.get(), MPFR_RNDU);
  mpfr_sub(t1.get(), im.hi().get(), b.im_.get(), MPFR_RNDU);
  mpfr_sub(t2.get(), b.im_.get(), im.lo().get(), MPFR_RNDU);
  mpfr_max(ri.get(), t1.get(), t2.get(), MPFR_RNDU);
  mpfr_hypot(b.rad_.get(), rr.get(), ri.get(), MPFR_RNDU);
  mpfr_add(b.rad_.get(), b.rad_.get(), extra.get(), MPFR_RNDU);
  if (mpfr_nan_p(b.rad_.get())) mpfr_set_inf(b.rad_.get(), 1);
  return b;
}

Ball Ball::from_real(const Real& re) { return from_parts(re, Real(re.prec())); }

Ball Ball::from_parts(const Real& re, const Real& im) {
  return from_rect(re, im, Mpfr(std::max(re.prec(), im.prec())));
}

Ball Ball::from_int(long v, mpfr_prec_t prec) { return from_real(Real::from_int(v, prec)); }

Ball Ball::from_mpq(const mpq_class& re, const mpq_class& im, mpfr_prec_t prec) {
  return from_parts(Real::from_mpq(re, prec), Real::from_mpq(im, prec));
}

Ball Ball::polar(const Real& radius, const Real& angle) {
  return from_parts(radius * cos(angle), radius * sin(angle));
}

bool Ball::is_whole() const { return mpfr_inf_p(rad_.get()) || mpfr_nan_p(rad_.get()); }

Real Ball::re() const {
  Mpfr lo(prec()), hi(prec());
  mpfr_sub(lo.get(), re_.get(), rad_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), re_.get(), rad_.get(), MPFR_RNDU);
  return Real::from_bounds(lo, hi);
}

Real Ball::im() const {
  Mpfr lo(prec()), hi(prec());
  mpfr_sub(lo.get(), im_.get(), rad_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), im_.get(), rad_.get(), MPFR_RNDU);
  return Real::from_bounds(lo, hi);
}

Real Ball::mid_abs() const {
  Mpfr lo(prec()), hi(prec());
  mpfr_hypot(lo.get(), re_.get(), im_.get(), MPFR_RNDD);
  mpfr_hypot(hi.get(), re_.get(), im_.get(), MPFR_RNDU);
  return Real::from_bounds(lo, hi);
}

Real Ball::abs() const {
  Real m = mid_abs();
  Mpfr lo(prec()), hi(prec());
  mpfr_sub(lo.get(), m.lo().get(), rad_.get(), MPFR_RNDD);
  if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo.get(), 1);
  mpfr_add(hi.get(), m.hi().get(), rad_.get(), MPFR_RNDU);
  return Real::from_bounds(lo, hi);
}

Real Ball::radius() const { return point(rad_); }

bool Ball::contains_zero() const {
  Real m = mid_abs();
  return mpfr_lessequal_p(m.lo().get(), rad_.get());
}

bool Ball::contains(const Ball& o) const {
  // |mid - o.mid| + o.rad <= rad
  Real d = (Ball::from_parts(point(re_), point(im_)) - Ball::from_parts(point(o.re_), point(o.im_))).abs();
  Mpfr need(prec());
  mpfr_add(need.get(), d.hi().get(), o.rad_.get(), MPFR_RNDU);
  return mpfr_lessequal_p(need.get(), rad_.get());
}

bool Ball::overlaps(const Ball& o) const {
  Real d = (Ball::from_parts(point(re_), point(im_)) - Ball::from_parts(point(o.re_), point(o.im_))).abs();
  Mpfr reach(prec());
  mpfr_add(reach.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
  return mpfr_lessequal_p(d.lo().get(), reach.get());
}

Ball Ball::inflated(const Real& extra) const {
  Ball b(*this);
  mpfr_add(b.rad_.get(), b.rad_.get(), tcert::abs(extra).hi().get(), MPFR_RNDU);
  return b;
}

Ball Ball::mid_only() const {
  Ball b(*this);
  mpfr_set_zero(b.rad_.get(), 1);
  return b;
}

Ball Ball::conj() const {
  Ball b(*this);
  mpfr_neg(b.im_.get(), b.im_.get(), MPFR_RNDN);
  return b;
}

Ball Ball::with_prec(mpfr_prec_t p) const {
  return from_rect(re().with_prec(p), im().with_prec(p), Mpfr(p));
}

Ball Ball::operator-() const {
  Ball b(*this);
  mpfr_neg(b.re_.get(), b.re_.get(), MPFR_RNDN);
  mpfr_neg(b.im_.get(), b.im_.get(), MPFR_RNDN);
  return b;
}

namespace {

// Stores the downward-rounded value in `mid` and adds the rounding gap to `err`.
template <class Op>
void rounded(mpfr_ptr mid, mpfr_ptr err, mpfr_ptr scratch, Op op) {
  op(mid, MPFR_RNDD);
  op(scratch, MPFR_RNDU);
  mpfr_sub(scratch, scratch, mid, MPFR_RNDU);
  mpfr_add(err, err, scratch, MPFR_RNDU);
}

void mid_abs_up(mpfr_ptr out, const Mpfr& re, const Mpfr& im) {
  mpfr_sqr(out, re.get(), MPFR_RNDU);
  mpfr_fma(out, im.get(), im.get(), out, MPFR_RNDU);
  mpfr_sqrt(out, out, MPFR_RNDU);
}

}  // namespace

Ball operator+(const Ball& a, const Ball& b) {
  const mpfr_prec_t p = std::max(a.prec(), b.prec());
  Ball c(p);
  Mpfr t(p);
  mpfr_add(c.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  rounded(c.re_.get(), c.rad_.get(), t.get(), [&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_add(r, a.re_.get(), b.re_.get(), m); });
  rounded(c.im_.get(), c.rad_.get(), t.get(), [&](mpfr_ptr r, mpfr_rnd_t m) { mpfr_add(r, a.im_.get(), b.im_.get(), m); });
  if (mpfr_nan_p(c.rad_.get())) mpfr_set_inf(c.rad_.get(), 1);
  return c;
}

Ball operator-(const Ball& a, const Ball& b) { return a + (-b); }

Ball operator*(const Ball& a, const Ball& b) {
  const mpfr_prec_t p = std::max(a.prec(), b.prec());
  Ball c(p);
  Mpfr t(p), u(p);
  // |ma| rb + |mb| ra + ra rb
  mid_abs_up(t.get(), a.re_, a.im_);
  mpfr_mul(c.rad_.get(), t.get(), b.rad_.get(), MPFR_RNDU);
  mid_abs_up(t.get(), b.re_, b.im_);
  mpfr_mul(t.get(), t.get(), a.rad_.get(), MPFR_RNDU);
  mpfr_add(c.rad_.get(), c.rad_.get(), t.get(), MPFR_RNDU);
  mpfr_mul(t.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
  mpfr_add(c.rad_.get(), c.rad_.get(), t.get(), MPFR_RNDU);
  rounded(c.re_.get(), c.rad_.get(), u.get(), [&](mpfr_ptr r, mpfr_rnd_t m) {
    mpfr_fmms(r, a.re_.get(), b.re_.get(), a.im_.get(), b.im_.get(), m);
  });
  rounded(c.im_.get(), c.rad_.get(), u.get(), [&](mpfr_ptr r, mpfr_rnd_t m) {
    mpfr_fmma(r, a.re_.get(), b.im_.get(), a.im_.get(), b.re_.get(), m);
  });
  if (mpfr_nan_p(c.rad_.get())) mpfr_set_inf(c.rad_.get(), 1);
  return c;
}

Ball operator*(const Ball& a, const Real& s) {
  const mpfr_prec_t p = std::max(a.prec(), s.prec());
  Real sm = s.midpoint();
  Real re = point(a.re_) * sm;
  Real im = point(a.im_) * sm;
  // |s| ra + |ma| * halfwidth(s)
  Real as = tcert::abs(s);
  Real sw = s.radius();
  Mpfr extra(p), t(p);
  mpfr_mul(extra.get(), as.hi().get(), a.rad_.get(), MPFR_RNDU);
  mpfr_mul(t.get(), a.mid_abs().hi().get(), sw.hi().get(), MPFR_RNDU);
  mpfr_add(extra.get(), extra.get(), t.get(), MPFR_RNDU);
  return Ball::from_rect(re, im, extra);
}

Ball operator+(const Ball& a, const mpz_class& c) {
  Ball r(a);
  Mpfr t(a.prec());
  rounded(r.re_.get(), r.rad_.get(), t.get(), [&](mpfr_ptr o, mpfr_rnd_t m) { mpfr_add_z(o, a.re_.get(), c.get_mpz_t(), m); });
  return r;
}

Ball operator*(const Ball& a, const mpz_class& c) {
  Ball r(a.prec());
  Mpfr t(a.prec());
  mpz_class ac = abs(c);
  mpfr_mul_z(r.rad_.get(), a.rad_.get(), ac.get_mpz_t(), MPFR_RNDU);
  rounded(r.re_.get(), r.rad_.get(), t.get(), [&](mpfr_ptr o, mpfr_rnd_t m) { mpfr_mul_z(o, a.re_.get(), c.get_mpz_t(), m); });
  rounded(r.im_.get(), r.rad_.get(), t.get(), [&](mpfr_ptr o, mpfr_rnd_t m) { mpfr_mul_z(o, a.im_.get(), c.get_mpz_t(), m); });
  if (mpfr_nan_p(r.rad_.get())) mpfr_set_inf(r.rad_.get(), 1);
  return r;
}

Ball Ball::reciprocal() const {
  Real m = mid_abs();
  if (!mpfr_greater_p(m.lo().get(), rad_.get())) {
    throw Error(ErrorKind::PrecisionInsufficient, "reciprocal of a ball containing zero");
  }
  Real re = point(re_), im = point(im_);
  Real n2 = re * re + im * im;
  Real rre = re / n2;
  Real rim = -im / n2;
  // |1/(m+e) - 1/m| <= r / (|m| (|m| - r))
  Mpfr extra(prec()), denom(prec());
  mpfr_sub(denom.get(), m.lo().get(), rad_.get(), MPFR_RNDD);
  mpfr_mul(denom.get(), denom.get(), m.lo().get(), MPFR_RNDD);
  mpfr_div(extra.get(), rad_.get(), denom.get(), MPFR_RNDU);
  return from_rect(rre, rim, extra);
}

Ball operator/(const Ball& a, const Ball& b) { return a * b.reciprocal(); }

Ball Ball::pow(unsigned long n) const {
  Ball result = Ball::from_int(1, prec());
  Ball base = *this;
  while (n > 0) {
    if (n & 1UL) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

}  // namespace tcert
