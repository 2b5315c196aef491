#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace tcert {

inline constexpr mpfr_prec_t kDefaultPrecision = 128;

/// Owning RAII handle for an mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec = kDefaultPrecision) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Mpfr(const Mpfr& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Mpfr(Mpfr&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Mpfr& operator=(const Mpfr& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Mpfr& operator=(Mpfr&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Mpfr() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

 private:
  mpfr_t v_;
};

/// Decimal rendering of an mpfr value with the given rounding direction.
std::string to_decimal(const Mpfr& x, mpfr_rnd_t rnd, int digits = 20);

/// Closed real interval [lo, hi] with outward rounding. This is the
/// "certified real" used throughout: every operation returns an interval
/// containing the exact image of its operands.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = kDefaultPrecision);

  static Real from_int(long v, mpfr_prec_t prec = kDefaultPrecision);
  static Real from_mpz(const mpz_class& v, mpfr_prec_t prec = kDefaultPrecision);
  static Real from_mpq(const mpq_class& v, mpfr_prec_t prec = kDefaultPrecision);
  static Real from_double(double v, mpfr_prec_t prec = kDefaultPrecision);
  /// Encloses the exact value of a decimal literal such as "0.5" or "1e-3".
  static Real from_decimal(const std::string& text, mpfr_prec_t prec = kDefaultPrecision);
  static Real from_bounds(const Mpfr& lo, const Mpfr& hi);
  static Real pi(mpfr_prec_t prec = kDefaultPrecision);
  static Real log2(mpfr_prec_t prec = kDefaultPrecision);

  const Mpfr& lo() const { return lo_; }
  const Mpfr& hi() const { return hi_; }
  mpfr_prec_t prec() const { return lo_.prec(); }

  double lower() const;
  double upper() const;
  double approx() const;
  Real with_prec(mpfr_prec_t prec) const;

  bool contains_zero() const;
  bool contains(const Real& o) const;
  bool overlaps(const Real& o) const;
  bool is_positive() const;
  bool is_negative() const;
  bool is_nonnegative() const;
  bool is_finite() const;
  /// hi < o.lo
  bool certainly_lt(const Real& o) const;
  /// hi <= o.lo
  bool certainly_le(const Real& o) const;

  Real midpoint() const;
  Real radius() const;
  Real width() const;
  Real upper_only() const;  // [hi, hi]
  Real lower_only() const;  // [lo, lo]

  Real operator-() const;
  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator+(const Real& a, long b) { return a + Real::from_int(b, a.prec()); }
  friend Real operator-(const Real& a, long b) { return a - Real::from_int(b, a.prec()); }
  friend Real operator*(const Real& a, long b) { return a * Real::from_int(b, a.prec()); }
  friend Real operator/(const Real& a, long b) { return a / Real::from_int(b, a.prec()); }
  friend Real operator+(long a, const Real& b) { return Real::from_int(a, b.prec()) + b; }
  friend Real operator-(long a, const Real& b) { return Real::from_int(a, b.prec()) - b; }
  friend Real operator*(long a, const Real& b) { return Real::from_int(a, b.prec()) * b; }
  friend Real operator/(long a, const Real& b) { return Real::from_int(a, b.prec()) / b; }

  std::string lo_string(int digits = 20) const { return to_decimal(lo_, MPFR_RNDD, digits); }
  std::string hi_string(int digits = 20) const { return to_decimal(hi_, MPFR_RNDU, digits); }

 private:
  friend Real abs(const Real&);
  friend Real sqrt(const Real&);
  friend Real exp(const Real&);
  friend Real log(const Real&);
  friend Real sin(const Real&);
  friend Real cos(const Real&);
  friend Real pow(const Real&, long);
  friend Real max(const Real&, const Real&);
  friend Real min(const Real&, const Real&);
  friend Real hull(const Real&, const Real&);

  Mpfr lo_;
  Mpfr hi_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
/// Throws PrecisionInsufficient when the interval reaches zero or below.
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real pow(const Real& x, long n);
/// x^y for x > 0.
Real pow(const Real& x, const Real& y);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);
Real hull(const Real& a, const Real& b);
/// log(n!) enclosed via lgamma with directed rounding.
Real log_factorial(unsigned long n, mpfr_prec_t prec = kDefaultPrecision);

}  // namespace tcert
