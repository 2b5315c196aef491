#pragma once

#include <gmpxx.h>

#include "tcert/real.hpp"

namespace tcert {

/// Certified complex disc: the exact value lies within `rad` of `mid`.
/// Arithmetic returns discs containing the image of every point of the
/// operand discs. A disc whose radius overflows is flagged whole-plane.
class Ball {
 public:
  explicit Ball(mpfr_prec_t prec = kDefaultPrecision);

  static Ball from_real(const Real& re);
  static Ball from_parts(const Real& re, const Real& im);
  static Ball from_int(long v, mpfr_prec_t prec = kDefaultPrecision);
  static Ball from_mpq(const mpq_class& re, const mpq_class& im, mpfr_prec_t prec = kDefaultPrecision);
  /// radius * (cos angle + i sin angle)
  static Ball polar(const Real& radius, const Real& angle);

  mpfr_prec_t prec() const { return re_.prec(); }
  const Mpfr& mid_re() const { return re_; }
  const Mpfr& mid_im() const { return im_; }
  const Mpfr& rad() const { return rad_; }
  bool is_whole() const;

  Real re() const;
  Real im() const;
  Real abs() const;
  /// Upper bound of the radius as a degenerate interval.
  Real radius() const;
  bool contains_zero() const;
  bool contains(const Ball& o) const;
  bool overlaps(const Ball& o) const;

  Ball inflated(const Real& extra) const;
  Ball mid_only() const;
  Ball conj() const;
  Ball with_prec(mpfr_prec_t prec) const;

  Ball operator-() const;
  friend Ball operator+(const Ball& a, const Ball& b);
  friend Ball operator-(const Ball& a, const Ball& b);
  friend Ball operator*(const Ball& a, const Ball& b);
  friend Ball operator/(const Ball& a, const Ball& b);
  friend Ball operator*(const Ball& a, const Real& s);
  friend Ball operator*(const Real& s, const Ball& a) { return a * s; }
  friend Ball operator+(const Ball& a, const mpz_class& c);
  friend Ball operator*(const Ball& a, const mpz_class& c);
  Ball& operator+=(const Ball& o) { return *this = *this + o; }
  Ball& operator-=(const Ball& o) { return *this = *this - o; }
  Ball& operator*=(const Ball& o) { return *this = *this * o; }

  Ball reciprocal() const;
  Ball pow(unsigned long n) const;

 private:
  static Ball from_rect(const Real& re, const Real& im, const Mpfr& extra);
  Real mid_abs() const;

  Mpfr re_;
  Mpfr im_;
  Mpfr rad_;
};

}  // namespace tcert
