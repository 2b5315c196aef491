#include "tcert/numerics.hpp"

#include "tcert/error.hpp"

namespace tcert {

Real schwarz_tail_majorant(unsigned long M, unsigned long K, const Real& r) {
  if (!r.is_positive() || !r.certainly_lt(Real::from_int(1, r.prec()))) {
    throw Error(ErrorKind::Divergence, "majorant needs 0 < r < 1");
  }
  const mpfr_prec_t p = r.prec();
  Real one_minus = Real::from_int(1, p) - r.upper_only();
  Real num = pow(Real::from_int(static_cast<long>(M) + 1, p), static_cast<long>(K)) *
             exp(log_factorial(K, p));
  return (num / pow(one_minus, static_cast<long>(K) + 1)).upper_only();
}

Real hecke_tail_bound(const HeckeTail& tail, long T, const Real& R) {
  const mpfr_prec_t p = std::max(R.prec(), tail.c1.prec());
  const Real one = Real::from_int(1, p);
  if (!R.certainly_lt(one)) throw Error(ErrorKind::CannotCertify, "tail bound needs |z| < 1");
  if (T < 1) T = 1;
  const long m = 12 * static_cast<long>(tail.N);
  Real r = R.upper_only();
  if (mpfr_zero_p(r.hi().get())) return Real::from_int(0, p);
  Real b = tail.scale * pow(tail.c1, static_cast<long>(tail.N));
  // Schwarz form: R^T sum (T+n)^m R^n.
  Real best = b * pow(r, T) * schwarz_tail_majorant(static_cast<unsigned long>(T), static_cast<unsigned long>(m), r);
  // Geometric form: consecutive ratio at most ((T+1)/T)^m R.
  Real rho = pow(Real::from_mpq(mpq_class(T + 1, T), p), m) * r;
  if (rho.certainly_lt(one)) {
    Real geo = b * pow(Real::from_int(T, p), m) * pow(r, T) / (one - rho);
    if (geo.certainly_lt(best)) best = geo;
  }
  return best.upper_only();
}

SeriesValue eval_series_certified(const IntSeries& s, const Ball& z, const std::optional<HeckeTail>& tail) {
  const mpfr_prec_t p = z.prec();
  SeriesValue out{Ball::from_int(0, p), !tail.has_value()};
  Real R = z.abs();
  if (tail) {
    if (!R.certainly_lt(Real::from_int(1, p))) {
      throw Error(ErrorKind::CannotCertify, "evaluation disc touches the unit circle");
    }
    if (s.valuation() < 0) throw Error(ErrorKind::InvalidArgument, "tail model needs a power series");
  }
  if (!s.is_zero()) {
    Ball acc = Ball::from_int(0, p);
    const auto c = s.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    if (s.valuation() > 0) {
      acc = acc * z.pow(static_cast<unsigned long>(s.valuation()));
    } else if (s.valuation() < 0) {
      acc = acc * z.reciprocal().pow(static_cast<unsigned long>(-s.valuation()));
    }
    out.value = acc;
  }
  if (tail) out.value = out.value.inflated(hecke_tail_bound(*tail, s.trunc(), R));
  return out;
}

}  // namespace tcert
