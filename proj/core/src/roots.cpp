#include "tcert/roots.hpp"

#include <algorithm>
#include <cmath>

#include "tcert/error.hpp"

namespace tcert {

namespace {

// Upper bound for root moduli (Fujiwara), as a double.
double root_radius(const ZPoly& f) {
  const long n = f.degree();
  const double ln_lead = std::log(std::fabs(f.lead().get_d()) + 0.0);
  double best = 0;
  for (long k = 1; k <= n; ++k) {
    const mpz_class& c = f.coeffs()[static_cast<std::size_t>(n - k)];
    if (c == 0) continue;
    long e = 0;
    const double m = mpz_get_d_2exp(&e, c.get_mpz_t());
    const double ln_c = std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
    double r = (ln_c - ln_lead) / static_cast<double>(k);
    if (k == n) r -= std::log(2.0) / static_cast<double>(n);
    best = std::max(best, r);
  }
  return 2.0 * std::exp(best);
}

bool aberth(const ZPoly& f, const ZPoly& df, std::vector<Ball>& z, mpfr_prec_t prec) {
  const std::size_t n = z.size();
  Mpfr tol(prec);
  mpfr_set_ui_2exp(tol.get(), 1, -(static_cast<long>(prec) - 8), MPFR_RNDN);
  for (int iter = 0; iter < 2000; ++iter) {
    bool converged = true;
    for (std::size_t i = 0; i < n; ++i) {
      Ball fz = f.eval(z[i]).mid_only();
      if (!fz.contains_zero() || !mpfr_zero_p(fz.mid_re().get()) || !mpfr_zero_p(fz.mid_im().get())) {
        Ball dz = df.eval(z[i]).mid_only();
        Ball sum = Ball::from_int(0, prec);
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          Ball d = (z[i] - z[j]).mid_only();
          if (d.contains_zero()) return false;
          sum = (sum + d.reciprocal()).mid_only();
        }
        if (dz.contains_zero()) {
          z[i] = (z[i] + Ball::from_mpq(mpq_class(1, 1000), mpq_class(1, 997), prec)).mid_only();
          converged = false;
          continue;
        }
        Ball ratio = (fz / dz).mid_only();
        Ball denom = (Ball::from_int(1, prec) - ratio * sum).mid_only();
        if (denom.contains_zero()) return false;
        Ball w = (ratio / denom).mid_only();
        z[i] = (z[i] - w).mid_only();
        Real wa = w.abs();
        Real za = z[i].abs();
        Mpfr scale(prec);
        mpfr_max(scale.get(), za.hi().get(), tol.get(), MPFR_RNDU);
        mpfr_mul(scale.get(), scale.get(), tol.get(), MPFR_RNDU);
        if (mpfr_greater_p(wa.hi().get(), scale.get())) converged = false;
      }
    }
    if (converged) return true;
  }
  return false;
}

// Inclusion discs of radius n |W_i| around the approximations; disjoint discs
// each contain exactly one root.
bool certify(const ZPoly& f, const std::vector<Ball>& z, std::vector<Ball>& out) {
  const std::size_t n = z.size();
  const mpfr_prec_t prec = z.empty() ? kDefaultPrecision : z[0].prec();
  std::vector<Real> rad;
  Real lead = Real::from_mpz(f.lead(), prec);
  for (std::size_t i = 0; i < n; ++i) {
    Ball denom = Ball::from_real(lead);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) denom = denom * (z[i] - z[j]);
    }
    if (denom.contains_zero()) return false;
    Ball w = f.eval(z[i]) / denom;
    rad.push_back(w.abs().upper_only() * static_cast<long>(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Real d = (z[i] - z[j]).abs();
      if (!(rad[i] + rad[j]).certainly_lt(d)) return false;
    }
  }
  out.clear();
  for (std::size_t i = 0; i < n; ++i) out.push_back(z[i].inflated(rad[i]));
  return true;
}

}  // namespace

std::vector<Ball> isolate_roots(const ZPoly& f, mpfr_prec_t prec, mpfr_prec_t max_prec) {
  const long n = f.degree();
  if (n < 1) return {};
  if (gcd(f, f.derivative()).degree() > 0) {
    throw Error(ErrorKind::InvalidArgument, "root isolation needs a squarefree polynomial");
  }
  if (n == 1) {
    mpq_class r(-f.coeffs()[0], f.coeffs()[1]);
    r.canonicalize();
    return {Ball::from_mpq(r, 0, prec)};
  }
  const ZPoly df = f.derivative();
  const double R = root_radius(f);
  std::vector<Ball> z;
  for (mpfr_prec_t p = prec; p <= max_prec; p *= 2) {
    if (z.empty()) {
      Real radius = Real::from_double(R, p).midpoint();
      for (long k = 0; k < n; ++k) {
        Real angle = Real::pi(p) * Real::from_mpq(mpq_class(2 * k, n), p) + Real::from_decimal("0.4", p);
        z.push_back(Ball::polar(radius, angle).mid_only());
      }
    } else {
      for (auto& b : z) b = b.with_prec(p).mid_only();
    }
    if (!aberth(f, df, z, p)) {
      z.clear();
      continue;
    }
    std::vector<Ball> out;
    if (certify(f, z, out)) return out;
  }
  throw Error(ErrorKind::PrecisionInsufficient, "root isolation failed at maximal precision");
}

std::vector<mpq_class> rational_roots(const ZPoly& f) {
  std::vector<mpq_class> out;
  if (f.degree() < 1) return out;
  ZPoly g = squarefree_part(f);
  // Strip the root 0 first so the remaining constant term is nonzero.
  if (g.coeffs()[0] == 0) {
    out.emplace_back(0);
    std::vector<mpz_class> v(g.coeffs().begin() + 1, g.coeffs().end());
    g = ZPoly(std::move(v));
  }
  if (g.degree() >= 1) {
    for (const Ball& b : isolate_roots(g)) {
      if (!b.im().contains_zero()) continue;
      // A rational root a/b in lowest terms has b | lead, so lead*root is an integer.
      Real scaled = b.re() * Real::from_mpz(g.lead(), b.prec());
      Mpfr m(b.prec());
      mpfr_round(m.get(), scaled.midpoint().lo().get());
      mpz_class k;
      mpfr_get_z(k.get_mpz_t(), m.get(), MPFR_RNDN);
      mpq_class cand(k, g.lead());
      cand.canonicalize();
      if (g.eval(cand) == 0) out.push_back(cand);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace tcert
