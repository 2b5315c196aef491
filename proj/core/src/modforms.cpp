#include "tcert/modforms.hpp"

#include <cmath>

#include <algorithm>
#include <vector>

#include "tcert/ball.hpp"
#include "tcert/error.hpp"

namespace tcert {

CuspCoeffTable cusp_coeffs(long N, long l, long K) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "N must be positive");
  if (l < 0) throw Error(ErrorKind::InvalidArgument, "l must be non-negative");
  if (l > N) throw Error(ErrorKind::PoleNotCancelled, "J^l has a pole of order l > N at infinity");
  const long a = 2 * N - l;
  if (K < a) throw Error(ErrorKind::InvalidTruncation, "K must reach the valuation 2N - l");
  // Delta^a to trunc K+1 needs Delta to trunc K+2-a; E4^{3l} to trunc K+1-a.
  IntSeries d = delta_expansion(std::max(K + 2 - a, 2L)).pow(static_cast<unsigned long>(a));
  IntSeries f = d.truncated(K + 1);
  if (l > 0) f = (f * e4_expansion(K + 1 - a).pow(static_cast<unsigned long>(3 * l))).truncated(K + 1);
  return {N, l, std::move(f), 24 * N};
}

namespace {

constexpr long kExactTerms = 40;

// f = Delta^a E4^{3b}: exact coefficients plus a closed-form majorant.
struct Form {
  long a, b;
  IntSeries s;
  mpfr_prec_t prec;

  Real two_pi;
  Real half;
  Real g_half;

  Form(long a_, long b_, mpfr_prec_t p) : a(a_), b(b_), prec(p) {
    s = delta_expansion(kExactTerms + 1).pow(static_cast<unsigned long>(a));
    if (b > 0) s = s * e4_expansion(kExactTerms).pow(static_cast<unsigned long>(3 * b));
    s = s.truncated(std::min(s.trunc(), kExactTerms));
    two_pi = Real::pi(prec) * 2;
    half = Real::from_mpq(mpq_class(1, 2), prec);
    g_half = majorant(half);
  }

  long half_weight() const { return 6 * (a + b); }

  // Value at rho of a series with non-negative coefficients dominating |c_k|:
  // rho^a exp(24 a rho/(1-rho)^2) (1 + 2880 rho/(1-rho)^4)^{3b}.
  Real majorant(const Real& rho) const {
    Real one = Real::from_int(1, prec);
    Real om = one - rho;
    Real eta = exp(rho * (24 * a) / (om * om));
    Real e4 = one + rho * 2880 / pow(om, 4);
    return pow(rho, a) * eta * pow(e4, 3 * b);
  }

  // sum_{k >= T} |c_k| x^k <= (x / rho)^T G(rho) for x <= rho.
  Real tail(const Real& x) const {
    return (pow(x.upper_only() / half, s.trunc()) * g_half).upper_only();
  }

  // g = f / q^a on a q-ball, including the tail x^{-a} sum_{k>=T} |c_k| x^k.
  Ball eval_reduced(const Ball& q) const {
    Ball acc = Ball::from_int(0, prec);
    const auto c = s.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * q + c[k];
    Real x = q.abs().upper_only();
    Real t = (pow(x / half, s.trunc() - a) * g_half / pow(half, a)).upper_only();
    return acc.inflated(t);
  }

  // y^{w/2} e^{-2 pi a y}, unimodal with peak at y* = w / (4 pi a).
  Real envelope(const Real& y) const { return pow(y, half_weight()) * exp(-two_pi * a * y); }

  Real envelope_sup(const Real& y0, const Real& y1) const {
    Real peak = Real::from_int(half_weight(), prec) / (two_pi * a);
    Real m = max(envelope(y0), envelope(y1));
    if (!(peak.certainly_lt(y0) || y1.certainly_lt(peak))) m = max(m, envelope(peak));
    return m.upper_only();
  }

  // Upper bound of y^{w/2} |f| over the cell [x0,x1] x [y0,y1].
  Real cell_upper(const Real& x0, const Real& x1, const Real& y0, const Real& y1) const {
    Real xc = ((x0 + x1) / 2).midpoint(), yc = ((y0 + y1) / 2).midpoint();
    Real hx = (x1 - x0) / 2, hy = (y1 - y0) / 2;
    Real rho = sqrt(hx * hx + hy * hy).upper_only();
    Ball qc = Ball::polar(exp(-two_pi * yc), two_pi * xc);
    Real grow = exp(two_pi * rho) - 1;
    Ball q = qc.inflated(qc.abs().upper_only() * grow);
    return (envelope_sup(y0, y1) * eval_reduced(q).abs()).upper_only();
  }

  Real point_lower(const Real& x, const Real& y) const {
    Ball q = Ball::polar(exp(-two_pi * y), two_pi * x);
    return (envelope(y) * eval_reduced(q).abs()).lower_only();
  }
};

struct Search {
  const Form& f;
  Real best_lower;
  int max_depth;

  Real refine(const Real& x0, const Real& x1, const Real& y0, const Real& y1, int depth) {
    Real ub = f.cell_upper(x0, x1, y0, y1);
    Real lb = f.point_lower(((x0 + x1) / 2).midpoint(), ((y0 + y1) / 2).midpoint());
    if (best_lower.certainly_lt(lb)) best_lower = lb;
    if (depth >= max_depth || ub.certainly_lt(best_lower)) return ub;
    Real xm = ((x0 + x1) / 2).midpoint(), ym = ((y0 + y1) / 2).midpoint();
    Real m = refine(x0, xm, y0, ym, depth + 1);
    m = max(m, refine(xm, x1, y0, ym, depth + 1));
    m = max(m, refine(x0, xm, ym, y1, depth + 1));
    m = max(m, refine(xm, x1, ym, y1, depth + 1));
    return min(ub, m).upper_only();
  }
};

}  // namespace

Real hecke_sup_bound(long a, long b, int grid_depth, mpfr_prec_t prec) {
  if (a < 1 || b < 0) throw Error(ErrorKind::InvalidArgument, "need a cusp form Delta^a E4^{3b}");
  if (grid_depth < 0) throw Error(ErrorKind::InvalidArgument, "grid depth must be non-negative");
  Form f(a, b, prec);
  const Real two_pi = Real::pi(prec) * 2;
  const Real y_top = Real::from_int(2, prec);
  // Above Im tau = 2 the factor y^{w/2} e^{-2 pi a y} decreases once y >= w/(4 pi a).
  if (!(Real::from_int(f.half_weight(), prec) / (two_pi * a)).certainly_le(y_top)) {
    throw Error(ErrorKind::InvalidArgument, "tail argument needs the peak below Im tau = 2");
  }
  Real r0 = exp(-two_pi * 2);
  Real sum = Real::from_int(0, prec);
  const auto c = f.s.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    sum += abs(Real::from_mpz(c[k], prec)) * pow(r0, static_cast<long>(k));
  }
  sum += f.tail(r0) / pow(r0, a);
  Real tail_region = pow(y_top, f.half_weight()) * exp(-two_pi * 2 * a) * sum;

  // Initial 4 x 8 grid over [0, 1/2] x [0.866, 2].
  const Real x_lo = Real::from_int(0, prec), x_hi = Real::from_mpq(mpq_class(1, 2), prec);
  const Real y_lo = Real::from_mpq(mpq_class(433, 500), prec);
  Search search{f, Real::from_int(0, prec), grid_depth};
  Real grid = Real::from_int(0, prec);
  const long nx = 4, ny = 8;
  for (long i = 0; i < nx; ++i) {
    for (long j = 0; j < ny; ++j) {
      Real x0 = x_lo + (x_hi - x_lo) * Real::from_mpq(mpq_class(i, nx), prec);
      Real x1 = x_lo + (x_hi - x_lo) * Real::from_mpq(mpq_class(i + 1, nx), prec);
      Real y0 = y_lo + (y_top - y_lo) * Real::from_mpq(mpq_class(j, ny), prec);
      Real y1 = y_lo + (y_top - y_lo) * Real::from_mpq(mpq_class(j + 1, ny), prec);
      // Cell corners are taken as the outer ends so cells cover the rectangle.
      grid = max(grid, search.refine(x0.lower_only(), x1.upper_only(), y0.lower_only(), y1.upper_only(), 0));
    }
  }
  return (exp(two_pi) * max(grid, tail_region)).upper_only();
}

HeckeConstant estimate_hecke_constant(int grid_depth, mpfr_prec_t prec) {
  HeckeConstant h;
  h.c_delta2 = hecke_sup_bound(2, 0, grid_depth, prec);
  h.c_delta2j = hecke_sup_bound(1, 1, grid_depth, prec);
  h.c1 = max(Real::from_int(1, prec), max(h.c_delta2, h.c_delta2j)).upper_only();
  h.grid_depth = grid_depth;
  h.precision = prec;
  return h;
}

HeckeReport certify_hecke(const CuspCoeffTable& table, const Real& c1) {
  HeckeReport rep;
  const mpfr_prec_t p = c1.prec();
  Real c1n = pow(c1.lower_only(), table.N);
  rep.max_ratio = Real::from_int(0, p);
  const auto c = table.coeffs.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const long k = table.coeffs.valuation() + static_cast<long>(i);
    if (k < 1 || c[i] == 0) continue;
    Real ratio = abs(Real::from_mpz(c[i], p)) / (c1n * pow(Real::from_int(k, p), 12 * table.N));
    if (!ratio.certainly_le(Real::from_int(1, p))) ++rep.violations;
    if (mpfr_greater_p(ratio.hi().get(), rep.max_ratio.hi().get())) {
      rep.max_ratio = ratio;
      rep.argmax_k = k;
    }
  }
  rep.pass = rep.violations == 0;
  return rep;
}

nlohmann::json to_json(const HeckeConstant& h) {
  return {{"c_delta2", h.c_delta2.hi_string(12)},
          {"c_delta2j", h.c_delta2j.hi_string(12)},
          {"c1", h.c1.hi_string(12)},
          {"grid_depth", h.grid_depth},
          {"precision", h.precision}};
}

HeckeConstant hecke_constant_from_json(const nlohmann::json& j) {
  HeckeConstant h;
  h.precision = j.at("precision").get<long>();
  h.grid_depth = j.at("grid_depth").get<int>();
  auto up = [&](const char* key) { return Real::from_decimal(j.at(key).get<std::string>(), h.precision).upper_only(); };
  h.c_delta2 = up("c_delta2");
  h.c_delta2j = up("c_delta2j");
  h.c1 = up("c1");
  return h;
}

namespace {

Real require_inside(const Ball& z) {
  Real R = z.abs().upper_only();
  if (!R.certainly_lt(Real::from_int(1, z.prec()))) {
    throw Error(ErrorKind::CannotCertify, "evaluation disc touches the unit circle");
  }
  return R;
}

// Smallest K with R^K below 2^-(prec+extra); the caller adds a tail bound.
long product_cutoff(const Real& R, long extra) {
  double r = R.upper();
  if (r <= 0) return 1;
  double bits = static_cast<double>(R.prec() + extra);
  long k = static_cast<long>(std::ceil(bits * std::log(2.0) / -std::log(r))) + 1;
  return std::max<long>(k, 1);
}

}  // namespace

Ball eta24_product(const Ball& z) {
  const mpfr_prec_t p = z.prec();
  Real R = require_inside(z);
  const long K = product_cutoff(R, 16);
  // Euler: prod (1 - z^n) = sum_k (-1)^k z^{k(3k-1)/2} over all integers k.
  std::vector<std::pair<long, int>> terms{{0, 1}};
  for (long k = 1;; ++k) {
    long e1 = k * (3 * k - 1) / 2;
    if (e1 > K) break;
    int sign = (k % 2) ? -1 : 1;
    terms.emplace_back(e1, sign);
    long e2 = k * (3 * k + 1) / 2;
    if (e2 <= K) terms.emplace_back(e2, sign);
  }
  Ball acc = Ball::from_int(0, p);
  Ball zp = Ball::from_int(1, p);
  long at = 0;
  for (const auto& [e, sign] : terms) {
    zp *= z.pow(static_cast<unsigned long>(e - at));
    at = e;
    acc = sign > 0 ? acc + zp : acc - zp;
  }
  // Omitted exponents exceed K: at most R^{K+1} / (1 - R).
  Real one = Real::from_int(1, p);
  acc = acc.inflated((pow(R, K + 1) / (one - R)).upper_only());
  return acc.pow(24);
}

Ball delta_value(const Ball& z) { return z * eta24_product(z); }

Ball e4_value(const Ball& z) {
  const mpfr_prec_t p = z.prec();
  Real R = require_inside(z);
  const long K = product_cutoff(R, 64);
  std::vector<long> sigma3(static_cast<std::size_t>(K) + 1, 0);
  for (long d = 1; d <= K; ++d) {
    for (long m = d; m <= K; m += d) sigma3[static_cast<std::size_t>(m)] += d * d * d;
  }
  Ball acc = Ball::from_int(0, p);
  for (long n = K; n >= 1; --n) acc = (acc + mpz_class(sigma3[static_cast<std::size_t>(n)])) * z;
  // sigma_3(n) <= zeta(3) n^3 < (5/4) n^3, so the tail is at most
  // (5/4)(K+1)^3 R^{K+1} / (1 - rho) with rho = ((K+2)/(K+1))^3 R.
  Real one = Real::from_int(1, p);
  Real rho = pow(Real::from_mpq(mpq_class(K + 2, K + 1), p), 3) * R;
  if (!rho.certainly_lt(one)) throw Error(ErrorKind::CannotCertify, "E4 tail bound diverges");
  Real tail = Real::from_mpq(mpq_class(5, 4), p) * pow(Real::from_int(K + 1, p), 3) * pow(R, K + 1) / (one - rho);
  return (acc * mpz_class(240) + mpz_class(1)).inflated((tail * 240).upper_only());
}

}  // namespace tcert
