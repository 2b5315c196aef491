#include "tcert/auxfn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tcert/error.hpp"
#include "tcert/modforms.hpp"
#include "tcert/upoly.hpp"

namespace tcert {

mpz_class AuxPolynomial::length() const {
  mpz_class s = 0;
  for (const auto& row : a) {
    for (const auto& c : row) s += abs(c);
  }
  return s;
}

mpz_class AuxPolynomial::height() const {
  mpz_class h = 0;
  for (const auto& row : a) {
    for (const auto& c : row) h = std::max<mpz_class>(h, abs(c));
  }
  return h;
}

bool AuxPolynomial::is_zero() const {
  for (const auto& row : a) {
    for (const auto& c : row) {
      if (c != 0) return false;
    }
  }
  return true;
}

Real default_c1(mpfr_prec_t prec) { return Real::from_decimal("7.7834634", prec).upper_only(); }

namespace {

std::vector<CuspCoeffTable> tables_for(long N, long K) {
  std::vector<CuspCoeffTable> t;
  t.reserve(static_cast<std::size_t>(N));
  for (long l = 0; l < N; ++l) t.push_back(cusp_coeffs(N, l, std::max(K, 2 * N - l)));
  return t;
}

void require_poly(const AuxPolynomial& p) {
  if (p.N < 1 || static_cast<long>(p.a.size()) != p.N) {
    throw Error(ErrorKind::InvalidArgument, "coefficient grid must be N x N");
  }
  for (const auto& row : p.a) {
    if (static_cast<long>(row.size()) != p.N) throw Error(ErrorKind::InvalidArgument, "coefficient grid must be N x N");
  }
}

}  // namespace

IntMatrix auxiliary_system(long N, long L) {
  if (N < 1 || L < 1) throw Error(ErrorKind::InvalidArgument, "system needs N, L >= 1");
  auto tabs = tables_for(N, L - 1);
  IntMatrix m(static_cast<std::size_t>(L), std::vector<mpz_class>(static_cast<std::size_t>(N * N)));
  for (long nu = 0; nu < L; ++nu) {
    for (long i = 0; i <= std::min(nu, N - 1); ++i) {
      for (long l = 0; l < N; ++l) {
        m[static_cast<std::size_t>(nu)][static_cast<std::size_t>(i * N + l)] = tabs[static_cast<std::size_t>(l)].coeffs.coeff(nu - i);
      }
    }
  }
  return m;
}

IntSeries assemble_from_tables(const AuxPolynomial& poly, long trunc) {
  require_poly(poly);
  const long N = poly.N;
  auto tabs = tables_for(N, trunc - 1);
  std::vector<mpz_class> out(static_cast<std::size_t>(trunc));
  for (long l = 0; l < N; ++l) {
    const IntSeries& c = tabs[static_cast<std::size_t>(l)].coeffs;
    for (long i = 0; i < N; ++i) {
      const mpz_class& a = poly.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
      if (a == 0) continue;
      for (long k = c.valuation(); k + i < trunc; ++k) {
        out[static_cast<std::size_t>(k + i)] += a * c.coeff(k);
      }
    }
  }
  return IntSeries::from_coeffs(0, trunc, std::move(out));
}

IntSeries assemble_direct(const AuxPolynomial& poly, long trunc) {
  require_poly(poly);
  const long N = poly.N;
  const long T = trunc + 2 * N + 2;
  IntSeries J = j_expansion(T);
  IntSeries D = delta_expansion(T).pow(static_cast<unsigned long>(2 * N));
  auto row_poly = [&](long l) {
    std::vector<mpz_class> c(static_cast<std::size_t>(T));
    for (long i = 0; i < N; ++i) c[static_cast<std::size_t>(i)] = poly.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
    return IntSeries::from_coeffs(0, T, std::move(c));
  };
  IntSeries acc = row_poly(N - 1);
  for (long l = N - 2; l >= 0; --l) acc = acc * J + row_poly(l);
  IntSeries F = D * acc;
  if (F.trunc() < trunc) throw Error(ErrorKind::InternalInvariant, "direct assembly lost precision");
  return F.truncated(trunc);
}

AuxFunction make_aux_function(const AuxPolynomial& poly, long trunc, const Real& c1) {
  require_poly(poly);
  if (poly.is_zero()) throw Error(ErrorKind::InvalidArgument, "auxiliary polynomial is zero");
  AuxFunction f;
  f.poly = poly;
  f.N = poly.N;
  f.L = poly.N * poly.N / 2;
  f.c1 = c1;
  f.series = assemble_from_tables(poly, trunc);
  auto M = vanishing_order(f.series);
  if (!M) {
    throw Error(ErrorKind::IncreaseTruncation,
                "F vanishes through q^" + std::to_string(trunc - 1) + "; increase the truncation");
  }
  f.M = *M;
  f.d0 = f.series.coeff(f.M);
  return f;
}

AuxFunction build_auxiliary(long N, const AuxOptions& opts) {
  if (N < 2) throw Error(ErrorKind::InvalidArgument, "build_auxiliary needs N >= 2");
  const long L = N * N / 2;
  const long margin = opts.margin > 0 ? opts.margin : 4 * N;
  const long trunc = opts.trunc > 0 ? opts.trunc : L + margin + 16;
  if (trunc <= L + margin) {
    throw Error(ErrorKind::InvalidTruncation, "trunc must exceed L + margin = " + std::to_string(L + margin));
  }
  IntMatrix m = auxiliary_system(N, L);
  KernelResult kr = kernel_small_vector(m, opts.siegel);
  if (!in_kernel(m, kr.vector)) throw Error(ErrorKind::InternalInvariant, "solver returned a non-kernel vector");
  AuxPolynomial poly;
  poly.N = N;
  poly.a.assign(static_cast<std::size_t>(N), std::vector<mpz_class>(static_cast<std::size_t>(N)));
  for (long i = 0; i < N; ++i) {
    for (long l = 0; l < N; ++l) poly.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] = kr.vector[static_cast<std::size_t>(i * N + l)];
  }
  AuxFunction f = make_aux_function(poly, trunc, opts.c1 ? *opts.c1 : default_c1());
  f.siegel = kr.report;
  if (f.M < L || f.M < N + 1) throw Error(ErrorKind::InternalInvariant, "vanishing order below construction floor");
  return f;
}

AuxFunction build_auxiliary(long N, long trunc) {
  AuxOptions o;
  o.trunc = trunc;
  return build_auxiliary(N, o);
}

AuxFunction extend(const AuxFunction& f, long trunc) {
  if (trunc <= f.series.trunc()) return f;
  AuxFunction g = f;
  g.series = assemble_from_tables(f.poly, trunc);
  return g;
}

HeckeTail aux_tail(const AuxFunction& f) {
  HeckeTail t;
  t.N = static_cast<unsigned long>(f.N);
  t.c1 = f.c1;
  t.scale = Real::from_mpz(f.poly.length(), f.c1.prec());
  return t;
}

SeriesValue eval_aux_series(const AuxFunction& f, const Ball& z) {
  return eval_series_certified(f.series, z, aux_tail(f));
}

namespace {

Ball eval_row(const AuxPolynomial& poly, long l, const Ball& z) {
  Ball acc = Ball::from_int(0, z.prec());
  for (long i = poly.N - 1; i >= 0; --i) acc = acc * z + poly.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
  return acc;
}

// sum_l P_l(z) z^{2N-l-shift} eta^{2N-l} E4^{3l}
Ball product_form(const AuxPolynomial& poly, const Ball& z, long shift) {
  const long N = poly.N;
  Ball eta = eta24_product(z);
  Ball e43 = e4_value(z).pow(3);
  Ball zinv = z.reciprocal();
  Ball sum = Ball::from_int(0, z.prec());
  for (long l = 0; l < N; ++l) {
    bool empty = true;
    for (long i = 0; i < N; ++i) empty = empty && poly.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] == 0;
    if (empty) continue;
    Ball row = eval_row(poly, l, z);
    long e = 2 * N - l - shift;
    Ball zp = e >= 0 ? z.pow(static_cast<unsigned long>(e)) : zinv.pow(static_cast<unsigned long>(-e));
    sum += row * zp * eta.pow(static_cast<unsigned long>(2 * N - l)) * e43.pow(static_cast<unsigned long>(l));
  }
  return sum;
}

}  // namespace

Ball eval_aux_product(const AuxPolynomial& poly, const Ball& z) {
  require_poly(poly);
  return product_form(poly, z, 0);
}

Ball eval_g_product(const AuxFunction& f, const Ball& z) {
  if (z.contains_zero()) throw Error(ErrorKind::CannotCertify, "G by product form needs z away from 0");
  return product_form(f.poly, z, f.M);
}

std::size_t independence_rank(long d) {
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "d must be positive");
  const long lo = 2 * d;
  const long rows = 2 * d * d;
  auto tabs = tables_for(d, lo + rows);
  IntMatrix m(static_cast<std::size_t>(rows), std::vector<mpz_class>(static_cast<std::size_t>(d * d)));
  for (long r = 0; r < rows; ++r) {
    for (long i = 0; i < d; ++i) {
      for (long l = 0; l < d; ++l) {
        m[static_cast<std::size_t>(r)][static_cast<std::size_t>(i * d + l)] = tabs[static_cast<std::size_t>(l)].coeffs.coeff(lo + r - i);
      }
    }
  }
  return rank_bareiss(std::move(m));
}

Real c4_from_c1(const Real& c1) {
  const mpfr_prec_t p = c1.prec();
  return (exp(Real::from_int(4, p) / exp(Real::from_int(1, p))) * c1 * c1).upper_only();
}

Real c5_from_c4(const Real& c4) { return (c4 * pow(Real::from_int(12, c4.prec()), 12)).upper_only(); }

namespace {

double rel_radius(const Ball& b) {
  Real a = b.abs();
  double lo = a.lower();
  if (lo <= 0) return INFINITY;
  return b.radius().upper() / lo;
}

// Certified |F(z)|: series with growing truncation, product form as a fallback.
Real certified_abs(const AuxFunction& f, const Ball& z, long max_trunc = 2048) {
  std::optional<Real> best;
  AuxFunction g = f;
  for (;;) {
    try {
      SeriesValue v = eval_aux_series(g, z);
      Real a = v.value.abs();
      if (!best || a.upper() < best->upper()) best = a;
      if (rel_radius(v.value) < 1e-6) return *best;
    } catch (const Error&) {
    }
    long next = g.series.trunc() * 2;
    if (next > max_trunc) break;
    g = extend(g, next);
  }
  Ball p = eval_aux_product(f.poly, z);
  Real a = p.abs();
  if (!best || a.upper() < best->upper()) best = a;
  return *best;
}

}  // namespace

UpperBoundReport check_upper_bound(const AuxFunction& f, const Ball& z, const Real& c4) {
  const mpfr_prec_t p = z.prec();
  const Real one = Real::from_int(1, p);
  Real R = z.abs();
  if (!R.certainly_lt(one)) throw Error(ErrorKind::Domain, "upper bound needs |z| < 1");
  UpperBoundReport out;
  out.c4 = c4;
  out.c5 = c5_from_c4(c4);
  out.abs_f = certified_abs(f, z);
  const long N = f.N, M = f.M, L = f.L;
  const long K = 12 * N;
  Real Rm = pow(R, M);
  Real RN = Real::from_int(N, p), RL = Real::from_int(L, p), RM = Real::from_int(M, p);
  Real schwarz = Rm * pow(c4, N) * pow(RL, K) * schwarz_tail_majorant(static_cast<unsigned long>(M), static_cast<unsigned long>(K), R);
  out.report.add_le("upper-schwarz", "|F(z)| <= |z|^M C4^N L^{12N} (M+1)^{12N} (12N)!/(1-|z|)^{12N+1}", out.abs_f, schwarz,
                    "C4 = e^{4/e} C1^2");
  Real pre = Rm * pow(out.c5, N) * pow(RL * RM * RN, K) / pow(one - R, K + 1);
  out.report.add_le("upper-presimplified", "|F(z)| <= |z|^M C5^N L^{12N} M^{12N} N^{12N} / (1-|z|)^{12N+1}", out.abs_f, pre,
                    "C5 = 12^12 C4 absorbs (12N)! (M+1)^{12N} <= (12N)^{12N} M^{12N} by Stirling");
  Real cond_l = pow(one / (one - R), K + 1);
  Real cond_r = pow(RN * RN / 2, N);
  auto& cond = out.report.add_le("upper-precondition", "(1/(1-|z|))^{12N+1} <= (N^2/2)^N", cond_l, cond_r);
  out.precondition_met = cond.status == Status::Holds;
  Real simp = Rm * pow(RM, 31 * N);
  out.report.add_le("upper-simplified", "|F(z)| <= |z|^M M^{31N}", out.abs_f, simp,
                    out.precondition_met ? "precondition met" : "precondition unmet; informational");
  return out;
}

PrimeScan scan_primes(const Ball& q, const AuxFunction& f, long pmax, std::optional<std::pair<long, long>> residue) {
  const mpfr_prec_t p = q.prec();
  Real Q = q.abs();
  if (q.contains_zero() || !Q.certainly_lt(Real::from_int(1, p))) {
    throw Error(ErrorKind::Domain, "scan needs 0 < |q| < 1");
  }
  if (residue && (residue->second < 1 || std::gcd(residue->first, residue->second) != 1)) {
    throw Error(ErrorKind::InvalidArgument, "residue needs gcd(a, delta) = 1");
  }
  PrimeScan out;
  // Lengthen F until the tail at |q|^2 is negligible.
  AuxFunction g = f;
  Ball q2 = q * q;
  while (g.series.trunc() < 4096) {
    SeriesValue v = eval_aux_series(g, q2);
    if (rel_radius(v.value) < 1e-10) break;
    g = extend(g, g.series.trunc() * 2);
  }
  for (long P = 2; P <= pmax; ++P) {
    if (!is_probable_prime(static_cast<std::uint64_t>(P))) continue;
    if (residue && ((P - residue->first) % residue->second + residue->second) % residue->second != 0) continue;
    Ball v = eval_aux_series(g, q.pow(static_cast<unsigned long>(P))).value;
    if (!v.contains_zero()) {
      out.prime = P;
      out.value = v;
      return out;
    }
    out.uncertain.emplace_back(P, v.radius());
  }
  return out;
}

long first_good_prime(const Ball& q, const AuxFunction& f, long pmax, std::optional<std::pair<long, long>> residue) {
  PrimeScan s = scan_primes(q, f, pmax, residue);
  if (!s.prime) {
    std::ostringstream msg;
    msg << "no certified nonzero F(q^p) for primes p <= " << pmax << "; uncertain:";
    for (const auto& [pr, rad] : s.uncertain) msg << ' ' << pr << "(rad " << rad.upper() << ')';
    throw Error(ErrorKind::Exhausted, msg.str());
  }
  return *s.prime;
}

BoundReport blaschke_prime_bound(const Real& q_abs, const AuxFunction& f, long P, const Real& c14, int identity_samples) {
  const mpfr_prec_t p = q_abs.prec();
  const Real one = Real::from_int(1, p);
  if (!q_abs.is_positive() || !q_abs.certainly_lt(one)) throw Error(ErrorKind::Domain, "need 0 < |q| < 1");
  if (P < 2 || !is_probable_prime(static_cast<std::uint64_t>(P))) throw Error(ErrorKind::InvalidArgument, "P must be prime");
  BoundReport rep;
  const Real r = (one + q_abs) / 2;
  std::vector<long> below;
  for (long s = 2; s < P; ++s) {
    if (is_probable_prime(static_cast<std::uint64_t>(s))) below.push_back(s);
  }

  // Boundary identity |r^2 - conj(w) z| = |r (z - w)| on |z| = r.
  const Real two_pi = Real::pi(p) * 2;
  bool all_equal = true;
  Real worst = Real::from_int(0, p);
  Ball rb = Ball::from_real(r);
  for (int k = 0; k <= identity_samples; ++k) {
    Ball z, w;
    if (k == 0) {
      z = rb;
      w = Ball::from_int(0, p);
    } else {
      z = Ball::polar(r, two_pi * k / identity_samples + Real::from_decimal("0.37", p));
      long e = below.empty() ? 2 + (k % 3) : below[static_cast<std::size_t>(k) % below.size()];
      w = Ball::polar(pow(q_abs, e), Real::from_decimal("1.1", p) * k);
    }
    Real lhs = (rb * rb - w.conj() * z).abs();
    Real rhs = (rb * (z - w)).abs();
    if (!lhs.overlaps(rhs)) all_equal = false;
    Real d = abs(lhs - rhs);
    if (d.upper() > worst.upper()) worst = d;
  }
  Inequality id;
  id.id = "boundary-identity";
  id.statement = "|r^2 - conj(w) z| = |r (z - w)| for |z| = r";
  id.lhs = worst;
  id.rhs = Real::from_int(0, p);
  id.status = all_equal ? Status::Holds : Status::Fails;
  id.note = "equality within enclosure radii at " + std::to_string(identity_samples + 1) + " samples";
  rep.items.push_back(id);

  std::string assumed = "hypothesis: F(q^p) = 0 for p in {";
  for (std::size_t i = 0; i < below.size(); ++i) assumed += (i ? "," : "") + std::to_string(below[i]);
  assumed += "}";

  long sum = std::accumulate(below.begin(), below.end(), 0L);
  const long pi = static_cast<long>(below.size());
  Real RM = Real::from_int(std::max<long>(f.M, 1), p);
  Real lhs = pow(r, pi) / pow(q_abs, sum);
  Real rhs = pow(RM, 31 * f.N);
  rep.add_le("blaschke-chain", "r^{pi(P)} |q|^{-sum_{p<P} p} <= M^{31N}", lhs, rhs, assumed + "; |d0| >= 1");

  Real RP = Real::from_int(P, p);
  Real lP = log(RP);
  Real lq = log(one / q_abs);
  Real lr = log(one / r);
  Real lm = log(RM);
  Real sum_form = RP * RP / (lP * 2) * lq - c14 * lr * RP / lP;
  Real rhs31 = Real::from_int(31 * f.N, p) * lm;
  rep.add_le("prime-sum-form", "P^2/(2 log P) log(1/|q|) - C14 log(1/r) P/log P <= 31 N log M", sum_form, rhs31,
             "uses the prime-sum bounds at x = P");
  Real c15 = Real::from_int(4, p);
  rep.add_le("bound-on-P", "P^2/log P <= C15 / log(1/|q|) * 31 N log M", RP * RP / lP, c15 / lq * rhs31,
             "C15 = 4, valid once P >= 4 C14");
  return rep;
}

namespace {

// G = z^{2N-lmax-M} eta^{2N-lmax} K with K = sum_{l <= lmax} P_l(z) Delta^{lmax-l} E4^{3l}.
// eta has no zeros in the unit disc, so zeros of G in |z| < rho equal the
// winding of K minus the order of K at 0.
long top_row(const AuxPolynomial& poly) {
  for (long l = poly.N - 1; l >= 0; --l) {
    for (long i = 0; i < poly.N; ++i) {
      if (poly.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] != 0) return l;
    }
  }
  return -1;
}

Ball reduced_k(const AuxPolynomial& poly, long lmax, const Ball& z) {
  Ball d = delta_value(z);
  Ball e43 = e4_value(z).pow(3);
  Ball sum = Ball::from_int(0, z.prec());
  for (long l = 0; l <= lmax; ++l) {
    bool empty = true;
    for (long i = 0; i < poly.N; ++i) empty = empty && poly.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] == 0;
    if (empty) continue;
    sum += eval_row(poly, l, z) * d.pow(static_cast<unsigned long>(lmax - l)) * e43.pow(static_cast<unsigned long>(l));
  }
  return sum;
}

struct ArcWalker {
  const AuxFunction& f;
  long lmax;
  Real rho;
  int max_depth;
  long arcs = 0;

  Ball eval(const Ball& z) const { return reduced_k(f.poly, lmax, z); }
  Ball point(const Real& theta) const { return eval(Ball::polar(rho, theta)); }

  static double arg_change(const Ball& a, const Ball& b) {
    Ball t = b * a.conj();
    return std::atan2(mpfr_get_d(t.mid_im().get(), MPFR_RNDN), mpfr_get_d(t.mid_re().get(), MPFR_RNDN));
  }

  // Argument change of G along the arc [t0, t1]; nullopt when uncertified.
  std::optional<double> walk(const Real& t0, const Real& t1, const Ball& g0, const Ball& g1, int depth) {
    Real mid = (t0 + t1) / 2;
    Ball disc = Ball::polar(rho, mid).inflated(rho * (t1 - t0) / 2);
    Ball img = eval(disc);
    if (!img.contains_zero() && !g0.contains_zero() && !g1.contains_zero()) {
      ++arcs;
      return arg_change(g0, g1);
    }
    if (depth >= max_depth) return std::nullopt;
    Ball gm = point(mid);
    auto a = walk(t0, mid, g0, gm, depth + 1);
    if (!a) return std::nullopt;
    auto b = walk(mid, t1, gm, g1, depth + 1);
    if (!b) return std::nullopt;
    return *a + *b;
  }
};

}  // namespace

JensenReport jensen_zero_bound(const Ball& q, const AuxFunction& f, const JensenOptions& opts) {
  const Real one = Real::from_int(1, q.prec());
  Real Q = q.abs();
  if (q.contains_zero() || !Q.certainly_lt(one)) throw Error(ErrorKind::Domain, "Jensen bound needs 0 < |q| < 1");
  JensenReport out;
  for (int attempt = 0; attempt <= opts.retries; ++attempt) {
    const mpfr_prec_t p = q.prec() * (1 + attempt);
    Real Qp = q.with_prec(p).abs().upper_only();
    double eps = opts.epsilon * (1.0 + 0.37 * attempt);
    Real rho = Qp * (Real::from_int(1, p) + Real::from_double(eps, p));
    Real r = (Real::from_int(1, p) + Qp) / 2;
    if (!rho.certainly_lt(r)) throw Error(ErrorKind::Domain, "contour radius reaches r");
    const long lmax = top_row(f.poly);
    ArcWalker w{f, lmax, rho, opts.max_depth};
    const Real two_pi = Real::pi(p) * 2;
    const int n = opts.initial_arcs;
    std::vector<Real> th;
    std::vector<Ball> g;
    for (int k = 0; k <= n; ++k) {
      th.push_back(two_pi * k / n);
      g.push_back(k == n ? g.front() : w.point(th.back()));
    }
    double total = 0;
    bool ok = true;
    for (int k = 0; k < n && ok; ++k) {
      auto d = w.walk(th[static_cast<std::size_t>(k)], th[static_cast<std::size_t>(k) + 1],
                      g[static_cast<std::size_t>(k)], g[static_cast<std::size_t>(k) + 1], 0);
      if (!d) ok = false;
      else total += *d;
    }
    if (!ok) continue;
    double wind = total / (2 * M_PI);
    double rounded = std::round(wind);
    const long order0 = f.M - 2 * f.N + lmax;
    if (std::fabs(wind - rounded) > 0.25 || static_cast<long>(rounded) < order0) continue;
    out.zero_count = static_cast<long>(rounded) - order0;
    out.contour_radius = rho;
    out.arcs = w.arcs;
    Real RM = Real::from_int(std::max<long>(f.M, 1), p);
    out.bound = Real::from_int(31 * f.N, p) * log(RM) / log(r / rho);
    out.report.add_le("jensen-count", "#{zeros of G in |z| < rho} <= 31 N log M / log(r / rho)",
                      Real::from_int(out.zero_count, p), out.bound,
                      "argument principle on |z| = rho with rho slightly above |q|; |G(0)| = |d0| >= 1");
    return out;
  }
  throw Error(ErrorKind::CannotCertify, "argument principle failed after perturbing the contour radius; retry budget spent");
}

}  // namespace tcert
