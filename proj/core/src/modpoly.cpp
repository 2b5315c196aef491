#include "tcert/modpoly.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "tcert/error.hpp"
#include "tcert/int_series.hpp"
#include "tcert/modforms.hpp"
#include "tcert/roots.hpp"

namespace tcert {

bool ModularPolynomial::symmetric() const {
  for (const auto& [e, c] : coeffs.terms()) {
    if (coeffs.coeff({e[1], e[0]}) != c) return false;
  }
  return true;
}

bool ModularPolynomial::monic_in_x() const {
  const unsigned d = degree_x();
  mpz_class lead_sum = 0;
  long count = 0;
  for (const auto& [e, c] : coeffs.terms()) {
    if (e[0] != d) continue;
    ++count;
    if (e[1] != 0) return false;
    lead_sum = c;
  }
  return count == 1 && lead_sum == 1;
}

LevelInvariants level_invariants(long n, mpfr_prec_t prec) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "level must be positive");
  LevelInvariants out{mpz_class(n), Real::from_int(0, prec), Real::from_int(0, prec)};
  long m = n;
  for (long p = 2; p * p <= m || (m > 1 && p <= m); ++p) {
    if (m % p) continue;
    long e = 0;
    long pe = 1;
    while (m % p == 0) {
      m /= p;
      ++e;
      pe *= p;
    }
    out.psi = out.psi / p * (p + 1);
    Real lp = log(Real::from_int(p, prec));
    out.kappa = out.kappa + lp / p;
    mpq_class w(pe - 1, (pe / p) * (p * p - 1));
    w.canonicalize();
    out.lambda = out.lambda + Real::from_mpq(w, prec) * lp;
  }
  return out;
}

namespace {

// Coefficients of w^{p m} become coefficients of q^m.
IntSeries decimate(const IntSeries& s, long p) {
  auto ceil_div = [](long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); };
  const long lo = ceil_div(s.valuation(), p);
  const long hi = ceil_div(s.trunc(), p);  // q-truncation
  std::vector<mpz_class> c(static_cast<std::size_t>(std::max<long>(hi - lo, 0)));
  for (long m = lo; m < hi; ++m) c[static_cast<std::size_t>(m - lo)] = s.coeff(p * m);
  return IntSeries::from_coeffs(lo, hi, std::move(c));
}

IntSeries exact_scalar_div(const IntSeries& s, long k) {
  if (s.is_zero()) return s;
  std::vector<mpz_class> c(s.coeffs().begin(), s.coeffs().end());
  for (auto& x : c) {
    if (!mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(k))) {
      throw Error(ErrorKind::Determination, "Newton identity produced a non-integral coefficient");
    }
    mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(k));
  }
  return IntSeries::from_coeffs(s.valuation(), s.trunc(), std::move(c));
}

}  // namespace

ModularPolynomial compute_phi_p(long p, long K) {
  if (p != 2 && p != 3 && p != 5 && p != 7) throw Error(ErrorKind::InvalidArgument, "supported levels: 2, 3, 5, 7");
  if (K <= 0) K = (p + 1) * (p + 1) + 10;
  const long n = p + 1;
  // q-truncation needed after the poles of order up to p + 1 are removed.
  const long Tq = K + 4 * n + 4;
  const long Tw = p * (Tq + 2 * n + 4);

  // Power sums over the p conjugates J(zeta^i w): p times the w^{p m} part of J(w)^k.
  IntSeries Jw = j_expansion(Tw);
  std::vector<IntSeries> s(static_cast<std::size_t>(p) + 1);
  IntSeries pw = Jw;
  for (long k = 1; k <= p; ++k) {
    if (k > 1) pw = pw * Jw;
    s[static_cast<std::size_t>(k)] = decimate(pw, p) * mpz_class(p);
  }
  // Newton: k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} s_i.
  std::vector<IntSeries> e(static_cast<std::size_t>(p) + 1);
  e[0] = IntSeries::one(s[1].trunc());
  for (long k = 1; k <= p; ++k) {
    IntSeries acc = IntSeries::zero(s[1].trunc());
    for (long i = 1; i <= k; ++i) {
      IntSeries t = e[static_cast<std::size_t>(k - i)] * s[static_cast<std::size_t>(i)];
      acc = (i % 2) ? acc + t : acc - t;
    }
    e[static_cast<std::size_t>(k)] = exact_scalar_div(acc, k);
  }
  // Q(X) = sum_k (-1)^{p-k} e_{p-k} X^k; P(X) = (X - J(q^p)) Q(X).
  IntSeries Jq = j_expansion(Tq + 2 * n + 4);
  IntSeries Jqp = Jq.substitute_power(p);
  std::vector<IntSeries> Q(static_cast<std::size_t>(n));
  for (long k = 0; k <= p; ++k) {
    const IntSeries& ek = e[static_cast<std::size_t>(p - k)];
    Q[static_cast<std::size_t>(k)] = ((p - k) % 2) ? -ek : ek;
  }
  std::vector<IntSeries> C(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) {
    IntSeries c = IntSeries::zero(Tq);
    if (k >= 1) c = c + Q[static_cast<std::size_t>(k - 1)];
    if (k <= p) c = c - Jqp * Q[static_cast<std::size_t>(k)];
    C[static_cast<std::size_t>(k)] = c;
  }
  // Pole elimination: c_k(q) = sum_b a_{k b} J(q)^b.
  std::vector<IntSeries> Jpow(static_cast<std::size_t>(n) + 1);
  Jpow[0] = IntSeries::one(Jq.trunc());
  for (long b = 1; b <= n; ++b) Jpow[static_cast<std::size_t>(b)] = Jpow[static_cast<std::size_t>(b - 1)] * Jq;

  ModularPolynomial phi;
  phi.level = p;
  for (long k = 0; k <= n; ++k) {
    IntSeries c = C[static_cast<std::size_t>(k)];
    for (long b = n + 1; b >= 0; --b) {
      if (c.is_zero() || c.valuation() > 0) break;
      const long v = c.valuation();
      if (-v > n) throw Error(ErrorKind::Determination, "pole order exceeds p + 1");
      const long deg = -v;
      mpz_class a = c.leading();
      phi.coeffs.add_term({static_cast<unsigned>(k), static_cast<unsigned>(deg)}, a);
      c = c - Jpow[static_cast<std::size_t>(deg)] * a;
    }
    if (c.trunc() < K) throw Error(ErrorKind::Determination, "truncation too small to determine the coefficients");
    if (!c.is_zero() && c.valuation() < K) {
      throw Error(ErrorKind::Determination,
                  "residual series nonzero at q^" + std::to_string(c.valuation()) + " for X^" + std::to_string(k));
    }
  }
  if (!phi.symmetric() || !phi.monic_in_x() || phi.degree_x() != static_cast<unsigned>(n)) {
    throw Error(ErrorKind::Determination, "computed polynomial fails symmetry, monicity or degree");
  }
  return phi;
}

ModularPolynomial phi2_reference() {
  ModularPolynomial phi;
  phi.level = 2;
  struct T {
    unsigned a, b;
    const char* c;
  };
  static const T table[] = {
      {3, 0, "1"},        {2, 2, "-1"},           {2, 1, "1488"},          {2, 0, "-162000"},
      {1, 1, "40773375"}, {1, 0, "8748000000"},   {0, 0, "-157464000000000"},
  };
  for (const auto& t : table) {
    phi.coeffs.add_term({t.a, t.b}, mpz_class(t.c));
    if (t.a != t.b) phi.coeffs.add_term({t.b, t.a}, mpz_class(t.c));
  }
  return phi;
}

IdentityReport verify_phi_identity(const ModularPolynomial& phi, long K) {
  if (K < 1) throw Error(ErrorKind::InvalidArgument, "K must be positive");
  const long p = phi.level;
  const long dx = phi.degree_x(), dy = phi.degree_y();
  const long T = K + p * dx + dy + 4;
  IntSeries J = j_expansion(T);
  std::vector<IntSeries> Jb(static_cast<std::size_t>(std::max(dx, dy)) + 1);
  Jb[0] = IntSeries::one(T);
  for (std::size_t b = 1; b < Jb.size(); ++b) Jb[b] = Jb[b - 1] * J;
  IntSeries sum = IntSeries::zero(K);
  for (const auto& [ex, c] : phi.coeffs.terms()) {
    IntSeries term = Jb[ex[0]].substitute_power(p) * Jb[ex[1]];
    sum = sum + term * c;
  }
  if (sum.trunc() < K) throw Error(ErrorKind::InvalidTruncation, "identity check lost precision");
  sum = sum.truncated(K);
  IdentityReport r;
  r.checked_to = K;
  r.holds = sum.is_zero();
  if (!r.holds) r.first_nonzero = sum.valuation();
  return r;
}

PhiHeightReport certify_phi_height(const ModularPolynomial& phi) {
  const mpfr_prec_t pr = kDefaultPrecision;
  PhiHeightReport out;
  out.height = phi.coeffs.height();
  out.length = phi.coeffs.length();
  const long N = phi.level;
  Real h = log(Real::from_mpz(out.height, pr));
  Real l = log(Real::from_mpz(out.length, pr));
  LevelInvariants inv = level_invariants(N, pr);
  Real lN = log(Real::from_int(N, pr));
  Real psi6 = Real::from_mpz(inv.psi, pr) * 6;
  out.report.add_le("psi-lower", "6 psi(N)(log N - 2 lambda_N - 0.0351) <= h(Phi_N)",
                    psi6 * (lN - inv.lambda * 2 - Real::from_decimal("0.0351", pr)), h);
  out.report.add_le("psi-upper", "h(Phi_N) <= 6 psi(N)(log N - 2 lambda_N + 9.5387)", h,
                    psi6 * (lN - inv.lambda * 2 + Real::from_decimal("9.5387", pr)));
  bool prime = N >= 2 && is_probable_prime(static_cast<std::uint64_t>(N));
  if (prime) {
    Real P = Real::from_int(N, pr);
    Real explicit_bound = P * lN * 6 + P * 16 + sqrt(P) * lN * 14;
    out.report.add_le("prime-explicit", "h(Phi_p) <= 6p log p + 16p + 14 sqrt(p) log p", h, explicit_bound);
    out.report.add_le("prime-length", "log L(Phi_p) <= 2 log(p+2) + 6p log p + 16p + 14 sqrt(p) log p", l,
                      log(Real::from_int(N + 2, pr)) * 2 + explicit_bound);
  }
  out.report.add_le("height-vs-length", "h(Phi) <= l(Phi)", h, l);
  out.cohen_constant = h / psi6 - lN + inv.kappa * 2;
  return out;
}

namespace {

// j(p tau) = E4^3 / Delta at q = exp(2 pi i p tau), tau the root of a t^2 + b t + c in the upper half plane.
Ball j_at_p_tau(const CmData& cm, long p, mpfr_prec_t prec) {
  const long disc = cm.b * cm.b - 4 * cm.a * cm.c;
  if (cm.a <= 0 || disc >= 0) throw Error(ErrorKind::Domain, "CM data needs a > 0 and b^2 - 4ac < 0");
  Real two_pi = Real::pi(prec) * 2;
  Real im = sqrt(Real::from_int(-disc, prec)) / (2 * cm.a);
  mpq_class re(-cm.b, 2 * cm.a);
  re.canonicalize();
  Real radius = exp(-(two_pi * im * p));
  Real angle = two_pi * Real::from_mpq(re * p, prec);
  Ball q = Ball::polar(radius, angle);
  Ball e4 = e4_value(q);
  return e4 * e4 * e4 / delta_value(q);
}

}  // namespace

SpecializationReport specialization_degree(const ModularPolynomial& phi, const AlgebraicNumber& j0,
                                           std::optional<CmData> cm) {
  auto r = j0.as_rational();
  if (!r) throw Error(ErrorKind::Domain, "specialization supports rational j0 only");
  SpecializationReport out;
  const long p = phi.level;
  // Phi(X, j0) scaled by den^{deg_y} to integer coefficients.
  const unsigned dy = phi.degree_y();
  const mpz_class num = r->get_num(), den = r->get_den();
  std::vector<mpz_class> c(phi.degree_x() + 1);
  for (const auto& [e, a] : phi.coeffs.terms()) {
    mpz_class t = a;
    for (unsigned i = 0; i < e[1]; ++i) t *= num;
    for (unsigned i = e[1]; i < dy; ++i) t *= den;
    c[e[0]] += t;
  }
  ZPoly f(std::move(c));
  if (f.degree() < 1) throw Error(ErrorKind::Domain, "specialization is constant");

  // Candidate factors: linear ones from rational roots, then residual squarefree parts.
  struct Part {
    ZPoly g;
    long degree_lower;
  };
  std::vector<Part> pieces;
  auto parts = squarefree_decomposition(f);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    ZPoly g = parts[i];
    if (g.degree() < 1) continue;
    const long mult = static_cast<long>(i) + 1;
    for (const auto& root : rational_roots(g)) {
      ZPoly lin(std::vector<mpz_class>{-root.get_num(), root.get_den()});
      out.rational_roots.push_back(root);
      out.linear_factors.emplace_back(1, mult);
      pieces.push_back({lin, 1});
      g = exact_div(g, lin);
    }
    if (g.degree() < 1) continue;
    g = g.primitive();
    out.residual_degrees.push_back(g.degree());
    auto adm = admissible_factor_degrees(g);
    long lower = g.degree();
    for (long d = 2; d <= g.degree(); ++d) {
      if (adm[static_cast<std::size_t>(d)]) {
        lower = d;
        break;
      }
    }
    pieces.push_back({g, lower});
  }
  std::sort(out.rational_roots.begin(), out.rational_roots.end());
  out.min_degree_lower = f.degree();
  for (const auto& pc : pieces) out.min_degree_lower = std::min(out.min_degree_lower, pc.degree_lower);

  mpq_class third(p - 1, 3);
  third.canonicalize();
  const Real lhs = Real::from_mpq(third);
  const std::string stmt = "(p-1)/3 <= [Q(j0, j(p tau)) : Q(j0)]";
  if (!cm) {
    out.report.add_le("bertrand-cm-min", "(p-1)/3 <= min factor degree of Phi_p(X, j0)", lhs,
                      Real::from_int(out.min_degree_lower), "no CM data; informational");
    return out;
  }
  Ball jp = j_at_p_tau(*cm, p, kDefaultPrecision);
  out.j_p_tau = jp;
  std::optional<long> hit;
  int hits = 0;
  for (const auto& pc : pieces) {
    if (pc.g.eval(jp).contains_zero()) {
      ++hits;
      hit = pc.degree_lower;
    }
  }
  if (hits == 1) out.relevant_degree_lower = hit;
  if (cm->a % p == 0) {
    out.report.items.push_back(Inequality{"bertrand-cm", stmt, lhs, Real::from_int(hit.value_or(0)),
                                          Status::Undetermined, "p divides a; hypothesis not met"});
  } else if (hits != 1) {
    out.report.items.push_back(Inequality{"bertrand-cm", stmt, lhs, Real::from_int(0), Status::Undetermined,
                                          "could not isolate the factor vanishing at j(p tau)"});
  } else {
    out.report.add_le("bertrand-cm", stmt, lhs, Real::from_int(*hit));
  }
  return out;
}

void write_modpoly(std::ostream& out, const ModularPolynomial& phi) {
  for (auto it = phi.coeffs.terms().rbegin(); it != phi.coeffs.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    if (e[0] < e[1]) continue;
    out << e[0] << ' ' << e[1] << ' ' << c.get_str() << '\n';
  }
}

ModularPolynomial read_modpoly(std::istream& in, long level) {
  ModularPolynomial phi;
  phi.level = level;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    long a, b;
    std::string c;
    if (!(ls >> a >> b >> c) || a < b || b < 0) {
      throw Error(ErrorKind::Parse, "bad modular polynomial line " + std::to_string(lineno));
    }
    mpz_class v;
    if (v.set_str(c, 10) != 0) throw Error(ErrorKind::Parse, "bad coefficient on line " + std::to_string(lineno));
    phi.coeffs.add_term({static_cast<unsigned>(a), static_cast<unsigned>(b)}, v);
    if (a != b) phi.coeffs.add_term({static_cast<unsigned>(b), static_cast<unsigned>(a)}, v);
  }
  return phi;
}

}  // namespace tcert
