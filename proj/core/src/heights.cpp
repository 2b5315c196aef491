#include "tcert/heights.hpp"

#include <algorithm>

#include "tcert/error.hpp"
#include "tcert/roots.hpp"

namespace tcert {

// --- IntPolynomial ----------------------------------------------------------

void IntPolynomial::add_term(const Exponents& e, const mpz_class& c) {
  if (e.size() != arity_) throw Error(ErrorKind::InvalidArgument, "exponent arity mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

mpz_class IntPolynomial::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

mpz_class IntPolynomial::length() const {
  mpz_class s = 0;
  for (const auto& [e, c] : terms_) s += abs(c);
  return s;
}

mpz_class IntPolynomial::height() const {
  mpz_class h = 0;
  for (const auto& [e, c] : terms_) h = std::max<mpz_class>(h, abs(c));
  return h;
}

unsigned IntPolynomial::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

Ball IntPolynomial::eval(const std::vector<Ball>& args) const {
  if (args.size() != arity_) throw Error(ErrorKind::InvalidArgument, "argument count mismatch");
  const mpfr_prec_t prec = args.empty() ? kDefaultPrecision : args[0].prec();
  std::vector<std::vector<Ball>> powers(arity_);
  for (std::size_t v = 0; v < arity_; ++v) {
    powers[v].push_back(Ball::from_int(1, prec));
    for (unsigned k = 0; k < degree_in(v); ++k) powers[v].push_back(powers[v].back() * args[v]);
  }
  Ball acc = Ball::from_int(0, prec);
  for (const auto& [e, c] : terms_) {
    Ball t = Ball::from_real(Real::from_mpz(c, prec));
    for (std::size_t v = 0; v < arity_; ++v) t = t * powers[v][e[v]];
    acc += t;
  }
  return acc;
}

mpq_class IntPolynomial::eval(const std::vector<mpq_class>& args) const {
  if (args.size() != arity_) throw Error(ErrorKind::InvalidArgument, "argument count mismatch");
  mpq_class acc = 0;
  for (const auto& [e, c] : terms_) {
    mpq_class t = c;
    for (std::size_t v = 0; v < arity_; ++v) {
      mpq_class pw = 1;
      for (unsigned k = 0; k < e[v]; ++k) pw *= args[v];
      t *= pw;
    }
    acc += t;
  }
  return acc;
}

ZPoly IntPolynomial::coeff_in_y(unsigned k) const {
  if (arity_ != 2) throw Error(ErrorKind::InvalidArgument, "coeff_in_y needs arity 2");
  std::vector<mpz_class> v(degree_in(0) + 1);
  for (const auto& [e, c] : terms_) {
    if (e[1] == k) v[e[0]] += c;
  }
  return ZPoly(std::move(v));
}

ZPoly IntPolynomial::specialize_x(const mpz_class& t) const {
  if (arity_ != 2) throw Error(ErrorKind::InvalidArgument, "specialize_x needs arity 2");
  std::vector<mpz_class> v(degree_in(1) + 1);
  for (const auto& [e, c] : terms_) {
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), t.get_mpz_t(), e[0]);
    v[e[1]] += c * pw;
  }
  return ZPoly(std::move(v));
}

// --- AlgebraicNumber --------------------------------------------------------

namespace {

ZPoly normalized(const ZPoly& f) {
  if (f.degree() < 1) throw Error(ErrorKind::InvalidArgument, "minimal polynomial must be nonconstant");
  ZPoly g = f.primitive();
  if (gcd(g, g.derivative()).degree() > 0) {
    throw Error(ErrorKind::InvalidArgument, "minimal polynomial must be squarefree");
  }
  return g;
}

}  // namespace

AlgebraicNumber AlgebraicNumber::select(const ZPoly& f, const Ball& approx) {
  AlgebraicNumber a;
  a.f_ = normalized(f);
  a.roots_ = isolate_roots(a.f_);
  // The root certainly nearest to the approximation.
  std::vector<Real> dist;
  for (const Ball& r : a.roots_) dist.push_back((r - approx).abs());
  std::size_t best = 0;
  for (std::size_t i = 1; i < dist.size(); ++i) {
    if (dist[i].lower() < dist[best].lower()) best = i;
  }
  for (std::size_t j = 0; j < dist.size(); ++j) {
    if (j != best && !dist[best].certainly_lt(dist[j])) {
      throw Error(ErrorKind::InvalidArgument, "approximation does not single out a root of " + a.f_.to_string());
    }
  }
  a.index_ = best;
  a.minimal_ = certify_irreducible(a.f_);
  return a;
}

AlgebraicNumber AlgebraicNumber::from_index(const ZPoly& f, std::size_t index) {
  AlgebraicNumber a;
  a.f_ = normalized(f);
  a.roots_ = isolate_roots(a.f_);
  if (index >= a.roots_.size()) throw Error(ErrorKind::InvalidArgument, "root index out of range");
  a.index_ = index;
  a.minimal_ = certify_irreducible(a.f_);
  return a;
}

AlgebraicNumber AlgebraicNumber::rational(const mpq_class& v) {
  AlgebraicNumber a;
  a.f_ = ZPoly(std::vector<mpz_class>{-v.get_num(), v.get_den()});
  a.roots_ = {Ball::from_mpq(v, 0)};
  a.minimal_ = true;
  return a;
}

std::vector<AlgebraicNumber> AlgebraicNumber::conjugates(const ZPoly& f) {
  AlgebraicNumber base;
  base.f_ = normalized(f);
  base.roots_ = isolate_roots(base.f_);
  base.minimal_ = certify_irreducible(base.f_);
  std::vector<AlgebraicNumber> out;
  for (std::size_t i = 0; i < base.roots_.size(); ++i) {
    out.push_back(base);
    out.back().index_ = i;
  }
  return out;
}

std::optional<mpq_class> AlgebraicNumber::as_rational() const {
  if (f_.degree() != 1) return std::nullopt;
  mpq_class r(-f_.coeffs()[0], f_.coeffs()[1]);
  r.canonicalize();
  return r;
}

AlgebraicNumber AlgebraicNumber::inverse() const {
  if (is_zero()) throw Error(ErrorKind::Domain, "inverse of zero");
  if (auto r = as_rational()) return rational(1 / *r);
  return select(f_.reversed(), root().reciprocal());
}

// --- heights ----------------------------------------------------------------

namespace {

std::vector<Ball> roots_at(const AlgebraicNumber& a, mpfr_prec_t prec) {
  if (a.degree() == 1) {
    return {Ball::from_mpq(*a.as_rational(), 0, prec)};
  }
  if (prec <= a.root().prec()) return a.all_roots();
  return isolate_roots(a.minpoly(), prec);
}

Real log_length(const mpz_class& l, mpfr_prec_t prec) { return log(Real::from_mpz(l, prec)); }

}  // namespace

HeightMeasures height_measures(const AlgebraicNumber& a, mpfr_prec_t prec) {
  const Real one = Real::from_int(1, prec);
  Real lead = Real::from_mpz(abs(a.minpoly().lead()), prec);
  Real mahler = lead;
  Real logm = log(lead);
  for (const Ball& r : roots_at(a, prec)) {
    Real m = max(one, r.abs().with_prec(prec));
    mahler *= m;
    logm += log(m);
  }
  return {mahler, logm / a.degree(), logm};
}

BoundReport liouville_check(const AlgebraicNumber& a) {
  if (a.is_zero()) throw Error(ErrorKind::Domain, "Liouville inequality needs a nonzero number");
  BoundReport rep;
  const mpfr_prec_t prec = kDefaultPrecision;
  HeightMeasures hm = height_measures(a, prec);
  Real log_abs = log(a.root().abs());
  rep.add_le("liouville", "-deg(a) h(a) <= log|a|", -hm.log_mahler, log_abs);
  // log|a| + m(a) = log|a0| + max(0, log|a|) + sum_{other roots} max(0, -log|a_i|)
  const Real zero = Real::from_int(0, prec);
  Real slack = log(Real::from_mpz(abs(a.minpoly().coeffs()[0]), prec)) + max(zero, log_abs);
  const auto& roots = a.all_roots();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (i == a.index()) continue;
    slack += max(zero, -log(roots[i].abs()));
  }
  rep.add_le("liouville-identity", "0 <= log|a0| + max(0,log|a|) + sum max(0,-log|a_i|)", zero, slack,
             "slack equals log|a| + m(a) since |a0| = |lead| prod |a_i|");
  Inequality& main = rep.items[0];
  if (main.status == Status::Undetermined && zero.certainly_le(slack)) {
    main.status = Status::Holds;
    main.note = "decided by the constant-coefficient identity";
  }
  return rep;
}

BoundReport eval_height_bound(const IntPolynomial& p, const std::vector<AlgebraicNumber>& args,
                              const AlgebraicNumber& value) {
  if (args.size() != p.arity()) throw Error(ErrorKind::InvalidArgument, "argument count mismatch");
  std::vector<Ball> pts;
  for (const auto& a : args) pts.push_back(a.root());
  if (!p.eval(pts).overlaps(value.root())) {
    throw Error(ErrorKind::InconsistentWitness, "value does not match P(args) numerically");
  }
  BoundReport rep;
  for (mpfr_prec_t prec : {mpfr_prec_t{128}, mpfr_prec_t{512}, mpfr_prec_t{2048}}) {
    rep.items.clear();
    Real lhs = height_measures(value, prec).weil_h;
    Real rhs = log_length(p.length(), prec);
    for (std::size_t i = 0; i < args.size(); ++i) {
      rhs += height_measures(args[i], prec).weil_h * static_cast<long>(p.degree_in(i));
    }
    rep.add_le("evaluation-height", "h(P(a)) <= log L(P) + sum deg_i(P) h(a_i)", lhs, rhs);
    if (rep.items[0].status != Status::Undetermined) break;
  }
  Inequality& q = rep.items[0];
  if (q.status == Status::Undetermined) {
    bool all_rational = value.as_rational().has_value();
    for (const auto& a : args) all_rational = all_rational && a.as_rational().has_value();
    if (all_rational) {
      // For rationals h = log H, so compare H(v) <= L(P) prod H(a_i)^deg_i exactly.
      auto H = [](const mpq_class& r) { return std::max<mpz_class>(abs(r.get_num()), r.get_den()); };
      mpz_class rhs = p.length();
      for (std::size_t i = 0; i < args.size(); ++i) {
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), H(*args[i].as_rational()).get_mpz_t(), p.degree_in(i));
        rhs *= pw;
      }
      q.status = H(*value.as_rational()) <= rhs ? Status::Holds : Status::Fails;
      q.note = "decided by exact rational heights";
    }
  }
  return rep;
}

namespace {

// Whether c(alpha) = 0; exact when the minimal polynomial is certified.
bool vanishes_at(const ZPoly& c, const AlgebraicNumber& a) {
  if (c.is_zero()) return true;
  if (divides(a.minpoly(), c)) return true;
  if (a.minimal()) return false;
  if (!c.eval(a.root()).contains_zero()) return false;
  throw Error(ErrorKind::CannotCertify, "cannot decide vanishing at a non-certified minimal polynomial");
}

}  // namespace

BoundReport root_height_bound(const IntPolynomial& p, const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (p.arity() != 2) throw Error(ErrorKind::InvalidArgument, "root_height_bound needs arity 2");
  bool nonconstant = false;
  for (unsigned k = 1; k <= p.degree_in(1) && !nonconstant; ++k) {
    nonconstant = !vanishes_at(p.coeff_in_y(k), a);
  }
  if (!nonconstant) throw Error(ErrorKind::Precondition, "P(alpha, Y) is constant");
  if (!p.eval({a.root(), b.root()}).contains_zero()) {
    throw Error(ErrorKind::Precondition, "P(alpha, beta) is not zero");
  }
  if (!divides(a.minpoly(), resultant_in_y(b.minpoly(), p))) {
    throw Error(ErrorKind::Precondition, "resultant check: no conjugate pair is a zero of P");
  }
  BoundReport rep;
  const long da = a.degree();
  const unsigned dx = p.degree_in(0);
  for (mpfr_prec_t prec : {mpfr_prec_t{128}, mpfr_prec_t{512}, mpfr_prec_t{2048}}) {
    rep.items.clear();
    Real lhs = height_measures(b, prec).log_mahler;
    Real rhs = (log_length(p.length(), prec) + height_measures(a, prec).weil_h * static_cast<long>(dx)) * da;
    rep.add_le("root-height", "m(b) <= deg(a) (log L(P) + deg_x(P) h(a))", lhs, rhs);
    if (rep.items[0].status != Status::Undetermined) break;
  }
  Inequality& q = rep.items[0];
  if (q.status == Status::Undetermined && a.as_rational() && b.as_rational()) {
    auto H = [](const mpq_class& r) { return std::max<mpz_class>(abs(r.get_num()), r.get_den()); };
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), H(*a.as_rational()).get_mpz_t(), dx);
    q.status = H(*b.as_rational()) <= p.length() * pw ? Status::Holds : Status::Fails;
    q.note = "decided by exact rational heights";
  }
  return rep;
}

IsogenyHeightReport isogeny_height_check(const AlgebraicNumber& j1, const AlgebraicNumber& jn, long n,
                                         const Real& c2, const IntPolynomial* phi) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "isogeny degree must be positive");
  const mpfr_prec_t prec = kDefaultPrecision;
  Real h1 = height_measures(j1, prec).weil_h;
  Real hn = height_measures(jn, prec).weil_h;
  Real six_log = log(Real::from_int(1 + n, prec)) * 6;
  IsogenyHeightReport out;
  out.bound.add_le("isogeny-height", "h(J(q^n)) <= 2h(J(q)) + 6 log(1+n) + C2", hn, h1 * 2 + six_log + c2);
  out.minimal_c2 = hn - h1 * 2 - six_log;
  if (phi != nullptr && j1.as_rational() && jn.as_rational()) {
    out.phi_vanishes = phi->eval({*j1.as_rational(), *jn.as_rational()}) == 0;
  }
  return out;
}

// --- exact witnesses --------------------------------------------------------

namespace {

using QMatrix = std::vector<std::vector<mpq_class>>;

QMatrix identity(std::size_t n) {
  QMatrix m(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMatrix matmul(const QMatrix& a, const QMatrix& b) {
  const std::size_t n = a.size();
  QMatrix c(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

// Multiplication by x (var = 0) or y (var = 1) on the basis x^i y^j, index i*d2 + j.
QMatrix mult_matrix(const ZPoly& f, const ZPoly& g, int var) {
  const auto d1 = static_cast<std::size_t>(f.degree());
  const auto d2 = static_cast<std::size_t>(g.degree());
  const std::size_t n = d1 * d2;
  QMatrix m(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < d1; ++i) {
    for (std::size_t j = 0; j < d2; ++j) {
      const std::size_t col = i * d2 + j;
      if (var == 0) {
        if (i + 1 < d1) {
          m[(i + 1) * d2 + j][col] = 1;
        } else {
          for (std::size_t k = 0; k < d1; ++k) m[k * d2 + j][col] = mpq_class(-f.coeffs()[k], f.lead());
        }
      } else {
        if (j + 1 < d2) {
          m[i * d2 + j + 1][col] = 1;
        } else {
          for (std::size_t k = 0; k < d2; ++k) m[i * d2 + k][col] = mpq_class(-g.coeffs()[k], g.lead());
        }
      }
    }
  }
  for (auto& row : m) {
    for (auto& x : row) x.canonicalize();
  }
  return m;
}

}  // namespace

std::optional<AlgebraicNumber> combine(const IntPolynomial& p, const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (p.arity() != 2) throw Error(ErrorKind::InvalidArgument, "combine needs arity 2");
  const ZPoly& f = a.minpoly();
  const ZPoly& g = b.minpoly();
  const std::size_t n = static_cast<std::size_t>(f.degree() * g.degree());
  QMatrix mx = mult_matrix(f, g, 0), my = mult_matrix(f, g, 1);
  std::vector<QMatrix> px{identity(n)}, py{identity(n)};
  for (unsigned k = 0; k < p.degree_in(0); ++k) px.push_back(matmul(px.back(), mx));
  for (unsigned k = 0; k < p.degree_in(1); ++k) py.push_back(matmul(py.back(), my));
  QMatrix m(n, std::vector<mpq_class>(n));
  for (const auto& [e, c] : p.terms()) {
    QMatrix t = matmul(px[e[0]], py[e[1]]);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m[i][j] += mpq_class(c) * t[i][j];
    }
  }
  ZPoly s = squarefree_part(charpoly(std::move(m)));
  if (!certify_irreducible(s)) return std::nullopt;
  Ball value = p.eval({a.root(), b.root()});
  try {
    if (s.degree() == 1) {
      AlgebraicNumber r = AlgebraicNumber::rational(mpq_class(-s.coeffs()[0], s.coeffs()[1]));
      if (!r.root().overlaps(value)) return std::nullopt;
      return r;
    }
    return AlgebraicNumber::select(s, value);
  } catch (const Error&) {
    return std::nullopt;
  }
}

namespace {

// Sylvester resultant of g (true degree) and h of formal degree n.
mpz_class sized_resultant(const ZPoly& g, const std::vector<mpz_class>& h) {
  const auto m = static_cast<std::size_t>(g.degree());
  const std::size_t n = h.size() - 1;
  const std::size_t size = m + n;
  std::vector<std::vector<mpz_class>> s(size, std::vector<mpz_class>(size));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = g.coeffs()[m - i];
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t i = 0; i <= n; ++i) s[n + r][r + i] = h[n - i];
  }
  return det_bareiss(std::move(s));
}

}  // namespace

ZPoly resultant_in_y(const ZPoly& g, const IntPolynomial& p) {
  if (p.arity() != 2) throw Error(ErrorKind::InvalidArgument, "resultant_in_y needs arity 2");
  const unsigned ny = p.degree_in(1);
  const long bound = g.degree() * static_cast<long>(p.degree_in(0));
  std::vector<mpq_class> xs, ys;
  for (long t = 0; t <= bound; ++t) {
    std::vector<mpz_class> h(ny + 1);
    ZPoly spec = p.specialize_x(t);
    for (long k = 0; k <= spec.degree(); ++k) h[static_cast<std::size_t>(k)] = spec.coeffs()[static_cast<std::size_t>(k)];
    xs.emplace_back(t);
    ys.emplace_back(sized_resultant(g, h));
  }
  // Newton divided differences, then expansion into monomials.
  const std::size_t n = xs.size();
  std::vector<mpq_class> dd = ys;
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
      if (i == level) break;
    }
  }
  std::vector<mpq_class> poly{dd[n - 1]};
  for (std::size_t k = n - 1; k-- > 0;) {
    std::vector<mpq_class> next(poly.size() + 1);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * xs[k];
    }
    next[0] += dd[k];
    poly = std::move(next);
  }
  std::vector<mpz_class> out;
  for (auto& c : poly) {
    c.canonicalize();
    if (c.get_den() != 1) throw Error(ErrorKind::InternalInvariant, "non-integral resultant interpolation");
    out.push_back(c.get_num());
  }
  return ZPoly(std::move(out));
}

ZPoly random_irreducible(std::mt19937_64& rng, long max_degree, long coeff_bound) {
  std::uniform_int_distribution<long> deg_dist(1, max_degree);
  std::uniform_int_distribution<long> coef(-coeff_bound, coeff_bound);
  std::uniform_int_distribution<long> lead(1, coeff_bound);
  for (;;) {
    const long d = deg_dist(rng);
    std::vector<mpz_class> v(static_cast<std::size_t>(d + 1));
    for (long i = 0; i < d; ++i) v[static_cast<std::size_t>(i)] = coef(rng);
    v[static_cast<std::size_t>(d)] = lead(rng);
    if (v[0] == 0) continue;
    ZPoly f(std::move(v));
    f = f.primitive();
    if (f.degree() != d) continue;
    if (gcd(f, f.derivative()).degree() > 0) continue;
    if (certify_irreducible(f)) return f;
  }
}

}  // namespace tcert
