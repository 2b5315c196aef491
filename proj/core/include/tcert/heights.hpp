#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <random>
#include <vector>

#include "tcert/ball.hpp"
#include "tcert/report.hpp"
#include "tcert/upoly.hpp"

namespace tcert {

/// Multivariate integer polynomial in sparse form.
class IntPolynomial {
 public:
  using Exponents = std::vector<unsigned>;

  explicit IntPolynomial(std::size_t arity = 1) : arity_(arity) {}

  std::size_t arity() const { return arity_; }
  const std::map<Exponents, mpz_class>& terms() const { return terms_; }
  void add_term(const Exponents& e, const mpz_class& c);
  mpz_class coeff(const Exponents& e) const;

  mpz_class length() const;
  mpz_class height() const;
  unsigned degree_in(std::size_t var) const;
  bool is_zero() const { return terms_.empty(); }

  Ball eval(const std::vector<Ball>& args) const;
  mpq_class eval(const std::vector<mpq_class>& args) const;
  /// For arity 2: the coefficient of Y^k as a polynomial in X.
  ZPoly coeff_in_y(unsigned k) const;
  /// For arity 2: P(t, Y) as a polynomial in Y.
  ZPoly specialize_x(const mpz_class& t) const;

  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t arity_;
  std::map<Exponents, mpz_class> terms_;
};

/// A root of an integer polynomial together with a disc isolating it.
class AlgebraicNumber {
 public:
  /// f is made primitive and must be squarefree; the root certainly nearest
  /// to `approx` is selected.
  static AlgebraicNumber select(const ZPoly& f, const Ball& approx);
  static AlgebraicNumber from_index(const ZPoly& f, std::size_t index);
  static AlgebraicNumber rational(const mpq_class& v);
  static AlgebraicNumber integer(long v) { return rational(mpq_class(v)); }
  /// All roots of f as algebraic numbers.
  static std::vector<AlgebraicNumber> conjugates(const ZPoly& f);

  const ZPoly& minpoly() const { return f_; }
  const Ball& root() const { return roots_[index_]; }
  const std::vector<Ball>& all_roots() const { return roots_; }
  std::size_t index() const { return index_; }
  long degree() const { return f_.degree(); }
  /// True when the degree-pattern test proved minpoly irreducible.
  bool minimal() const { return minimal_; }
  bool is_zero() const { return f_.degree() == 1 && f_.coeffs()[0] == 0; }
  std::optional<mpq_class> as_rational() const;
  AlgebraicNumber inverse() const;

 private:
  ZPoly f_;
  std::vector<Ball> roots_;
  std::size_t index_ = 0;
  bool minimal_ = false;
};

struct HeightMeasures {
  Real mahler;
  Real weil_h;
  Real log_mahler;
};

HeightMeasures height_measures(const AlgebraicNumber& a, mpfr_prec_t prec = kDefaultPrecision);

/// log |alpha| >= -deg(alpha) h(alpha).
BoundReport liouville_check(const AlgebraicNumber& a);

/// h(P(alpha_1..alpha_n)) <= log L(P) + sum deg_{X_i}(P) h(alpha_i).
BoundReport eval_height_bound(const IntPolynomial& p, const std::vector<AlgebraicNumber>& args,
                              const AlgebraicNumber& value);

/// m(beta) <= deg(alpha) (log L(P) + deg_x(P) h(alpha)) for P(alpha, beta) = 0.
BoundReport root_height_bound(const IntPolynomial& p, const AlgebraicNumber& a,
                              const AlgebraicNumber& b);

struct IsogenyHeightReport {
  BoundReport bound;
  Real minimal_c2;
  std::optional<bool> phi_vanishes;
};

/// h(J(q^n)) <= 2 h(J(q)) + 6 log(1 + n) + c2. When `phi` is given and both
/// values are rational, Phi_n(j1, jn) = 0 is also checked exactly.
IsogenyHeightReport isogeny_height_check(const AlgebraicNumber& j1, const AlgebraicNumber& jn,
                                         long n, const Real& c2,
                                         const IntPolynomial* phi = nullptr);

/// Exact witness for P(alpha, beta): characteristic polynomial of
/// multiplication by P in Q[x,y]/(f_alpha, f_beta), reduced to its squarefree
/// part, with the root selected by the ball P(alpha, beta). Returns nullopt
/// when irreducibility of the squarefree part cannot be certified.
std::optional<AlgebraicNumber> combine(const IntPolynomial& p, const AlgebraicNumber& a,
                                       const AlgebraicNumber& b);

/// Res_y(g(y), P(x, y)) as a polynomial in x, by evaluation and interpolation.
ZPoly resultant_in_y(const ZPoly& g, const IntPolynomial& p);

/// Random irreducible (certified) polynomial of degree in [1, max_degree]
/// with coefficients bounded by `coeff_bound`, nonzero constant term.
ZPoly random_irreducible(std::mt19937_64& rng, long max_degree, long coeff_bound);

}  // namespace tcert
