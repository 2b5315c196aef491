#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <optional>
#include <tuple>
#include <vector>

#include "tcert/heights.hpp"
#include "tcert/real.hpp"
#include "tcert/report.hpp"

namespace tcert {

/// Classical modular polynomial Phi_N(X, Y) as a bivariate integer polynomial.
struct ModularPolynomial {
  long level = 0;
  IntPolynomial coeffs{2};

  bool symmetric() const;
  bool monic_in_x() const;
  unsigned degree_x() const { return coeffs.degree_in(0); }
  unsigned degree_y() const { return coeffs.degree_in(1); }
};

struct LevelInvariants {
  mpz_class psi;
  Real kappa;
  Real lambda;
};

/// psi(n) = n prod (1 + 1/p), kappa = sum_{p | n} log p / p,
/// lambda = sum_{p^e || n} (p^e - 1) / (p^{e-1} (p^2 - 1)) log p.
LevelInvariants level_invariants(long n, mpfr_prec_t prec = kDefaultPrecision);

/// Phi_p for p in {2, 3, 5, 7} from q-expansions. `K` is the number of
/// coefficients that must vanish after eliminating the poles (0 = default).
ModularPolynomial compute_phi_p(long p, long K = 0);

/// Independent reference table for Phi_2.
ModularPolynomial phi2_reference();

struct IdentityReport {
  bool holds = false;
  long checked_to = 0;
  std::optional<long> first_nonzero;
};

/// Checks Phi(J(q^p), J(q)) = 0 modulo q^K by exact series substitution.
IdentityReport verify_phi_identity(const ModularPolynomial& phi, long K);

struct PhiHeightReport {
  BoundReport report;
  mpz_class height;
  mpz_class length;
  /// h / (6 psi) - log N + 2 kappa: the empirical O(1) of the Cohen form.
  Real cohen_constant;
};

PhiHeightReport certify_phi_height(const ModularPolynomial& phi);

struct CmData {
  long a = 0, b = 0, c = 0;
};

struct SpecializationReport {
  BoundReport report;
  /// (degree, multiplicity) of factors known exactly (rational roots).
  std::vector<std::pair<long, long>> linear_factors;
  /// Degrees of the squarefree parts left after removing rational roots.
  std::vector<long> residual_degrees;
  /// Certified lower bound for the degree of every irreducible factor of Phi(X, j0).
  long min_degree_lower = 0;
  std::vector<mpq_class> rational_roots;
  /// With CM data: j(p tau) located numerically and the degree lower bound of
  /// the factor it is a root of (the degree of Q(j0, j(p tau)) over Q(j0)).
  std::optional<Ball> j_p_tau;
  std::optional<long> relevant_degree_lower;
};

/// Factor-degree information of Phi_p(X, j0) over Q for rational j0. With CM
/// data (a tau^2 + b tau + c = 0, Im tau > 0) the factor vanishing at j(p tau)
/// is identified and (p - 1)/3 <= its degree is checked when p does not divide a.
SpecializationReport specialization_degree(const ModularPolynomial& phi, const AlgebraicNumber& j0,
                                           std::optional<CmData> cm = std::nullopt);

/// Lines "a b c" (coefficient c of X^a Y^b), only a >= b.
void write_modpoly(std::ostream& out, const ModularPolynomial& phi);
ModularPolynomial read_modpoly(std::istream& in, long level);

}  // namespace tcert
