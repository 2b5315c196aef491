#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

#include "tcert/ball.hpp"
#include "tcert/int_series.hpp"
#include "tcert/numerics.hpp"
#include "tcert/real.hpp"
#include "tcert/report.hpp"
#include "tcert/siegel.hpp"

namespace tcert {

/// A(x, y) = sum_{0 <= i, l < N} a[i][l] x^i y^l.
struct AuxPolynomial {
  long N = 0;
  std::vector<std::vector<mpz_class>> a;

  mpz_class length() const;
  mpz_class height() const;
  bool is_zero() const;
};

/// F = Delta^{2N} A(z, J(z)) with its vanishing order M and d0 = [z^M] F.
struct AuxFunction {
  AuxPolynomial poly;
  long N = 0;
  long L = 0;
  IntSeries series;
  long M = 0;
  mpz_class d0;
  NormReport siegel;
  /// Upper bound for the Hecke constant used by tail estimates.
  Real c1;
};

struct AuxOptions {
  /// Truncation of F; 0 selects L + margin + 16 with margin = 4N.
  long trunc = 0;
  long margin = 0;
  /// Upper bound for C1; the default is the certified depth-6 value.
  std::optional<Real> c1;
  SiegelOptions siegel;
};

/// Upper end of the shipped certified C1.
Real default_c1(mpfr_prec_t prec = kDefaultPrecision);

/// Rows nu = 0..L-1, columns i*N + l, entries c_{N,l}(nu - i) for i <= min(nu, N-1).
IntMatrix auxiliary_system(long N, long L);

/// Builds A by the small-kernel solver and F to the configured truncation.
AuxFunction build_auxiliary(long N, const AuxOptions& opts = {});
AuxFunction build_auxiliary(long N, long trunc);
/// F for a given A, with M and d0. Throws IncreaseTruncation if F vanishes to trunc.
AuxFunction make_aux_function(const AuxPolynomial& poly, long trunc, const Real& c1);

/// F modulo z^trunc as sum_{i,l} a_{i,l} z^i c_{N,l}(k).
IntSeries assemble_from_tables(const AuxPolynomial& poly, long trunc);
/// F modulo z^trunc as the product Delta^{2N} * A(z, J(z)) of Laurent series.
IntSeries assemble_direct(const AuxPolynomial& poly, long trunc);

/// Same function with a longer series.
AuxFunction extend(const AuxFunction& f, long trunc);

/// Tail model |[z^k] F| <= L(A) c1^N k^{12N}.
HeckeTail aux_tail(const AuxFunction& f);
/// Series evaluation of F with the tail bound (good for small |z|).
SeriesValue eval_aux_series(const AuxFunction& f, const Ball& z);
/// Product-form evaluation sum_l P_l(z) Delta(z)^{2N-l} E4(z)^{3l}; valid on any disc in |z| < 1.
Ball eval_aux_product(const AuxPolynomial& poly, const Ball& z);
/// G(z) = z^{-M} F(z) by the product form.
Ball eval_g_product(const AuxFunction& f, const Ball& z);

/// Rank of the coefficient matrix of {z^i Delta^{2d} J^l} on q^{2d} .. q^{2d+2d^2-1}.
std::size_t independence_rank(long d);

/// C4 = e^{4/e} C1^2, so that N^4 C1^{2N} <= C4^N.
Real c4_from_c1(const Real& c1);
/// C5 = 12^12 C4.
Real c5_from_c4(const Real& c4);

struct UpperBoundReport {
  BoundReport report;
  Real abs_f;
  Real c4;
  Real c5;
  /// (1/(1-|z|))^{12N+1} <= (N^2/2)^N.
  bool precondition_met = false;
};

/// Certified |F(z)| against the explicit Schwarz bounds.
UpperBoundReport check_upper_bound(const AuxFunction& f, const Ball& z, const Real& c4);

struct PrimeScan {
  std::optional<long> prime;
  /// Primes whose enclosure of F(q^p) contains 0, with the enclosure radius.
  std::vector<std::pair<long, Real>> uncertain;
  std::optional<Ball> value;
};

PrimeScan scan_primes(const Ball& q, const AuxFunction& f, long pmax,
                      std::optional<std::pair<long, long>> residue = std::nullopt);
/// Smallest prime P <= pmax (optionally P = a mod delta) with 0 outside the
/// enclosure of F(q^P). Throws Exhausted otherwise.
long first_good_prime(const Ball& q, const AuxFunction& f, long pmax,
                      std::optional<std::pair<long, long>> residue = std::nullopt);

/// Hypothesis mode: every prime below P is assumed to be a zero of F.
BoundReport blaschke_prime_bound(const Real& q_abs, const AuxFunction& f, long P, const Real& c14,
                                 int identity_samples = 16);

struct JensenReport {
  BoundReport report;
  long zero_count = 0;
  Real contour_radius;
  Real bound;
  long arcs = 0;
};

struct JensenOptions {
  /// Relative radius offset epsilon in |z| = |q|(1 + epsilon).
  double epsilon = 1e-3;
  int initial_arcs = 64;
  int max_depth = 14;
  int retries = 4;
};

/// Zeros of G = z^{-M} F in |z| < |q| + eps by a certified argument principle.
JensenReport jensen_zero_bound(const Ball& q, const AuxFunction& f, const JensenOptions& opts = {});

}  // namespace tcert
