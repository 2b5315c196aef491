#pragma once

#include <nlohmann/json.hpp>

#include "tcert/ball.hpp"
#include "tcert/int_series.hpp"
#include "tcert/real.hpp"

namespace tcert {

/// Exact coefficients of the cusp form Delta^{2N} J^l.
struct CuspCoeffTable {
  long N = 1;
  long l = 0;
  /// Known through q^K (trunc K+1).
  IntSeries coeffs;
  long weight = 24;
};

/// Computed as Delta^{2N-l} (E4^3)^l. Requires 0 <= l <= N and K >= 2N - l.
CuspCoeffTable cusp_coeffs(long N, long l, long K);

struct HeckeConstant {
  Real c_delta2;
  Real c_delta2j;
  Real c1;
  int grid_depth = 0;
  mpfr_prec_t precision = kDefaultPrecision;
};

/// Certified upper bound for e^{2 pi} sup_H Im(tau)^{w/2} |f(tau)| with
/// f = Delta^a E4^{3b} (weight 12(a+b)), by branch and bound over
/// 0 <= Re tau <= 1/2, sqrt(3)/2 <= Im tau <= 2 plus a tail bound above 2.
Real hecke_sup_bound(long a, long b, int grid_depth, mpfr_prec_t prec = kDefaultPrecision);

/// C1 = max{1, C(Delta^2), C(Delta^2 J)}.
HeckeConstant estimate_hecke_constant(int grid_depth, mpfr_prec_t prec = kDefaultPrecision);

struct HeckeReport {
  /// max_k |c(k)| / (c1^N k^{12N}) over stored k >= 1, as an enclosure.
  Real max_ratio;
  long argmax_k = 0;
  long violations = 0;
  bool pass = true;
};

/// Checks |c_{N,l}(k)| <= c1^N k^{12N} for all stored k.
HeckeReport certify_hecke(const CuspCoeffTable& table, const Real& c1);

/// prod_{n>=1} (1 - z^n)^24 on a disc with |z| < 1, including a tail bound.
Ball eta24_product(const Ball& z);
/// Delta(z) = z * eta24_product(z).
Ball delta_value(const Ball& z);
/// E4(z) = 1 + 240 sum n^3 z^n / (1 - z^n), including a tail bound.
Ball e4_value(const Ball& z);

nlohmann::json to_json(const HeckeConstant& h);
/// Reads the constant written by to_json; the stored upper ends are used.
HeckeConstant hecke_constant_from_json(const nlohmann::json& j);

}  // namespace tcert
