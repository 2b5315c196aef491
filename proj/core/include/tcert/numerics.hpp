#pragma once

#include <optional>

#include "tcert/ball.hpp"
#include "tcert/int_series.hpp"
#include "tcert/real.hpp"

namespace tcert {

/// Upper bound for sum_{n>=0} (M+n)^K r^n, namely (M+1)^K K! / (1-r)^{K+1}.
/// Throws Divergence unless 0 < r < 1 (using the upper end of r).
Real schwarz_tail_majorant(unsigned long M, unsigned long K, const Real& r);

/// Tail model for coefficients beyond the truncation:
/// |c_k| <= scale * c1^N * k^{12N} for every k >= 1.
struct HeckeTail {
  unsigned long N = 1;
  Real c1;
  Real scale = Real::from_int(1);
};

/// Upper bound for sum_{k>=T} scale c1^N k^{12N} R^k (min of a geometric
/// ratio bound and the Schwarz-type majorant).
Real hecke_tail_bound(const HeckeTail& tail, long T, const Real& R);

struct SeriesValue {
  Ball value;
  /// True when the value is only that of the truncated polynomial.
  bool truncated_only = false;
};

/// Evaluates s at z. With a tail model the ball contains the value of the
/// full series; without one it encloses the truncated polynomial only.
SeriesValue eval_series_certified(const IntSeries& s, const Ball& z,
                                  const std::optional<HeckeTail>& tail = std::nullopt);

}  // namespace tcert
