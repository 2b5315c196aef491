#pragma once

#include <gmpxx.h>

#include <vector>

#include "tcert/ball.hpp"
#include "tcert/upoly.hpp"

namespace tcert {

/// Certified isolation of all complex roots of a squarefree polynomial.
/// Each returned disc contains exactly one root and the discs are pairwise
/// disjoint. Precision doubles up to `max_prec` before PrecisionInsufficient.
std::vector<Ball> isolate_roots(const ZPoly& f, mpfr_prec_t prec = kDefaultPrecision,
                                mpfr_prec_t max_prec = 4096);

/// All rational roots of f (any multiplicity collapsed), ascending.
std::vector<mpq_class> rational_roots(const ZPoly& f);

}  // namespace tcert
