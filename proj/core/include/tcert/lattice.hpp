#pragma once

#include <gmpxx.h>

#include <vector>

namespace tcert {

using IntMatrix = std::vector<std::vector<mpz_class>>;

/// In-place integral LLL reduction of linearly independent rows
/// (exact arithmetic, Lovasz parameter delta = num/den).
void lll_reduce(IntMatrix& basis, long delta_num = 99, long delta_den = 100);

/// LLL-reduced basis of the integer kernel lattice {x in Z^X : m x = 0},
/// obtained by reducing the weighted embedding [I | W m^T].
IntMatrix integer_kernel_basis(const IntMatrix& m);

/// Rows in reduced row echelon form over Q; `pivots` receives pivot columns.
std::vector<std::vector<mpq_class>> rref(const IntMatrix& m, std::vector<std::size_t>& pivots);

}  // namespace tcert
