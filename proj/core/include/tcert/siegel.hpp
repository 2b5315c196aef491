#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "tcert/lattice.hpp"
#include "tcert/real.hpp"

namespace tcert {

struct NormReport {
  mpz_class sup_norm;
  /// (X B')^{Y/(X-Y)} with B' = max(B, 1).
  Real siegel_bound;
  bool bound_met = false;
  /// True when the exhaustive oracle replaced the lattice vector.
  bool used_fallback = false;
  std::size_t kernel_dim = 0;
};

struct KernelResult {
  std::vector<mpz_class> vector;
  NormReport report;
};

struct SiegelOptions {
  /// Enumeration budget for the exhaustive fallback.
  std::uint64_t fallback_budget = 20'000'000;
};

/// Nonzero small integer kernel vector of m (X > Y required).
KernelResult kernel_small_vector(const IntMatrix& m, const SiegelOptions& opts = {});

/// Nonzero kernel vector of minimal sup-norm among those with sup-norm <= bound,
/// or nullopt when none exists. Enumerates free coordinates in sup-norm shells.
std::optional<std::vector<mpz_class>> exhaustive_small_solution(const IntMatrix& m, const mpz_class& bound,
                                                                std::uint64_t budget = 20'000'000);

/// Exact test sup <= (X B')^{Y/(X-Y)}.
bool siegel_bound_met(const mpz_class& sup, std::size_t x, std::size_t y, const mpz_class& b);
Real siegel_bound(std::size_t x, std::size_t y, const mpz_class& b, mpfr_prec_t prec = kDefaultPrecision);
/// Largest integer not exceeding the Siegel bound.
mpz_class siegel_bound_floor(std::size_t x, std::size_t y, const mpz_class& b);

mpz_class sup_norm(const std::vector<mpz_class>& v);
bool in_kernel(const IntMatrix& m, const std::vector<mpz_class>& v);

}  // namespace tcert
