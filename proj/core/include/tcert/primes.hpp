#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tcert/real.hpp"
#include "tcert/report.hpp"

namespace tcert {

using Progression = std::pair<long, long>;  // (a, delta)

/// Sieve of Eratosthenes up to `limit` with cumulative counts and sums.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  const std::vector<std::uint64_t>& primes() const { return primes_; }
  bool is_prime(std::uint64_t n) const;

  /// Number of primes p < x (or p <= x when inclusive).
  std::uint64_t pi(std::uint64_t x, bool inclusive = false) const;
  /// Sum of primes p < x (or p <= x).
  const mpz_class& sigma(std::uint64_t x, bool inclusive = false) const;

 private:
  std::size_t index_below(std::uint64_t x, bool inclusive) const;

  std::uint64_t limit_;
  std::vector<bool> composite_;
  std::vector<std::uint64_t> primes_;
  std::vector<mpz_class> prefix_;  // prefix_[k] = sum of the first k primes
};

struct PrimeStats {
  std::uint64_t pi = 0;
  mpz_class sigma;
};

/// Exact count and sum over primes p < x (p <= x if inclusive), optionally
/// restricted to p = a mod delta. Requires gcd(a, delta) = 1 and x <= limit.
PrimeStats prime_stats(const PrimeTable& t, std::uint64_t x, std::optional<Progression> prog = std::nullopt,
                       bool inclusive = false);
PrimeStats prime_stats(std::uint64_t x, std::optional<Progression> prog = std::nullopt, bool inclusive = false);

long euler_phi(long n);

/// Findings for one inequality evaluated on every integer x in [3, limit].
struct ThresholdFinding {
  std::string id;
  std::string statement;
  bool inclusive = false;
  /// Claimed range: holds for every x >= claimed_from.
  std::uint64_t claimed_from = 11;
  /// Part of the two-sided prime-sum claim (as opposed to a Chebyshev side check).
  bool sum_claim = false;
  /// Smallest x0 with the inequality certified for all tested x >= x0.
  std::optional<std::uint64_t> threshold;
  /// Certified violations at x >= claimed_from.
  std::vector<std::uint64_t> violations;
  std::uint64_t violation_count = 0;
  std::uint64_t undetermined = 0;
};

struct PrimeBoundsReport {
  std::uint64_t limit = 0;
  std::vector<ThresholdFinding> findings;
  /// max pi(x) log x / x over [3, limit] with the maximising x.
  Real c14;
  std::uint64_t c14_at = 0;
  std::optional<Progression> progression;
  /// max pi(x, a, delta) phi(delta) log x / x.
  std::optional<Real> c14_progression;

  /// Certified violation of the prime-sum claim "for x >= 11".
  bool claim_violated() const;
};

/// Certified evaluation of x^2/(2 log x) <= Sigma(x) <= x^2/log x and
/// x/log x <= pi(x) for x in [3, limit], both sum conventions.
PrimeBoundsReport certify_prime_bounds(std::uint64_t limit, std::optional<Progression> prog = std::nullopt,
                                       std::size_t max_listed = 64);

/// Literature constant with pi(x) < 1.25506 x / log x for x > 1.
Real chebyshev_c14(mpfr_prec_t prec = kDefaultPrecision);

json to_json(const PrimeBoundsReport& r);

}  // namespace tcert
