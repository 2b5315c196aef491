#include <gtest/gtest.h>

#include <cmath>

#include "tcert/error.hpp"
#include "tcert/primes.hpp"

using namespace tcert;

namespace {

bool trial_division(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

const ThresholdFinding& finding(const PrimeBoundsReport& r, const std::string& id) {
  for (const auto& f : r.findings)
    if (f.id == id) return f;
  throw std::runtime_error("missing finding " + id);
}

// Smallest x0 >= 3 with the comparison true on [x0, limit], in long double.
template <class Pred>
std::uint64_t oracle_threshold(std::uint64_t limit, Pred holds) {
  std::uint64_t last_bad = 0;
  for (std::uint64_t x = 3; x <= limit; ++x)
    if (!holds(x)) last_bad = x;
  return std::max<std::uint64_t>(last_bad + 1, 3);
}

}  // namespace

TEST(Primes, SieveMatchesTrialDivision) {
  const PrimeTable t(10000);
  std::uint64_t count = 0;
  for (std::uint64_t n = 0; n <= 10000; ++n) {
    EXPECT_EQ(t.is_prime(n), trial_division(n)) << n;
    count += trial_division(n);
  }
  EXPECT_EQ(t.primes().size(), count);
  EXPECT_EQ(count, 1229u);
}

TEST(Primes, CountsAndSums) {
  const PrimeTable t(1000);
  EXPECT_EQ(t.pi(100), 25u);
  EXPECT_EQ(t.sigma(100), 1060);
  EXPECT_EQ(t.pi(97), 24u);
  EXPECT_EQ(t.pi(97, true), 25u);
  EXPECT_EQ(t.sigma(11), 17);
  EXPECT_EQ(t.sigma(11, true), 28);
  EXPECT_EQ(t.pi(2), 0u);
  EXPECT_EQ(t.pi(2, true), 1u);
}

TEST(Primes, Progressions) {
  const PrimeTable t(1000);
  const PrimeStats s = prime_stats(t, 30, Progression{1, 4});
  EXPECT_EQ(s.pi, 4u);
  EXPECT_EQ(s.sigma, 5 + 13 + 17 + 29);
  const PrimeStats all = prime_stats(t, 30);
  EXPECT_EQ(all.pi, 10u);
  EXPECT_THROW(prime_stats(t, 30, Progression{2, 4}), Error);
}

TEST(Primes, EulerPhi) {
  EXPECT_EQ(euler_phi(1), 1);
  EXPECT_EQ(euler_phi(4), 2);
  EXPECT_EQ(euler_phi(12), 4);
  EXPECT_EQ(euler_phi(97), 96);
  for (long n = 1; n < 200; ++n) {
    long c = 0;
    for (long k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
    EXPECT_EQ(euler_phi(n), c);
  }
}

TEST(Primes, ThresholdsAgainstOracle) {
  const std::uint64_t limit = 10000;
  const PrimeBoundsReport r = certify_prime_bounds(limit);
  const PrimeTable t(limit);
  for (bool inc : {false, true}) {
    const std::string suf = inc ? "-inclusive" : "-strict";
    const auto lower = oracle_threshold(limit, [&](std::uint64_t x) {
      const long double xd = x;
      return xd * xd / (2 * std::log(xd)) <= t.sigma(x, inc).get_d();
    });
    const auto upper = oracle_threshold(limit, [&](std::uint64_t x) {
      const long double xd = x;
      return t.sigma(x, inc).get_d() <= xd * xd / std::log(xd);
    });
    const auto pil = oracle_threshold(limit, [&](std::uint64_t x) {
      const long double xd = x;
      return xd / std::log(xd) <= static_cast<long double>(t.pi(x, inc));
    });
    EXPECT_EQ(finding(r, "sum-lower" + suf).threshold.value_or(0), lower);
    EXPECT_EQ(finding(r, "sum-upper" + suf).threshold.value_or(0), upper);
    EXPECT_EQ(finding(r, "pi-lower" + suf).threshold.value_or(0), pil);
  }
  EXPECT_EQ(finding(r, "sum-lower-strict").threshold.value_or(0), 348u);
  EXPECT_TRUE(r.claim_violated());
  EXPECT_GT(finding(r, "sum-lower-strict").violation_count, 0u);
}

TEST(Primes, ViolationsAreGenuine) {
  const PrimeBoundsReport r = certify_prime_bounds(2000);
  const PrimeTable t(2000);
  const auto& f = finding(r, "sum-lower-strict");
  ASSERT_FALSE(f.violations.empty());
  for (std::uint64_t x : f.violations) {
    EXPECT_GE(x, 11u);
    const double xd = static_cast<double>(x);
    EXPECT_GT(xd * xd / (2 * std::log(xd)), t.sigma(x).get_d());
  }
}

TEST(Primes, ChebyshevConstant) {
  const PrimeBoundsReport r = certify_prime_bounds(1000);
  EXPECT_EQ(r.c14_at, 113u);
  EXPECT_NEAR(r.c14.approx(), 30 * std::log(113.0) / 113, 1e-12);
  EXPECT_TRUE(r.c14.certainly_le(chebyshev_c14()));
}

TEST(Primes, ProgressionConstant) {
  const PrimeBoundsReport r = certify_prime_bounds(10000, Progression{1, 4});
  ASSERT_TRUE(r.c14_progression.has_value());
  double best = 0;
  const PrimeTable t(10000);
  for (std::uint64_t x = 3; x <= 10000; ++x) {
    const auto s = prime_stats(t, x, Progression{1, 4}, true);
    best = std::max(best, 2.0 * static_cast<double>(s.pi) * std::log(static_cast<double>(x)) / static_cast<double>(x));
  }
  EXPECT_NEAR(r.c14_progression->approx(), best, 1e-12);
}

TEST(Primes, RejectsSmallLimit) { EXPECT_THROW(certify_prime_bounds(50), Error); }
