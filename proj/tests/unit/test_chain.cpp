#include <gtest/gtest.h>

#include <cmath>

#include "tcert/chain.hpp"
#include "tcert/error.hpp"
#include "tcert/modforms.hpp"

using namespace tcert;

namespace {

// First integer beyond the larger root of M^{1/4} = log M (c = 1).
long bisection_threshold() {
  auto f = [](double m) { return std::pow(m, 0.25) - std::log(m); };
  double lo = std::exp(4.0), hi = 1e8;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? hi : lo) = mid;
  }
  return static_cast<long>(std::floor(hi)) + 1;
}

ProofInstance instance_n4() {
  ProofInstance inst;
  inst.q_abs = Real::from_mpq(mpq_class(1, 2));
  inst.q = Ball::from_mpq(mpq_class(1, 2), 0);
  inst.N = 4;
  inst.aux = std::make_shared<AuxFunction>(build_auxiliary(4));
  inst.arith = ArithmeticData{1, Real::log2(), 1, Real::from_int(0)};
  return inst;
}

ChainInputs inputs() { return {default_c1(), Real::from_int(10), Real::from_decimal("1.25506")}; }

const ChainRun& run_n4() {
  static const ChainRun run = run_chain(instance_n4(), inputs());
  return run;
}

}  // namespace

TEST(Chain, ThresholdAgainstBisection) {
  const mpz_class t = contradiction_threshold(Real::from_int(1));
  const long oracle = bisection_threshold();
  EXPECT_LE(abs(t - oracle), 1);
  EXPECT_EQ(t, 5504);
}

TEST(Chain, ThresholdOtherConstants) {
  EXPECT_EQ(contradiction_threshold(Real::from_mpq(mpq_class(1, 2))), 1);
  const mpz_class t2 = contradiction_threshold(Real::from_int(2));
  EXPECT_EQ(t2, 3229507);
  // Direct check around the threshold for c = 2.
  auto holds = [](double m) { return m > 2 * std::pow(m, 5.0 / 6) * std::pow(std::log(m), 2.0 / 3); };
  EXPECT_TRUE(holds(t2.get_d()));
  EXPECT_FALSE(holds(t2.get_d() - 1));
}

TEST(Chain, ThresholdMonotone) {
  mpz_class prev = 0;
  for (int k = 1; k <= 8; ++k) {
    const mpz_class t = contradiction_threshold(Real::from_int(k));
    EXPECT_GE(t, prev);
    prev = t;
  }
}

TEST(Chain, AlgebraicCutoff) {
  EXPECT_EQ(algebraic_cutoff(2, 10).prime, 67);
  EXPECT_EQ(algebraic_cutoff(1, 1).prime, 5);
  EXPECT_EQ(algebraic_cutoff(1, 1, 100).prime, 101);
  for (long n = 1; n < 30; ++n) {
    const long p = algebraic_cutoff(3, n).prime;
    EXPECT_GT((p - 1) / 3.0, 3.0 * n);
  }
}

TEST(Chain, MinNForRadius) {
  EXPECT_EQ(min_N_for_radius(Real::from_mpq(mpq_class(1, 2))), 5794);
  EXPECT_EQ(min_N_for_radius(Real::from_int(0)), 91);
  EXPECT_EQ(min_N_for_radius(Real::from_decimal("0.1")), 171);
  // Oracle: the defining inequality in logs.
  auto ok = [](long N, double r) { return (12.0 * N + 1) * -std::log(1 - r) <= N * std::log(N * N / 2.0); };
  EXPECT_TRUE(ok(5794, 0.75));
  EXPECT_FALSE(ok(5793, 0.75));
}

TEST(Chain, C6LowerBound) {
  const Real r = Real::from_mpq(mpq_class(1, 2));
  const Real c6 = certify_c6(r);
  EXPECT_TRUE(c6.is_positive());
  const Real two_pi = Real::pi() * 2;
  for (int k = 0; k < 64; ++k) {
    const Ball z = Ball::polar(r, two_pi * k / 64);
    EXPECT_TRUE(c6.certainly_le(eta24_product(z).abs()));
  }
  EXPECT_TRUE(c6.certainly_le(Real::from_int(1)));
}

TEST(Chain, LedgerProvenance) {
  const ConstantLedger& l = run_n4().lower.constants;
  EXPECT_EQ(l.entry("C2").provenance, Provenance::UserConfigured);
  EXPECT_EQ(l.entry("C6").provenance, Provenance::CertifiedComputed);
  EXPECT_EQ(l.entry("C3").provenance, Provenance::ReconstructedClosedForm);
  EXPECT_THROW(l.get("C99"), Error);
}

TEST(Chain, NFourInstanceDeterminate) {
  const ChainRun& run = run_n4();
  EXPECT_FALSE(run.lower.report.any_undetermined());
  ASSERT_TRUE(run.chain.has_value());
  EXPECT_FALSE(run.chain->report.any_undetermined());
  // Desk-scale parameters are far below the asymptotic range.
  EXPECT_FALSE(run.chain->contradiction);
  EXPECT_EQ(run.chain->report.find("power-gathering")->status, Status::Fails);
  EXPECT_EQ(run.chain->report.find("final")->status, Status::Holds);
  EXPECT_EQ(run.min_N, 5794);
}

TEST(Chain, RoutesOrdered) {
  const RouteComparison& r = run_n4().routes;
  ASSERT_EQ(r.routes.size(), 3u);
  for (std::size_t i = 1; i < r.routes.size(); ++i) EXPECT_LE(r.routes[i - 1].exponent, r.routes[i].exponent);
  EXPECT_EQ(r.routes.front().route, "blaschke");
  EXPECT_TRUE(r.blaschke_smallest);
  EXPECT_EQ(r.at_instance.size(), 3u);
}

TEST(Chain, JsonDeterministic) {
  const std::string a = to_json(run_n4()).dump();
  const std::string b = to_json(run_chain(instance_n4(), inputs())).dump();
  EXPECT_EQ(a, b);
}
