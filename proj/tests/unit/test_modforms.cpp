#include <gtest/gtest.h>

#include "tcert/auxfn.hpp"
#include "tcert/error.hpp"
#include "tcert/modforms.hpp"

using namespace tcert;

TEST(Modforms, DeltaSquaredHead) {
  const CuspCoeffTable t = cusp_coeffs(1, 0, 5);
  EXPECT_EQ(t.coeffs.coeff(2), 1);
  EXPECT_EQ(t.coeffs.coeff(3), -48);
  EXPECT_EQ(t.coeffs.coeff(4), 1080);
  EXPECT_EQ(t.weight, 24);
}

TEST(Modforms, ValuationIsTwoNMinusL) {
  for (long N = 1; N <= 4; ++N) {
    for (long l = 0; l <= N; ++l) {
      const CuspCoeffTable t = cusp_coeffs(N, l, 2 * N + 4);
      EXPECT_EQ(vanishing_order(t.coeffs), 2 * N - l) << N << "," << l;
      EXPECT_EQ(t.coeffs.coeff(2 * N - l), 1);
    }
  }
}

TEST(Modforms, ConvolutionOracle) {
  // Delta^{2N} J^l by plain Laurent products against the E4 route.
  for (long N = 1; N <= 3; ++N) {
    for (long l = 0; l <= N; ++l) {
      const long K = 40;
      const CuspCoeffTable t = cusp_coeffs(N, l, K);
      IntSeries direct = delta_expansion(K + 1 + l).pow(2 * N) * j_expansion(K + 1).pow(l);
      direct = direct.truncated(K + 1);
      EXPECT_EQ(t.coeffs.truncated(K + 1), direct) << N << "," << l;
    }
  }
}

TEST(Modforms, RejectsBadArguments) {
  EXPECT_THROW(cusp_coeffs(2, 3, 10), Error);
  EXPECT_THROW(cusp_coeffs(2, 0, 2), Error);
}

TEST(Modforms, HeckeBoundHoldsWithShippedC1) {
  const Real c1 = default_c1();
  for (long N = 1; N <= 4; ++N) {
    for (long l = 0; l <= N; ++l) {
      const HeckeReport r = certify_hecke(cusp_coeffs(N, l, 200), c1);
      EXPECT_TRUE(r.pass);
      EXPECT_EQ(r.violations, 0);
      EXPECT_LT(r.max_ratio.upper(), 1.0);
    }
  }
}

TEST(Modforms, HeckeReportsViolationsForTinyConstant) {
  const HeckeReport r = certify_hecke(cusp_coeffs(1, 1, 30), Real::from_decimal("1e-30"));
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.violations, 0);
}

TEST(Modforms, SupBoundDominatesValueAtI) {
  // tau = i: Im tau = 1, q = e^{-2 pi}.
  const Real two_pi = Real::pi() * 2;
  const Ball q = Ball::from_real(exp(-two_pi));
  const Real val = exp(two_pi) * delta_value(q).abs() * delta_value(q).abs();
  const Real bound = hecke_sup_bound(2, 0, 3);
  EXPECT_TRUE(val.certainly_le(bound));
}

TEST(Modforms, ProductFormsAgreeWithSeries) {
  const Ball z = Ball::from_mpq(mpq_class(1, 3), mpq_class(1, 5));
  const Ball d = delta_value(z);
  const Ball e = e4_value(z);
  const IntSeries ds = delta_expansion(120), es = e4_expansion(120);
  Ball ps(kDefaultPrecision), pe(kDefaultPrecision);
  Ball zk = Ball::from_int(1);
  for (long k = 0; k < 120; ++k) {
    if (k >= 1) ps += zk * ds.coeff(k);
    pe += zk * es.coeff(k);
    zk *= z;
  }
  EXPECT_LT((d - ps).abs().upper(), 1e-20);
  EXPECT_LT((e - pe).abs().upper(), 1e-15);
  EXPECT_TRUE(d.overlaps(ps.inflated(Real::from_decimal("1e-20"))));
}

TEST(Modforms, HeckeConstantJsonRoundTrip) {
  HeckeConstant h;
  h.c_delta2 = Real::from_decimal("0.0022");
  h.c_delta2j = Real::from_decimal("7.78");
  h.c1 = h.c_delta2j;
  h.grid_depth = 6;
  const HeckeConstant back = hecke_constant_from_json(to_json(h));
  EXPECT_EQ(back.grid_depth, 6);
  EXPECT_TRUE(h.c1.certainly_le(back.c1));
  EXPECT_NEAR(back.c1.approx(), 7.78, 1e-10);
}
