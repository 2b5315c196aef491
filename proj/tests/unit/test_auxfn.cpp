#include <gtest/gtest.h>

#include "tcert/auxfn.hpp"
#include "tcert/error.hpp"
#include "tcert/modforms.hpp"

using namespace tcert;

namespace {

const AuxFunction& built(long N) {
  static std::map<long, AuxFunction> cache;
  auto it = cache.find(N);
  if (it == cache.end()) it = cache.emplace(N, build_auxiliary(N)).first;
  return it->second;
}

AuxPolynomial constant_one(long N) {
  AuxPolynomial p;
  p.N = N;
  p.a.assign(N, std::vector<mpz_class>(N, 0));
  p.a[0][0] = 1;
  return p;
}

}  // namespace

TEST(Auxfn, NTwoIsDeltaFourth) {
  const AuxFunction& f = built(2);
  EXPECT_EQ(f.L, 2);
  EXPECT_EQ(f.poly.a[0][0], 1);
  EXPECT_EQ(f.poly.length(), 1);
  EXPECT_EQ(f.M, 4);
  EXPECT_EQ(f.d0, 1);
  const IntSeries d4 = delta_expansion(f.series.trunc()).pow(4);
  EXPECT_EQ(f.series, d4.truncated(f.series.trunc()));
}

TEST(Auxfn, NFourRowSupport) {
  const IntMatrix m = auxiliary_system(4, 8);
  ASSERT_EQ(m.size(), 8u);
  for (std::size_t nu = 0; nu < m.size(); ++nu) {
    bool nonzero = false;
    for (const auto& e : m[nu]) nonzero = nonzero || e != 0;
    EXPECT_EQ(nonzero, nu >= 5) << nu;
  }
  const AuxFunction& f = built(4);
  EXPECT_GE(f.M, 8);
  EXPECT_TRUE(in_kernel(m, [&] {
    std::vector<mpz_class> v;
    for (long i = 0; i < 4; ++i)
      for (long l = 0; l < 4; ++l) v.push_back(f.poly.a[i][l]);
    return v;
  }()));
}

TEST(Auxfn, SystemEntriesAreCuspCoefficients) {
  const long N = 3, L = 4;
  const IntMatrix m = auxiliary_system(N, L);
  for (long nu = 0; nu < L; ++nu) {
    for (long i = 0; i < N; ++i) {
      for (long l = 0; l < N; ++l) {
        const mpz_class expect = i <= nu ? cusp_coeffs(N, l, 2 * N + L).coeffs.coeff(nu - i) : mpz_class(0);
        EXPECT_EQ(m[nu][i * N + l], expect);
      }
    }
  }
}

TEST(Auxfn, BuiltInstancesInvariants) {
  for (long N = 2; N <= 5; ++N) {
    const AuxFunction& f = built(N);
    const long L = N * N / 2;
    EXPECT_GE(f.M, L);
    EXPECT_GE(f.M, N + 1);
    EXPECT_NE(f.d0, 0);
    EXPECT_EQ(f.series.coeff(f.M), f.d0);
    EXPECT_FALSE(f.poly.is_zero());
    EXPECT_EQ(assemble_from_tables(f.poly, f.series.trunc()), assemble_direct(f.poly, f.series.trunc()));
    // length(A) <= N^4 C1^N L^{12N}
    const Real lim = pow(Real::from_int(N), 4) * pow(f.c1, N) * pow(Real::from_int(L), 12 * N);
    EXPECT_TRUE(Real::from_mpz(f.poly.length()).certainly_le(lim));
  }
}

TEST(Auxfn, IndependenceRank) {
  for (long d = 1; d <= 4; ++d) EXPECT_EQ(independence_rank(d), static_cast<std::size_t>(d * d));
}

TEST(Auxfn, TruncationTooShort) {
  try {
    make_aux_function(constant_one(2), 3, default_c1());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IncreaseTruncation);
  }
}

TEST(Auxfn, ProductAndSeriesEvaluationAgree) {
  const AuxFunction& f = built(3);
  const Ball z = Ball::from_mpq(mpq_class(1, 5), mpq_class(-1, 7));
  const Ball a = eval_aux_series(extend(f, 200), z).value;
  const Ball b = eval_aux_product(f.poly, z);
  EXPECT_TRUE(a.overlaps(b));
}

TEST(Auxfn, UpperBoundAtHalf) {
  const AuxFunction& f = built(2);
  const Real c4 = c4_from_c1(f.c1);
  const UpperBoundReport r = check_upper_bound(f, Ball::from_mpq(mpq_class(1, 2), 0), c4);
  EXPECT_EQ(r.report.find("upper-schwarz")->status, Status::Holds);
  EXPECT_EQ(r.report.find("upper-presimplified")->status, Status::Holds);
  EXPECT_FALSE(r.precondition_met);
  EXPECT_NEAR(r.c5.approx() / r.c4.approx(), std::pow(12.0, 12), 1.0);
}

TEST(Auxfn, UpperBoundNearCircle) {
  const AuxFunction& f = built(2);
  const UpperBoundReport r =
      check_upper_bound(f, Ball::from_mpq(mpq_class(0), mpq_class(99, 100)), c4_from_c1(f.c1));
  EXPECT_EQ(r.report.find("upper-presimplified")->status, Status::Holds);
}

TEST(Auxfn, FirstGoodPrime) {
  const AuxFunction f = make_aux_function(constant_one(2), 30, default_c1());
  const Ball q = Ball::from_mpq(mpq_class(1, 2), 0);
  EXPECT_EQ(first_good_prime(q, f, 100), 2);
  EXPECT_EQ(first_good_prime(q, f, 100, std::make_pair(1L, 4L)), 5);
  try {
    first_good_prime(q, f, 4, std::make_pair(1L, 4L));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Exhausted);
  }
}

TEST(Auxfn, BlaschkeAtTwo) {
  const AuxFunction& f = built(2);
  const BoundReport r = blaschke_prime_bound(Real::from_mpq(mpq_class(1, 2)), f, 2, Real::from_decimal("1.25506"));
  EXPECT_EQ(r.find("boundary-identity")->status, Status::Holds);
  EXPECT_EQ(r.find("blaschke-chain")->status, Status::Holds);
}

TEST(Auxfn, BlaschkeIdentityAtLargerPrime) {
  const AuxFunction& f = built(3);
  const BoundReport r = blaschke_prime_bound(Real::from_mpq(mpq_class(1, 3)), f, 13, Real::from_decimal("1.25506"), 40);
  EXPECT_EQ(r.find("boundary-identity")->status, Status::Holds);
}

TEST(Auxfn, JensenDeltaHasNoZeros) {
  const AuxFunction& f = built(2);
  const JensenReport r = jensen_zero_bound(Ball::from_mpq(mpq_class(1, 2), 0), f);
  EXPECT_EQ(r.zero_count, 0);
  EXPECT_EQ(r.report.find("jensen-count")->status, Status::Holds);
}

TEST(Auxfn, JensenBuiltNFour) {
  const AuxFunction& f = built(4);
  const JensenReport r = jensen_zero_bound(Ball::from_mpq(mpq_class(1, 2), 0), f);
  EXPECT_GE(r.zero_count, 0);
  EXPECT_EQ(r.report.find("jensen-count")->status, Status::Holds);
}
