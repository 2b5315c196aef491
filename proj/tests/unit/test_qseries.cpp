#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "tcert/error.hpp"
#include "tcert/int_series.hpp"

using namespace tcert;

namespace {

// Naive prod (1 - q^n)^24 in machine integers, enough for small K.
std::vector<long long> naive_eta24(int K) {
  std::vector<long long> c(K, 0);
  c[0] = 1;
  for (int n = 1; n < K; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (int k = K - 1; k >= n; --k) c[k] -= c[k - n];
    }
  }
  return c;
}

std::vector<mpz_class> random_vec(std::mt19937_64& rng, std::size_t n, int bits) {
  std::vector<mpz_class> v(n);
  gmp_randclass gr(gmp_randinit_default);
  gr.seed(rng());
  for (auto& x : v) {
    x = gr.get_z_bits(bits);
    if (rng() & 1) x = -x;
  }
  return v;
}

}  // namespace

TEST(Qseries, DeltaMatchesNaiveProduct) {
  const int K = 40;
  const auto ref = naive_eta24(K - 1);
  const IntSeries d = delta_expansion(K);
  EXPECT_EQ(d.valuation(), 1);
  for (int k = 1; k < K; ++k) EXPECT_EQ(d.coeff(k), mpz_class(std::to_string(ref[k - 1]))) << k;
}

TEST(Qseries, DeltaHead) {
  const IntSeries d = delta_expansion(6);
  EXPECT_EQ(d.coeff(1), 1);
  EXPECT_EQ(d.coeff(2), -24);
  EXPECT_EQ(d.coeff(3), 252);
  EXPECT_EQ(d.coeff(4), -1472);
  EXPECT_EQ(d.coeff(5), 4830);
}

TEST(Qseries, JHead) {
  const IntSeries j = j_expansion(4);
  EXPECT_EQ(j.valuation(), -1);
  EXPECT_EQ(j.coeff(-1), 1);
  EXPECT_EQ(j.coeff(0), 744);
  EXPECT_EQ(j.coeff(1), 196884);
  EXPECT_EQ(j.coeff(2), 21493760);
  EXPECT_EQ(j.coeff(3), 864299970);
}

TEST(Qseries, JTimesDeltaIsE4Cubed) {
  const long K = 120;
  const IntSeries lhs = j_expansion(K) * delta_expansion(K + 1);
  const IntSeries rhs = e4_expansion(K).pow(3);
  EXPECT_EQ(lhs.truncated(K), rhs.truncated(K));
  EXPECT_EQ(lhs.coeff(0), 1);
  EXPECT_EQ(lhs.coeff(1), 720);
}

TEST(Qseries, E4Sigma3) {
  const IntSeries e4 = e4_expansion(8);
  const long sigma3[] = {0, 1, 9, 28, 73, 126, 252, 344};
  EXPECT_EQ(e4.coeff(0), 1);
  for (int n = 1; n < 8; ++n) EXPECT_EQ(e4.coeff(n), 240 * sigma3[n]);
}

TEST(Qseries, KroneckerEqualsSchoolbook) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t na = 1 + rng() % 300, nb = 1 + rng() % 300;
    const int bits = 1 + static_cast<int>(rng() % 200);
    const auto a = random_vec(rng, na, bits);
    const auto b = random_vec(rng, nb, bits);
    const std::size_t n = 1 + rng() % (na + nb);
    EXPECT_EQ(mul_kronecker(a, b, n), mul_schoolbook(a, b, n)) << "trial " << trial;
    EXPECT_EQ(mul_truncated(a, b, n), mul_schoolbook(a, b, n));
  }
}

TEST(Qseries, RingAxioms) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const long T = 30;
    auto mk = [&] {
      const long v = static_cast<long>(rng() % 5) - 2;
      return IntSeries::from_coeffs(v, T, random_vec(rng, static_cast<std::size_t>(T - v), 40));
    };
    const IntSeries a = mk(), b = mk(), c = mk();
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    const IntSeries ab_c = (a * b) * c, a_bc = a * (b * c);
    const long t = std::min(ab_c.trunc(), a_bc.trunc());
    EXPECT_EQ(ab_c.truncated(t), a_bc.truncated(t));
    const IntSeries l = a * (b + c), r = a * b + a * c;
    const long u = std::min(l.trunc(), r.trunc());
    EXPECT_EQ(l.truncated(u), r.truncated(u));
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(Qseries, InverseOfJ) {
  const IntSeries j = j_expansion(50);
  const IntSeries prod = j * j.inverse();
  EXPECT_EQ(prod, IntSeries::one(prod.trunc()));
}

TEST(Qseries, SubstitutePower) {
  const IntSeries d = delta_expansion(20);
  const IntSeries d2 = d.substitute_power(2);
  EXPECT_EQ(d2.valuation(), 2);
  EXPECT_EQ(d2.coeff(4), -24);
  EXPECT_EQ(d2.coeff(5), 0);
}

TEST(Qseries, TruncationKnowledge) {
  const IntSeries d = delta_expansion(5);
  EXPECT_THROW(d.coeff(5), Error);
  try {
    (void)d.coeff(7);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidTruncation);
  }
  const IntSeries z = IntSeries::zero(9);
  EXPECT_EQ(z.valuation(), 9);
  EXPECT_FALSE(vanishing_order(z).has_value());
  EXPECT_EQ(vanishing_order(delta_expansion(10).pow(4)), 4);
}

TEST(Qseries, WriteReadRoundTrip) {
  const IntSeries j = j_expansion(30);
  std::stringstream ss;
  write_series(ss, j);
  EXPECT_EQ(read_series(ss), j);
}
