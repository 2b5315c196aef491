#include <gtest/gtest.h>

#include <random>

#include "tcert/error.hpp"
#include "tcert/lattice.hpp"
#include "tcert/siegel.hpp"
#include "tcert/upoly.hpp"

using namespace tcert;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t y, std::size_t x, long bound) {
  IntMatrix m(y, std::vector<mpz_class>(x));
  for (auto& row : m) {
    for (auto& e : row) e = static_cast<long>(rng() % (2 * bound + 1)) - bound;
  }
  return m;
}

// Minimal sup-norm of a nonzero kernel vector with entries in [-b, b], or -1.
long brute_min_sup(const IntMatrix& m, long b) {
  const std::size_t x = m[0].size();
  std::vector<long> v(x, -b);
  long best = -1;
  for (;;) {
    long sup = 0;
    for (long e : v) sup = std::max(sup, std::labs(e));
    if (sup > 0 && (best < 0 || sup < best)) {
      bool ok = true;
      for (const auto& row : m) {
        mpz_class s = 0;
        for (std::size_t i = 0; i < x; ++i) s += row[i] * v[i];
        if (s != 0) {
          ok = false;
          break;
        }
      }
      if (ok) best = sup;
    }
    std::size_t i = 0;
    while (i < x && v[i] == b) v[i++] = -b;
    if (i == x) break;
    ++v[i];
  }
  return best;
}

}  // namespace

TEST(Siegel, SingleRow) {
  const KernelResult r = kernel_small_vector({{1, 1}});
  EXPECT_TRUE(in_kernel({{1, 1}}, r.vector));
  EXPECT_EQ(r.report.sup_norm, 1);
  EXPECT_TRUE(r.report.bound_met);
  EXPECT_EQ(r.vector, (std::vector<mpz_class>{1, -1}));
}

TEST(Siegel, OneTwoThree) {
  const IntMatrix m{{1, 2, 3}};
  const KernelResult r = kernel_small_vector(m);
  EXPECT_TRUE(in_kernel(m, r.vector));
  EXPECT_LE(r.report.sup_norm, 3);
  EXPECT_TRUE(r.report.bound_met);
  EXPECT_NEAR(r.report.siegel_bound.approx(), 3.0, 1e-30);
  EXPECT_EQ(brute_min_sup(m, 3), 1);
}

TEST(Siegel, ZeroMatrixGivesUnitVector) {
  const KernelResult r = kernel_small_vector({{0, 0, 0}});
  EXPECT_EQ(r.vector, (std::vector<mpz_class>{1, 0, 0}));
}

TEST(Siegel, Underdetermined) {
  try {
    kernel_small_vector({{1, 2}, {3, 4}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Underdetermined);
  }
}

TEST(Siegel, ExhaustiveExamples) {
  auto r1 = exhaustive_small_solution({{1, 1}}, 1);
  ASSERT_TRUE(r1);
  EXPECT_EQ(*r1, (std::vector<mpz_class>{1, -1}));
  EXPECT_FALSE(exhaustive_small_solution({{2, 3}}, 2));
  auto r3 = exhaustive_small_solution({{2, 3}}, 3);
  ASSERT_TRUE(r3);
  EXPECT_EQ(*r3, (std::vector<mpz_class>{3, -2}));
}

TEST(Siegel, ExhaustiveBudget) {
  try {
    exhaustive_small_solution(IntMatrix{std::vector<mpz_class>(12, 1)}, 50, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EnumerationTooLarge);
  }
}

TEST(Siegel, ExhaustiveAgreesWithBruteForce) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    const std::size_t x = 2 + rng() % 3, y = 1 + rng() % (x - 1);
    const IntMatrix m = random_matrix(rng, y, x, 5);
    const long b = 3;
    const long brute = brute_min_sup(m, b);
    const auto ex = exhaustive_small_solution(m, b);
    if (brute < 0) {
      EXPECT_FALSE(ex);
    } else {
      ASSERT_TRUE(ex);
      EXPECT_TRUE(in_kernel(m, *ex));
      EXPECT_EQ(sup_norm(*ex), brute);
    }
  }
}

TEST(Siegel, RandomMatricesMeetBound) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 150; ++t) {
    const std::size_t x = 2 + rng() % 5, y = 1 + rng() % (x / 2);
    IntMatrix m = random_matrix(rng, y, x, 9);
    const KernelResult r = kernel_small_vector(m);
    EXPECT_TRUE(in_kernel(m, r.vector));
    EXPECT_NE(sup_norm(r.vector), 0);
    EXPECT_TRUE(r.report.bound_met) << "trial " << t;
    // Scaling a row keeps the vector in the kernel.
    for (auto& e : m[0]) e *= -7;
    EXPECT_TRUE(in_kernel(m, r.vector));
  }
}

TEST(Siegel, BoundArithmetic) {
  EXPECT_TRUE(siegel_bound_met(2, 2, 1, 1));
  EXPECT_FALSE(siegel_bound_met(3, 2, 1, 1));
  EXPECT_EQ(siegel_bound_floor(3, 1, 3), 3);
  EXPECT_EQ(siegel_bound_floor(5, 2, 9), 12);  // 45^{2/3} = 12.65
}

TEST(Lattice, LllProperties) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + rng() % 4;
    IntMatrix b;
    do {
      b = random_matrix(rng, n, n, 50);
    } while (det_bareiss(b) == 0);
    const mpz_class d = abs(det_bareiss(b));
    lll_reduce(b);
    EXPECT_EQ(abs(det_bareiss(b)), d);
    // Gram-Schmidt over Q to check size reduction and the Lovasz condition.
    std::vector<std::vector<mpq_class>> bs(n, std::vector<mpq_class>(n));
    std::vector<mpq_class> nrm(n);
    std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) bs[i][k] = b[i][k];
      for (std::size_t j = 0; j < i; ++j) {
        mpq_class dot = 0;
        for (std::size_t k = 0; k < n; ++k) dot += mpq_class(b[i][k]) * bs[j][k];
        mu[i][j] = dot / nrm[j];
        EXPECT_LE(abs(mu[i][j]), mpq_class(1, 2) + mpq_class(1, 1000000));
        for (std::size_t k = 0; k < n; ++k) bs[i][k] -= mu[i][j] * bs[j][k];
      }
      nrm[i] = 0;
      for (std::size_t k = 0; k < n; ++k) nrm[i] += bs[i][k] * bs[i][k];
      if (i > 0) {
        EXPECT_GE(nrm[i], (mpq_class(99, 100) - mu[i][i - 1] * mu[i][i - 1]) * nrm[i - 1]);
      }
    }
  }
}

TEST(Lattice, KernelBasisSpansKernel) {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 30; ++t) {
    const std::size_t x = 3 + rng() % 4, y = 1 + rng() % 2;
    const IntMatrix m = random_matrix(rng, y, x, 9);
    const IntMatrix k = integer_kernel_basis(m);
    std::vector<std::size_t> piv;
    rref(m, piv);
    EXPECT_EQ(k.size(), x - piv.size());
    for (const auto& v : k) EXPECT_TRUE(in_kernel(m, v));
    if (!k.empty()) {
      EXPECT_EQ(rank_bareiss(k), k.size());
    }
  }
}
