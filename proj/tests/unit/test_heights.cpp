#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "tcert/error.hpp"
#include "tcert/heights.hpp"
#include "tcert/modpoly.hpp"
#include "tcert/roots.hpp"

using namespace tcert;

namespace {

// Durand-Kerner in long double; independent of the certified root finder.
double mahler_oracle(const ZPoly& f) {
  using C = std::complex<long double>;
  const long n = f.degree();
  const long double lead = f.lead().get_d();
  std::vector<C> r(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) r[i] = std::pow(C(0.4L, 0.9L), static_cast<long double>(i));
  auto ev = [&](C z) {
    C acc = 0;
    for (long k = n; k >= 0; --k) acc = acc * z + static_cast<long double>(f.coeffs()[k].get_d());
    return acc;
  };
  for (int it = 0; it < 2000; ++it) {
    for (long i = 0; i < n; ++i) {
      C den = lead;
      for (long j = 0; j < n; ++j)
        if (j != i) den *= r[i] - r[j];
      r[i] -= ev(r[i]) / den;
    }
  }
  long double m = std::fabs(lead);
  for (const C& z : r) m *= std::max<long double>(1, std::abs(z));
  return static_cast<double>(m);
}

IntPolynomial poly2(std::initializer_list<std::tuple<unsigned, unsigned, long>> terms) {
  IntPolynomial p(2);
  for (auto [i, j, c] : terms) p.add_term({i, j}, c);
  return p;
}

AlgebraicNumber golden() { return AlgebraicNumber::select(ZPoly{-1, -1, 1}, Ball::from_mpq(mpq_class(8, 5), 0)); }

Status status_of(const BoundReport& r, const char* id) { return r.find(id)->status; }

}  // namespace

TEST(Heights, RationalMeasures) {
  const HeightMeasures two = height_measures(AlgebraicNumber::integer(2));
  EXPECT_NEAR(two.mahler.approx(), 2.0, 1e-30);
  EXPECT_NEAR(two.weil_h.approx(), std::log(2.0), 1e-15);
  const HeightMeasures third = height_measures(AlgebraicNumber::rational(mpq_class(1, 3)));
  EXPECT_NEAR(third.mahler.approx(), 3.0, 1e-30);
  EXPECT_NEAR(third.weil_h.approx(), std::log(3.0), 1e-15);
}

TEST(Heights, GoldenRatio) {
  const AlgebraicNumber phi = golden();
  EXPECT_EQ(phi.degree(), 2);
  EXPECT_TRUE(phi.minimal());
  const HeightMeasures h = height_measures(phi);
  const double g = (1 + std::sqrt(5.0)) / 2;
  EXPECT_NEAR(h.mahler.approx(), g, 1e-15);
  EXPECT_NEAR(h.weil_h.approx(), std::log(g) / 2, 1e-15);
  const BoundReport r = liouville_check(phi);
  EXPECT_EQ(status_of(r, "liouville"), Status::Holds);
  const Inequality* q = r.find("liouville");
  EXPECT_NEAR((q->rhs - q->lhs).approx(), 2 * std::log(g), 1e-12);
}

TEST(Heights, LiouvilleEqualityCase) {
  const BoundReport r = liouville_check(AlgebraicNumber::rational(mpq_class(1, 3)));
  EXPECT_FALSE(r.any_fail());
  EXPECT_EQ(status_of(r, "liouville-identity"), Status::Holds);
}

TEST(Heights, LiouvilleZeroIsDomainError) {
  try {
    liouville_check(AlgebraicNumber::integer(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
}

TEST(Heights, MahlerAgainstOracle) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 60; ++t) {
    const ZPoly f = random_irreducible(rng, 6, 9);
    const AlgebraicNumber a = AlgebraicNumber::from_index(f, 0);
    const HeightMeasures h = height_measures(a);
    EXPECT_NEAR(h.mahler.approx(), mahler_oracle(f), 1e-7 * h.mahler.approx()) << f.to_string();
    EXPECT_TRUE(h.log_mahler.is_nonnegative() || h.log_mahler.contains_zero());
    EXPECT_GE(h.log_mahler.upper(), 0.0);
  }
}

TEST(Heights, InversionInvariance) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 40; ++t) {
    const ZPoly f = random_irreducible(rng, 6, 9);
    const AlgebraicNumber a = AlgebraicNumber::from_index(f, static_cast<std::size_t>(rng() % f.degree()));
    const HeightMeasures h = height_measures(a), hi = height_measures(a.inverse());
    EXPECT_TRUE(h.weil_h.overlaps(hi.weil_h));
  }
}

TEST(Heights, LiouvilleRandom) {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 100; ++t) {
    const ZPoly f = random_irreducible(rng, 6, 9);
    const AlgebraicNumber a = AlgebraicNumber::from_index(f, static_cast<std::size_t>(rng() % f.degree()));
    const BoundReport r = liouville_check(a);
    EXPECT_FALSE(r.any_fail()) << f.to_string();
    EXPECT_FALSE(r.any_undetermined()) << f.to_string();
  }
}

TEST(Heights, EvaluationExamples) {
  const auto one = AlgebraicNumber::integer(1);
  const BoundReport sum = eval_height_bound(poly2({{1, 0, 1}, {0, 1, 1}}), {one, one}, AlgebraicNumber::integer(2));
  EXPECT_FALSE(sum.any_fail());
  const BoundReport prod = eval_height_bound(poly2({{1, 1, 1}}), {AlgebraicNumber::integer(2), AlgebraicNumber::integer(3)},
                                             AlgebraicNumber::integer(6));
  EXPECT_FALSE(prod.any_fail());
  // P = X^2 + Y at (phi, 2): phi^2 + 2 = phi + 3, minpoly x^2 - 7x + 11.
  const IntPolynomial p = poly2({{2, 0, 1}, {0, 1, 1}});
  const auto val = AlgebraicNumber::select(ZPoly{11, -7, 1}, Ball::from_mpq(mpq_class(46, 10), 0));
  const BoundReport r = eval_height_bound(p, {golden(), AlgebraicNumber::integer(2)}, val);
  EXPECT_EQ(status_of(r, "evaluation-height"), Status::Holds);
}

TEST(Heights, EvaluationRejectsWrongWitness) {
  const IntPolynomial p = poly2({{1, 0, 1}, {0, 1, 1}});
  try {
    eval_height_bound(p, {AlgebraicNumber::integer(1), AlgebraicNumber::integer(1)}, AlgebraicNumber::integer(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InconsistentWitness);
  }
}

TEST(Heights, RootHeightExamples) {
  const BoundReport r1 =
      root_height_bound(poly2({{0, 1, 1}, {2, 0, -1}}), AlgebraicNumber::integer(2), AlgebraicNumber::integer(4));
  EXPECT_EQ(status_of(r1, "root-height"), Status::Holds);
  const auto sqrt2 = AlgebraicNumber::select(ZPoly{-2, 0, 1}, Ball::from_mpq(mpq_class(14, 10), 0));
  const BoundReport r2 = root_height_bound(poly2({{0, 2, 1}, {1, 0, -1}}), AlgebraicNumber::integer(2), sqrt2);
  EXPECT_EQ(status_of(r2, "root-height"), Status::Holds);
  const IntPolynomial phi2 = phi2_reference().coeffs;
  EXPECT_EQ(phi2.eval({mpq_class(1728), mpq_class(287496)}), 0);
  const BoundReport r3 = root_height_bound(phi2, AlgebraicNumber::integer(1728), AlgebraicNumber::integer(287496));
  EXPECT_EQ(status_of(r3, "root-height"), Status::Holds);
}

TEST(Heights, RootHeightConstantInY) {
  try {
    root_height_bound(poly2({{1, 0, 1}, {0, 0, -2}}), AlgebraicNumber::integer(2), AlgebraicNumber::integer(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
  }
}

TEST(Heights, IsogenyExamples) {
  const IntPolynomial phi2 = phi2_reference().coeffs;
  const auto r = isogeny_height_check(AlgebraicNumber::integer(1728), AlgebraicNumber::integer(287496), 2,
                                      Real::from_int(0), &phi2);
  ASSERT_TRUE(r.phi_vanishes.has_value());
  EXPECT_TRUE(*r.phi_vanishes);
  EXPECT_NEAR(r.minimal_c2.approx(), std::log(287496.0) - 2 * std::log(1728.0) - 6 * std::log(3.0), 1e-12);
  EXPECT_EQ(r.bound.items[0].status, Status::Holds);

  const auto same = isogeny_height_check(AlgebraicNumber::integer(1728), AlgebraicNumber::integer(1728), 1, Real::from_int(0));
  EXPECT_EQ(same.bound.items[0].status, Status::Holds);

  // j(rho) = 0 and j(3 rho) = -12288000 are 3-isogenous.
  const IntPolynomial phi3 = compute_phi_p(3).coeffs;
  const auto r3 = isogeny_height_check(AlgebraicNumber::integer(0), AlgebraicNumber::integer(-12288000), 3,
                                       Real::from_int(0), &phi3);
  EXPECT_TRUE(r3.phi_vanishes.value_or(false));
  EXPECT_EQ(r3.bound.items[0].status, Status::Fails);  // 16.32 > 6 log 4
  EXPECT_NEAR(r3.minimal_c2.approx(), std::log(12288000.0) - 6 * std::log(4.0), 1e-12);
}

TEST(Heights, CombineKnownSum) {
  const auto c2 = AlgebraicNumber::select(ZPoly{-2, 0, 0, 1}, Ball::from_mpq(mpq_class(126, 100), 0));
  const auto w = combine(poly2({{1, 0, 1}, {0, 1, 1}}), c2, AlgebraicNumber::integer(1));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->minpoly(), (ZPoly{-3, 3, -3, 1}));
  EXPECT_NEAR(w->root().re().approx(), std::cbrt(2.0) + 1, 1e-15);
}

TEST(Heights, CombineRefusesUncertifiedMinpoly) {
  // x^4 - 10x^2 + 1 splits modulo every prime, so degree patterns cannot prove it irreducible.
  const auto s2 = AlgebraicNumber::select(ZPoly{-2, 0, 1}, Ball::from_mpq(mpq_class(14, 10), 0));
  const auto s3 = AlgebraicNumber::select(ZPoly{-3, 0, 1}, Ball::from_mpq(mpq_class(17, 10), 0));
  EXPECT_FALSE(combine(poly2({{1, 0, 1}, {0, 1, 1}}), s2, s3));
  const auto prod = combine(poly2({{1, 1, 1}}), s2, s3);
  ASSERT_TRUE(prod);
  EXPECT_EQ(prod->minpoly(), (ZPoly{-6, 0, 1}));
}

TEST(Heights, ResultantInY) {
  // Res_y(y^2 - 2, y - x) = x^2 - 2 up to sign.
  const ZPoly r = resultant_in_y(ZPoly{-2, 0, 1}, poly2({{0, 1, 1}, {1, 0, -1}}));
  EXPECT_EQ(r.primitive(), (ZPoly{-2, 0, 1}));
}

TEST(Heights, SumAndProductProperties) {
  std::mt19937_64 rng(53);
  const IntPolynomial add = poly2({{1, 0, 1}, {0, 1, 1}});
  const IntPolynomial sub = poly2({{1, 0, 1}, {0, 1, -1}});
  const IntPolynomial mul = poly2({{1, 1, 1}});
  const Real log2 = Real::log2();
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    const ZPoly f = random_irreducible(rng, 3, 5), g = random_irreducible(rng, 3, 5);
    const auto a = AlgebraicNumber::from_index(f, 0), b = AlgebraicNumber::from_index(g, 0);
    const Real ha = height_measures(a).weil_h, hb = height_measures(b).weil_h;
    if (auto w = combine(mul, a, b)) {
      EXPECT_TRUE(height_measures(*w).weil_h.certainly_le(ha + hb) ||
                  height_measures(*w).weil_h.overlaps(ha + hb));
      ++checked;
    }
    for (const auto* p : {&add, &sub}) {
      if (auto w = combine(*p, a, b)) {
        EXPECT_TRUE(height_measures(*w).weil_h.certainly_le(log2 + ha + hb));
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 60);
}

TEST(Heights, RootIsolation) {
  const ZPoly f{-6, 11, -6, 1};
  const auto roots = isolate_roots(f);
  EXPECT_EQ(roots.size(), 3u);
  EXPECT_EQ(rational_roots(f), (std::vector<mpq_class>{1, 2, 3}));
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) EXPECT_FALSE(roots[i].overlaps(roots[j]));
}
