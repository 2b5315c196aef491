#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "tcert/auxfn.hpp"
#include "tcert/ball.hpp"
#include "tcert/error.hpp"
#include "tcert/numerics.hpp"

using namespace tcert;

namespace {

mpq_class to_q(const Mpfr& x) {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), x.get());
  return q;
}

// Exact test |(x + iy) - mid| <= rad.
bool ball_holds(const Ball& b, const mpq_class& x, const mpq_class& y) {
  const mpq_class dx = x - to_q(b.mid_re()), dy = y - to_q(b.mid_im());
  const mpq_class r = to_q(b.rad());
  return dx * dx + dy * dy <= r * r;
}

struct Sample {
  Ball ball;
  mpq_class x, y;
};

Sample random_sample(std::mt19937_64& rng) {
  auto rq = [&](long span) { return mpq_class(static_cast<long>(rng() % (2 * span + 1)) - span, span); };
  const mpq_class mx = rq(1000) * 3, my = rq(1000) * 3;
  const mpq_class rad(static_cast<long>(rng() % 100 + 1), 1000);
  Ball b = Ball::from_mpq(mx, my).inflated(Real::from_mpq(rad));
  // A point strictly inside the disc: offset (u, v) rad with u^2 + v^2 <= 1/2.
  const mpq_class u(static_cast<long>(rng() % 141) - 70, 100), v(static_cast<long>(rng() % 141) - 70, 100);
  return {b, mx + u * rad, my + v * rad};
}

}  // namespace

TEST(Numerics, SchwarzExamples) {
  EXPECT_NEAR(schwarz_tail_majorant(0, 0, Real::from_mpq(mpq_class(1, 2))).approx(), 2.0, 1e-30);
  const Real b = schwarz_tail_majorant(1, 1, Real::from_mpq(mpq_class(1, 2)));
  EXPECT_NEAR(b.approx(), 8.0, 1e-30);
  // True value of sum (1+n) 2^{-n} is 4.
  EXPECT_TRUE(Real::from_int(4).certainly_le(b));
}

TEST(Numerics, SchwarzBoundsTrueSum) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const unsigned long M = rng() % 20, K = rng() % 8;
    const mpq_class r(static_cast<long>(rng() % 9 + 1), 10);
    const double rd = mpq_class(r).get_d();
    double sum = 0, rn = 1;
    for (unsigned long n = 0; n < 4000; ++n) {
      sum += std::pow(static_cast<double>(M + n), static_cast<double>(K)) * rn;
      rn *= rd;
    }
    EXPECT_LE(sum, schwarz_tail_majorant(M, K, Real::from_mpq(r)).upper() * (1 + 1e-12));
  }
}

TEST(Numerics, SchwarzMonotone) {
  const Real r1 = Real::from_mpq(mpq_class(1, 3)), r2 = Real::from_mpq(mpq_class(2, 3));
  for (unsigned long M = 0; M < 5; ++M) {
    for (unsigned long K = 0; K < 5; ++K) {
      const Real b = schwarz_tail_majorant(M, K, r1);
      EXPECT_TRUE(b.certainly_le(schwarz_tail_majorant(M + 1, K, r1)));
      EXPECT_TRUE(b.certainly_le(schwarz_tail_majorant(M, K + 1, r1)));
      EXPECT_TRUE(b.certainly_le(schwarz_tail_majorant(M, K, r2)));
    }
  }
}

TEST(Numerics, SchwarzDiverges) {
  try {
    schwarz_tail_majorant(1, 1, Real::from_int(1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Divergence);
  }
}

TEST(Numerics, TruncatedPolynomialOnly) {
  const IntSeries s = IntSeries::from_coeffs(0, 2, {1, 1});
  const SeriesValue v = eval_series_certified(s, Ball::from_mpq(mpq_class(1, 2), 0));
  EXPECT_TRUE(v.truncated_only);
  EXPECT_TRUE(ball_holds(v.value, mpq_class(3, 2), 0));
  EXPECT_LT(v.value.radius().upper(), 1e-30);
}

TEST(Numerics, DeltaTailAgainstLongTruncation) {
  const Ball z = Ball::from_mpq(mpq_class(1, 2), 0);
  const HeckeTail tail{1, default_c1()};
  const SeriesValue v = eval_series_certified(delta_expansion(200), z, tail);
  EXPECT_FALSE(v.truncated_only);
  const SeriesValue longer = eval_series_certified(delta_expansion(2000), z);
  EXPECT_TRUE(v.value.contains(longer.value));
}

TEST(Numerics, TailNeedsDiscInside) {
  const Ball z = Ball::from_mpq(mpq_class(9, 10), 0).inflated(Real::from_mpq(mpq_class(1, 10)));
  const HeckeTail tail{1, default_c1()};
  try {
    eval_series_certified(delta_expansion(20), z, tail);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CannotCertify);
  }
}

TEST(Numerics, TailSoundnessUnderLongerTruncation) {
  const Ball z = Ball::from_mpq(mpq_class(3, 5), mpq_class(1, 10));
  const HeckeTail tail{1, default_c1()};
  const IntSeries d = delta_expansion(600);
  std::optional<Ball> prev;
  for (long T : {150, 200, 300, 450, 600}) {
    const Ball cur = eval_series_certified(d.truncated(T), z, tail).value;
    if (prev) {
      EXPECT_TRUE(prev->overlaps(cur)) << T;
    }
    prev = cur;
  }
}

TEST(Numerics, BallContainmentFuzz) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 500; ++t) {
    const Sample a = random_sample(rng), b = random_sample(rng);
    EXPECT_TRUE(ball_holds(a.ball + b.ball, a.x + b.x, a.y + b.y));
    EXPECT_TRUE(ball_holds(a.ball - b.ball, a.x - b.x, a.y - b.y));
    EXPECT_TRUE(ball_holds(a.ball * b.ball, a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x));
    if (!b.ball.contains_zero()) {
      const mpq_class n = b.x * b.x + b.y * b.y;
      const mpq_class qx = (a.x * b.x + a.y * b.y) / n, qy = (a.y * b.x - a.x * b.y) / n;
      EXPECT_TRUE(ball_holds(a.ball / b.ball, qx, qy));
    }
    mpq_class px = 1, py = 0;
    for (int k = 0; k < 5; ++k) {
      const mpq_class nx = px * a.x - py * a.y, ny = px * a.y + py * a.x;
      px = nx;
      py = ny;
    }
    EXPECT_TRUE(ball_holds(a.ball.pow(5), px, py));
  }
}

TEST(Numerics, RealIntervalFuzz) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 300; ++t) {
    const mpq_class x(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 97) + 1);
    const Real rx = Real::from_mpq(x);
    mpq_class lo, hi;
    mpfr_get_q(lo.get_mpq_t(), rx.lo().get());
    mpfr_get_q(hi.get_mpq_t(), rx.hi().get());
    EXPECT_LE(lo, x);
    EXPECT_GE(hi, x);
    const Real sq = rx * rx;
    mpfr_get_q(lo.get_mpq_t(), sq.lo().get());
    mpfr_get_q(hi.get_mpq_t(), sq.hi().get());
    EXPECT_LE(lo, x * x);
    EXPECT_GE(hi, x * x);
  }
}

TEST(Numerics, DecimalLiteralEnclosed) {
  const Real r = Real::from_decimal("0.1");
  mpq_class lo, hi;
  mpfr_get_q(lo.get_mpq_t(), r.lo().get());
  mpfr_get_q(hi.get_mpq_t(), r.hi().get());
  EXPECT_LE(lo, mpq_class(1, 10));
  EXPECT_GE(hi, mpq_class(1, 10));
}
