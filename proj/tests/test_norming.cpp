#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "gmdx/errors.hpp"
#include "gmdx/gmd.hpp"
#include "gmdx/norming.hpp"

namespace {

using namespace gmdx;

constexpr double kQ32At2 = 0.26146412994911062220;

TEST(SolveNorming, AnchorAtUnitShape) {
  const GmdParams p(1.0, 1.0);
  const Norming nm = solve_norming(p, 2.0 / kQ32At2);
  EXPECT_NEAR(nm.b, 2.0, 1e-6);
  EXPECT_NEAR(nm.n, 7.6492328044740389, 1e-12);
  EXPECT_NEAR(nm.tail_arg, 2.0, 1e-6);
  EXPECT_NEAR(nm.b_pow_2k, 4.0, 1e-6);
}

TEST(SolveNorming, TailRoundTrip) {
  for (double k : {0.5, 1.0, 1.5, 6.0}) {
    for (double s : {0.5, 1.0, 2.0}) {
      const GmdParams p(k, s);
      for (double n : {1e2, 1e6, 1e12, 1e100, 1e300}) {
        const Norming nm = solve_norming(p, n);
        EXPECT_NEAR(n * gmd::sf(p, nm.b), 1.0, 1e-12) << k << ' ' << s << ' ' << n;
        EXPECT_GT(nm.b, 0.0);
      }
    }
  }
}

TEST(SolveNorming, IncreasingInN) {
  const GmdParams p(1.5, 0.7);
  EXPECT_LT(solve_norming(p, 1e4).b, solve_norming(p, 1e8).b);
  double prev = 0.0;
  for (double n = 3.0; n < 1e300; n *= 7.3) {
    const double b = solve_norming(p, n).b;
    EXPECT_GT(b, prev) << n;
    prev = b;
  }
}

TEST(SolveNorming, TailArgumentGrowsLikeLogN) {
  const GmdParams p(1.0, 1.0);
  std::vector<double> gaps;
  for (double n : {1e4, 1e8, 1e16, 1e32}) {
    const double ratio = solve_norming(p, n * n).tail_arg / solve_norming(p, n).tail_arg;
    gaps.push_back(std::abs(ratio - 2.0));
  }
  // The gap peaks early (log log terms) and then shrinks.
  EXPECT_LT(gaps[3], gaps[2]);
  EXPECT_LT(gaps[2], gaps[1]);
  EXPECT_LT(gaps[3], gaps[0]);
  EXPECT_LT(gaps[3], 0.02);
}

TEST(SolveNorming, DomainLimits) {
  const GmdParams p(1.0, 1.0);
  EXPECT_THROW(solve_norming(p, 2.0), DomainError);
  EXPECT_THROW(solve_norming(p, 2.999), DomainError);
  EXPECT_THROW(solve_norming(p, 1e301), DomainError);
  EXPECT_THROW(solve_norming(p, NAN), DomainError);
  EXPECT_NO_THROW(solve_norming(p, 3.0));
}

TEST(Levels, AffineForms) {
  const GmdParams p(1.0, 1.0);
  const Norming nm = solve_norming(p, 2.0 / kQ32At2);
  EXPECT_EQ(u_level(nm, 0.0), nm.b);
  EXPECT_EQ(v_level(nm, 0.0), -nm.b);
  // k = 1, sigma = 1, b = 2: u(1) = 1/b + b = 2.5
  EXPECT_NEAR(u_level(nm, 1.0), 2.5, 1e-6);

  const GmdParams q(1.7, 0.6);
  const Norming m = solve_norming(q, 1e9);
  const double slope = q.sigma() * q.sigma() / q.k() * std::pow(m.b, 1.0 - 2.0 * q.k());
  EXPECT_NEAR((u_level(m, 0.25) - u_level(m, -0.25)) / 0.5, slope, 1e-12 * slope);
}

TEST(Levels, MinimumLevelMirrorsMaximumLevel) {
  const GmdParams p(1.5, 2.0);
  const Norming nm = solve_norming(p, 1e7);
  for (double y : {-3.0, 0.0, 2.0, 10.0, 0.37}) {
    EXPECT_EQ(v_level(nm, y) + u_level(nm, -y), 0.0);
    EXPECT_EQ(gmd::cdf(p, v_level(nm, y)), gmd::sf(p, u_level(nm, -y)));
  }
}

TEST(Levels, MaximumLevelAboveMinimumLevel) {
  // u(x) - v(y) = scale (x - y) + 2b > 0  iff  x - y > -4k * tail_arg, so the
  // box |x|, |y| <= 10 is ordered once 4k * tail_arg > 20. For k = 1/2 that
  // needs n of a few thousand and k = 1 needs n above ~107; at n = 100 the
  // k = 1/2 box is violated.
  struct Case {
    double k;
    double n_min;
  };
  for (const Case c : {Case{0.5, 1e4}, Case{1.0, 200.0}, Case{1.5, 100.0}, Case{6.0, 100.0}}) {
    const GmdParams p(c.k, 1.0);
    for (double n : {c.n_min, 1e6, 1e12}) {
      const Norming nm = solve_norming(p, n);
      EXPECT_GT(4.0 * c.k * nm.tail_arg, 20.0);
      for (double x = -10.0; x <= 10.0; x += 0.5)
        for (double y = -10.0; y <= 10.0; y += 0.5)
          EXPECT_GT(u_level(nm, x), v_level(nm, y)) << c.k << ' ' << n << ' ' << x << ' ' << y;
    }
  }
  const GmdParams half(0.5, 1.0);
  const Norming small = solve_norming(half, 100.0);
  EXPECT_LT(4.0 * 0.5 * small.tail_arg, 20.0);
  EXPECT_LT(u_level(small, -10.0), v_level(small, 10.0));
}

}  // namespace
