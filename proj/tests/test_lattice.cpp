#include <gtest/gtest.h>

#include <cstdlib>

#include "padic/lattice.hpp"
#include "padic/verify/oracles.hpp"
#include "test_support.hpp"

using namespace padic;

TEST(CosetGrid, Enumeration) {
  const CosetGrid a = enumerate_cosets(0, 1, 1, PrimeContext(2));
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a.representative(0), (std::vector<Rational>{0}));
  EXPECT_EQ(a.representative(1), (std::vector<Rational>{1}));

  const CosetGrid b = enumerate_cosets(1, 0, 1, PrimeContext(3));
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b.representative(1), (std::vector<Rational>{Rational(1, 3)}));
  EXPECT_EQ(b.representative(2), (std::vector<Rational>{Rational(2, 3)}));

  EXPECT_EQ(enumerate_cosets(0, 1, 2, PrimeContext(2)).size(), 4u);
}

TEST(CosetGrid, RepresentativesAreIncongruentAndLocatable) {
  const CosetGrid g(PrimeContext(3), 1, 1, 2);
  for (std::uint64_t i = 0; i < g.size(); ++i) {
    const auto x = g.representative(i);
    EXPECT_EQ(g.locate(x), i);
    // shifting by an element of B_{-l} stays in the same coset
    auto y = x;
    y[1] += Rational(3);
    EXPECT_EQ(g.locate(y), i);
  }
  EXPECT_FALSE(g.locate({Rational(1, 9), Rational(0)}).has_value());
}

TEST(CosetGrid, NormExponentsAndDigits) {
  const CosetGrid g(PrimeContext(2), 2, 1, 1);
  EXPECT_TRUE(g.norm_exponent(0).is_neg_inf());
  EXPECT_EQ(g.norm_exponent(1), ExtendedInt(2));  // 1/4
  EXPECT_EQ(g.norm_exponent(2), ExtendedInt(1));  // 1/2
  EXPECT_EQ(g.norm_exponent(4), ExtendedInt(0));  // 1
  EXPECT_EQ(g.digits(5), (std::vector<std::vector<int>>{{1, 0, 1}}));
  EXPECT_EQ(g.code_from_digits({1, 0, 1}), 5u);
  EXPECT_THROW(g.code_from_digits({1, 0}), InvalidArgument);
}

TEST(CosetGrid, CapIsEnforced) {
  EXPECT_THROW(CosetGrid(PrimeContext(2), 10, 11, 1), GridCapError);
  try {
    CosetGrid(PrimeContext(3), 5, 5, 2);
    FAIL();
  } catch (const GridCapError& e) {
    EXPECT_EQ(e.cardinality(), 3486784401u);
  }
  EXPECT_THROW(CosetGrid(PrimeContext(2), 1, -2, 1), InvalidArgument);
}

TEST(CosetGrid, CapOverrideFromEnvironment) {
  ::setenv("PADIC_GRID_CAP", "8", 1);
  EXPECT_THROW(CosetGrid(PrimeContext(2), 2, 2, 1), GridCapError);
  EXPECT_NO_THROW(CosetGrid(PrimeContext(2), 2, 1, 1));
  ::unsetenv("PADIC_GRID_CAP");
  EXPECT_NO_THROW(CosetGrid(PrimeContext(2), 2, 2, 1));
}

TEST(Volumes, Examples) {
  EXPECT_EQ(ball_volume({2, 1}, PrimeContext(2)), Rational(4));
  EXPECT_EQ(ball_volume({0, 2}, PrimeContext(3)), Rational(1));
  EXPECT_EQ(ball_volume({-1, 1}, PrimeContext(5)), Rational(1, 5));
  EXPECT_EQ(sphere_volume({0, 1}, PrimeContext(3)), Rational(2, 3));
  EXPECT_EQ(sphere_volume({1, 1}, PrimeContext(2)), Rational(1));
  EXPECT_EQ(sphere_volume({0, 2}, PrimeContext(2)), Rational(3, 4));
}

TEST(Volumes, ShellPartitionOfBall) {
  for (std::int64_t p : {2, 3, 5}) {
    const PrimeContext ctx(p);
    for (int n : {1, 2, 3}) {
      for (std::int64_t g0 = -3; g0 < 3; ++g0) {
        for (std::int64_t g = g0 + 1; g <= 3; ++g) {
          Rational s = ball_volume({g0, n}, ctx);
          for (std::int64_t j = g0 + 1; j <= g; ++j) s += sphere_volume({j, n}, ctx);
          EXPECT_EQ(s, ball_volume({g, n}, ctx));
        }
      }
    }
  }
}

TEST(CharacterIntegrals, Examples) {
  const PrimeContext c2(2), c3(3);
  auto one = [](const PrimeContext& c, std::int64_t a, std::int64_t b) {
    return std::vector<PAdicScalar>{PAdicScalar(c, a, b)};
  };
  EXPECT_EQ(ball_character_integral(0, one(c2, 1, 1)), Rational(1));
  EXPECT_EQ(ball_character_integral(0, one(c2, 1, 2)), Rational(0));
  EXPECT_EQ(ball_character_integral(2, one(c3, 0, 1)), Rational(9));
  EXPECT_EQ(sphere_character_integral(0, one(c3, 1, 1)), Rational(2, 3));
  EXPECT_EQ(sphere_character_integral(0, one(c3, 1, 3)), Rational(-1, 3));
  EXPECT_EQ(sphere_character_integral(0, one(c3, 1, 9)), Rational(0));
}

TEST(CharacterIntegrals, SphereIsBallDifferenceAndAxesFactor) {
  auto rng = padic::testing::make_rng(11);
  for (std::int64_t p : {2, 3, 5}) {
    const PrimeContext ctx(p);
    for (int n : {1, 2, 3}) {
      for (std::int64_t g = -3; g <= 3; ++g) {
        for (std::int64_t e = -4; e <= 4; ++e) {
          const auto xi = verify::random_frequency(rng, p, n, e);
          EXPECT_EQ(sphere_character_integral(ctx, g, xi),
                    ball_character_integral(ctx, g, xi) - ball_character_integral(ctx, g - 1, xi));
          EXPECT_EQ(ball_character_integral(ctx, g, xi), ball_character_integral_by_axes(ctx, g, xi));
        }
      }
    }
  }
}

TEST(CharacterIntegrals, BruteForceOracle) {
  auto rng = padic::testing::make_rng(12);
  for (std::int64_t p : {2, 3, 5}) {
    const PrimeContext ctx(p);
    for (int n : {1, 2}) {
      for (std::int64_t g = -2; g <= 2; ++g) {
        for (std::int64_t e = -3; e <= 3; ++e) {
          const auto xi = verify::random_frequency(rng, p, n, e);
          EXPECT_EQ(ball_character_integral(ctx, g, xi), verify::brute_ball_character_integral(ctx, g, xi));
          EXPECT_EQ(sphere_character_integral(ctx, g, xi), verify::brute_sphere_character_integral(ctx, g, xi));
        }
      }
    }
  }
}

TEST(CyclotomicSum, DetectsIrrationalSums) {
  verify::CyclotomicSum s(3, 2);
  s.add(0);
  s.add(3);
  s.add(6);
  EXPECT_EQ(s.rational_value(), 0);
  s.add(1);
  EXPECT_THROW((void)s.rational_value(), std::logic_error);
}
