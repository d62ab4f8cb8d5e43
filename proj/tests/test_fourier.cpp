#include <gtest/gtest.h>

#include "padic/fourier.hpp"
#include "padic/verify/oracles.hpp"
#include "padic/wave.hpp"
#include "test_support.hpp"

using namespace padic;

TEST(Forward, IndicatorsOfBalls) {
  for (std::int64_t p : {2, 3, 5}) {
    const PrimeContext c(p);
    const auto f = forward(indicator_of_ball(c, 1, 0));
    ASSERT_EQ(f.size(), 1u);
    EXPECT_NEAR(std::abs(f[0] - Complex(1.0, 0.0)), 0.0, 1e-15);
    EXPECT_EQ(f.support_exp(), 0);

    // B_1 -> p 1_{B_-1}
    const auto g = forward(indicator_of_ball(c, 1, 1));
    EXPECT_EQ(g.support_exp(), -1);
    ASSERT_EQ(g.size(), 1u);
    EXPECT_NEAR(std::abs(g[0] - Complex(static_cast<double>(p), 0.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(inverse(f)[0] - Complex(1.0, 0.0)), 0.0, 1e-15);
  }
}

TEST(Forward, MatchesExactPhaseSpotEvaluation) {
  auto rng = padic::testing::make_rng(31);
  const PrimeContext c(3);
  const CosetGrid g(c, 1, 1, 2);
  const auto f = verify::random_function(rng, g);
  const auto F = forward(f);
  for (std::uint64_t j = 0; j < F.size(); j += 7) {
    EXPECT_LT(std::abs(F[j] - transform_at(f, F.grid().representative(j))), 1e-12);
  }
  // off the output ball the transform vanishes
  for (int k = 0; k < 5; ++k) {
    const auto xi = verify::random_frequency(rng, 3, 2, 2 + k % 2);
    EXPECT_LT(std::abs(transform_at(f, xi)), 1e-12);
  }
}

TEST(Inverse, SphereIndicatorGivesEigenfunction) {
  for (std::int64_t p : {2, 3}) {
    const PrimeContext c(p);
    for (int K : {1, 2}) {
      for (std::int64_t N : {-1, 0, 1}) {
        // transform in t: the indicator of |eta| = p^{KN}
        const auto u = inverse(to_complex(indicator_of_sphere(c, 1, K * N)));
        const auto expected = eigenfunction<Rational>(N, Rational(1), K, c);
        const auto prof = radial_profile(u);
        for (std::int64_t e = prof.shell_lo() - 1; e <= prof.shell_hi() + 1; ++e) {
          EXPECT_NEAR(std::abs(prof.value_at(e) - to_complex(expected.value_at(e))), 0.0, 1e-12);
        }
        const auto r = radial_inverse(ExactRadialShellFunction(c, K * N, K * N, {Rational(1)}, Rational(0)), 1);
        for (std::int64_t e = -K * N - 2; e <= -K * N + 3; ++e) EXPECT_EQ(r.value_at(e), expected.value_at(e));
      }
    }
  }
}

TEST(RadialTransform, SelfDualUnitBall) {
  const PrimeContext c(5);
  const ExactRadialShellFunction ball(c, 1, 0, {}, Rational(1));
  for (int n : {1, 2, 3}) {
    const auto r = radial_transform(ball, n);
    for (std::int64_t e = -3; e <= 3; ++e) EXPECT_EQ(r.value_at(e), e <= 0 ? Rational(1) : Rational(0));
  }
}

TEST(RadialTransform, MultiplierGivesKernel) {
  for (std::int64_t p : {2, 3}) {
    const PrimeContext c(p);
    for (int n : {1, 2}) {
      for (int K : {1, 3}) {
        for (std::int64_t L = -4; L <= 4; ++L) {
          const auto k = radial_inverse(multiplier_radial(K, L, c), n);
          for (std::int64_t M = -4; M <= 4; ++M) EXPECT_EQ(k.value_at(M), kernel_closed_form(K, n, L, M, c));
        }
      }
    }
  }
}

TEST(RadialTransform, AgreesWithDenseTransform) {
  for (std::int64_t p : {2, 3}) {
    const PrimeContext c(p);
    for (int n : {1, 2}) {
      std::vector<Complex> shells{{1.5, 0.0}, {-0.25, 0.5}, {2.0, -1.0}};
      const RadialShellFunction r(c, -1, 1, shells, Complex(0.75, 0.0));
      const auto dense = radial_profile(inverse(embed_radial(r, 1, 2, n)));
      const auto fast = radial_inverse(r, n);
      for (std::int64_t e = -3; e <= 3; ++e) EXPECT_LT(std::abs(dense.value_at(e) - fast.value_at(e)), 1e-12);
    }
  }
}

TEST(FourierProperties, RoundTripAndPlancherel) {
  auto rng = padic::testing::make_rng(33);
  for (std::int64_t p : {2, 3, 5}) {
    for (int n : {1, 2}) {
      for (int rep = 0; rep < 6; ++rep) {
        const std::int64_t M = padic::testing::rand_int(rng, -1, 1);
        const std::int64_t depth = p == 5 && n == 2 ? 1 : 2;
        const CosetGrid g(PrimeContext(p), M, depth - M, n);
        const auto f = verify::random_function(rng, g);
        const auto F = forward(f);
        EXPECT_LT(max_abs_difference(inverse(F), f), 1e-10);
        double a = 0.0, b = 0.0;
        for (const auto& v : f.values()) a += std::norm(v);
        for (const auto& v : F.values()) b += std::norm(v);
        a *= g.coset_volume_double();
        b *= F.grid().coset_volume_double();
        EXPECT_NEAR(a, b, 1e-10 * std::max(1.0, a));
      }
    }
  }
}

TEST(FourierProperties, LizorkinSpacesAreExchanged) {
  auto rng = padic::testing::make_rng(34);
  for (std::int64_t p : {2, 3}) {
    for (int n : {1, 2}) {
      for (int rep = 0; rep < 8; ++rep) {
        const CosetGrid g(PrimeContext(p), 1, 1, n);
        const auto phi = verify::random_phi_function(rng, g);
        EXPECT_TRUE(is_in_Psi(forward(phi), 1e-12));
        auto psi = verify::random_function(rng, g);
        psi[0] = Complex(0.0, 0.0);
        EXPECT_TRUE(is_in_Phi(inverse(psi), 1e-12));
        EXPECT_TRUE(is_in_Phi(forward(psi), 1e-12));
      }
    }
  }
}
