#include <gtest/gtest.h>

#include "padic/verify/oracles.hpp"
#include "padic/vladimirov.hpp"
#include "padic/wave.hpp"
#include "test_support.hpp"

using namespace padic;

TEST(Eigenfunction, Examples) {
  const auto a = eigenfunction<Rational>(0, Rational(1), 1, PrimeContext(2));
  EXPECT_EQ(a.core_value(), Rational(1, 2));
  EXPECT_EQ(a.value_at(0), Rational(1, 2));
  EXPECT_EQ(a.value_at(1), Rational(-1, 2));
  EXPECT_EQ(a.value_at(2), Rational(0));

  const auto b = eigenfunction<Rational>(1, Rational(1), 2, PrimeContext(3));
  EXPECT_EQ(b.value_at(-2), Rational(6));
  EXPECT_EQ(b.value_at(-1), Rational(-3));
  EXPECT_EQ(b.value_at(0), Rational(0));

  auto rng = padic::testing::make_rng(51);
  for (int rep = 0; rep < 40; ++rep) {
    const std::int64_t p = rep % 2 ? 3 : 5;
    const auto u = eigenfunction<Rational>(padic::testing::rand_int(rng, -3, 3),
                                           Rational(padic::testing::rand_int(rng, -9, 9), 7),
                                           static_cast<int>(padic::testing::rand_int(rng, 1, 3)), PrimeContext(p));
    EXPECT_EQ(u.integral(1), Rational(0));
  }
}

TEST(Multiplier, Examples) {
  EXPECT_EQ(multiplier_value(1, 0, 0, PrimeContext(2)), Rational(1));
  EXPECT_EQ(multiplier_value(1, 1, 0, PrimeContext(3)), Rational(-1, 2));
  EXPECT_EQ(multiplier_value(2, -2, 1, PrimeContext(5)), Rational(1));
  EXPECT_EQ(multiplier_value(2, 0, 1, PrimeContext(5)), Rational(0));
  EXPECT_EQ(multiplier_value(3, ExtendedInt::neg_inf(), 40, PrimeContext(5)), Rational(1));
}

TEST(Multiplier, TakesOnlyThreeValues) {
  for (std::int64_t p : {2, 3, 7}) {
    const PrimeContext c(p);
    for (int K = 1; K <= 3; ++K) {
      for (std::int64_t L = -8; L <= 8; ++L) {
        for (std::int64_t N = -4; N <= 4; ++N) {
          const Rational b = multiplier_value(K, L, N, c);
          EXPECT_TRUE(b == 1 || b == 0 || b == Rational(-1, p - 1));
        }
      }
    }
  }
}

TEST(Kernel, ClosedFormExamples) {
  EXPECT_EQ(kernel_closed_form(2, 1, 1, 1, PrimeContext(3)), Rational(1, 2));
  EXPECT_EQ(kernel_closed_form(1, 2, 1, 0, PrimeContext(2)), Rational(-1, 2));
  EXPECT_EQ(kernel_closed_form(2, 1, 3, 0, PrimeContext(2)), Rational(0));
  EXPECT_EQ(kernel_closed_form(2, 1, 3, 0, PrimeContext(2), BracketRule::Floor), Rational(1, 4));
  // (K=3, L=-2, M=0) sits on the 1b boundary L = K(M-1)+1; Case 1a starts one lower
  EXPECT_EQ(classify_kernel_case(3, -2, 0), KernelCase::Case1b);
  EXPECT_EQ(kernel_closed_form(3, 1, -2, 0, PrimeContext(5)), Rational(5, 4));
  EXPECT_EQ(kernel_closed_form(3, 1, -3, 0, PrimeContext(5)), Rational(0));
}

TEST(Kernel, OracleExamples) {
  EXPECT_EQ(kernel_oracle(2, 1, 1, 1, PrimeContext(3)), Rational(1, 2));
  EXPECT_EQ(kernel_oracle(1, 1, 2, 0, PrimeContext(2)), Rational(0));
  EXPECT_EQ(kernel_oracle(3, 1, -2, 0, PrimeContext(5)), Rational(5, 4));
  for (std::int64_t M = -3; M <= 3; ++M) {
    for (int K = 1; K <= 3; ++K) {
      for (std::int64_t L = K * (M - 1) - 4; L <= K * (M - 1); ++L) {
        EXPECT_EQ(kernel_oracle(K, 2, L, M, PrimeContext(3)), Rational(0));
      }
    }
  }
}

TEST(Kernel, FrozenValuesFromRationalOracle) {
  // computed by tests/oracles/freeze_values.py from the truncated series
  EXPECT_EQ(kernel_oracle(2, 1, 1, 1, PrimeContext(3)), Rational(1, 2));
  EXPECT_EQ(kernel_oracle(1, 2, 1, 0, PrimeContext(2)), Rational(-1, 2));
  EXPECT_EQ(kernel_oracle(2, 1, 3, 0, PrimeContext(2)), Rational(0));
  EXPECT_EQ(kernel_oracle(3, 1, -2, 0, PrimeContext(5)), Rational(5, 4));
}

TEST(Kernel, ClosedFormEqualsOracleOnFullSweep) {
  for (std::int64_t p : {2, 3}) {
    const PrimeContext c(p);
    for (int n : {1, 2}) {
      for (int K : {1, 2, 3}) {
        for (std::int64_t L = -6; L <= 6; ++L) {
          for (std::int64_t M = -6; M <= 6; ++M) {
            ASSERT_EQ(kernel_closed_form(K, n, L, M, c), kernel_oracle(K, n, L, M, c))
                << "p=" << p << " n=" << n << " K=" << K << " L=" << L << " M=" << M;
          }
        }
      }
    }
  }
}

TEST(Kernel, FloorBracketDisagreesOnlyWhenKAboveOne) {
  int mismatches_k1 = 0, mismatches_k2 = 0;
  for (std::int64_t L = -6; L <= 6; ++L) {
    for (std::int64_t M = -6; M <= 6; ++M) {
      const PrimeContext c(2);
      mismatches_k1 += kernel_closed_form(1, 1, L, M, c, BracketRule::Floor) != kernel_oracle(1, 1, L, M, c);
      mismatches_k2 += kernel_closed_form(2, 1, L, M, c, BracketRule::Floor) != kernel_oracle(2, 1, L, M, c);
    }
  }
  EXPECT_EQ(mismatches_k1, 0);
  EXPECT_GT(mismatches_k2, 0);
}

TEST(Kernel, BallIntegralMatchesMultiplierAtZero) {
  // the integral of the kernel over Q_p^n is b(|t|, 0) = 1; over a large ball it is already 1
  for (std::int64_t p : {2, 3}) {
    for (int K : {1, 2}) {
      for (std::int64_t L = -3; L <= 3; ++L) {
        EXPECT_EQ(kernel_ball_integral(K, 1, L, 10, PrimeContext(p)), Rational(1));
      }
    }
  }
}

namespace {

WaveProblem sphere_problem(std::int64_t p, int n, int K, std::int64_t N, double alpha = 1.0) {
  return WaveProblem(PrimeContext(p), n, alpha, K, to_complex(sphere_indicator_datum(PrimeContext(p), n, N)));
}

}  // namespace

TEST(WaveProblem, RejectsNonPhiData) {
  const PrimeContext c(3);
  EXPECT_THROW(WaveProblem(c, 1, 1.0, 1, to_complex(indicator_of_ball(c, 1, 0))), NotLizorkinError);
  EXPECT_THROW(WaveProblem(c, 1, 1.0, 0, to_complex(indicator_of_sphere(c, 1, 0))), InvalidArgument);
}

TEST(WaveProblem, Refusal) {
  const PrimeContext c(2);
  const auto u0 = to_complex(sphere_indicator_datum(c, 1, 0));
  try {
    (void)WaveProblem::from_exponents(c, 1, 1.0, 2.5, u0);
    FAIL();
  } catch (const NoSolutionError& e) {
    EXPECT_NE(std::string(e.what()).find("only the zero solution"), std::string::npos);
  }
  EXPECT_EQ(WaveProblem::from_exponents(c, 1, 0.25, 0.75, u0).K(), 3);
  EXPECT_DOUBLE_EQ(WaveProblem::from_exponents(c, 1, 0.25, 0.75, u0).beta(), 0.75);
}

TEST(Solve, SphereIndicatorSlicesFollowMultiplier) {
  for (std::int64_t p : {2, 3}) {
    for (int n : {1, 2}) {
      for (int K : {1, 2}) {
        for (std::int64_t N : {-1, 0, 1}) {
          const WaveProblem prob = sphere_problem(p, n, K, N);
          for (const auto& L : auto_sweep(prob)) {
            const Rational b = multiplier_value(K, L, N, prob.context());
            const auto slice = solve_spectral(prob, L);
            EXPECT_LT(max_abs_difference(slice.field, prob.u0() * Complex(padic::to_double(b), 0.0)), 1e-12);
            const auto exact = solve_convolution_exact(prob, sphere_indicator_datum(prob.context(), n, N), L);
            EXPECT_EQ(exact.values(), (sphere_indicator_datum(prob.context(), n, N) * b).values());
          }
        }
      }
    }
  }
}

TEST(Solve, InitialConditionIsExact) {
  auto rng = padic::testing::make_rng(52);
  const PrimeContext c(3);
  const auto u0 = verify::random_exact_phi_function(rng, CosetGrid(c, 1, 1, 1));
  const WaveProblem prob(c, 1, 1.0, 2, to_complex(u0));
  EXPECT_EQ(solve_spectral(prob, ExtendedInt::neg_inf()).field.values(), prob.u0().values());
  EXPECT_EQ(solve_convolution(prob, ExtendedInt::neg_inf()).field.values(), prob.u0().values());
  EXPECT_EQ(solve_convolution_exact(prob, u0, ExtendedInt::neg_inf()).values(), u0.values());
}

TEST(SolveProperties, DualPathAgreementAndPhiSlices) {
  auto rng = padic::testing::make_rng(53);
  for (std::int64_t p : {2, 3, 5}) {
    for (int n : {1, 2}) {
      for (int rep = 0; rep < 3; ++rep) {
        const std::int64_t M = padic::testing::rand_int(rng, -1, 1);
        const CosetGrid g(PrimeContext(p), M, (n == 2 && p == 5 ? 1 : 2) - M, n);
        const WaveProblem prob(g.context(), n, 0.5, 1 + rep, verify::random_phi_function(rng, g));
        for (const auto& L : auto_sweep(prob)) {
          const auto a = solve_spectral(prob, L);
          const auto b = solve_convolution(prob, L);
          EXPECT_LT(max_abs_difference(a.field, b.field), 1e-9);
          EXPECT_TRUE(is_in_Phi(a.field, 1e-10));
        }
      }
    }
  }
}

TEST(SolveProperties, ExtendedOutputGridAgrees) {
  auto rng = padic::testing::make_rng(54);
  const CosetGrid g(PrimeContext(2), 0, 2, 1);
  const WaveProblem prob(g.context(), 1, 1.0, 1, verify::random_phi_function(rng, g));
  for (std::int64_t L = -3; L <= 2; ++L) {
    EXPECT_LT(max_abs_difference(solve_spectral(prob, L, 2).field, solve_convolution(prob, L, 2).field), 1e-12);
  }
}

TEST(AutoSweep, CoversTransitions) {
  const WaveProblem prob = sphere_problem(3, 1, 2, 1);
  const auto sweep = auto_sweep(prob);
  ASSERT_TRUE(sweep.front().is_neg_inf());
  EXPECT_EQ(sweep[1], ExtendedInt(-3));
  EXPECT_EQ(sweep.back(), ExtendedInt(0));
}

TEST(Dependence, Examples) {
  // u0 = F^-1 1_{S_1} lives in B_0
  const WaveProblem a = sphere_problem(2, 1, 1, 1);
  const auto ra = dependence_check(a, 0);
  EXPECT_TRUE(ra.precondition_ok);
  EXPECT_TRUE(ra.passed);
  EXPECT_EQ(ra.checked_L.back(), ExtendedInt(-1));

  const PrimeContext c(3);
  const WaveProblem zero(c, 1, 1.0, 1, CosetFunction(CosetGrid(c, 0, 1, 1)));
  EXPECT_TRUE(dependence_check(zero, 0).passed);

  auto rng = padic::testing::make_rng(55);
  const WaveProblem b(c, 1, 1.0, 2, verify::random_phi_function(rng, CosetGrid(c, 2, 1, 1)));
  const auto rb = dependence_check(b, 2);
  EXPECT_TRUE(rb.passed);
  EXPECT_EQ(rb.checked_L.back(), ExtendedInt(2));
}

TEST(Dependence, PreconditionIsReported) {
  auto rng = padic::testing::make_rng(56);
  const PrimeContext c(2);
  const WaveProblem prob(c, 1, 1.0, 1, verify::random_phi_function(rng, CosetGrid(c, 2, 1, 1)));
  const auto rep = dependence_check(prob, 0);
  EXPECT_FALSE(rep.precondition_ok);
  EXPECT_FALSE(rep.passed);
  EXPECT_FALSE(rep.precondition_message.empty());
}

TEST(L1Bound, Examples) {
  const WaveProblem prob = sphere_problem(2, 1, 1, 1);
  const auto r0 = l1_bound_check(prob, 0);
  EXPECT_NEAR(r0.ratio, 1.0, 1e-12);
  EXPECT_EQ(r0.bound, 16.0);
  EXPECT_TRUE(r0.passed);
  EXPECT_EQ(l1_bound_check(prob, 3).ratio, 0.0);
  EXPECT_THROW(l1_bound_check(prob, -1), InvalidArgument);
  EXPECT_EQ(l1_bound_gamma(1), 2);
  EXPECT_EQ(l1_bound_gamma(2), 1);
  EXPECT_EQ(l1_bound_gamma(3), 1);
}

TEST(L1Bound, RandomSweep) {
  auto rng = padic::testing::make_rng(57);
  for (std::int64_t p : {2, 3}) {
    const CosetGrid g(PrimeContext(p), 1, 1, 1);
    for (int K : {1, 2}) {
      const WaveProblem prob(g.context(), 1, 1.0, K, verify::random_phi_function(rng, g));
      for (std::int64_t L = 0; L <= 3; ++L) EXPECT_TRUE(l1_bound_check(prob, L).passed);
    }
  }
}

TEST(Uniqueness, ZeroDataGiveZeroSlices) {
  const PrimeContext c(3);
  const WaveProblem prob(c, 2, 1.0, 1, CosetFunction(CosetGrid(c, 1, 0, 2)));
  const auto rep = uniqueness_smoke(prob);
  EXPECT_TRUE(rep.passed);
  EXPECT_TRUE(rep.checked_L.front().is_neg_inf());
  EXPECT_EQ(rep.max_abs_convolution, 0.0);
  EXPECT_THROW(uniqueness_smoke(sphere_problem(2, 1, 1, 0)), InvalidArgument);
}

TEST(TimeProfile, SphereIndicatorShape) {
  for (std::int64_t p : {2, 3}) {
    for (int K : {1, 2}) {
      const std::int64_t N = 1;
      const WaveProblem prob = sphere_problem(p, 1, K, N, 0.5);
      const auto x = prob.u0().grid().representative(0);
      const auto prof = time_profile(prob, x);
      const Complex u0x = prob.u0()[0];
      EXPECT_LT(std::abs(prof.core_value() - u0x), 1e-12);
      EXPECT_LT(std::abs(prof.value_at(-K * N + 1) + u0x / static_cast<double>(p - 1)), 1e-12);
      EXPECT_EQ(prof.value_at(-K * N + 2), Complex(0.0, 0.0));
      EXPECT_LT(std::abs(prof.integral(1)), 1e-12);

      // D_t^alpha of the profile is p^{beta N} times the profile
      const auto d = apply_hypersingular_radial({0.5, 1}, prof);
      const double lambda = std::pow(static_cast<double>(p), prob.beta() * N);
      for (std::int64_t e = -K * N - 1; e <= -K * N + 2; ++e) {
        EXPECT_LT(std::abs(d.value_at(e) - lambda * prof.value_at(e)), 1e-10 * lambda * std::abs(u0x));
      }
    }
  }
}

TEST(TimeProfile, FarPointIsZeroForSmallTimes) {
  const WaveProblem prob = sphere_problem(2, 1, 1, 1);
  const auto prof = time_profile(prob, {Rational(1, 8)});
  EXPECT_EQ(prof.core_value(), Complex(0.0, 0.0));
  for (const auto& v : prof.shell_values()) EXPECT_LT(std::abs(v), 1e-14);
}
