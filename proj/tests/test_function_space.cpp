#include <gtest/gtest.h>

#include "padic/function_space.hpp"
#include "padic/verify/oracles.hpp"
#include "padic/wave.hpp"
#include "test_support.hpp"

using namespace padic;

namespace {

std::vector<PAdicScalar> point(const PrimeContext& c, std::int64_t num, std::int64_t den = 1) {
  return {PAdicScalar(c, num, den)};
}

}  // namespace

TEST(Evaluate, IndicatorOfZp) {
  const PrimeContext c(2);
  const auto f = indicator_of_ball(c, 1, 0);
  EXPECT_EQ(evaluate(f, std::span<const PAdicScalar>(point(c, 1, 2))), Rational(0));
  EXPECT_EQ(evaluate(f, std::span<const PAdicScalar>(point(c, 6))), Rational(1));
}

TEST(Evaluate, LocalConstancy) {
  auto rng = padic::testing::make_rng(21);
  const PrimeContext c(3);
  const CosetGrid g(c, 1, 2, 1);
  const auto f = verify::random_function(rng, g);
  for (std::uint64_t i = 0; i < g.size(); ++i) {
    auto x = g.representative(i);
    const auto v = evaluate(f, x);
    x[0] += Rational(9);  // p^l
    EXPECT_EQ(evaluate(f, x), v);
  }
}

TEST(Integrate, Examples) {
  for (std::int64_t p : {2, 3}) {
    const PrimeContext c(p);
    for (int n : {1, 2}) {
      for (std::int64_t g = -2; g <= 2; ++g) {
        EXPECT_EQ(integrate(indicator_of_ball(c, n, g)), pow_p(p, n * g));
        EXPECT_EQ(l1_norm(indicator_of_ball(c, n, g)), padic::to_double(pow_p(p, n * g)));
      }
    }
  }
  EXPECT_EQ(integrate(zero_function<Rational>(PrimeContext(5), 2, 1, 1)), Rational(0));
  const auto u = eigenfunction<Rational>(0, Rational(1), 1, PrimeContext(2));
  EXPECT_EQ(integrate(embed_radial(u, 1, 0, 1)), Rational(0));
  EXPECT_EQ(u.integral(1), Rational(0));
}

TEST(Lizorkin, Membership) {
  const PrimeContext c(3);
  EXPECT_TRUE(is_in_Psi(indicator_of_sphere(c, 1, 0)));
  EXPECT_FALSE(is_in_Psi(indicator_of_ball(c, 1, 0)));
  EXPECT_TRUE(is_in_Psi(zero_function<Rational>(c, 1, 0, 0)));

  const auto u = embed_radial(eigenfunction<Rational>(1, Rational(1), 2, c), -1, 2, 1);
  EXPECT_TRUE(is_in_Phi(u, 0.0));
  EXPECT_FALSE(is_in_Phi(indicator_of_ball(c, 1, 0), 0.0));

  auto rng = padic::testing::make_rng(22);
  const auto f = verify::random_function(rng, CosetGrid(c, 1, 1, 1));
  const auto shifted = translate(f, {Rational(1, 3)});
  EXPECT_TRUE(is_in_Phi(regrid(f, shifted.support_exp(), shifted.resolution_exp()) - shifted, 1e-12));
}

TEST(RadialProfile, Examples) {
  const PrimeContext c(2);
  const auto r = radial_profile(regrid(indicator_of_ball(c, 1, 0), 3, 1));
  EXPECT_EQ(r.core_value(), Rational(1));
  for (std::int64_t g = 1; g <= 3; ++g) EXPECT_EQ(r.value_at(g), Rational(0));

  const auto u = eigenfunction<Rational>(0, Rational(1), 1, c);
  EXPECT_EQ(u.core_value(), Rational(1, 2));
  EXPECT_EQ(u.value_at(1), Rational(-1, 2));
  EXPECT_EQ(u.value_at(2), Rational(0));
  const auto back = radial_profile(embed_radial(u, 2, 1, 1));
  EXPECT_EQ(back.value_at(ExtendedInt::neg_inf()), Rational(1, 2));
  EXPECT_EQ(back.value_at(0), Rational(1, 2));
  EXPECT_EQ(back.value_at(1), Rational(-1, 2));
  EXPECT_EQ(back.value_at(2), Rational(0));
  EXPECT_EQ(l1_norm(embed_radial(u, 1, 0, 1)), 1.0);
}

TEST(RadialProfile, NonRadialNamesWitnesses) {
  const PrimeContext c(3);
  auto f = indicator_of_sphere(c, 1, 0);
  f[2] = Rational(5);
  try {
    (void)radial_profile(f);
    FAIL();
  } catch (const NonRadialError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("[1]"), std::string::npos);
    EXPECT_NE(msg.find("[2]"), std::string::npos);
  }
}

TEST(EmbedRadial, ConstantAndErrors) {
  const PrimeContext c(2);
  const ExactRadialShellFunction constant(c, 2, 1, {}, Rational(3));
  const auto e = embed_radial(constant, 1, 2, 2);
  for (const auto& v : e.values()) EXPECT_EQ(v, Rational(3));
  EXPECT_EQ(integrate(e), 3 * ball_volume({1, 2}, c));

  const ExactRadialShellFunction varying(c, -2, 0, {Rational(1), Rational(2), Rational(3)}, Rational(0));
  EXPECT_THROW(embed_radial(varying, 0, 1, 1), InvalidArgument);   // varies below p^-1
  EXPECT_THROW(embed_radial(varying, -1, 3, 1), InvalidArgument);  // nonzero above p^-1
  EXPECT_NO_THROW(embed_radial(varying, 0, 3, 1));
}

TEST(FunctionSpaceProperties, RadialRoundTrip) {
  auto rng = padic::testing::make_rng(23);
  for (std::int64_t p : {2, 3, 5}) {
    const PrimeContext c(p);
    for (int rep = 0; rep < 20; ++rep) {
      const std::int64_t lo = padic::testing::rand_int(rng, -2, 1);
      const std::int64_t hi = lo + padic::testing::rand_int(rng, 0, 2);
      std::vector<Rational> shells;
      for (std::int64_t g = lo; g <= hi; ++g) shells.emplace_back(padic::testing::rand_int(rng, -5, 5));
      const ExactRadialShellFunction r(c, lo, hi, shells, Rational(padic::testing::rand_int(rng, -5, 5)));
      const int n = static_cast<int>(padic::testing::rand_int(rng, 1, 2));
      const auto f = embed_radial(r, hi, -lo + 1, n);
      EXPECT_TRUE(radial_equal(radial_profile(f), r));
      EXPECT_EQ(integrate(f), r.integral(n));
    }
  }
}

TEST(FunctionSpaceProperties, TranslationInvariantIntegralAndTriangleInequality) {
  auto rng = padic::testing::make_rng(24);
  for (std::int64_t p : {2, 3}) {
    const PrimeContext c(p);
    for (int rep = 0; rep < 20; ++rep) {
      const auto f = verify::random_exact_phi_function(rng, CosetGrid(c, 1, 1, 1)) +
                     indicator_of_ball(c, 1, 0);
      const Rational a = Rational(padic::testing::rand_int(rng, 0, 30), p * p);
      EXPECT_EQ(integrate(translate(f, {a})), integrate(f));

      const auto g = verify::random_function(rng, CosetGrid(c, 0, 2, 1));
      const auto h = verify::random_function(rng, CosetGrid(c, 1, 1, 1));
      EXPECT_LE(l1_norm(g + h), l1_norm(g) + l1_norm(h) + 1e-12);
      EXPECT_NEAR(l1_norm(2.0 * g), 2.0 * l1_norm(g), 1e-12);
    }
  }
}

TEST(FunctionSpaceProperties, ExactPhiMembersIntegrateToZero) {
  auto rng = padic::testing::make_rng(25);
  for (int rep = 0; rep < 30; ++rep) {
    const auto f = verify::random_exact_phi_function(rng, CosetGrid(PrimeContext(5), 0, 1, 2));
    EXPECT_EQ(integrate(f), Rational(0));
    EXPECT_TRUE(is_in_Phi(f, 0.0));
  }
}

TEST(Arithmetic, CommonRefinement) {
  const PrimeContext c(2);
  const auto s = indicator_of_ball(c, 1, 1) - indicator_of_ball(c, 1, 0);
  EXPECT_EQ(s.support_exp(), 1);
  EXPECT_EQ(s.resolution_exp(), 0);
  EXPECT_TRUE(radial_equal(radial_profile(s), radial_profile(indicator_of_sphere(c, 1, 1))));
  EXPECT_THROW(indicator_of_ball(c, 1, 0) + indicator_of_ball(c, 2, 0), InvalidArgument);
}
