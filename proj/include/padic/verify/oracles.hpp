#pragma once

// Test-side oracles: exact sums of roots of unity, brute-force character
// integrals over coset grids, and seeded generators for random data. Nothing
// here calls the closed-form integration formulas.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "padic/function_space.hpp"
#include "padic/lattice.hpp"
#include "padic/rational.hpp"

namespace padic::verify {

// Sum of h[r] zeta^r, zeta a primitive p^m-th root of unity, held exactly.
// The powers zeta^r with r < (p-1) p^(m-1) form a basis over Q; higher powers
// are rewritten through 1 + zeta^q + ... + zeta^{(p-1)q} = 0, q = p^(m-1).
class CyclotomicSum {
 public:
  CyclotomicSum(std::int64_t p, std::int64_t m) : p_(p), m_(m) {
    order_ = 1;
    for (std::int64_t i = 0; i < m; ++i) order_ *= static_cast<std::uint64_t>(p);
    h_.assign(order_, 0);
  }

  void add(std::uint64_t r, std::int64_t count = 1) { h_[r % order_] += count; }

  // Rational value when the sum is rational; throws otherwise.
  std::int64_t rational_value() const {
    std::vector<std::int64_t> h = h_;
    if (m_ > 0) {
      const std::uint64_t q = order_ / static_cast<std::uint64_t>(p_);
      const std::uint64_t top = order_ - q;
      for (std::uint64_t r = top; r < order_; ++r) {
        const std::int64_t c = h[r];
        if (c == 0) continue;
        h[r] = 0;
        for (std::int64_t i = 0; i + 1 < p_; ++i) h[r - top + static_cast<std::uint64_t>(i) * q] -= c;
      }
    }
    for (std::uint64_t r = 1; r < order_; ++r) {
      if (h[r] != 0) throw std::logic_error("CyclotomicSum: sum is irrational");
    }
    return h[0];
  }

 private:
  std::int64_t p_;
  std::int64_t m_;
  std::uint64_t order_;
  std::vector<std::int64_t> h_;
};

namespace detail {

inline BigInt pow_big(std::int64_t p, std::int64_t k) {
  BigInt r = 1;
  for (std::int64_t i = 0; i < k; ++i) r *= p;
  return r;
}

inline BigInt mod_inverse(BigInt a, const BigInt& mod) {
  BigInt t = 0, new_t = 1, r = mod, new_r = ((a % mod) + mod) % mod;
  while (new_r != 0) {
    const BigInt q = r / new_r;
    BigInt tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::logic_error("mod_inverse: not invertible");
  return ((t % mod) + mod) % mod;
}

// Smallest m >= 0 with p^m y a p-adic integer.
inline std::int64_t denominator_power(const Rational& y, std::int64_t p) {
  BigInt den = denominator_of(y);
  std::int64_t m = 0;
  while (den % p == 0) {
    den /= p;
    ++m;
  }
  return m;
}

// p^m y mod p^m for a rational y with |y|_p <= p^m.
inline std::uint64_t phase_multiplier(const Rational& y, std::int64_t p, std::int64_t m) {
  if (m == 0 || y == 0) return 0;
  const BigInt mod = pow_big(p, m);
  const Rational z = y * Rational(mod);
  const BigInt num = numerator_of(z);
  const BigInt den = denominator_of(z);
  BigInt r = (((num % mod) + mod) % mod) * mod_inverse(den, mod) % mod;
  return r.convert_to<std::uint64_t>();
}

// Sum over c in [0, p^m)^n of zeta^{sum_k a_k c_k}, optionally only over the
// c whose coset lies on the outer sphere (some c_k prime to p).
inline std::int64_t brute_character_count(std::int64_t p, std::int64_t m, const std::vector<std::uint64_t>& a,
                                          bool sphere_only) {
  CyclotomicSum sum(p, m);
  const std::uint64_t P = static_cast<std::uint64_t>(pow_big(p, m));
  const std::size_t n = a.size();
  std::vector<std::uint64_t> c(n, 0);
  const auto p64 = static_cast<std::uint64_t>(p);
  while (true) {
    bool on_sphere = false;
    std::uint64_t r = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (c[k] % p64 != 0) on_sphere = true;
      r = (r + (a[k] % P) * c[k]) % P;
    }
    if (!sphere_only || on_sphere) sum.add(r);
    std::size_t k = 0;
    while (k < n && ++c[k] == P) c[k++] = 0;
    if (k == n) break;
  }
  return sum.rational_value();
}

}  // namespace detail

// Largest direct enumeration before the ball integral is taken axis by axis.
inline constexpr std::uint64_t kBruteForceDirectLimit = std::uint64_t{1} << 18;

// Integral of chi(xi . x) over B_gamma^n (sphere_only: over S_gamma^n), as a
// sum over the cosets of B_{gamma-m} on which the character is constant.
inline Rational brute_character_integral(const PrimeContext& ctx, std::int64_t gamma, const std::vector<Rational>& xi,
                                         bool sphere_only) {
  const std::int64_t p = ctx.p();
  const auto n = static_cast<std::int64_t>(xi.size());
  std::vector<Rational> y;
  std::int64_t m = sphere_only ? 1 : 0;
  for (const auto& x : xi) {
    y.push_back(x * pow_p(p, -gamma));
    m = std::max(m, detail::denominator_power(y.back(), p));
  }
  std::vector<std::uint64_t> a;
  for (const auto& yk : y) a.push_back(detail::phase_multiplier(yk, p, m));
  const Rational vol = pow_p(p, n * (gamma - m));

  const double cells = std::pow(static_cast<double>(p), static_cast<double>(n * m));
  if (cells <= static_cast<double>(kBruteForceDirectLimit)) {
    return vol * Rational(detail::brute_character_count(p, m, a, sphere_only));
  }
  // Too many cells: the ball is a product of one-dimensional balls, and the
  // sphere is the ball minus the next smaller ball.
  auto ball = [&](std::int64_t g) {
    Rational prod(1);
    for (const auto& x : xi) prod *= brute_character_integral(ctx, g, std::vector<Rational>{x}, false);
    return prod;
  };
  if (n == 1) throw std::logic_error("brute_character_integral: one-dimensional grid too large");
  return sphere_only ? ball(gamma) - ball(gamma - 1) : ball(gamma);
}

inline Rational brute_ball_character_integral(const PrimeContext& ctx, std::int64_t gamma,
                                              const std::vector<Rational>& xi) {
  return brute_character_integral(ctx, gamma, xi, false);
}

inline Rational brute_sphere_character_integral(const PrimeContext& ctx, std::int64_t gamma,
                                                const std::vector<Rational>& xi) {
  return brute_character_integral(ctx, gamma, xi, true);
}

// ---------------------------------------------------------------------------
// Generators. All randomness flows from a caller-seeded mt19937_64.

using Rng = std::mt19937_64;

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// A rational of exact norm p^e: u p^-e with u a small integer prime to p,
// plus a random higher-order digit part.
inline Rational random_with_exponent(Rng& rng, std::int64_t p, std::int64_t e) {
  std::int64_t u = 0;
  do {
    u = uniform_int(rng, 1, 4 * p);
  } while (u % p == 0);
  const Rational extra = Rational(uniform_int(rng, 0, p * p)) * Rational(p);
  return (Rational(u) + extra) * pow_p(p, -e);
}

// xi in Q_p^n with max-norm exactly p^e.
inline std::vector<Rational> random_frequency(Rng& rng, std::int64_t p, int n, std::int64_t e) {
  std::vector<Rational> xi;
  const auto lead = static_cast<int>(uniform_int(rng, 0, n - 1));
  for (int k = 0; k < n; ++k) {
    if (k == lead) {
      xi.push_back(random_with_exponent(rng, p, e));
    } else if (uniform_int(rng, 0, 2) == 0) {
      xi.emplace_back(0);
    } else {
      xi.push_back(random_with_exponent(rng, p, e - uniform_int(rng, 0, 2)));
    }
  }
  return xi;
}

inline CosetFunction random_function(Rng& rng, const CosetGrid& g) {
  std::normal_distribution<double> d(0.0, 1.0);
  return CosetFunction::generate(g, [&](std::uint64_t) { return Complex(d(rng), d(rng)); });
}

// Random function with the mean removed, so its integral is zero.
inline CosetFunction random_phi_function(Rng& rng, const CosetGrid& g) {
  CosetFunction f = random_function(rng, g);
  Complex mean(0.0, 0.0);
  for (const auto& v : f.values()) mean += v;
  mean /= static_cast<double>(g.size());
  for (std::uint64_t i = 0; i < g.size(); ++i) f[i] -= mean;
  return f;
}

// Small-integer rational table with zero sum.
inline ExactCosetFunction random_exact_phi_function(Rng& rng, const CosetGrid& g) {
  std::vector<Rational> v(g.size());
  Rational total(0);
  for (auto& x : v) {
    x = Rational(uniform_int(rng, -6, 6), uniform_int(rng, 1, 4));
    total += x;
  }
  v[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(g.size()) - 1))] -= total;
  return {g, std::move(v)};
}

}  // namespace padic::verify
