#pragma once

#include <cstdint>
#include <random>

#include "padic/rational.hpp"

namespace padic::testing {

inline std::mt19937_64 make_rng(std::uint64_t salt) { return std::mt19937_64(0x9e3779b97f4a7c15ULL ^ salt); }

inline std::int64_t rand_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Nonzero rational with a few factors of p in numerator or denominator.
inline Rational rand_rational(std::mt19937_64& rng, std::int64_t p) {
  std::int64_t num = 0;
  while (num == 0) num = rand_int(rng, -50, 50);
  Rational r(num, rand_int(rng, 1, 40));
  return r * pow_p(p, rand_int(rng, -4, 4));
}

}  // namespace padic::testing
