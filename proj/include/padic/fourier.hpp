#pragma once

// Fourier transform on coset tables as finite character sums, with the
// Haar measure normalized on Z_p and chi_p(x) = exp(2 pi i {x}_p).
//
// A function on the grid (M, l) transforms to one on the grid (l, M): its
// transform vanishes outside B_l and is constant on cosets of B_{-M}. With
// x = a p^-M and xi = b p^-l the phase of xi.x is (sum_k a_k b_k mod P) / P,
// P = p^(M+l), so every character value is an exact integer residue until
// it is looked up in a table of P-th roots of unity.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "padic/core.hpp"
#include "padic/function_space.hpp"
#include "padic/lattice.hpp"

namespace padic {

namespace detail {

inline std::vector<Complex> roots_of_unity(std::uint64_t order) {
  std::vector<Complex> w(order);
  for (std::uint64_t r = 0; r < order; ++r) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(order);
    w[r] = (r == 0) ? Complex(1.0, 0.0) : std::polar(1.0, angle);
  }
  return w;
}

// sign = +1: sum_x f(x) chi(xi.x) vol_x; sign = -1: the conjugate kernel.
inline CosetFunction character_sum_transform(const CosetFunction& f, int sign) {
  const CosetGrid& in = f.grid();
  CosetGrid out(in.context(), in.resolution_exp(), in.support_exp(), in.dim());
  const std::uint64_t P = in.axis_size();
  const int n = in.dim();
  const auto w = roots_of_unity(P);
  const double vol = in.coset_volume_double();

  std::vector<std::vector<std::uint64_t>> in_codes(in.size());
  for (std::uint64_t i = 0; i < in.size(); ++i) in_codes[i] = in.codes(i);

  const bool narrow = P < (std::uint64_t{1} << 31);
  std::vector<Complex> values(out.size());
  for (std::uint64_t j = 0; j < out.size(); ++j) {
    const auto b = out.codes(j);
    Complex acc(0.0, 0.0);
    for (std::uint64_t i = 0; i < in.size(); ++i) {
      if (f[i] == Complex(0.0, 0.0)) continue;
      const auto& a = in_codes[i];
      std::uint64_t r = 0;
      for (int k = 0; k < n; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        r += narrow ? (a[kk] * b[kk]) % P : mulmod(a[kk], b[kk], P);
        r %= P;
      }
      if (sign < 0 && r != 0) r = P - r;
      acc += f[i] * w[r];
    }
    values[j] = acc * vol;
  }
  return {out, std::move(values)};
}

}  // namespace detail

// (F f)(xi) = int chi_p(xi . x) f(x) dx.
inline CosetFunction forward(const CosetFunction& f) { return detail::character_sum_transform(f, +1); }
inline CosetFunction forward(const ExactCosetFunction& f) { return forward(to_complex(f)); }

// (F^-1 g)(x) = int chi_p(-x . xi) g(xi) dxi.
inline CosetFunction inverse(const CosetFunction& g) { return detail::character_sum_transform(g, -1); }
inline CosetFunction inverse(const ExactCosetFunction& g) { return inverse(to_complex(g)); }

// Transform of f at an arbitrary frequency, with exact phases. Each coset
// x + B_{-l} contributes chi(xi.x) times the character integral over B_{-l},
// which is what makes the result vanish for |xi| > p^l.
inline Complex transform_at(const CosetFunction& f, const std::vector<Rational>& xi, int sign = +1) {
  const CosetGrid& g = f.grid();
  if (static_cast<int>(xi.size()) != g.dim()) throw InvalidArgument("transform_at: dimension mismatch");
  const Rational cell = ball_character_integral(g.context(), -g.resolution_exp(), xi);
  if (cell == 0) return {0.0, 0.0};
  Complex acc(0.0, 0.0);
  for (std::uint64_t i = 0; i < g.size(); ++i) {
    if (f[i] == Complex(0.0, 0.0)) continue;
    const auto x = g.representative(i);
    Rational dot(0);
    for (std::size_t k = 0; k < x.size(); ++k) dot += xi[k] * x[k];
    if (sign < 0) dot = -dot;
    acc += f[i] * character(PAdicScalar(g.context(), dot)).value;
  }
  return acc * padic::to_double(cell);
}

// Transform of a radial function, sphere by sphere from the closed-form
// sphere and ball integrals. Radial transforms are real and even, so the
// forward and inverse transforms coincide.
template <class V>
BasicRadialShellFunction<V> radial_transform(const BasicRadialShellFunction<V>& r, int n) {
  const PrimeContext& ctx = r.context();
  const std::int64_t p = ctx.p();
  const std::int64_t lo = r.shell_lo();
  const std::int64_t hi = r.shell_hi();

  // Value on the sphere |x| = p^M of the transform.
  auto at = [&](std::int64_t M) {
    V total{};
    if (M <= 1 - lo) total += r.core_value() * from_rational<V>(pow_p(p, n * (lo - 1)));
    for (std::int64_t j = lo; j <= hi; ++j) {
      Rational s(0);
      if (M <= -j) {
        s = (1 - pow_p(p, -n)) * pow_p(p, n * j);
      } else if (M == -j + 1) {
        s = -pow_p(p, n * (j - 1));
      } else {
        continue;
      }
      total += r.value_at(j) * from_rational<V>(s);
    }
    return total;
  };

  const std::int64_t core_exp = -std::max(hi, lo - 1);
  const std::int64_t out_lo = core_exp + 1;
  const std::int64_t out_hi = 1 - lo;
  std::vector<V> shells;
  for (std::int64_t M = out_lo; M <= out_hi; ++M) shells.push_back(at(M));
  return {ctx, out_lo, out_hi, std::move(shells), at(core_exp)};
}

template <class V>
BasicRadialShellFunction<V> radial_inverse(const BasicRadialShellFunction<V>& r, int n) {
  return radial_transform(r, n);
}

template <class V>
BasicRadialShellFunction<V> radial_forward(const BasicRadialShellFunction<V>& r, int n) {
  return radial_transform(r, n);
}

}  // namespace padic
