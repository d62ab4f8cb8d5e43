#pragma once

// Locally constant, compactly supported functions on Q_p^n stored as coset
// tables, radial shell functions, and the Lizorkin-space membership tests.
//
// Both containers are templates over the value type: std::complex<double> for
// general data and Rational where a construction is exact (indicators, the
// radial eigenfunction family). Exact tables convert to complex ones with
// to_complex(); nothing converts back.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "padic/core.hpp"
#include "padic/lattice.hpp"

namespace padic {

using Complex = std::complex<double>;

inline Complex to_complex(const Complex& z) { return z; }
inline Complex to_complex(const Rational& r) { return {padic::to_double(r), 0.0}; }

inline double magnitude(const Complex& z) { return std::abs(z); }
inline double magnitude(const Rational& r) { return std::abs(padic::to_double(r)); }

template <class V>
V from_rational(const Rational& r) {
  if constexpr (std::is_same_v<V, Rational>) {
    return r;
  } else {
    return V(padic::to_double(r), 0.0);
  }
}

// Exact equality for rationals; 1e-12 relative (floor 1) for floating values.
inline bool values_match(const Rational& a, const Rational& b) { return a == b; }
inline bool values_match(const Complex& a, const Complex& b, double tol = 1e-12) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

inline std::string value_string(const Rational& r) { return to_fraction_string(r); }
inline std::string value_string(const Complex& z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", z.real(), z.imag());
  return buf;
}

// ---------------------------------------------------------------------------

template <class V>
class BasicRadialShellFunction {
 public:
  using value_type = V;

  // Shells gamma in [shell_lo, shell_hi] carry shell_values[gamma - shell_lo];
  // core is the value on B_{shell_lo - 1}; everything above shell_hi is zero.
  BasicRadialShellFunction(PrimeContext ctx, std::int64_t shell_lo, std::int64_t shell_hi,
                           std::vector<V> shell_values, V core)
      : ctx_(ctx),
        lo_(shell_lo),
        hi_(shell_hi),
        shells_(std::move(shell_values)),
        core_(std::move(core)) {
    const std::int64_t expected = std::max<std::int64_t>(0, hi_ - lo_ + 1);
    if (static_cast<std::int64_t>(shells_.size()) != expected) {
      throw InvalidArgument("RadialShellFunction: expected " + std::to_string(expected) +
                            " shell values, got " + std::to_string(shells_.size()));
    }
  }

  const PrimeContext& context() const noexcept { return ctx_; }
  std::int64_t shell_lo() const noexcept { return lo_; }
  std::int64_t shell_hi() const noexcept { return hi_; }
  const std::vector<V>& shell_values() const noexcept { return shells_; }
  const V& core_value() const noexcept { return core_; }

  // Value on the sphere of norm exponent e; -inf is the point 0.
  V value_at(const ExtendedInt& e) const {
    if (e < ExtendedInt(lo_)) return core_;
    if (e > ExtendedInt(hi_)) return V{};
    return shells_[static_cast<std::size_t>(e.value() - lo_)];
  }

  // Integral over Q_p^n.
  V integral(int n) const {
    const std::int64_t p = ctx_.p();
    V total = core_ * from_rational<V>(pow_p(p, n * (lo_ - 1)));
    for (std::int64_t g = lo_; g <= hi_; ++g) {
      total += shells_[static_cast<std::size_t>(g - lo_)] *
               from_rational<V>(sphere_volume({g, n}, ctx_));
    }
    return total;
  }

  BasicRadialShellFunction scaled(const V& c) const {
    auto out = *this;
    for (auto& v : out.shells_) v *= c;
    out.core_ *= c;
    return out;
  }

 private:
  PrimeContext ctx_;
  std::int64_t lo_;
  std::int64_t hi_;
  std::vector<V> shells_;
  V core_;
};

using RadialShellFunction = BasicRadialShellFunction<Complex>;
using ExactRadialShellFunction = BasicRadialShellFunction<Rational>;

inline RadialShellFunction to_complex(const ExactRadialShellFunction& r) {
  std::vector<Complex> shells;
  for (const auto& v : r.shell_values()) shells.push_back(to_complex(v));
  return {r.context(), r.shell_lo(), r.shell_hi(), std::move(shells), to_complex(r.core_value())};
}

// Functional equality: same value on every sphere and at 0.
template <class V>
bool radial_equal(const BasicRadialShellFunction<V>& a, const BasicRadialShellFunction<V>& b) {
  const std::int64_t lo = std::min(a.shell_lo(), b.shell_lo()) - 1;
  const std::int64_t hi = std::max(a.shell_hi(), b.shell_hi()) + 1;
  if (!values_match(a.core_value(), b.core_value())) return false;
  for (std::int64_t g = lo; g <= hi; ++g) {
    if (!values_match(a.value_at(g), b.value_at(g))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

template <class V>
class BasicCosetFunction {
 public:
  using value_type = V;

  BasicCosetFunction(CosetGrid grid, std::vector<V> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
      throw InvalidArgument("CosetFunction: value table has " + std::to_string(values_.size()) +
                            " entries for a grid of " + std::to_string(grid_.size()));
    }
  }

  explicit BasicCosetFunction(CosetGrid grid)
      : grid_(std::move(grid)), values_(grid_.size(), V{}) {}

  template <class Generator>
  static BasicCosetFunction generate(CosetGrid grid, Generator&& gen) {
    std::vector<V> values;
    values.reserve(grid.size());
    for (std::uint64_t i = 0; i < grid.size(); ++i) values.push_back(gen(i));
    return {std::move(grid), std::move(values)};
  }

  const CosetGrid& grid() const noexcept { return grid_; }
  const PrimeContext& context() const noexcept { return grid_.context(); }
  std::int64_t p() const noexcept { return grid_.p(); }
  int dim() const noexcept { return grid_.dim(); }
  std::int64_t support_exp() const noexcept { return grid_.support_exp(); }
  std::int64_t resolution_exp() const noexcept { return grid_.resolution_exp(); }
  std::uint64_t size() const noexcept { return grid_.size(); }

  const std::vector<V>& values() const noexcept { return values_; }
  std::vector<V>& values() noexcept { return values_; }
  const V& operator[](std::uint64_t i) const { return values_[i]; }
  V& operator[](std::uint64_t i) { return values_[i]; }

  BasicCosetFunction& operator*=(const V& c) {
    for (auto& v : values_) v *= c;
    return *this;
  }
  friend BasicCosetFunction operator*(BasicCosetFunction f, const V& c) { return f *= c; }
  friend BasicCosetFunction operator*(const V& c, BasicCosetFunction f) { return f *= c; }
  BasicCosetFunction operator-() const { return *this * V(-1); }

 private:
  CosetGrid grid_;
  std::vector<V> values_;
};

using CosetFunction = BasicCosetFunction<Complex>;
using ExactCosetFunction = BasicCosetFunction<Rational>;

inline CosetFunction to_complex(const ExactCosetFunction& f) {
  std::vector<Complex> values;
  values.reserve(f.size());
  for (const auto& v : f.values()) values.push_back(to_complex(v));
  return {f.grid(), std::move(values)};
}

template <class V>
BasicCosetFunction<V> zero_function(const PrimeContext& ctx, int n, std::int64_t M,
                                    std::int64_t ell) {
  return BasicCosetFunction<V>(CosetGrid(ctx, M, ell, n));
}

// 1 on B_gamma^n (a single coset).
template <class V = Rational>
BasicCosetFunction<V> indicator_of_ball(const PrimeContext& ctx, int n, std::int64_t gamma) {
  return {CosetGrid(ctx, gamma, -gamma, n), std::vector<V>{V(1)}};
}

// 1 on S_gamma^n, on the grid (gamma, -gamma + 1).
template <class V = Rational>
BasicCosetFunction<V> indicator_of_sphere(const PrimeContext& ctx, int n, std::int64_t gamma) {
  CosetGrid grid(ctx, gamma, -gamma + 1, n);
  return BasicCosetFunction<V>::generate(grid, [&](std::uint64_t i) {
    return grid.norm_exponent(i) == ExtendedInt(gamma) ? V(1) : V(0);
  });
}

// Same function on the finer/larger grid (M2, ell2), M2 >= M, ell2 >= ell.
template <class V>
BasicCosetFunction<V> regrid(const BasicCosetFunction<V>& f, std::int64_t M2, std::int64_t ell2) {
  const auto& g = f.grid();
  if (M2 < g.support_exp() || ell2 < g.resolution_exp()) {
    throw InvalidArgument("regrid: target grid must contain and refine the source grid");
  }
  if (M2 == g.support_exp() && ell2 == g.resolution_exp()) return f;
  CosetGrid target(g.context(), M2, ell2, g.dim());
  const auto p = static_cast<std::uint64_t>(g.p());
  const std::uint64_t shift = checked_ipow(p, M2 - g.support_exp());
  const int n = g.dim();
  std::vector<std::uint64_t> src(static_cast<std::size_t>(n));
  return BasicCosetFunction<V>::generate(target, [&](std::uint64_t i) {
    const auto codes = target.codes(i);
    for (int k = 0; k < n; ++k) {
      const std::uint64_t c = codes[static_cast<std::size_t>(k)];
      if (c % shift != 0) return V{};
      src[static_cast<std::size_t>(k)] = (c / shift) % g.axis_size();
    }
    return f[g.index_of(src)];
  });
}

template <class V>
std::pair<BasicCosetFunction<V>, BasicCosetFunction<V>> common_refinement(
    const BasicCosetFunction<V>& f, const BasicCosetFunction<V>& g) {
  if (!(f.context() == g.context()) || f.dim() != g.dim()) {
    throw InvalidArgument("CosetFunction: operands differ in prime or dimension");
  }
  const std::int64_t M = std::max(f.support_exp(), g.support_exp());
  const std::int64_t ell = std::max(f.resolution_exp(), g.resolution_exp());
  return {regrid(f, M, ell), regrid(g, M, ell)};
}

template <class V>
BasicCosetFunction<V> operator+(const BasicCosetFunction<V>& f, const BasicCosetFunction<V>& g) {
  auto [a, b] = common_refinement(f, g);
  for (std::uint64_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <class V>
BasicCosetFunction<V> operator-(const BasicCosetFunction<V>& f, const BasicCosetFunction<V>& g) {
  auto [a, b] = common_refinement(f, g);
  for (std::uint64_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

template <class V>
V evaluate(const BasicCosetFunction<V>& f, const std::vector<Rational>& x) {
  const auto idx = f.grid().locate(x);
  if (!idx) return V{};
  return f[*idx];
}

template <class V>
V evaluate(const BasicCosetFunction<V>& f, std::span<const PAdicScalar> x) {
  return evaluate(f, detail::values_of(x));
}

template <class V>
V integrate(const BasicCosetFunction<V>& f) {
  V sum{};
  for (const auto& v : f.values()) sum += v;
  return sum * from_rational<V>(f.grid().coset_volume());
}

// psi(0) = 0; by local constancy this is the value on the coset of 0.
template <class V>
bool is_in_Psi(const BasicCosetFunction<V>& f, double tol = 0.0) {
  return magnitude(f[0]) <= tol;
}

template <class V>
bool is_in_Phi(const BasicCosetFunction<V>& f, double tol) {
  if (tol < 0) throw InvalidArgument("is_in_Phi: negative tolerance");
  if constexpr (std::is_same_v<V, Rational>) {
    const Rational s = integrate(f);
    return s == 0 || magnitude(s) <= tol;
  } else {
    return magnitude(integrate(f)) <= tol;
  }
}

template <class V>
double l1_norm(const BasicCosetFunction<V>& f) {
  double sum = 0.0;
  for (const auto& v : f.values()) sum += magnitude(v);
  return sum * f.grid().coset_volume_double();
}

template <class V>
BasicRadialShellFunction<V> radial_profile(const BasicCosetFunction<V>& f) {
  const auto& g = f.grid();
  const std::int64_t lo = -g.resolution_exp() + 1;
  const std::int64_t hi = g.support_exp();
  std::vector<V> shells(static_cast<std::size_t>(std::max<std::int64_t>(0, hi - lo + 1)));
  std::vector<std::int64_t> witness(shells.size(), -1);
  for (std::uint64_t i = 1; i < g.size(); ++i) {
    const auto slot = static_cast<std::size_t>(g.norm_exponent(i).value() - lo);
    if (witness[slot] < 0) {
      witness[slot] = static_cast<std::int64_t>(i);
      shells[slot] = f[i];
    } else if (!values_match(shells[slot], f[i])) {
      const auto w = static_cast<std::uint64_t>(witness[slot]);
      auto digits = [&](std::uint64_t idx) {
        std::string s;
        for (const auto& axis : g.digits(idx)) {
          s += "[";
          for (const int d : axis) s += std::to_string(d);
          s += "]";
        }
        return s;
      };
      throw NonRadialError("radial_profile: cosets " + digits(w) + " and " + digits(i) +
                           " share norm p^" + std::to_string(static_cast<std::int64_t>(slot) + lo) +
                           " but carry " + value_string(shells[slot]) + " and " +
                           value_string(f[i]));
    }
  }
  return {g.context(), lo, hi, std::move(shells), f[0]};
}

// Exact embedding of a radial function into the grid (M, ell).
template <class V>
BasicCosetFunction<V> embed_radial(const BasicRadialShellFunction<V>& r, std::int64_t M,
                                   std::int64_t ell, int n) {
  for (std::int64_t g = std::max(r.shell_lo(), M + 1); g <= r.shell_hi(); ++g) {
    if (!values_match(r.value_at(g), V{})) {
      throw InvalidArgument("embed_radial: function is nonzero on shell " + std::to_string(g) +
                            " beyond the support exponent " + std::to_string(M));
    }
  }
  for (std::int64_t g = r.shell_lo(); g <= std::min(r.shell_hi(), -ell); ++g) {
    if (!values_match(r.value_at(g), r.core_value())) {
      throw InvalidArgument("embed_radial: function varies on shell " + std::to_string(g) +
                            ", below the resolution p^" + std::to_string(-ell));
    }
  }
  CosetGrid grid(r.context(), M, ell, n);
  return BasicCosetFunction<V>::generate(
      grid, [&](std::uint64_t i) { return r.value_at(grid.norm_exponent(i)); });
}

// x -> f(x - shift).
template <class V>
BasicCosetFunction<V> translate(const BasicCosetFunction<V>& f, const std::vector<Rational>& shift) {
  const auto& g = f.grid();
  if (static_cast<int>(shift.size()) != g.dim()) throw InvalidArgument("translate: dimension mismatch");
  const ExtendedInt e = norm_exponent(shift, g.p());
  const std::int64_t M2 = e.is_neg_inf() ? g.support_exp() : std::max(g.support_exp(), e.value());
  const std::int64_t ell2 = std::max(g.resolution_exp(), -M2);
  CosetGrid target(g.context(), M2, ell2, g.dim());
  return BasicCosetFunction<V>::generate(target, [&](std::uint64_t i) {
    auto x = target.representative(i);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] -= shift[k];
    return evaluate(f, x);
  });
}

// Largest pointwise |f - g| after re-gridding both to a common grid.
template <class V>
double max_abs_difference(const BasicCosetFunction<V>& f, const BasicCosetFunction<V>& g) {
  auto [a, b] = common_refinement(f, g);
  double m = 0.0;
  for (std::uint64_t i = 0; i < a.size(); ++i) m = std::max(m, magnitude(V(a[i] - b[i])));
  return m;
}

template <class V>
double max_abs(const BasicCosetFunction<V>& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, magnitude(v));
  return m;
}

}  // namespace padic
