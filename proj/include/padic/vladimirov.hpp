#pragma once

// The Vladimirov-Taibleson operator D^{alpha,n}: the pseudo-differential
// operator with symbol |xi|_p^alpha, and its equivalent hypersingular form
//
//   (D u)(x) = (1 - p^a) / (1 - p^(-a-n)) * int |y|^(-a-n) [u(x - y) - u(x)] dy.
//
// The hypersingular integral is split into spheres S_gamma. Spheres inside
// the resolution ball contribute nothing, the finitely many spheres the grid
// resolves are summed coset by coset, and the geometric tail beyond the
// support is summed in closed form.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "padic/core.hpp"
#include "padic/fourier.hpp"
#include "padic/function_space.hpp"
#include "padic/lattice.hpp"

namespace padic {

struct OperatorParams {
  double alpha;
  int n;

  void validate() const {
    if (!(alpha > 0) || !std::isfinite(alpha)) {
      throw InvalidArgument("OperatorParams: alpha must be a positive finite number");
    }
    if (n < 1) throw InvalidArgument("OperatorParams: dimension must be positive");
  }
};

// (1 - p^alpha) / (1 - p^(-alpha-n))
inline double hypersingular_prefactor(std::int64_t p, const OperatorParams& params) {
  const double pd = static_cast<double>(p);
  return (1.0 - std::pow(pd, params.alpha)) / (1.0 - std::pow(pd, -params.alpha - params.n));
}

// sum_{gamma > m} p^(-gamma alpha)
inline double geometric_tail(std::int64_t p, double alpha, std::int64_t m) {
  const double pd = static_cast<double>(p);
  return std::pow(pd, -static_cast<double>(m + 1) * alpha) / (1.0 - std::pow(pd, -alpha));
}

// A bounded locally constant function: the table on B_M and a constant
// value everywhere outside B_M.
struct LocallyConstantFunction {
  CosetFunction local;
  Complex background{0.0, 0.0};
};

namespace detail {

inline void check_dims(const OperatorParams& params, int dim) {
  params.validate();
  if (dim != params.n) {
    throw InvalidArgument("operator dimension " + std::to_string(params.n) +
                          " does not match function dimension " + std::to_string(dim));
  }
}

inline void require_lizorkin(const CosetFunction& f, double tol, const char* who) {
  const double scale = std::max(1.0, l1_norm(f));
  const double s = std::abs(integrate(f));
  if (s > tol * scale) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", s);
    throw NotLizorkinError(std::string(who) + ": input has nonzero integral " + buf +
                           "; the operator needs a zero-mean (Lizorkin) test function");
  }
}

// D u at a point given either by its coset codes on u's grid (inside B_M)
// or by its norm exponent e > M (outside).
class HypersingularEvaluator {
 public:
  HypersingularEvaluator(const OperatorParams& params, const LocallyConstantFunction& u)
      : params_(params), u_(u), grid_(u.local.grid()) {
    check_dims(params, grid_.dim());
    p_ = grid_.p();
    M_ = grid_.support_exp();
    ell_ = grid_.resolution_exp();
    prefactor_ = hypersingular_prefactor(p_, params);
    vol_ = grid_.coset_volume_double();
    codes_.resize(grid_.size());
    for (std::uint64_t i = 0; i < grid_.size(); ++i) codes_[i] = grid_.codes(i);
    // Spheres -l < gamma <= M, stored at gamma + l - 1.
    const std::size_t shells = static_cast<std::size_t>(M_ + ell_);
    weight_.resize(shells);
    sphere_vol_.resize(shells);
    for (std::size_t s = 0; s < shells; ++s) {
      const std::int64_t gamma = static_cast<std::int64_t>(s) - ell_ + 1;
      weight_[s] = std::pow(static_cast<double>(p_), -static_cast<double>(gamma) * (params.alpha + params.n));
      sphere_vol_[s] = padic::to_double(sphere_volume({gamma, params.n}, grid_.context()));
    }
    for (const auto& v : u.local.values()) mass_ += (v - u.background);
    mass_ *= vol_;
  }

  Complex inside(std::uint64_t index) const {
    const Complex ux = u_.local[index];
    const auto& cx = codes_[index];
    std::vector<Complex> diff(weight_.size(), Complex(0.0, 0.0));
    std::vector<std::uint64_t> count(weight_.size(), 0);
    const auto p64 = static_cast<std::uint64_t>(p_);
    for (std::uint64_t j = 0; j < grid_.size(); ++j) {
      if (j == index) continue;
      const auto& cz = codes_[j];
      std::int64_t gamma = INT64_MIN;
      for (std::size_t k = 0; k < cx.size(); ++k) {
        if (cx[k] == cz[k]) continue;
        const std::uint64_t d = cx[k] > cz[k] ? cx[k] - cz[k] : cz[k] - cx[k];
        gamma = std::max<std::int64_t>(gamma, M_ - int_valuation(d, p64));
      }
      const auto s = static_cast<std::size_t>(gamma + ell_ - 1);
      diff[s] += u_.local[j] - ux;
      ++count[s];
    }
    Complex total(0.0, 0.0);
    for (std::size_t s = 0; s < weight_.size(); ++s) {
      const double rest = sphere_vol_[s] - static_cast<double>(count[s]) * vol_;
      total += weight_[s] * (diff[s] * vol_ + (u_.background - ux) * rest);
    }
    total += (u_.background - ux) * (1.0 - std::pow(static_cast<double>(p_), -params_.n)) *
             geometric_tail(p_, params_.alpha, M_);
    return prefactor_ * total;
  }

  // Every point of B_M sits on the sphere |x - z| = |x| = p^e.
  Complex outside(std::int64_t e) const {
    const double w = std::pow(static_cast<double>(p_), -static_cast<double>(e) * (params_.alpha + params_.n));
    return prefactor_ * w * mass_;
  }

 private:
  OperatorParams params_;
  const LocallyConstantFunction& u_;
  const CosetGrid& grid_;
  std::int64_t p_ = 0;
  std::int64_t M_ = 0;
  std::int64_t ell_ = 0;
  double prefactor_ = 0.0;
  double vol_ = 0.0;
  Complex mass_{0.0, 0.0};
  std::vector<std::vector<std::uint64_t>> codes_;
  std::vector<double> weight_;
  std::vector<double> sphere_vol_;
};

}  // namespace detail

// D^alpha f = F^-1[|xi|^alpha F f]; f must have zero integral.
inline CosetFunction apply_spectral(const OperatorParams& params, const CosetFunction& f,
                                    double lizorkin_tol = 1e-9) {
  detail::check_dims(params, f.dim());
  detail::require_lizorkin(f, lizorkin_tol, "apply_spectral");
  CosetFunction g = forward(f);
  const auto& grid = g.grid();
  const double pd = static_cast<double>(grid.p());
  for (std::uint64_t j = 0; j < grid.size(); ++j) {
    const ExtendedInt e = grid.norm_exponent(j);
    if (e.is_neg_inf()) {
      g[j] = Complex(0.0, 0.0);  // the transform of a Lizorkin function vanishes here
    } else {
      g[j] *= std::pow(pd, static_cast<double>(e.value()) * params.alpha);
    }
  }
  return inverse(g);
}

inline CosetFunction apply_spectral(const OperatorParams& params, const ExactCosetFunction& f) {
  if (integrate(f) != 0) {
    throw NotLizorkinError("apply_spectral: input has nonzero integral " + to_fraction_string(integrate(f)));
  }
  return apply_spectral(params, to_complex(f));
}

inline Complex apply_hypersingular(const OperatorParams& params, const LocallyConstantFunction& u,
                                   const std::vector<Rational>& x) {
  detail::HypersingularEvaluator eval(params, u);
  if (const auto idx = u.local.grid().locate(x)) return eval.inside(*idx);
  return eval.outside(norm_exponent(x, u.local.p()).value());
}

inline Complex apply_hypersingular(const OperatorParams& params, const CosetFunction& f,
                                   const std::vector<Rational>& x) {
  return apply_hypersingular(params, LocallyConstantFunction{f, {}}, x);
}

inline Complex apply_hypersingular(const OperatorParams& params, const CosetFunction& f,
                                   std::span<const PAdicScalar> x) {
  return apply_hypersingular(params, f, detail::values_of(x));
}

// Pointwise hypersingular form on every coset of the grid (M_out, l).
inline CosetFunction apply_hypersingular_field(const OperatorParams& params,
                                               const LocallyConstantFunction& u,
                                               std::int64_t M_out) {
  const CosetGrid& in = u.local.grid();
  if (M_out < in.support_exp()) {
    throw InvalidArgument("apply_hypersingular_field: output support must contain the input support");
  }
  detail::HypersingularEvaluator eval(params, u);
  CosetGrid out(in.context(), M_out, in.resolution_exp(), in.dim());
  const std::uint64_t shift = checked_ipow(static_cast<std::uint64_t>(in.p()), M_out - in.support_exp());
  std::vector<std::uint64_t> src(static_cast<std::size_t>(in.dim()));
  return CosetFunction::generate(out, [&](std::uint64_t i) {
    const ExtendedInt e = out.norm_exponent(i);
    if (e > ExtendedInt(in.support_exp())) return eval.outside(e.value());
    const auto c = out.codes(i);
    for (std::size_t k = 0; k < c.size(); ++k) src[k] = (c[k] / shift) % in.axis_size();
    return eval.inside(in.index_of(src));
  });
}

inline CosetFunction apply_hypersingular_field(const OperatorParams& params, const CosetFunction& f,
                                               std::int64_t M_out) {
  return apply_hypersingular_field(params, LocallyConstantFunction{f, {}}, M_out);
}

inline CosetFunction apply_hypersingular_field(const OperatorParams& params, const CosetFunction& f) {
  return apply_hypersingular_field(params, f, f.support_exp());
}

// ---------------------------------------------------------------------------
// Radial functions on Q_p^n.

// Spectral route: radial transform, multiply sphere N by p^(N alpha),
// transform back. The transform must vanish near 0.
inline RadialShellFunction apply_spectral_radial(const OperatorParams& params,
                                                 const RadialShellFunction& r,
                                                 double lizorkin_tol = 1e-9) {
  params.validate();
  const RadialShellFunction hat = radial_forward(r, params.n);
  double scale = std::abs(hat.core_value());
  for (const auto& v : hat.shell_values()) scale = std::max(scale, std::abs(v));
  if (std::abs(hat.core_value()) > lizorkin_tol * std::max(1.0, scale)) {
    throw NotLizorkinError("apply_spectral_radial: the transform does not vanish at 0");
  }
  std::vector<Complex> shells = hat.shell_values();
  const double pd = static_cast<double>(r.context().p());
  for (std::size_t s = 0; s < shells.size(); ++s) {
    shells[s] *= std::pow(pd, static_cast<double>(hat.shell_lo() + static_cast<std::int64_t>(s)) * params.alpha);
  }
  return radial_inverse(RadialShellFunction(r.context(), hat.shell_lo(), hat.shell_hi(),
                                            std::move(shells), Complex(0.0, 0.0)),
                        params.n);
}

// Hypersingular route, sphere by sphere. For |x| = p^e:
//   spheres gamma < e do not move u(x - y);
//   gamma = e sweeps B_e minus the ball x + B_{e-1};
//   gamma > e sees u(gamma) - u(e), with a geometric tail past shell_hi.
inline RadialShellFunction apply_hypersingular_radial(const OperatorParams& params,
                                                      const RadialShellFunction& r,
                                                      double lizorkin_tol = 1e-9) {
  params.validate();
  const PrimeContext& ctx = r.context();
  const std::int64_t p = ctx.p();
  const int n = params.n;
  const double pd = static_cast<double>(p);
  const std::int64_t lo = r.shell_lo();
  const std::int64_t hi = r.shell_hi();
  const double pref = hypersingular_prefactor(p, params);
  auto vol_s = [&](std::int64_t g) { return padic::to_double(sphere_volume({g, n}, ctx)); };
  auto weight = [&](std::int64_t g) { return std::pow(pd, -static_cast<double>(g) * (params.alpha + n)); };
  auto tail = [&](std::int64_t m) {
    return (1.0 - std::pow(pd, -n)) * geometric_tail(p, params.alpha, m);
  };
  auto ball_integral = [&](std::int64_t e) {
    if (e < lo) return r.core_value() * padic::to_double(pow_p(p, n * e));
    Complex s = r.core_value() * padic::to_double(pow_p(p, n * (lo - 1)));
    for (std::int64_t g = lo; g <= std::min(e, hi); ++g) s += r.value_at(g) * vol_s(g);
    return s;
  };

  auto at_zero = [&]() {
    const Complex c = r.core_value();
    Complex total(0.0, 0.0);
    for (std::int64_t g = lo; g <= hi; ++g) total += weight(g) * (r.value_at(g) - c) * vol_s(g);
    total -= c * tail(std::max(hi, lo - 1));
    return pref * total;
  };

  auto at = [&](std::int64_t e) {
    const Complex ue = r.value_at(e);
    Complex total = weight(e) * (ball_integral(e) - ue * padic::to_double(pow_p(p, n * (e - 1))) -
                                 ue * vol_s(e));
    for (std::int64_t g = e + 1; g <= hi; ++g) total += weight(g) * (r.value_at(g) - ue) * vol_s(g);
    total -= ue * tail(std::max(e, hi));
    return pref * total;
  };

  const Complex mass = r.integral(n);
  const double scale = std::max(1.0, std::abs(r.core_value()));
  if (std::abs(mass) > lizorkin_tol * scale * std::max(1.0, padic::to_double(pow_p(p, n * std::max(hi, lo - 1))))) {
    throw NotLizorkinError("apply_hypersingular_radial: input has nonzero integral; the image "
                           "would not be compactly supported");
  }
  std::vector<Complex> shells;
  for (std::int64_t e = lo; e <= hi; ++e) shells.push_back(at(e));
  return {ctx, lo, hi, std::move(shells), at_zero()};
}

}  // namespace padic
