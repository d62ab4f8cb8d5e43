#pragma once

// Cauchy problem D_t^alpha u - D_x^{beta,n} u = 0, u(0, x) = u0(x), with
// beta = K alpha and u radial in t.
//
// On each sphere |xi| = p^N the spatial transform evolves by the multiplier
//   b = 1 for |t| <= p^{-KN},  -1/(p-1) for |t| = p^{-KN+1},  0 beyond,
// so the solution is F^-1[b u0^] or, equivalently, the convolution of u0
// with the radial kernel F^-1 b. Time enters only through L = log_p |t|;
// t = 0 is L = -inf.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padic/core.hpp"
#include "padic/fourier.hpp"
#include "padic/function_space.hpp"
#include "padic/lattice.hpp"
#include "padic/vladimirov.hpp"

namespace padic {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// ---------------------------------------------------------------------------
// Eigenfunctions of D^alpha with eigenvalue p^{K alpha N}.

template <class V>
BasicRadialShellFunction<V> eigenfunction(std::int64_t N, const V& C, int K, const PrimeContext& ctx) {
  if (K < 1) throw InvalidArgument("eigenfunction: K must be a positive integer");
  const std::int64_t p = ctx.p();
  const std::int64_t KN = static_cast<std::int64_t>(K) * N;
  const V core = C * from_rational<V>(pow_p(p, KN) * (1 - Rational(1, p)));
  const V shell = -(C * from_rational<V>(pow_p(p, KN - 1)));
  return {ctx, -KN + 1, -KN + 1, std::vector<V>{shell}, core};
}

// ---------------------------------------------------------------------------
// Propagation multiplier and kernel.

struct PropagationMultiplier {
  int K;
  ExtendedInt L;  // -inf encodes t = 0

  Rational value(std::int64_t N, const PrimeContext& ctx) const {
    if (L.is_neg_inf() || L <= ExtendedInt(-static_cast<std::int64_t>(K) * N)) return Rational(1);
    if (L == ExtendedInt(-static_cast<std::int64_t>(K) * N + 1)) return Rational(-1, ctx.p() - 1);
    return Rational(0);
  }
};

// b(p^L, p^N): 1, -1/(p-1) or 0.
inline Rational multiplier_value(int K, ExtendedInt L, std::int64_t N, const PrimeContext& ctx) {
  if (K < 1) throw InvalidArgument("multiplier_value: K must be a positive integer");
  if (L.is_pos_inf()) throw InvalidArgument("multiplier_value: L = +inf is not a time exponent");
  return PropagationMultiplier{K, L}.value(N, ctx);
}

enum class KernelCase { Case1a, Case1b, Case1c, Case2, Case3a, Case3b };

inline const char* to_string(KernelCase c) {
  switch (c) {
    case KernelCase::Case1a: return "1a";
    case KernelCase::Case1b: return "1b";
    case KernelCase::Case1c: return "1c";
    case KernelCase::Case2: return "2";
    case KernelCase::Case3a: return "3a";
    case KernelCase::Case3b: return "3b";
  }
  return "?";
}

inline KernelCase classify_kernel_case(int K, std::int64_t L, std::int64_t M) {
  const std::int64_t k = K;
  if (L <= k * (M - 1)) return KernelCase::Case1a;
  if (L == k * (M - 1) + 1) return KernelCase::Case1b;
  if (L <= k * M) return KernelCase::Case1c;
  if (L == k * M + 1) return KernelCase::Case2;
  return ((L - 1) % k == 0) ? KernelCase::Case3a : KernelCase::Case3b;
}

// How the exponent bracket [L/K] of the large-time cases is read. Only the
// ceiling agrees with the series it sums; Floor exists to demonstrate that.
enum class BracketRule { Ceiling, Floor };

// (F^-1 b)(p^L, p^M) from its closed form, |t| = p^L, |x| = p^M.
inline Rational kernel_closed_form(int K, int n, std::int64_t L, std::int64_t M, const PrimeContext& ctx,
                                   BracketRule bracket = BracketRule::Ceiling) {
  if (K < 1 || n < 1) throw InvalidArgument("kernel_closed_form: K and n must be positive");
  const std::int64_t p = ctx.p();
  const Rational x_norm = pow_p(p, -n * M);  // |x|^-n
  switch (classify_kernel_case(K, L, M)) {
    case KernelCase::Case1a:
      return Rational(0);
    case KernelCase::Case1b:
      return Rational(p, p - 1) * x_norm;
    case KernelCase::Case1c:
      return x_norm;
    case KernelCase::Case2:
      return x_norm * (pow_p(p, -n + 1) - 1) / (p - 1);
    case KernelCase::Case3a:
    case KernelCase::Case3b: {
      const std::int64_t q = bracket == BracketRule::Ceiling ? ceil_div(L, K) : floor_div(L, K);
      Rational value = pow_p(p, -n * q);
      if ((L - 1) % K == 0) {
        value -= (1 - pow_p(p, -n)) / (p - 1) * pow_p(p, -n * ((L - 1) / K));
      }
      return value;
    }
  }
  return Rational(0);
}

// (F^-1 b)(p^L, p^M) by summing the sphere series term by term:
//   (1 - p^-n) p^-Mn sum_{j>=0} p^-jn b(p^L, p^{-M-j}) - p^-Mn b(p^L, p^{-M+1}).
// Terms are taken one by one until b settles at 1; the rest is a geometric tail.
inline Rational kernel_oracle(int K, int n, std::int64_t L, std::int64_t M, const PrimeContext& ctx) {
  if (K < 1 || n < 1) throw InvalidArgument("kernel_oracle: K and n must be positive");
  const std::int64_t p = ctx.p();
  const Rational q = pow_p(p, -n);
  Rational series(0);
  Rational weight(1);  // p^{-jn}
  std::int64_t j = 0;
  // b(p^L, p^{-M-j}) is nondecreasing in j and reaches 1 once L <= K (M + j).
  while (multiplier_value(K, L, -M - j, ctx) != 1) {
    series += weight * multiplier_value(K, L, -M - j, ctx);
    weight *= q;
    ++j;
  }
  series += weight / (1 - q);
  return (1 - q) * pow_p(p, -M * n) * series - pow_p(p, -M * n) * multiplier_value(K, L, -M + 1, ctx);
}

// Integral of the kernel over B_gamma0 (x runs over the ball, t fixed). The
// kernel is constant for |x| <= p^{floor((L-2)/K)}, which closes the sum.
inline Rational kernel_ball_integral(int K, int n, std::int64_t L, std::int64_t gamma0,
                                     const PrimeContext& ctx) {
  const std::int64_t flat = floor_div(L - 2, K);
  const std::int64_t g1 = std::min(gamma0, flat);
  const std::int64_t p = ctx.p();
  Rational total = kernel_closed_form(K, n, L, g1, ctx) * pow_p(p, n * g1);
  for (std::int64_t g = g1 + 1; g <= gamma0; ++g) {
    total += kernel_closed_form(K, n, L, g, ctx) * sphere_volume({g, n}, ctx);
  }
  return total;
}

// xi -> b(p^L, |xi|) as a radial function on Q_p^n (finite L).
inline ExactRadialShellFunction multiplier_radial(int K, std::int64_t L, const PrimeContext& ctx) {
  const std::int64_t lo = floor_div(-L, K) + 1;      // first sphere where b != 1
  const std::int64_t hi = floor_div(-L + 1, K);      // last sphere where b != 0
  std::vector<Rational> shells;
  for (std::int64_t N = lo; N <= hi; ++N) shells.push_back(multiplier_value(K, ExtendedInt(L), N, ctx));
  return {ctx, lo, std::max(hi, lo - 1), std::move(shells), Rational(1)};
}

// F^-1 of the indicator of S_N^n: (1 - p^-n) p^{nN} on B_{-N}, -p^{n(N-1)} on
// the sphere just outside, zero beyond. Tabulated exactly on the grid (-N+1, N).
inline ExactCosetFunction sphere_indicator_datum(const PrimeContext& ctx, int n, std::int64_t N) {
  const CosetGrid g(ctx, -N + 1, N, n);
  const Rational inner = (1 - pow_p(ctx.p(), -n)) * pow_p(ctx.p(), n * N);
  const Rational outer = -pow_p(ctx.p(), n * (N - 1));
  return ExactCosetFunction::generate(g, [&](std::uint64_t i) { return i == 0 ? inner : outer; });
}

// ---------------------------------------------------------------------------
// Problem and solution types.

class WaveProblem {
 public:
  WaveProblem(PrimeContext ctx, int n, double alpha, int K, CosetFunction u0, double phi_tol = 1e-10)
      : ctx_(ctx), n_(n), alpha_(alpha), K_(K), u0_(std::move(u0)) {
    OperatorParams{alpha, n}.validate();
    if (K < 1) throw InvalidArgument("WaveProblem: K must be a positive integer");
    if (!(u0_.context() == ctx_) || u0_.dim() != n_) {
      throw InvalidArgument("WaveProblem: initial datum does not live on Q_p^n for this p and n");
    }
    detail::require_lizorkin(u0_, phi_tol, "WaveProblem");
  }

  // Derives K = beta / alpha; refuses when it is not a positive integer.
  static WaveProblem from_exponents(PrimeContext ctx, int n, double alpha, double beta,
                                    CosetFunction u0) {
    OperatorParams{alpha, n}.validate();
    if (!(beta > 0) || !std::isfinite(beta)) throw InvalidArgument("WaveProblem: beta must be positive");
    const double ratio = beta / alpha;
    const double K = std::round(ratio);
    if (K < 1 || std::abs(ratio - K) > 1e-12 * std::max(1.0, ratio)) {
      char buf[256];
      std::snprintf(buf, sizeof buf,
                    "beta/alpha = %.17g is not a positive integer: the equation then has only the "
                    "zero solution, so the Cauchy problem with nonzero initial data has no solution",
                    ratio);
      throw NoSolutionError(buf);
    }
    return {ctx, n, alpha, static_cast<int>(K), std::move(u0)};
  }

  const PrimeContext& context() const noexcept { return ctx_; }
  std::int64_t p() const noexcept { return ctx_.p(); }
  int dim() const noexcept { return n_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return K_ * alpha_; }
  int K() const noexcept { return K_; }
  const CosetFunction& u0() const noexcept { return u0_; }

 private:
  PrimeContext ctx_;
  int n_;
  double alpha_;
  int K_;
  CosetFunction u0_;
};

struct SolutionSlice {
  ExtendedInt L;
  CosetFunction field;
};

// Spheres |xi| = p^N carrying the transform of u0.
struct SpectralSupport {
  bool empty = true;
  std::int64_t min_sphere = 0;
  std::int64_t max_sphere = 0;
};

inline SpectralSupport spectral_support(const CosetFunction& u0_hat, double rel_tol = 1e-9) {
  const double scale = max_abs(u0_hat);
  SpectralSupport s;
  if (scale == 0.0) return s;
  const auto& g = u0_hat.grid();
  for (std::uint64_t j = 0; j < g.size(); ++j) {
    const ExtendedInt e = g.norm_exponent(j);
    if (e.is_neg_inf() || std::abs(u0_hat[j]) <= rel_tol * scale) continue;
    if (s.empty) {
      s = {false, e.value(), e.value()};
    } else {
      s.min_sphere = std::min(s.min_sphere, e.value());
      s.max_sphere = std::max(s.max_sphere, e.value());
    }
  }
  return s;
}

inline SpectralSupport spectral_support(const WaveProblem& prob) { return spectral_support(forward(prob.u0())); }

// L = -inf followed by -K N_max - 1 .. -K N_min + 2: every multiplier
// transition on the spectral support of u0 falls inside this range.
inline std::vector<ExtendedInt> auto_sweep(const WaveProblem& prob) {
  const SpectralSupport s = spectral_support(prob);
  std::vector<ExtendedInt> out{ExtendedInt::neg_inf()};
  std::int64_t lo = -1, hi = 2;
  if (!s.empty) {
    lo = -static_cast<std::int64_t>(prob.K()) * s.max_sphere - 1;
    hi = -static_cast<std::int64_t>(prob.K()) * s.min_sphere + 2;
  }
  for (std::int64_t L = lo; L <= hi; ++L) out.emplace_back(L);
  return out;
}

// Spectral solver with the transform of u0 computed once.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const WaveProblem& prob, std::optional<std::int64_t> M_out = std::nullopt)
      : prob_(prob),
        u0_(regrid(prob.u0(), std::max(prob.u0().support_exp(), M_out.value_or(prob.u0().support_exp())),
                   prob.u0().resolution_exp())),
        u0_hat_(forward(u0_)) {}

  const CosetFunction& initial() const noexcept { return u0_; }
  const CosetFunction& initial_transform() const noexcept { return u0_hat_; }

  SolutionSlice at(ExtendedInt L) const {
    if (L.is_neg_inf()) return {L, u0_};
    CosetFunction hat = u0_hat_;
    const auto& g = hat.grid();
    for (std::uint64_t j = 0; j < g.size(); ++j) {
      const ExtendedInt e = g.norm_exponent(j);
      if (e.is_neg_inf()) continue;  // |xi| = 0 keeps b = 1
      hat[j] *= padic::to_double(multiplier_value(prob_.K(), L, e.value(), prob_.context()));
    }
    return {L, inverse(hat)};
  }

 private:
  const WaveProblem& prob_;
  CosetFunction u0_;
  CosetFunction u0_hat_;
};

// u^(t, xi) = b(|t|, |xi|) u0^(xi), then back to x.
inline SolutionSlice solve_spectral(const WaveProblem& prob, ExtendedInt L,
                                    std::optional<std::int64_t> M_out = std::nullopt) {
  return SpectralPropagator(prob, M_out).at(L);
}

namespace detail {

// u(t, x) = sum over cosets z of kernel(|x - z|) u0(z) vol, with the coset of
// x itself weighted by the exact kernel integral over B_{-l}.
template <class V>
BasicCosetFunction<V> convolve_kernel(const BasicCosetFunction<V>& u0, int K, ExtendedInt L, std::int64_t Mo) {
  const CosetGrid& in = u0.grid();
  const std::int64_t M = in.support_exp();
  const std::int64_t ell = in.resolution_exp();
  Mo = std::max(M, Mo);
  if (L.is_neg_inf()) return regrid(u0, Mo, ell);
  if (L.is_pos_inf()) throw InvalidArgument("solve_convolution: L = +inf");

  const int n = in.dim();
  const PrimeContext& ctx = in.context();
  const std::int64_t Lv = L.value();
  CosetGrid out(ctx, Mo, ell, n);

  // kernel times coset volume on spheres -l < gamma <= Mo, stored at gamma + l - 1
  const Rational vol = in.coset_volume();
  std::vector<V> kernel(static_cast<std::size_t>(Mo + ell));
  for (std::size_t s = 0; s < kernel.size(); ++s) {
    kernel[s] = from_rational<V>(kernel_closed_form(K, n, Lv, static_cast<std::int64_t>(s) - ell + 1, ctx) * vol);
  }
  const V self = from_rational<V>(kernel_ball_integral(K, n, Lv, -ell, ctx));

  const auto p64 = static_cast<std::uint64_t>(ctx.p());
  const std::uint64_t shift = checked_ipow(p64, Mo - M);
  std::vector<std::vector<std::uint64_t>> src(in.size());
  for (std::uint64_t j = 0; j < in.size(); ++j) {
    src[j] = in.codes(j);
    for (auto& c : src[j]) c *= shift;
  }
  const V zero{};

  return BasicCosetFunction<V>::generate(out, [&](std::uint64_t i) {
    const auto cx = out.codes(i);
    V acc{};
    for (std::uint64_t j = 0; j < in.size(); ++j) {
      if (u0[j] == zero) continue;
      const auto& cz = src[j];
      std::int64_t gamma = INT64_MIN;
      for (std::size_t k = 0; k < cx.size(); ++k) {
        if (cx[k] == cz[k]) continue;
        const std::uint64_t d = cx[k] > cz[k] ? cx[k] - cz[k] : cz[k] - cx[k];
        gamma = std::max<std::int64_t>(gamma, Mo - int_valuation(d, p64));
      }
      acc += u0[j] * (gamma == INT64_MIN ? self : kernel[static_cast<std::size_t>(gamma + ell - 1)]);
    }
    return acc;
  });
}

}  // namespace detail

inline SolutionSlice solve_convolution(const WaveProblem& prob, ExtendedInt L,
                                       std::optional<std::int64_t> M_out = std::nullopt) {
  const std::int64_t M = prob.u0().support_exp();
  return {L, detail::convolve_kernel(prob.u0(), prob.K(), L, M_out.value_or(M))};
}

// Same path in exact arithmetic, for rational data on the problem's grid.
inline ExactCosetFunction solve_convolution_exact(const WaveProblem& prob, const ExactCosetFunction& u0, ExtendedInt L,
                                                  std::optional<std::int64_t> M_out = std::nullopt) {
  if (!(u0.context() == prob.context()) || u0.dim() != prob.dim()) {
    throw InvalidArgument("solve_convolution_exact: datum does not match the problem");
  }
  return detail::convolve_kernel(u0, prob.K(), L, M_out.value_or(u0.support_exp()));
}

// ---------------------------------------------------------------------------
// Checks on the solution.

struct DependenceReport {
  bool precondition_ok = true;
  std::string precondition_message;
  bool passed = true;
  double max_violation = 0.0;
  ExtendedInt worst_L = ExtendedInt::neg_inf();
  std::vector<std::vector<int>> worst_location;  // per-axis digits on the check grid
  std::vector<ExtendedInt> checked_L;
};

// Data supported in B_N stay zero outside B_N while |t| <= p^{K(N-1)}.
inline DependenceReport dependence_check(const WaveProblem& prob, std::int64_t N, double tol = 1e-12) {
  DependenceReport rep;
  const CosetFunction& u0 = prob.u0();
  const CosetGrid& g = u0.grid();
  const double scale = std::max(1.0, max_abs(u0));
  for (std::uint64_t i = 0; i < g.size(); ++i) {
    if (g.norm_exponent(i) > ExtendedInt(N) && std::abs(u0[i]) > 1e-12 * scale) {
      rep.precondition_ok = false;
      rep.passed = false;
      rep.precondition_message = "initial datum does not vanish outside B_" + std::to_string(N);
      return rep;
    }
  }
  const std::int64_t M_out = std::max(g.support_exp(), N) + 2;
  const std::int64_t L_max = static_cast<std::int64_t>(prob.K()) * (N - 1);
  const auto sweep = auto_sweep(prob);
  const std::int64_t L_min = std::min(sweep[1].value(), L_max) - 1;
  rep.checked_L.push_back(ExtendedInt::neg_inf());
  for (std::int64_t L = L_min; L <= L_max; ++L) rep.checked_L.emplace_back(L);

  const SpectralPropagator spectral(prob, M_out);
  for (const auto& L : rep.checked_L) {
    for (const auto& slice : {spectral.at(L), solve_convolution(prob, L, M_out)}) {
      const CosetGrid& og = slice.field.grid();
      for (std::uint64_t i = 0; i < og.size(); ++i) {
        if (og.norm_exponent(i) <= ExtendedInt(N)) continue;
        const double v = std::abs(slice.field[i]);
        if (v > rep.max_violation) {
          rep.max_violation = v;
          rep.worst_L = L;
          rep.worst_location = og.digits(i);
        }
      }
    }
  }
  rep.passed = rep.max_violation <= tol;
  return rep;
}

// gamma in the L^1 bound p^{2 n gamma}: the least positive integer >= 2/K.
inline std::int64_t l1_bound_gamma(int K) { return std::max<std::int64_t>(1, ceil_div(2, K)); }

struct L1Report {
  std::int64_t L = 0;
  double ratio = 0.0;
  double bound = 0.0;
  bool passed = false;
};

inline L1Report l1_bound_check(const WaveProblem& prob, std::int64_t L) {
  if (L < 0) throw InvalidArgument("l1_bound_check: needs |t|_p >= 1, i.e. L >= 0");
  const double base = l1_norm(prob.u0());
  if (base == 0.0) throw InvalidArgument("l1_bound_check: initial datum is zero");
  const SolutionSlice slice = solve_spectral(prob, L);
  L1Report rep;
  rep.L = L;
  rep.ratio = l1_norm(slice.field) / base;
  rep.bound = std::pow(static_cast<double>(prob.p()), 2.0 * prob.dim() * static_cast<double>(l1_bound_gamma(prob.K())));
  rep.passed = rep.ratio <= rep.bound;
  return rep;
}

struct UniquenessReport {
  bool passed = true;
  double max_abs_spectral = 0.0;
  double max_abs_convolution = 0.0;
  std::vector<ExtendedInt> checked_L;
};

// Zero data must give identically zero slices on both solver paths.
inline UniquenessReport uniqueness_smoke(const WaveProblem& prob, std::vector<ExtendedInt> sweep = {}) {
  if (max_abs(prob.u0()) != 0.0) throw InvalidArgument("uniqueness_smoke: initial datum is not zero");
  if (sweep.empty()) sweep = auto_sweep(prob);
  UniquenessReport rep;
  rep.checked_L = sweep;
  const SpectralPropagator spectral(prob);
  for (const auto& L : sweep) {
    rep.max_abs_spectral = std::max(rep.max_abs_spectral, max_abs(spectral.at(L).field));
    rep.max_abs_convolution = std::max(rep.max_abs_convolution, max_abs(solve_convolution(prob, L).field));
  }
  rep.passed = rep.max_abs_spectral == 0.0 && rep.max_abs_convolution == 0.0;
  return rep;
}

// t -> u(|t|, x) as a radial function of t in Q_p. The value is u0(x) up to
// |t| = p^{-K N_max} and zero from |t| = p^{-K N_min + 2} on.
inline RadialShellFunction time_profile(const WaveProblem& prob, const std::vector<Rational>& x,
                                        double tol = 1e-10) {
  const SpectralPropagator spectral(prob);
  const SpectralSupport s = spectral_support(spectral.initial_transform());
  if (s.empty) return {prob.context(), 1, 0, {}, Complex(0.0, 0.0)};

  const std::int64_t K = prob.K();
  const std::int64_t L_core = -K * s.max_sphere;
  const std::int64_t L_hi = -K * s.min_sphere + 1;
  auto value = [&](ExtendedInt L) { return evaluate(spectral.at(L).field, x); };

  const Complex core = value(L_core);
  std::vector<Complex> shells;
  for (std::int64_t L = L_core + 1; L <= L_hi; ++L) shells.push_back(value(L));
  RadialShellFunction profile(prob.context(), L_core + 1, L_hi, std::move(shells), core);

  double scale = std::max(1.0, std::abs(core));
  for (const auto& v : profile.shell_values()) scale = std::max(scale, std::abs(v));
  const Complex below = value(L_core - 1);
  const Complex at_zero = value(ExtendedInt::neg_inf());
  const Complex above = value(L_hi + 1);
  if (std::abs(below - core) > tol * scale || std::abs(at_zero - core) > tol * scale) {
    throw Error("time_profile: solution is not constant near t = 0");
  }
  if (std::abs(above) > tol * scale) throw Error("time_profile: solution does not vanish for large |t|");
  if (std::abs(profile.integral(1)) > tol * scale * padic::to_double(pow_p(prob.p(), L_hi))) {
    throw Error("time_profile: profile has nonzero integral over Q_p");
  }
  return profile;
}

}  // namespace padic
