#pragma once

// Ball/sphere coset grids in Q_p^n and the Haar-measure integration formulas.
//
// A grid with support exponent M and resolution exponent l models
// B_M^n / B_{-l}^n. Each axis carries an integer code c in [0, p^(M+l)) and
// the representative x = c * p^(-M), i.e. digits d_{-M} .. d_{l-1}.
// Cosets are indexed lexicographically by code, axis 0 most significant.

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padic/core.hpp"

namespace padic {

inline constexpr std::uint64_t kDefaultGridCap = 1'000'000;

// Cardinality cap for coset grids; PADIC_GRID_CAP overrides the default.
inline std::uint64_t grid_cap() {
  if (const char* env = std::getenv("PADIC_GRID_CAP"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != nullptr && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
  }
  return kDefaultGridCap;
}

struct BallSpec {
  std::int64_t gamma;
  int n;
};

struct SphereSpec {
  std::int64_t gamma;
  int n;
};

inline Rational ball_volume(const BallSpec& spec, const PrimeContext& ctx) {
  return pow_p(ctx.p(), spec.n * spec.gamma);
}

inline Rational sphere_volume(const SphereSpec& spec, const PrimeContext& ctx) {
  return (1 - pow_p(ctx.p(), -spec.n)) * pow_p(ctx.p(), spec.n * spec.gamma);
}

class CosetGrid {
 public:
  CosetGrid(PrimeContext ctx, std::int64_t support_exp, std::int64_t resolution_exp, int n)
      : ctx_(ctx), M_(support_exp), ell_(resolution_exp), n_(n) {
    if (n < 1) throw InvalidArgument("CosetGrid: dimension must be positive");
    if (M_ + ell_ < 0) {
      throw InvalidArgument("CosetGrid: support_exp + resolution_exp must be >= 0 (got M=" +
                            std::to_string(M_) + ", l=" + std::to_string(ell_) + ")");
    }
    const std::uint64_t cap = grid_cap();
    const auto p = static_cast<std::uint64_t>(ctx.p());
    axis_ = checked_ipow(p, M_ + ell_);
    size_ = axis_;
    for (int k = 1; k < n && axis_ != 0 && size_ != 0; ++k) {
      const unsigned __int128 next = static_cast<unsigned __int128>(size_) * axis_;
      size_ = (size_ > cap || next > UINT64_MAX / 2) ? 0 : static_cast<std::uint64_t>(next);
    }
    if (axis_ == 0 || size_ == 0 || size_ > cap) {
      const std::uint64_t shown = (axis_ == 0 || size_ == 0) ? UINT64_MAX : size_;
      throw GridCapError("coset grid p=" + std::to_string(p) + " n=" + std::to_string(n) +
                             " M=" + std::to_string(M_) + " l=" + std::to_string(ell_) +
                             " has cardinality p^" + std::to_string(n * (M_ + ell_)) +
                             (shown == UINT64_MAX ? std::string(" (overflow)")
                                                  : " = " + std::to_string(shown)) +
                             ", above the cap " + std::to_string(cap),
                         shown);
    }
  }

  const PrimeContext& context() const noexcept { return ctx_; }
  std::int64_t p() const noexcept { return ctx_.p(); }
  std::int64_t support_exp() const noexcept { return M_; }
  std::int64_t resolution_exp() const noexcept { return ell_; }
  int dim() const noexcept { return n_; }
  std::uint64_t axis_size() const noexcept { return axis_; }
  std::uint64_t size() const noexcept { return size_; }

  Rational coset_volume() const { return pow_p(p(), -n_ * ell_); }
  double coset_volume_double() const { return padic::to_double(coset_volume()); }

  std::uint64_t code(std::uint64_t index, int axis) const {
    for (int k = n_ - 1; k > axis; --k) index /= axis_;
    return index % axis_;
  }

  std::vector<std::uint64_t> codes(std::uint64_t index) const {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(n_));
    for (int k = n_ - 1; k >= 0; --k) {
      c[static_cast<std::size_t>(k)] = index % axis_;
      index /= axis_;
    }
    return c;
  }

  std::uint64_t index_of(std::span<const std::uint64_t> codes) const {
    std::uint64_t idx = 0;
    for (const auto c : codes) idx = idx * axis_ + c;
    return idx;
  }

  // Norm exponent of the coset of a single axis code; -inf for code 0.
  ExtendedInt code_exponent(std::uint64_t c) const {
    if (c == 0) return ExtendedInt::neg_inf();
    return M_ - int_valuation(c, static_cast<std::uint64_t>(p()));
  }

  // Max-norm exponent of a coset; -inf marks the coset of 0 (|x| <= p^-l).
  ExtendedInt norm_exponent(std::uint64_t index) const {
    ExtendedInt e = ExtendedInt::neg_inf();
    for (int k = n_ - 1; k >= 0; --k) {
      e = std::max(e, code_exponent(index % axis_));
      index /= axis_;
    }
    return e;
  }

  std::vector<Rational> representative(std::uint64_t index) const {
    std::vector<Rational> x;
    x.reserve(static_cast<std::size_t>(n_));
    const Rational scale = pow_p(p(), -M_);
    for (const auto c : codes(index)) x.emplace_back(Rational(BigInt(c)) * scale);
    return x;
  }

  std::vector<std::vector<Rational>> representatives() const {
    std::vector<std::vector<Rational>> out;
    out.reserve(static_cast<std::size_t>(size_));
    for (std::uint64_t i = 0; i < size_; ++i) out.push_back(representative(i));
    return out;
  }

  // Per-axis digits d_{-M}, ..., d_{l-1}.
  std::vector<std::vector<int>> digits(std::uint64_t index) const {
    std::vector<std::vector<int>> out;
    const auto p64 = static_cast<std::uint64_t>(p());
    for (auto c : codes(index)) {
      std::vector<int> d(static_cast<std::size_t>(M_ + ell_));
      for (auto& dj : d) {
        dj = static_cast<int>(c % p64);
        c /= p64;
      }
      out.push_back(std::move(d));
    }
    return out;
  }

  std::uint64_t code_from_digits(const std::vector<int>& d) const {
    if (static_cast<std::int64_t>(d.size()) != M_ + ell_) {
      throw InvalidArgument("digit array has length " + std::to_string(d.size()) + ", expected " +
                            std::to_string(M_ + ell_));
    }
    std::uint64_t c = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it) {
      if (*it < 0 || *it >= p()) throw InvalidArgument("digit out of range [0, p-1]");
      c = c * static_cast<std::uint64_t>(p()) + static_cast<std::uint64_t>(*it);
    }
    return c;
  }

  // Coset index containing x, or nullopt when |x|_p > p^M.
  std::optional<std::uint64_t> locate(const std::vector<Rational>& x) const {
    if (static_cast<int>(x.size()) != n_) throw InvalidArgument("locate: dimension mismatch");
    std::uint64_t idx = 0;
    for (const auto& xi : x) {
      const ExtendedInt e = padic::norm_exponent(xi, p());
      if (e > ExtendedInt(M_)) return std::nullopt;
      const std::uint64_t c = residue_mod_power_u64(xi * pow_p(p(), M_), p(), M_ + ell_);
      idx = idx * axis_ + c;
    }
    return idx;
  }

 private:
  PrimeContext ctx_;
  std::int64_t M_;
  std::int64_t ell_;
  int n_;
  std::uint64_t axis_ = 1;
  std::uint64_t size_ = 1;
};

inline CosetGrid enumerate_cosets(std::int64_t M, std::int64_t ell, int n, const PrimeContext& ctx) {
  return CosetGrid(ctx, M, ell, n);
}

inline ExtendedInt norm_exponent(std::span<const PAdicScalar> xi) {
  ExtendedInt e = ExtendedInt::neg_inf();
  for (const auto& x : xi) e = std::max(e, norm_exponent(x.value(), x.p()));
  return e;
}

// Integral of chi_p(xi . x) over B_gamma^n.
inline Rational ball_character_integral(const PrimeContext& ctx, std::int64_t gamma,
                                        const std::vector<Rational>& xi) {
  const int n = static_cast<int>(xi.size());
  if (norm_exponent(xi, ctx.p()) <= ExtendedInt(-gamma)) return pow_p(ctx.p(), n * gamma);
  return Rational(0);
}

// Integral of chi_p(xi . x) over S_gamma^n.
inline Rational sphere_character_integral(const PrimeContext& ctx, std::int64_t gamma,
                                          const std::vector<Rational>& xi) {
  const int n = static_cast<int>(xi.size());
  const ExtendedInt e = norm_exponent(xi, ctx.p());
  if (e <= ExtendedInt(-gamma)) return (1 - pow_p(ctx.p(), -n)) * pow_p(ctx.p(), n * gamma);
  if (e == ExtendedInt(-gamma + 1)) return -pow_p(ctx.p(), n * (gamma - 1));
  return Rational(0);
}

// The ball is a product of one-dimensional balls under the max norm.
inline Rational ball_character_integral_by_axes(const PrimeContext& ctx, std::int64_t gamma,
                                                const std::vector<Rational>& xi) {
  Rational r(1);
  for (const auto& x : xi) r *= ball_character_integral(ctx, gamma, std::vector<Rational>{x});
  return r;
}

namespace detail {
inline std::vector<Rational> values_of(std::span<const PAdicScalar> xi) {
  std::vector<Rational> v;
  v.reserve(xi.size());
  for (const auto& x : xi) v.push_back(x.value());
  return v;
}
}  // namespace detail

inline Rational ball_character_integral(std::int64_t gamma, std::span<const PAdicScalar> xi) {
  if (xi.empty()) throw InvalidArgument("ball_character_integral: empty xi");
  return ball_character_integral(xi.front().context(), gamma, detail::values_of(xi));
}

inline Rational sphere_character_integral(std::int64_t gamma, std::span<const PAdicScalar> xi) {
  if (xi.empty()) throw InvalidArgument("sphere_character_integral: empty xi");
  return sphere_character_integral(xi.front().context(), gamma, detail::values_of(xi));
}

}  // namespace padic
