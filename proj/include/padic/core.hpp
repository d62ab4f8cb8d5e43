#pragma once

// Exact p-adic arithmetic on rational inputs: valuations, norms, canonical
// digits, fractional parts and additive-character phases.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "padic/error.hpp"
#include "padic/rational.hpp"

namespace padic {

// ---------------------------------------------------------------------------
// Small integer helpers shared by the grid code.

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// p^k for k >= 0, or 0 when the result does not fit into 63 bits.
inline std::uint64_t checked_ipow(std::uint64_t p, std::int64_t k) {
  std::uint64_t r = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    if (r > (std::uint64_t{1} << 62) / p) return 0;
    r *= p;
  }
  return r;
}

// v_p(c) for c != 0.
inline int int_valuation(std::uint64_t c, std::uint64_t p) {
  int v = 0;
  while (c % p == 0) {
    c /= p;
    ++v;
  }
  return v;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

// ---------------------------------------------------------------------------

class PrimeContext {
 public:
  explicit PrimeContext(std::int64_t p) : p_(p) {
    if (p < 2 || p > (std::int64_t{1} << 31) || !is_prime(p)) {
      throw InvalidArgument("PrimeContext: " + std::to_string(p) + " is not a supported prime");
    }
  }
  std::int64_t p() const noexcept { return p_; }
  bool operator==(const PrimeContext&) const = default;

 private:
  std::int64_t p_;
};

// An exact rational number viewed as an element of Q_p.
class PAdicScalar {
 public:
  PAdicScalar(PrimeContext ctx, Rational value) : ctx_(ctx), value_(std::move(value)) {}
  PAdicScalar(PrimeContext ctx, std::int64_t num, std::int64_t den = 1)
      : ctx_(ctx), value_(Rational(BigInt(num), BigInt(den))) {
    if (den == 0) throw InvalidArgument("PAdicScalar: zero denominator");
  }

  const PrimeContext& context() const noexcept { return ctx_; }
  const Rational& value() const noexcept { return value_; }
  std::int64_t p() const noexcept { return ctx_.p(); }

 private:
  PrimeContext ctx_;
  Rational value_;  // cpp_rational keeps lowest terms with a positive denominator
};

// v_p of a nonzero big integer.
inline std::int64_t big_valuation(BigInt n, std::int64_t p) {
  if (n == 0) throw InvalidArgument("big_valuation of zero");
  std::int64_t v = 0;
  const BigInt bp(p);
  while (n % bp == 0) {
    n /= bp;
    ++v;
  }
  return v;
}

inline ExtendedInt valuation(const Rational& x, std::int64_t p) {
  if (x == 0) return ExtendedInt::pos_inf();
  const BigInt num = numerator_of(x);
  const BigInt den = denominator_of(x);
  // Lowest terms: at most one of num, den is divisible by p.
  if (num % p == 0) return big_valuation(num, p);
  if (den % p == 0) return -big_valuation(den, p);
  return 0;
}

inline ExtendedInt valuation(const PAdicScalar& x) { return valuation(x.value(), x.p()); }

// |x|_p held exactly as p^exponent; the zero norm has exponent -inf.
struct PadicNorm {
  std::int64_t p;
  ExtendedInt exponent;

  bool is_zero() const noexcept { return exponent.is_neg_inf(); }

  Rational to_rational() const {
    if (is_zero()) return Rational(0);
    return pow_p(p, exponent.value());
  }

  // Throws OverflowError when p^exponent overflows or underflows a double.
  double to_double() const {
    if (is_zero()) return 0.0;
    const double bits = static_cast<double>(exponent.value()) * std::log2(static_cast<double>(p));
    if (bits > 1023.0 || bits < -1074.0) {
      throw OverflowError("padic_norm: " + std::to_string(p) + "^" + exponent.str() +
                          " is outside the double range");
    }
    return padic::to_double(to_rational());
  }

  auto operator<=>(const PadicNorm& o) const noexcept { return exponent <=> o.exponent; }
  bool operator==(const PadicNorm& o) const noexcept { return exponent == o.exponent; }
};

inline PadicNorm padic_norm(const Rational& x, std::int64_t p) {
  const ExtendedInt v = valuation(x, p);
  if (v.is_pos_inf()) return {p, ExtendedInt::neg_inf()};
  return {p, -v.value()};
}

inline PadicNorm padic_norm(const PAdicScalar& x) { return padic_norm(x.value(), x.p()); }

// Norm exponent e with |x|_p = p^e; -inf for zero.
inline ExtendedInt norm_exponent(const Rational& x, std::int64_t p) {
  return padic_norm(x, p).exponent;
}

// Max-norm exponent of a vector; -inf for the zero vector.
inline ExtendedInt norm_exponent(const std::vector<Rational>& x, std::int64_t p) {
  ExtendedInt e = ExtendedInt::neg_inf();
  for (const auto& xi : x) e = std::max(e, norm_exponent(xi, p));
  return e;
}

// Residue of a p-adic integer y (v_p(y) >= 0) modulo p^m, in [0, p^m).
inline BigInt residue_mod_power(const Rational& y, std::int64_t p, std::int64_t m) {
  if (m < 0) throw InvalidArgument("residue_mod_power: negative precision");
  const BigInt modulus = big_pow(p, m);
  if (m == 0) return BigInt(0);
  const BigInt den = denominator_of(y);
  if (den % p == 0) throw InvalidArgument("residue_mod_power: argument is not a p-adic integer");
  BigInt num = numerator_of(y) % modulus;
  if (num < 0) num += modulus;
  // Hensel-free inverse: den is a unit mod p^m, solve with extended Euclid.
  BigInt a = den % modulus, b = modulus, x0 = 1, x1 = 0;
  if (a < 0) a += modulus;
  while (b != 0) {
    const BigInt q = a / b;
    BigInt t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  BigInt inv = x0 % modulus;
  if (inv < 0) inv += modulus;
  return (num * inv) % modulus;
}

inline std::uint64_t residue_mod_power_u64(const Rational& y, std::int64_t p, std::int64_t m) {
  return residue_mod_power(y, p, m).convert_to<std::uint64_t>();
}

struct CanonicalDigits {
  std::int64_t valuation;
  std::vector<int> digits;  // d_0 ... d_{count-1}, d_0 != 0
};

// x = p^v (d_0 + d_1 p + ...), truncated to `count` digits.
inline CanonicalDigits canonical_digits(const PAdicScalar& x, std::int64_t count) {
  if (x.value() == 0) throw InvalidArgument("canonical_digits: zero has no leading digit");
  if (count <= 0) throw InvalidArgument("canonical_digits: count must be positive");
  const std::int64_t p = x.p();
  const std::int64_t v = valuation(x).value();
  const Rational unit = x.value() * pow_p(p, -v);
  BigInt r = residue_mod_power(unit, p, count);
  CanonicalDigits out{v, {}};
  out.digits.reserve(static_cast<std::size_t>(count));
  for (std::int64_t j = 0; j < count; ++j) {
    out.digits.push_back(static_cast<int>(r % p));
    r /= p;
  }
  return out;
}

// {x}_p: the negative-power digits of x, as an exact rational in [0, 1).
inline Rational fractional_part(const Rational& x, std::int64_t p) {
  const ExtendedInt v = valuation(x, p);
  if (v.is_pos_inf() || v.value() >= 0) return Rational(0);
  const std::int64_t depth = -v.value();
  const Rational unit = x * pow_p(p, depth);
  return Rational(residue_mod_power(unit, p, depth), big_pow(p, depth));
}

inline Rational fractional_part(const PAdicScalar& x) { return fractional_part(x.value(), x.p()); }

// A rational phase in [0, 1) with denominator p^exponent.
class CharacterPhase {
 public:
  CharacterPhase(std::int64_t p, Rational phase) : p_(p), phase_(std::move(phase)) {
    if (phase_ < 0 || phase_ >= 1) throw InvalidArgument("CharacterPhase outside [0,1)");
    const BigInt den = denominator_of(phase_);
    if (den != big_pow(p, den == 1 ? 0 : big_valuation(den, p))) {
      throw InvalidArgument("CharacterPhase denominator is not a power of p");
    }
  }

  const Rational& rational() const noexcept { return phase_; }
  std::int64_t p() const noexcept { return p_; }
  std::int64_t exponent() const {
    const BigInt den = denominator_of(phase_);
    return den == 1 ? 0 : big_valuation(den, p_);
  }

  CharacterPhase operator+(const CharacterPhase& o) const {
    Rational s = phase_ + o.phase_;
    if (s >= 1) s -= 1;
    return {p_, s};
  }

  std::complex<double> evaluate() const {
    const double angle = 2.0 * std::numbers::pi * padic::to_double(phase_);
    return std::polar(1.0, angle);
  }

  bool operator==(const CharacterPhase& o) const { return p_ == o.p_ && phase_ == o.phase_; }

 private:
  std::int64_t p_;
  Rational phase_;
};

struct CharacterValue {
  CharacterPhase phase;
  std::complex<double> value;
};

// chi_p(x) = exp(2 pi i {x}_p).
inline CharacterValue character(const PAdicScalar& x) {
  CharacterPhase phase(x.p(), fractional_part(x));
  const auto value = phase.evaluate();
  return {std::move(phase), value};
}

}  // namespace padic
