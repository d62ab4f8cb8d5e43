#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

#include "padic/error.hpp"

namespace padic {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// "num/den" with den omitted when it is 1.
inline std::string to_fraction_string(const Rational& r) {
  const BigInt den = denominator_of(r);
  if (den == 1) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + den.str();
}

inline Rational parse_fraction(const std::string& num, const std::string& den) {
  const BigInt d(den);
  if (d == 0) throw InvalidArgument("zero denominator in fraction " + num + "/" + den);
  return Rational(BigInt(num), d);
}

inline BigInt big_pow(std::int64_t base, std::int64_t exp) {
  if (exp < 0) throw InvalidArgument("big_pow: negative exponent");
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

// p^k as an exact rational, k of either sign.
inline Rational pow_p(std::int64_t p, std::int64_t k) {
  if (k >= 0) return Rational(big_pow(p, k));
  return Rational(BigInt(1), big_pow(p, -k));
}

// An integer extended by +infinity and -infinity.
//
// Valuations use +inf for the zero element; time exponents use -inf for t = 0.
class ExtendedInt {
 public:
  constexpr ExtendedInt(std::int64_t v = 0) noexcept : kind_(Kind::Finite), value_(v) {}  // NOLINT

  static constexpr ExtendedInt pos_inf() noexcept { return ExtendedInt(Kind::PosInf); }
  static constexpr ExtendedInt neg_inf() noexcept { return ExtendedInt(Kind::NegInf); }

  constexpr bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  constexpr bool is_pos_inf() const noexcept { return kind_ == Kind::PosInf; }
  constexpr bool is_neg_inf() const noexcept { return kind_ == Kind::NegInf; }

  std::int64_t value() const {
    if (!is_finite()) throw InvalidArgument("ExtendedInt::value on an infinite value");
    return value_;
  }

  constexpr std::strong_ordering operator<=>(const ExtendedInt& o) const noexcept {
    if (kind_ != o.kind_) {
      if (kind_ == Kind::NegInf || o.kind_ == Kind::PosInf) return std::strong_ordering::less;
      return std::strong_ordering::greater;
    }
    if (kind_ != Kind::Finite) return std::strong_ordering::equal;
    return value_ <=> o.value_;
  }
  constexpr bool operator==(const ExtendedInt& o) const noexcept {
    return (*this <=> o) == std::strong_ordering::equal;
  }

  std::string str() const {
    if (is_pos_inf()) return "inf";
    if (is_neg_inf()) return "-inf";
    return std::to_string(value_);
  }

 private:
  enum class Kind : std::uint8_t { NegInf, Finite, PosInf };
  constexpr explicit ExtendedInt(Kind k) noexcept : kind_(k), value_(0) {}

  Kind kind_;
  std::int64_t value_;
};

}  // namespace padic
