#pragma once

// Fixed-format CSV tables. Floats use %.17g and exact values num/den, so equal
// inputs give byte-identical files.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "padic/function_space.hpp"
#include "padic/wave.hpp"

namespace padic::csv {

inline std::string num(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string exponent(const ExtendedInt& e) { return e.str(); }

// Axis digits joined by ' ', axes by '|'; least significant digit first.
inline std::string digits_field(const std::vector<std::vector<int>>& d) {
  std::string s;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (k) s += '|';
    for (std::size_t j = 0; j < d[k].size(); ++j) {
      if (j) s += ' ';
      s += std::to_string(d[k][j]);
    }
  }
  return s;
}

struct KernelRow {
  std::int64_t L;
  std::int64_t M;
  KernelCase kcase;
  Rational closed;
  Rational oracle;
};

inline std::vector<KernelRow> kernel_table(const PrimeContext& ctx, int n, int K, std::int64_t L_lo,
                                           std::int64_t L_hi, std::int64_t M_lo, std::int64_t M_hi,
                                           BracketRule bracket = BracketRule::Ceiling) {
  std::vector<KernelRow> rows;
  for (std::int64_t L = L_lo; L <= L_hi; ++L) {
    for (std::int64_t M = M_lo; M <= M_hi; ++M) {
      rows.push_back({L, M, classify_kernel_case(K, L, M), kernel_closed_form(K, n, L, M, ctx, bracket),
                      kernel_oracle(K, n, L, M, ctx)});
    }
  }
  return rows;
}

inline void write_kernel_table(std::ostream& out, const std::vector<KernelRow>& rows) {
  out << "L,M,case,closed_form,oracle,closed_form_float,equal\n";
  for (const auto& r : rows) {
    out << r.L << ',' << r.M << ',' << to_string(r.kcase) << ',' << to_fraction_string(r.closed) << ','
        << to_fraction_string(r.oracle) << ',' << num(padic::to_double(r.closed)) << ','
        << (r.closed == r.oracle ? "true" : "false") << '\n';
  }
}

// One row per coset. The exact column is filled when an exact table is given.
inline void write_slice(std::ostream& out, const ExtendedInt& L, const CosetFunction& field,
                        const std::optional<ExactCosetFunction>& exact = std::nullopt) {
  out << "L,norm_exp,digits,exact,re,im\n";
  const CosetGrid& g = field.grid();
  for (std::uint64_t i = 0; i < g.size(); ++i) {
    out << exponent(L) << ',' << exponent(g.norm_exponent(i)) << ',' << digits_field(g.digits(i)) << ',';
    if (exact) out << to_fraction_string((*exact)[i]);
    out << ',' << num(field[i].real()) << ',' << num(field[i].imag()) << '\n';
  }
}

inline void write_profile(std::ostream& out, const RadialShellFunction& r) {
  out << "L,re,im\n";
  out << "core," << num(r.core_value().real()) << ',' << num(r.core_value().imag()) << '\n';
  for (std::int64_t j = r.shell_lo(); j <= r.shell_hi(); ++j) {
    const Complex v = r.value_at(ExtendedInt(j));
    out << j << ',' << num(v.real()) << ',' << num(v.imag()) << '\n';
  }
}

}  // namespace padic::csv
