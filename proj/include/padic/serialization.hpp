#pragma once

// JSON documents for coset tables:
//   {"p": 3, "n": 1, "M": 1, "ell": 0,
//    "values": [{"digits": [[d_-M, ..., d_{l-1}], ...], "re": 1.0, "im": 0.0,
//                "num": "1", "den": "2"}, ...]}
// One entry per coset, digits per axis least significant first. num/den are
// written for exact tables and take precedence over re when read back.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <nlohmann/json.hpp>

#include "padic/function_space.hpp"
#include "padic/lattice.hpp"

namespace padic {

using Json = nlohmann::json;

template <class V>
Json to_json(const BasicCosetFunction<V>& f) {
  const CosetGrid& g = f.grid();
  Json doc;
  doc["p"] = g.p();
  doc["n"] = g.dim();
  doc["M"] = g.support_exp();
  doc["ell"] = g.resolution_exp();
  Json values = Json::array();
  for (std::uint64_t i = 0; i < g.size(); ++i) {
    Json entry;
    entry["digits"] = g.digits(i);
    if constexpr (std::is_same_v<V, Rational>) {
      entry["re"] = padic::to_double(f[i]);
      entry["im"] = 0.0;
      entry["num"] = numerator_of(f[i]).str();
      entry["den"] = denominator_of(f[i]).str();
    } else {
      entry["re"] = f[i].real();
      entry["im"] = f[i].imag();
    }
    values.push_back(std::move(entry));
  }
  doc["values"] = std::move(values);
  return doc;
}

namespace detail {

inline CosetGrid grid_from_json(const Json& doc) {
  for (const char* key : {"p", "n", "M", "ell", "values"}) {
    if (!doc.contains(key)) throw InvalidArgument(std::string("coset table: missing field '") + key + "'");
  }
  const auto p = doc.at("p").get<std::int64_t>();
  const auto n = doc.at("n").get<int>();
  return CosetGrid(PrimeContext(p), doc.at("M").get<std::int64_t>(), doc.at("ell").get<std::int64_t>(), n);
}

inline std::uint64_t index_from_json(const CosetGrid& g, const Json& entry) {
  const auto digits = entry.at("digits").get<std::vector<std::vector<int>>>();
  if (static_cast<int>(digits.size()) != g.dim()) {
    throw InvalidArgument("coset table: entry has " + std::to_string(digits.size()) + " digit arrays, expected " +
                          std::to_string(g.dim()));
  }
  std::vector<std::uint64_t> codes;
  for (const auto& d : digits) codes.push_back(g.code_from_digits(d));
  return g.index_of(codes);
}

template <class V>
BasicCosetFunction<V> from_json_impl(const Json& doc) {
  try {
    const CosetGrid g = grid_from_json(doc);
    const Json& values = doc.at("values");
    if (!values.is_array()) throw InvalidArgument("coset table: 'values' must be an array");
    if (values.size() != g.size()) {
      throw InvalidArgument("coset table: " + std::to_string(values.size()) + " entries for " +
                            std::to_string(g.size()) + " cosets");
    }
    std::vector<V> table(g.size());
    std::vector<bool> seen(g.size(), false);
    for (const auto& entry : values) {
      const std::uint64_t idx = index_from_json(g, entry);
      if (seen[idx]) throw InvalidArgument("coset table: duplicate coset entry");
      seen[idx] = true;
      const bool exact = entry.contains("num");
      if constexpr (std::is_same_v<V, Rational>) {
        if (exact) {
          table[idx] = parse_fraction(entry.at("num").get<std::string>(),
                                      entry.contains("den") ? entry.at("den").get<std::string>() : "1");
        } else {
          if (entry.value("im", 0.0) != 0.0) throw InvalidArgument("coset table: complex value in an exact table");
          throw InvalidArgument("coset table: exact table needs num/den for every entry");
        }
      } else {
        if (exact) {
          const Rational r = parse_fraction(entry.at("num").get<std::string>(),
                                            entry.contains("den") ? entry.at("den").get<std::string>() : "1");
          table[idx] = Complex(padic::to_double(r), entry.value("im", 0.0));
        } else {
          table[idx] = Complex(entry.at("re").get<double>(), entry.value("im", 0.0));
        }
      }
    }
    return {g, std::move(table)};
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("coset table: malformed JSON: ") + e.what());
  }
}

}  // namespace detail

inline CosetFunction coset_function_from_json(const Json& doc) { return detail::from_json_impl<Complex>(doc); }
inline ExactCosetFunction exact_coset_function_from_json(const Json& doc) {
  return detail::from_json_impl<Rational>(doc);
}

// True when every entry carries num/den.
inline bool json_table_is_exact(const Json& doc) {
  if (!doc.contains("values") || !doc.at("values").is_array()) return false;
  for (const auto& e : doc.at("values")) {
    if (!e.contains("num") || e.value("im", 0.0) != 0.0) return false;
  }
  return true;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidArgument("'" + path + "': " + e.what());
  }
}

template <class V>
void write_json_file(const std::string& path, const BasicCosetFunction<V>& f) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << to_json(f).dump(1) << '\n';
}

}  // namespace padic
