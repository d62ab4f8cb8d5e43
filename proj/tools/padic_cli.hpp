#pragma once

// padic_wave command line: solve, kernel-table, eigen-check, verify.
//
// Exit codes: 0 ok, 1 verification failure, 2 bad configuration or input
// outside Phi, 3 grid cap exceeded, 4 refusal (beta/alpha not an integer).

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "padic/csv.hpp"
#include "padic/serialization.hpp"
#include "padic/verify/acceptance.hpp"
#include "padic/wave.hpp"

namespace padic::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kConfigError = 2, kGridCap = 3, kRefused = 4 };

struct ConfigError : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

struct SphereIndicatorSpec {
  std::int64_t N = 1;
};
struct EigenSpec {
  std::int64_t N = 0;
  Complex C{1.0, 0.0};
  std::optional<Rational> exact_C = Rational(1);
};
struct FileSpec {
  std::string path;
};
using U0Spec = std::variant<SphereIndicatorSpec, EigenSpec, FileSpec>;

struct RunConfig {
  std::int64_t p = 2;
  int n = 1;
  double alpha = 1.0;
  int K = 1;
  std::optional<double> beta;  // when set, K is derived and may be refused
  U0Spec u0 = SphereIndicatorSpec{};
  std::optional<std::vector<ExtendedInt>> sweep;  // nullopt = auto
  std::string output = "padic_out";
  std::vector<std::vector<Rational>> profile_points;  // empty = the origin
  verify::Tolerances tol;
};

inline ExtendedInt parse_exponent(const std::string& s) {
  if (s == "-inf") return ExtendedInt::neg_inf();
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw ConfigError("bad time exponent '" + s + "'");
    return ExtendedInt(v);
  } catch (const std::logic_error&) {
    throw ConfigError("bad time exponent '" + s + "'");
  }
}

inline std::optional<std::vector<ExtendedInt>> parse_sweep_string(const std::string& s) {
  if (s == "auto") return std::nullopt;
  std::vector<ExtendedInt> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_exponent(item));
  }
  if (out.empty()) throw ConfigError("empty sweep");
  return out;
}

inline Rational parse_rational_text(const std::string& s) {
  const auto slash = s.find('/');
  try {
    return slash == std::string::npos ? parse_fraction(s, "1") : parse_fraction(s.substr(0, slash), s.substr(slash + 1));
  } catch (const std::exception&) {
    throw ConfigError("bad rational '" + s + "'");
  }
}

inline Rational json_rational(const Json& j) {
  if (j.is_string()) return parse_rational_text(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number()) return Rational(j.get<double>());
  throw ConfigError("expected a number or a \"num/den\" string");
}

inline U0Spec parse_u0(const Json& j) {
  if (j.is_string()) {
    std::stringstream ss(j.get<std::string>());
    std::string kind;
    ss >> kind;
    if (kind == "sphere-indicator") {
      SphereIndicatorSpec s;
      if (!(ss >> s.N)) throw ConfigError("sphere-indicator needs N");
      return s;
    }
    if (kind == "eigen") {
      EigenSpec s;
      std::string c;
      if (!(ss >> s.N)) throw ConfigError("eigen needs N");
      if (ss >> c) {
        s.exact_C = parse_rational_text(c);
        s.C = Complex(padic::to_double(*s.exact_C), 0.0);
      }
      return s;
    }
    return FileSpec{j.get<std::string>()};
  }
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("u0 must be a string or an object with 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "sphere-indicator") return SphereIndicatorSpec{j.value("N", std::int64_t{1})};
  if (kind == "eigen") {
    EigenSpec s;
    s.N = j.value("N", std::int64_t{0});
    if (j.contains("C")) {
      const Json& c = j.at("C");
      if (c.is_object()) {
        s.C = Complex(c.value("re", 0.0), c.value("im", 0.0));
        s.exact_C = s.C.imag() == 0.0 ? std::optional<Rational>(Rational(s.C.real())) : std::nullopt;
      } else {
        s.exact_C = json_rational(c);
        s.C = Complex(padic::to_double(*s.exact_C), 0.0);
      }
    }
    return s;
  }
  if (kind == "file") return FileSpec{j.at("path").get<std::string>()};
  throw ConfigError("unknown u0 kind '" + kind + "'");
}

inline RunConfig parse_config(const Json& j) {
  RunConfig c;
  if (j.is_null()) return c;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    c.p = j.value("p", c.p);
    c.n = j.value("n", c.n);
    c.alpha = j.value("alpha", c.alpha);
    c.K = j.value("K", c.K);
    if (j.contains("beta")) c.beta = j.at("beta").get<double>();
    if (j.contains("u0")) c.u0 = parse_u0(j.at("u0"));
    if (j.contains("sweep")) {
      const Json& s = j.at("sweep");
      if (s.is_string()) {
        c.sweep = parse_sweep_string(s.get<std::string>());
      } else {
        std::vector<ExtendedInt> v;
        for (const auto& e : s) v.push_back(e.is_string() ? parse_exponent(e.get<std::string>()) : ExtendedInt(e.get<std::int64_t>()));
        c.sweep = v;
      }
    }
    c.output = j.value("output", c.output);
    if (j.contains("profile_points")) {
      for (const auto& pt : j.at("profile_points")) {
        std::vector<Rational> x;
        for (const auto& v : pt) x.push_back(json_rational(v));
        c.profile_points.push_back(std::move(x));
      }
    }
    if (j.contains("tolerances")) {
      const Json& t = j.at("tolerances");
      c.tol.solver = t.value("solver", c.tol.solver);
      c.tol.phi = t.value("phi", c.tol.phi);
      c.tol.dependence = t.value("dependence", c.tol.dependence);
      c.tol.round_trip = t.value("round_trip", c.tol.round_trip);
      c.tol.eigen = t.value("eigen", c.tol.eigen);
      c.tol.duality = t.value("duality", c.tol.duality);
      c.tol.pde = t.value("pde", c.tol.pde);
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

inline void validate(const RunConfig& c) {
  if (c.p < 2 || !is_prime(c.p)) throw ConfigError("p = " + std::to_string(c.p) + " is not a prime");
  if (c.n < 1) throw ConfigError("n must be positive");
  if (!(c.alpha > 0)) throw ConfigError("alpha must be positive");
  if (c.K < 1) throw ConfigError("K must be a positive integer");
}

struct InitialDatum {
  CosetFunction values;
  std::optional<ExactCosetFunction> exact;
};

inline InitialDatum build_u0(const RunConfig& c, int K) {
  const PrimeContext ctx(c.p);
  return std::visit(
      [&](const auto& spec) -> InitialDatum {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, SphereIndicatorSpec>) {
          auto e = sphere_indicator_datum(ctx, c.n, spec.N);
          return {to_complex(e), e};
        } else if constexpr (std::is_same_v<T, EigenSpec>) {
          // u_N is a one-dimensional profile; as a radial function in n > 1 it
          // no longer integrates to zero.
          if (c.n != 1) throw ConfigError("u0 'eigen' is defined for n = 1 only");
          const std::int64_t KN = static_cast<std::int64_t>(K) * spec.N;
          if (spec.exact_C) {
            auto e = embed_radial(eigenfunction<Rational>(spec.N, *spec.exact_C, K, ctx), -KN + 1, KN, c.n);
            return {to_complex(e), e};
          }
          return {embed_radial(eigenfunction<Complex>(spec.N, spec.C, K, ctx), -KN + 1, KN, c.n), std::nullopt};
        } else {
          const Json doc = read_json_file(spec.path);
          if (doc.value("p", std::int64_t{0}) != c.p || doc.value("n", 0) != c.n) {
            throw ConfigError("coset table '" + spec.path + "' does not match p and n of the run");
          }
          if (json_table_is_exact(doc)) {
            auto e = exact_coset_function_from_json(doc);
            return {to_complex(e), e};
          }
          return {coset_function_from_json(doc), std::nullopt};
        }
      },
      c.u0);
}

inline std::string slice_file_name(const ExtendedInt& L) { return "slice_L" + L.str() + ".csv"; }

// Exact slices are computed for rational data on grids up to this size.
inline constexpr std::uint64_t kExactSliceLimit = 4096;

inline int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  const PrimeContext ctx(cfg.p);
  int K = cfg.K;
  if (cfg.beta) {
    // derive K from beta, or refuse
    K = WaveProblem::from_exponents(ctx, cfg.n, cfg.alpha, *cfg.beta,
                                    CosetFunction(CosetGrid(ctx, 0, 0, cfg.n)))
            .K();
  }
  const InitialDatum u0 = build_u0(cfg, K);
  if (u0.exact && integrate(*u0.exact) != 0) {
    throw NotLizorkinError("initial datum is not in Phi: its integral is " + to_fraction_string(integrate(*u0.exact)));
  }
  const WaveProblem prob(ctx, cfg.n, cfg.alpha, K, u0.values, cfg.tol.phi);
  const std::vector<ExtendedInt> sweep = cfg.sweep ? *cfg.sweep : auto_sweep(prob);
  const bool exact_slices = u0.exact && u0.exact->size() <= kExactSliceLimit;

  namespace fs = std::filesystem;
  fs::create_directories(cfg.output);
  const SpectralPropagator spectral(prob);
  const double l1_u0 = l1_norm(prob.u0());
  const double scale = std::max(1.0, max_abs(prob.u0()));

  Json summary;
  summary["p"] = cfg.p;
  summary["n"] = cfg.n;
  summary["alpha"] = cfg.alpha;
  summary["beta"] = prob.beta();
  summary["K"] = K;
  summary["grid"] = {{"M", prob.u0().support_exp()}, {"ell", prob.u0().resolution_exp()}};
  summary["l1_bound"] = std::pow(static_cast<double>(cfg.p), 2.0 * cfg.n * static_cast<double>(l1_bound_gamma(K)));
  const SpectralSupport support = spectral_support(spectral.initial_transform());
  if (!support.empty) summary["spectral_spheres"] = {support.min_sphere, support.max_sphere};

  bool all_ok = true;
  Json slices = Json::array();
  for (const auto& L : sweep) {
    const SolutionSlice slice = spectral.at(L);
    const SolutionSlice conv = solve_convolution(prob, L);
    const double diff = max_abs_difference(slice.field, conv.field);
    std::optional<ExactCosetFunction> exact;
    if (exact_slices) exact = solve_convolution_exact(prob, *u0.exact, L);
    {
      std::ofstream f(fs::path(cfg.output) / slice_file_name(L));
      csv::write_slice(f, L, slice.field, exact);
    }
    Json s;
    s["L"] = L.str();
    s["in_Phi"] = is_in_Phi(slice.field, cfg.tol.phi * scale);
    s["solver_difference"] = diff;
    s["solvers_agree"] = diff <= cfg.tol.solver * scale;
    if (L.is_finite() && L.value() >= 0 && l1_u0 > 0) s["l1_ratio"] = l1_norm(slice.field) / l1_u0;
    all_ok = all_ok && s["in_Phi"].get<bool>() && s["solvers_agree"].get<bool>();
    slices.push_back(std::move(s));
  }
  summary["slices"] = std::move(slices);

  std::vector<std::vector<Rational>> points = cfg.profile_points;
  if (points.empty()) points.emplace_back(static_cast<std::size_t>(cfg.n), Rational(0));
  Json profiles = Json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (static_cast<int>(points[i].size()) != cfg.n) throw ConfigError("profile point has the wrong dimension");
    const RadialShellFunction prof = time_profile(prob, points[i], cfg.tol.phi);
    const std::string name = "profile_" + std::to_string(i) + ".csv";
    std::ofstream f(fs::path(cfg.output) / name);
    csv::write_profile(f, prof);
    Json pj;
    std::vector<std::string> x;
    for (const auto& v : points[i]) x.push_back(to_fraction_string(v));
    pj["x"] = x;
    pj["file"] = name;
    pj["integral"] = std::abs(prof.integral(1));
    profiles.push_back(std::move(pj));
  }
  summary["profiles"] = std::move(profiles);
  summary["all_checks_passed"] = all_ok;
  {
    std::ofstream f(fs::path(cfg.output) / "summary.json");
    f << summary.dump(2) << '\n';
  }
  out << "wrote " << sweep.size() << " slices and " << points.size() << " profiles to " << cfg.output << '\n';
  return all_ok ? kOk : kVerifyFailed;
}

struct KernelTableArgs {
  std::int64_t p = 2;
  int n = 1;
  int K = 1;
  std::int64_t L_min = -4, L_max = 4, M_min = -4, M_max = 4;
  bool floor_bracket = false;
  std::string out;  // empty = stdout
};

inline int cmd_kernel_table(const KernelTableArgs& a, std::ostream& out) {
  if (a.p < 2 || !is_prime(a.p)) throw ConfigError("p is not a prime");
  if (a.n < 1 || a.K < 1) throw ConfigError("n and K must be positive");
  for (auto v : {a.L_min, a.L_max, a.M_min, a.M_max}) {
    if (v < -12 || v > 12) throw ConfigError("L and M ranges must lie in [-12, 12]");
  }
  if (a.L_min > a.L_max || a.M_min > a.M_max) throw ConfigError("empty L or M range");
  const auto rows = csv::kernel_table(PrimeContext(a.p), a.n, a.K, a.L_min, a.L_max, a.M_min, a.M_max,
                                      a.floor_bracket ? BracketRule::Floor : BracketRule::Ceiling);
  if (a.out.empty()) {
    csv::write_kernel_table(out, rows);
  } else {
    std::ofstream f(a.out);
    if (!f) throw ConfigError("cannot write '" + a.out + "'");
    csv::write_kernel_table(f, rows);
  }
  for (const auto& r : rows) {
    if (r.closed != r.oracle) {
      out << "kernel-oracle mismatch at L=" << r.L << " M=" << r.M << '\n';
      return kVerifyFailed;
    }
  }
  return kOk;
}

struct EigenArgs {
  std::int64_t p = 2;
  int K = 1;
  std::int64_t N = 0;
  double alpha = 1.0;
  double C = 1.0;
};

// Applies both operator forms to u_N and compares with p^{K alpha N} u_N.
inline int cmd_eigen_check(const EigenArgs& a, double tol, std::ostream& out) {
  if (a.p < 2 || !is_prime(a.p)) throw ConfigError("p is not a prime");
  if (a.K < 1 || !(a.alpha > 0)) throw ConfigError("K must be positive and alpha > 0");
  const PrimeContext ctx(a.p);
  const RadialShellFunction u = eigenfunction<Complex>(a.N, Complex(a.C, 0.0), a.K, ctx);
  const OperatorParams params{a.alpha, 1};
  const double lambda = std::pow(static_cast<double>(a.p), a.K * a.alpha * static_cast<double>(a.N));
  const RadialShellFunction spectral = apply_spectral_radial(params, u);
  const RadialShellFunction hyper = apply_hypersingular_radial(params, u);
  out << "shell,u,expected,spectral,hypersingular\n";
  double worst = 0.0;
  double scale = std::abs(u.core_value()) * lambda;
  for (const auto& v : u.shell_values()) scale = std::max(scale, std::abs(v) * lambda);
  auto row = [&](const std::string& label, const ExtendedInt& e) {
    const double ue = u.value_at(e).real();
    const double ex = lambda * ue;
    const double s = spectral.value_at(e).real();
    const double h = hyper.value_at(e).real();
    worst = std::max({worst, std::abs(s - ex) / scale, std::abs(h - ex) / scale});
    out << label << ',' << csv::num(ue) << ',' << csv::num(ex) << ',' << csv::num(s) << ',' << csv::num(h) << '\n';
  };
  row("core", ExtendedInt(u.shell_lo() - 1));
  for (std::int64_t e = u.shell_lo(); e <= u.shell_hi() + 1; ++e) row(std::to_string(e), ExtendedInt(e));
  out << "eigenvalue " << csv::num(lambda) << ", max relative error " << csv::num(worst) << '\n';
  return worst <= tol ? kOk : kVerifyFailed;
}

inline int cmd_verify(const verify::AcceptanceOptions& opt, std::ostream& out) {
  const auto results = verify::run_acceptance(opt);
  const verify::CriterionResult* first_failure = nullptr;
  for (const auto& r : results) {
    out << verify::format_result(r) << '\n';
    if (!r.passed && first_failure == nullptr) first_failure = &r;
  }
  if (first_failure != nullptr) {
    out << "FAILED: criterion " << first_failure->id << " (" << first_failure->name << "): " << first_failure->detail
        << '\n';
    return kVerifyFailed;
  }
  out << "all " << results.size() << " criteria passed\n";
  return kOk;
}

// Entry point shared by the binary and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"p-adic wave equation solver"};
  app.require_subcommand(1);

  std::string config_path, out_dir, sweep;
  std::optional<std::int64_t> p;
  std::optional<int> n, K;
  std::optional<double> alpha, beta, tol_solver, tol_phi, tol_dependence, tol_eigen;
  bool inject_fault = false;

  auto add_tols = [&](CLI::App* sub) {
    sub->add_option("--tol-solver", tol_solver, "solver agreement tolerance");
    sub->add_option("--tol-phi", tol_phi, "Phi membership tolerance");
    sub->add_option("--tol-dependence", tol_dependence, "dependence cone tolerance");
    sub->add_option("--tol-eigen", tol_eigen, "eigenrelation tolerance");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve the Cauchy problem over an L sweep");
  solve->add_option("--config", config_path, "JSON run configuration");
  solve->add_option("--out", out_dir, "output directory");
  solve->add_option("--p", p);
  solve->add_option("--n", n);
  solve->add_option("--alpha", alpha);
  solve->add_option("--K", K);
  solve->add_option("--beta", beta, "derive K = beta/alpha");
  solve->add_option("--sweep", sweep, "\"auto\" or comma-separated exponents, -inf allowed");
  add_tols(solve);

  KernelTableArgs kt;
  CLI::App* ktab = app.add_subcommand("kernel-table", "closed-form kernel against the series oracle");
  ktab->add_option("--p", kt.p);
  ktab->add_option("--n", kt.n);
  ktab->add_option("--K", kt.K);
  ktab->add_option("--L-min", kt.L_min);
  ktab->add_option("--L-max", kt.L_max);
  ktab->add_option("--M-min", kt.M_min);
  ktab->add_option("--M-max", kt.M_max);
  ktab->add_option("--out", kt.out, "CSV file (default stdout)");
  ktab->add_flag("--inject-fault", kt.floor_bracket, "read the bracket as a floor");

  EigenArgs ea;
  CLI::App* eig = app.add_subcommand("eigen-check", "check D^alpha u_N = p^{K alpha N} u_N");
  eig->add_option("--p", ea.p);
  eig->add_option("--K", ea.K);
  eig->add_option("--N", ea.N);
  eig->add_option("--alpha", ea.alpha);
  eig->add_option("--C", ea.C);
  add_tols(eig);

  CLI::App* ver = app.add_subcommand("verify", "run the acceptance suite");
  ver->add_option("--config", config_path, "JSON file with a 'tolerances' object");
  ver->add_flag("--inject-fault", inject_fault, "read the kernel bracket as a floor");
  add_tols(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = parse_config(read_json_file(config_path));
    if (p) cfg.p = *p;
    if (n) cfg.n = *n;
    if (alpha) cfg.alpha = *alpha;
    if (K) cfg.K = *K;
    if (beta) cfg.beta = *beta;
    if (!out_dir.empty()) cfg.output = out_dir;
    if (!sweep.empty()) cfg.sweep = parse_sweep_string(sweep);
    if (tol_solver) cfg.tol.solver = *tol_solver;
    if (tol_phi) cfg.tol.phi = *tol_phi;
    if (tol_dependence) cfg.tol.dependence = *tol_dependence;
    if (tol_eigen) cfg.tol.eigen = *tol_eigen;

    if (*solve) return cmd_solve(cfg, out);
    if (*ktab) return cmd_kernel_table(kt, out);
    if (*eig) return cmd_eigen_check(ea, cfg.tol.eigen, out);
    verify::AcceptanceOptions opt;
    opt.tol = cfg.tol;
    opt.inject_floor_bracket = inject_fault;
    return cmd_verify(opt, out);
  } catch (const NoSolutionError& e) {
    err << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const GridCapError& e) {
    err << "grid cap: " << e.what() << '\n';
    return kGridCap;
  } catch (const NotLizorkinError& e) {
    err << "input not in Phi: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
}

}  // namespace padic::cli
