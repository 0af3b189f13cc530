// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcs Authors

#pragma once

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hcs/hcs.hpp"

namespace hcs::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int {
  exit_ok = 0,
  exit_check_failed = 1,
  exit_config_error = 2,
  exit_numerical_error = 3,
};

/// Stability contract shared by every residual check.
inline constexpr double stability_bound = 5e-15;

struct MomentFault {
  int index = 0;
  double factor = 1.0;
};

struct RunConfig {
  std::string command;
  std::string family = "exponential";  ///< built-in name or path to a custom family file
  int n_max = 8;
  double s = 0.0;
  double gamma = 0.0;
  double theta_bar = 0.0;
  double phi_bar = 0.0;
  double psi_bar = 0.0;
  double omega = 1.0;
  double gamma_window = 1e4;
  int radial_nodes = 64;
  int theta_nodes = 0;  ///< 0: use the exactness threshold for n_max
  int phi_nodes = 0;
  int psi_nodes = 0;
  std::string out;  ///< empty: stdout
  std::uint64_t seed = 20260101;
  int sweep = 50;
  double tolerance = 1e-9;
  bool allow_truncation = false;
  std::vector<double> r_grid{0.5, 1.0, 2.0};
  std::vector<double> theta_grid{std::numbers::pi / 2};
  std::vector<double> phi_grid{0.0};
  std::vector<double> t_values{0.0};
  std::optional<MomentFault> corrupt_moment;

  int theta_nodes_or_default() const { return theta_nodes > 0 ? theta_nodes : angular_node_threshold(n_max); }
  int phi_nodes_or_default() const { return phi_nodes > 0 ? phi_nodes : angular_node_threshold(n_max); }
  int psi_nodes_or_default() const { return psi_nodes > 0 ? psi_nodes : angular_node_threshold(n_max); }
};

namespace detail {

template <class T>
void take(const json& j, const char* key, T& field, std::vector<std::string>& errors) {
  if (!j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const json::exception& e) {
    errors.push_back(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace detail

/// Overlays the keys of a JSON config object onto cfg. Unknown keys are errors.
inline void apply_json(const json& j, RunConfig& cfg, std::vector<std::string>& errors) {
  if (!j.is_object()) {
    errors.emplace_back("config must be a JSON object");
    return;
  }
  static const std::vector<std::string> known{
      "command", "family", "n_max", "s", "gamma", "theta_bar", "phi_bar", "psi_bar", "omega", "gamma_window",
      "radial_nodes", "theta_nodes", "phi_nodes", "psi_nodes", "out", "seed", "sweep", "tolerance",
      "allow_truncation", "r_grid", "theta_grid", "phi_grid", "t_values", "corrupt_moment"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) errors.push_back("unknown config key '" + key + "'");
  }
  using detail::take;
  take(j, "command", cfg.command, errors);
  take(j, "family", cfg.family, errors);
  take(j, "n_max", cfg.n_max, errors);
  take(j, "s", cfg.s, errors);
  take(j, "gamma", cfg.gamma, errors);
  take(j, "theta_bar", cfg.theta_bar, errors);
  take(j, "phi_bar", cfg.phi_bar, errors);
  take(j, "psi_bar", cfg.psi_bar, errors);
  take(j, "omega", cfg.omega, errors);
  take(j, "gamma_window", cfg.gamma_window, errors);
  take(j, "radial_nodes", cfg.radial_nodes, errors);
  take(j, "theta_nodes", cfg.theta_nodes, errors);
  take(j, "phi_nodes", cfg.phi_nodes, errors);
  take(j, "psi_nodes", cfg.psi_nodes, errors);
  take(j, "out", cfg.out, errors);
  take(j, "seed", cfg.seed, errors);
  take(j, "sweep", cfg.sweep, errors);
  take(j, "tolerance", cfg.tolerance, errors);
  take(j, "allow_truncation", cfg.allow_truncation, errors);
  take(j, "r_grid", cfg.r_grid, errors);
  take(j, "theta_grid", cfg.theta_grid, errors);
  take(j, "phi_grid", cfg.phi_grid, errors);
  take(j, "t_values", cfg.t_values, errors);
  if (j.contains("corrupt_moment")) {
    MomentFault fault;
    const auto& c = j.at("corrupt_moment");
    take(c, "index", fault.index, errors);
    take(c, "factor", fault.factor, errors);
    cfg.corrupt_moment = fault;
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

/// Checks every field against the module preconditions; all problems are
/// collected into one ConfigError.
inline void validate(const RunConfig& cfg, std::vector<std::string> errors = {}) {
  const std::vector<std::string> commands{"verify", "eval", "evolve", "moments"};
  if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end()) {
    errors.push_back("command must be one of verify, eval, evolve, moments (got '" + cfg.command + "')");
  }
  if (cfg.n_max < 0 || cfg.n_max > 40) errors.push_back("n_max must lie in [0, 40]");
  if (!(cfg.s >= 0) || !std::isfinite(cfg.s)) errors.push_back("s must be finite and >= 0");
  if (!std::isfinite(cfg.gamma)) errors.push_back("gamma must be finite");
  if (!(cfg.theta_bar >= 0 && cfg.theta_bar <= std::numbers::pi)) errors.push_back("theta_bar must lie in [0, pi]");
  if (!std::isfinite(cfg.phi_bar) || !std::isfinite(cfg.psi_bar)) errors.push_back("phi_bar and psi_bar must be finite");
  if (!(cfg.omega > 0)) errors.push_back("omega must be positive");
  if (!(cfg.gamma_window > 0)) errors.push_back("gamma_window must be positive");
  if (cfg.radial_nodes < 1 || cfg.radial_nodes > 128) errors.push_back("radial_nodes must lie in [1, 128]");
  const int need = angular_node_threshold(cfg.n_max);
  const auto node_check = [&](int v, const char* name) {
    if (v != 0 && v < need) {
      errors.push_back(std::string(name) + " must be >= " + std::to_string(need) + " for n_max=" +
                       std::to_string(cfg.n_max) + " (got " + std::to_string(v) + ")");
    }
  };
  node_check(cfg.theta_nodes, "theta_nodes");
  node_check(cfg.phi_nodes, "phi_nodes");
  node_check(cfg.psi_nodes, "psi_nodes");
  if (cfg.sweep < 1) errors.push_back("sweep must be >= 1");
  if (!(cfg.tolerance > 0)) errors.push_back("tolerance must be positive");
  if (cfg.corrupt_moment && (cfg.corrupt_moment->index < 0 || !(cfg.corrupt_moment->factor > 0))) {
    errors.push_back("corrupt_moment needs index >= 0 and factor > 0");
  }
  if (cfg.t_values.empty()) errors.push_back("t_values must not be empty");
  try {
    GridSpec{cfg.r_grid, cfg.theta_grid, cfg.phi_grid}.validate();
  } catch (const ConfigError& e) {
    errors.emplace_back(e.what());
  }
  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ConfigError(msg);
  }
}

/**
 * Custom family file: {"name": ..., "grid_u": [...], "rho": [...],
 * "n_max": N} with an optional "moments" table of N+1 declared values,
 * which is then checked against quadrature rather than trusted.
 */
inline WeightFamily load_custom_family(const std::string& path) {
  const json j = read_json_file(path);
  try {
    std::vector<double> declared;
    if (j.contains("moments")) declared = j.at("moments").get<std::vector<double>>();
    return WeightFamily::tabulated(j.at("name").get<std::string>(), j.at("grid_u").get<std::vector<double>>(),
                                   j.at("rho").get<std::vector<double>>(), j.at("n_max").get<int>(), declared);
  } catch (const json::exception& e) {
    throw ConfigError("custom family '" + path + "': " + e.what());
  }
}

inline WeightFamily resolve_family(const RunConfig& cfg) {
  WeightFamily family = (cfg.family == "exponential" || cfg.family == "sqrt-exponential")
                            ? builtin_family(cfg.family)
                            : load_custom_family(cfg.family);
  if (cfg.corrupt_moment) family = family.with_scaled_moment(cfg.corrupt_moment->index, cfg.corrupt_moment->factor);
  return family;
}

inline HydrogenLabel configured_label(const RunConfig& cfg) {
  return {cfg.s, cfg.gamma, EulerAngles(cfg.theta_bar, cfg.phi_bar, cfg.psi_bar)};
}

inline TailPolicy tail_policy(const RunConfig& cfg) {
  return cfg.allow_truncation ? TailPolicy::allow : TailPolicy::enforce;
}

struct Check {
  std::string name;
  double measured;
  double bound;
  bool pass;
  std::string detail;
};

inline json to_json(const Check& c) {
  return json{{"name", c.name}, {"measured", c.measured}, {"bound", c.bound}, {"pass", c.pass}, {"detail", c.detail}};
}

/// Writes to cfg.out, or stdout when no path is set.
template <class Writer>
void emit(const RunConfig& cfg, Writer&& write) {
  if (cfg.out.empty()) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream os(cfg.out, std::ios::binary);
  if (!os) throw std::system_error(errno, std::generic_category(), "cannot open '" + cfg.out + "' for writing");
  write(os);
  if (!os) throw std::system_error(errno, std::generic_category(), "write failed for '" + cfg.out + "'");
}

namespace detail {

/// Largest radius the family admits at truncation n_max under the tail rule,
/// by bisection.
inline double adequate_radius(const WeightFamily& family, int n_max, int degeneracy_power) {
  double lo = 0.0, hi = 16.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    bool ok = false;
    try {
      ok = adequate_n_max(family, mid, degeneracy_power, 0, n_max) <= n_max;
    } catch (const TruncationError&) {
      ok = false;
    }
    (ok ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace detail

/**
 * Runs the invariant suite in a fixed order and returns one entry per check.
 * Random sweeps draw from a generator seeded with cfg.seed.
 */
inline std::vector<Check> verify_checks(const RunConfig& cfg) {
  const WeightFamily family = resolve_family(cfg);
  const int n_max = cfg.n_max;
  std::vector<Check> checks;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto random_angles = [&] {
    const double th = std::numbers::pi * unit(rng);
    const double ph = 2 * std::numbers::pi * unit(rng);
    const double ps = 2 * std::numbers::pi * unit(rng);
    return EulerAngles(th, ph, ps);
  };

  // weight family: moments, factorization, positivity, normalization
  const int moment_top = std::min(std::max(n_max, 12), family.moment_limit());
  for (const auto& c : validate_family(family, moment_top, cfg.tolerance).checks) {
    std::string detail = c.detail;
    if (!c.passed && c.worst_index >= 0) detail += " (worst index " + std::to_string(c.worst_index) + ")";
    checks.push_back({"family." + c.name, c.measured, c.bound, c.passed, detail});
  }

  {
    const auto rep = resolution_check_1d(family, PhaseAverage::periodic, n_max, cfg.radial_nodes);
    checks.push_back({"resolution.periodic", rep.max_diagonal_deviation, 1e-10,
                      rep.max_diagonal_deviation <= 1e-10 && rep.max_off_diagonal == 0.0,
                      "1-D Gram operator over integer-frequency phases"});
  }
  {
    const auto rep = resolution_check_1d(family, PhaseAverage::covering, n_max, cfg.radial_nodes, cfg.gamma_window);
    checks.push_back({"resolution.covering", rep.max_off_diagonal, rep.max_certificate,
                      rep.certificate_holds && rep.max_diagonal_deviation <= 1e-10,
                      "finite-window off-diagonals against the sinc certificate"});
  }
  {
    double worst = 0;
    bool rank_ok = true;
    for (int n = 0; n <= n_max; ++n) {
      const auto rep = angular_resolution_check(n, std::max(cfg.theta_nodes_or_default(), angular_node_threshold(n)),
                                                std::max(cfg.phi_nodes_or_default(), angular_node_threshold(n)),
                                                std::max(cfg.psi_nodes_or_default(), angular_node_threshold(n)));
      worst = std::max(worst, rep.max_deviation);
      rank_ok = rank_ok && rep.rank == (n + 1) * (n + 1);
    }
    checks.push_back({"angular.resolution", worst, 1e-12, worst <= 1e-12 && rank_ok,
                      "shell Gram matrices equal the (n+1)^2 identity"});
  }
  {
    double worst = 0;
    for (int n = 0; n <= n_max; ++n) {
      for (int i = 0; i < cfg.sweep; ++i) {
        worst = std::max(worst, std::fabs(shell_norm_squared(n, random_angles()) - (n + 1.0) * (n + 1.0)));
      }
    }
    checks.push_back({"angular.shell_norm", worst, 1e-12, worst <= 1e-12, "shell norm^2 = (n+1)^2"});
  }
  {
    double worst = 0;
    const double r_max = detail::adequate_radius(family, n_max, 0);
    const int n_osc = std::max(n_max, 32);
    // |z|^2 + 10|z| <= n_osc, and the Glauber tail rule
    const double z_max = std::min(std::sqrt(25.0 + n_osc) - 5.0,
                                  detail::adequate_radius(WeightFamily::exponential(), n_osc, 0));
    for (int i = 0; i < cfg.sweep; ++i) {
      const double t = 10.0 * unit(rng);
      const double r = r_max * unit(rng);
      const CoveringAngle angle = 20.0 * unit(rng) - 10.0;
      worst = std::max(worst, stability_residual(DegenerateLabel{r, angle}, family,
                                                 Spectrum::inverse_square(cfg.omega), t, n_max));
      worst = std::max(worst, stability_residual(GeneralizedLabel{r, angle}, family, Spectrum::oscillator(cfg.omega),
                                                 t, n_max));
      const double a = z_max * unit(rng);
      const double phase = 2 * std::numbers::pi * unit(rng);
      worst = std::max(worst, stability_residual(OscillatorLabel{std::polar(a, phase)}, family,
                                                 Spectrum::oscillator(cfg.omega), t, n_osc));
    }
    checks.push_back({"stability.fock", worst, stability_bound, worst <= stability_bound,
                      "e^{-iHt} against label shift, one degree of freedom"});
  }
  {
    double worst = 0;
    const double s_max = detail::adequate_radius(family, n_max, 1);
    for (int i = 0; i < cfg.sweep; ++i) {
      const HydrogenLabel label{s_max * unit(rng), 20.0 * unit(rng) - 10.0, random_angles()};
      worst = std::max(worst, hydrogen_stability_residual(label, family, cfg.omega, 10.0 * unit(rng), n_max));
    }
    checks.push_back({"stability.hydrogen", worst, stability_bound, worst <= stability_bound,
                      "e^{-iHt}|s,gamma,Omega> against |s,gamma+omega t,Omega>"});
  }
  {
    const auto rep = hydrogen_resolution_check(family, n_max, cfg.radial_nodes, cfg.gamma_window,
                                               cfg.theta_nodes_or_default(), cfg.phi_nodes_or_default(),
                                               cfg.psi_nodes_or_default());
    const bool pass = rep.max_diagonal_deviation <= 1e-10 && rep.max_within_shell_off_diagonal <= 1e-12 &&
                      rep.certificate_holds;
    checks.push_back({"resolution.hydrogen", rep.max_diagonal_deviation, 1e-10, pass,
                      "diagonal of the full operator; cross-shell entries within the sinc certificate"});
  }
  {
    double worst = 0;
    const RadialRule rule(96, radial_decay(n_max));
    for (int ell = 0; ell <= n_max; ++ell) {
      for (int n = ell; n <= n_max; ++n) {
        for (int np = n; np <= n_max; ++np) {
          const double v = rule.integrate(
              [&](double r) { return radial_eigenfunction(n, ell, r) * radial_eigenfunction(np, ell, r) * r * r; });
          worst = std::max(worst, std::fabs(v - (n == np ? 1.0 : 0.0)));
        }
      }
    }
    checks.push_back({"radial.orthonormality", worst, 1e-10, worst <= 1e-10, "hydrogen radial functions"});
  }
  {
    const double norm = state_norm(configured_label(cfg), family, n_max, tail_policy(cfg));
    checks.push_back({"hydrogen.state_norm", norm, 1e-10, true, "closed-sum norm, cross-checked to 1e-10"});
  }
  return checks;
}

inline int run_verify(const RunConfig& cfg) {
  const auto checks = verify_checks(cfg);
  json report{{"command", "verify"},   {"family", cfg.family},           {"n_max", cfg.n_max},
              {"seed", cfg.seed},      {"gamma_window", cfg.gamma_window}, {"radial_nodes", cfg.radial_nodes},
              {"checks", json::array()}};
  bool all = true;
  for (const auto& c : checks) {
    report["checks"].push_back(to_json(c));
    all = all && c.pass;
    if (!c.pass) std::cerr << "check failed: " << c.name << " (measured " << c.measured << ", bound " << c.bound << ")\n";
  }
  report["all_pass"] = all;
  emit(cfg, [&](std::ostream& os) { os << report.dump(2) << '\n'; });
  return all ? exit_ok : exit_check_failed;
}

inline int run_moments(const RunConfig& cfg) {
  const WeightFamily family = resolve_family(cfg);
  const int top = std::min(std::max(cfg.n_max, 12), family.moment_limit());
  const auto rep = validate_family(family, top, cfg.tolerance);
  json report{{"command", "moments"}, {"family", rep.family}, {"n_max", top}, {"tolerance", cfg.tolerance},
              {"checks", json::array()}, {"moments", json::array()}};
  for (const auto& c : rep.checks) {
    report["checks"].push_back(
        json{{"name", c.name}, {"measured", c.measured}, {"bound", c.bound}, {"pass", c.passed},
             {"worst_index", c.worst_index}, {"detail", c.detail}});
    if (!c.passed) std::cerr << "check failed: family." << c.name << " (worst index " << c.worst_index << ")\n";
  }
  for (const auto& m : rep.moments) {
    report["moments"].push_back(json{{"n", m.n}, {"stored", m.stored}, {"quadrature", m.quadrature},
                                     {"relative_error", m.relative_error}, {"match", m.relative_error <= cfg.tolerance}});
  }
  report["all_pass"] = rep.passed();
  emit(cfg, [&](std::ostream& os) { os << report.dump(2) << '\n'; });
  return rep.passed() ? exit_ok : exit_check_failed;
}

inline int run_eval(const RunConfig& cfg) {
  const WeightFamily family = resolve_family(cfg);
  const auto x = hydrogen_cs(configured_label(cfg), family, cfg.n_max, tail_policy(cfg));
  const GridSpec grid{cfg.r_grid, cfg.theta_grid, cfg.phi_grid};
  emit(cfg, [&](std::ostream& os) { export_density_grid(x, grid, cfg.t_values, cfg.omega, os); });
  return exit_ok;
}

/// Rows (t, residual, Re A, Im A, |A|^2) with A(t) = <psi(0)|psi(t)>.
inline int run_evolve(const RunConfig& cfg) {
  const WeightFamily family = resolve_family(cfg);
  const auto label = configured_label(cfg);
  const auto x0 = hydrogen_cs(label, family, cfg.n_max, tail_policy(cfg));
  bool all = true;
  std::ostringstream body;
  body << "t,residual,re_autocorr,im_autocorr,abs_autocorr_sq\n";
  for (double t : cfg.t_values) {
    const auto xt = evolve_hydrogen(x0, cfg.omega, t);
    const auto shifted = hydrogen_cs(label.shifted(cfg.omega, t), family, cfg.n_max, tail_policy(cfg));
    double residual = 0;
    std::complex<double> autocorr = 0;
    for (std::size_t i = 0; i < xt.coeffs.size(); ++i) {
      residual = std::max(residual, std::abs(xt.coeffs[i] - shifted.coeffs[i]));
      autocorr += std::conj(x0.coeffs[i]) * xt.coeffs[i];
    }
    all = all && residual <= stability_bound;
    hcs::detail::write_row(body, {t, residual, autocorr.real(), autocorr.imag(), std::norm(autocorr)});
  }
  emit(cfg, [&](std::ostream& os) { os << body.str(); });
  if (!all) std::cerr << "check failed: stability residual above " << stability_bound << '\n';
  return all ? exit_ok : exit_check_failed;
}

/// Dispatches on cfg.command, mapping exceptions to the exit-code contract.
inline int run(const RunConfig& cfg, std::ostream& err = std::cerr) {
  try {
    validate(cfg);
    if (cfg.command == "verify") return run_verify(cfg);
    if (cfg.command == "moments") return run_moments(cfg);
    if (cfg.command == "eval") return run_eval(cfg);
    return run_evolve(cfg);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const DomainError& e) {
    err << "configuration error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_numerical_error;
  } catch (const std::system_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_numerical_error;
  }
}

}  // namespace hcs::cli
