// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcs Authors

#pragma once

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hcs/errors.hpp"
#include "hcs/quadrature.hpp"
#include "hcs/specfun.hpp"

namespace hcs {

/// Default truncation for normalization sums sum_n u^n / rho_n.
inline constexpr int default_series_terms = 64;

/**
 * A positive weight rho(u) on [0, inf) together with its moments
 * rho_n = int u^n rho(u) du, the normalization M^2(u) = 1 / sum_n u^n/rho_n
 * and the measure density k(u) = rho(u) / M^2(u).
 *
 * Moments are held in log form; (2n+1)! leaves double range near n = 85.
 * Instances are immutable once built. Tabulated families compute their
 * moments at construction, so every const member is safe to share across
 * threads.
 */
class WeightFamily {
 public:
  /// rho(u) = e^{-u}, rho_n = n!, M^2(u) = e^{-u}, k(u) = 1.
  static WeightFamily exponential() {
    WeightFamily f;
    f.name_ = "exponential";
    f.rho_ = [](double u) { return std::exp(-u); };
    f.closed_log_moment_ = [](int n) { return log_factorial(n); };
    f.closed_m_squared_ = [](double u) { return std::exp(-u); };
    f.closed_k_ = [](double) { return 1.0; };
    // u^{p/2} e^{-u}: plain Laguerre for even p, alpha = 1/2 for odd p.
    f.half_moment_ = [](int p, int min_nodes) {
      const int degree = p / 2;
      const int nodes = std::clamp(std::max(min_nodes, degree / 2 + 2), 1, 128);
      const double alpha = (p % 2 == 0) ? 0.0 : 0.5;
      const auto rule = make_quadrature(QuadratureKind::gauss_laguerre, nodes, {.alpha = alpha});
      return rule.integrate([degree](double u) { return std::pow(u, degree); });
    };
    return f;
  }

  /// rho(u) = e^{-sqrt u}/2, rho_n = (2n+1)!, M^2(u) = sqrt(u)/sinh(sqrt u).
  static WeightFamily sqrt_exponential() {
    WeightFamily f;
    f.name_ = "sqrt-exponential";
    f.rho_ = [](double u) { return 0.5 * std::exp(-std::sqrt(u)); };
    f.closed_log_moment_ = [](int n) { return log_factorial(2 * n + 1); };
    f.closed_m_squared_ = [](double u) {
      const double x = std::sqrt(u);
      if (x < 1e-4) return 1.0 - x * x / 6.0;
      if (x > 30.0) return 2.0 * x * std::exp(-x) / (1.0 - std::exp(-2.0 * x));
      return x / std::sinh(x);
    };
    // u = x^2 turns int u^{p/2} e^{-sqrt u}/2 du into int x^{p+1} e^{-x} dx.
    f.half_moment_ = [](int p, int min_nodes) {
      const int nodes = std::clamp(std::max(min_nodes, (p + 1) / 2 + 2), 1, 128);
      const auto rule = make_quadrature(QuadratureKind::gauss_laguerre, nodes);
      return rule.integrate([p](double x) { return std::pow(x, p + 1); });
    };
    return f;
  }

  /**
   * A weight given on a grid. rho is interpolated log-linearly between grid
   * points (linearly where a value is zero) and taken as zero outside the
   * grid. Moments up to n_max come from quadrature unless a moment table is
   * declared, in which case the table is stored and quadrature only checks it.
   */
  static WeightFamily tabulated(std::string name, std::vector<double> grid_u, std::vector<double> rho, int n_max,
                                std::vector<double> declared_moments = {}) {
    if (grid_u.size() < 2 || grid_u.size() != rho.size()) {
      throw ConfigError("tabulated family '" + name + "': grid_u and rho need equal length >= 2");
    }
    if (grid_u.front() < 0) throw ConfigError("tabulated family '" + name + "': grid must start at u >= 0");
    for (std::size_t i = 0; i < grid_u.size(); ++i) {
      if (i > 0 && !(grid_u[i] > grid_u[i - 1])) {
        throw ConfigError("tabulated family '" + name + "': grid_u must be strictly increasing");
      }
      if (!(rho[i] >= 0) || !std::isfinite(rho[i])) {
        throw ConfigError("tabulated family '" + name + "': rho must be finite and non-negative");
      }
    }
    if (n_max < 1) throw ConfigError("tabulated family '" + name + "': n_max must be >= 1");
    if (!declared_moments.empty() && static_cast<int>(declared_moments.size()) < n_max + 1) {
      throw ConfigError("tabulated family '" + name + "': moment table shorter than n_max + 1");
    }

    WeightFamily f;
    f.name_ = std::move(name);
    f.moment_limit_ = n_max;
    auto table = std::make_shared<const Table>(Table{std::move(grid_u), std::move(rho)});
    f.rho_ = [table](double u) { return table->value(u); };
    f.half_moment_ = [table](int p, int min_nodes) { return table->half_moment(p, std::max(min_nodes, 8)); };
    f.stored_log_moments_.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
      const double value = declared_moments.empty() ? f.half_moment_(2 * n, 0) : declared_moments[n];
      if (!(value > 0)) {
        throw ConfigError("tabulated family '" + f.name_ + "': moment " + std::to_string(n) + " is not positive");
      }
      f.stored_log_moments_[n] = std::log(value);
    }
    return f;
  }

  const std::string& name() const { return name_; }

  double rho(double u) const {
    if (u < 0) throw DomainError("rho: u must be >= 0");
    return rho_(u);
  }

  /// Largest n with a stored moment.
  int moment_limit() const { return moment_limit_; }

  double log_moment(int n) const {
    if (n < 0) throw DomainError("moment: n must be >= 0");
    if (n > moment_limit_) {
      throw ConfigError("family '" + name_ + "' declares moments only up to n=" + std::to_string(moment_limit_));
    }
    double value = closed_log_moment_ ? closed_log_moment_(n) : stored_log_moments_[n];
    if (auto it = log_moment_shift_.find(n); it != log_moment_shift_.end()) value += it->second;
    return value;
  }

  double moment(int n) const { return std::exp(log_moment(n)); }

  /// int u^{p/2} rho(u) du by quadrature, independent of the stored moments.
  double quadrature_half_moment(int p, int min_nodes = 0) const {
    if (p < 0) throw DomainError("quadrature_half_moment: p must be >= 0");
    const double value = half_moment_(p, min_nodes);
    if (!std::isfinite(value) || !(value > 0)) {
      throw NumericalError("family '" + name_ + "': quadrature moment p/2=" + std::to_string(0.5 * p) +
                           " is not finite and positive (" + std::to_string(value) + ")");
    }
    return value;
  }

  double quadrature_moment(int n, int min_nodes = 0) const { return quadrature_half_moment(2 * n, min_nodes); }

  bool has_closed_form_normalization() const { return static_cast<bool>(closed_m_squared_); }

  /// M^2(u). Closed form when the family has one, else the series over the
  /// stored moments.
  double m_squared(double u) const {
    if (u < 0) throw DomainError("M^2: u must be >= 0");
    if (closed_m_squared_) return closed_m_squared_(u);
    return 1.0 / std::exp(log_series(u, moment_limit_));
  }

  double k(double u) const {
    if (u < 0) throw DomainError("k: u must be >= 0");
    if (closed_k_) return closed_k_(u);
    const double m2 = m_squared(u);
    if (m2 == 0.0) throw SingularityError("k: M^2(" + std::to_string(u) + ") vanishes");
    return rho_(u) / m2;
  }

  /// ln sum_{n<=n_max} u^n / rho_n, by log-sum-exp.
  double log_series(double u, int n_max) const {
    if (u == 0.0) return -log_moment(0);
    const double lu = std::log(u);
    double peak = -std::numeric_limits<double>::infinity();
    for (int n = 0; n <= n_max; ++n) peak = std::max(peak, n * lu - log_moment(n));
    double sum = 0;
    for (int n = 0; n <= n_max; ++n) sum += std::exp(n * lu - log_moment(n) - peak);
    return peak + std::log(sum);
  }

  /// Copy with rho_n multiplied by factor; used to inject faults into the
  /// validation machinery.
  WeightFamily with_scaled_moment(int n, double factor) const {
    if (!(factor > 0)) throw ConfigError("with_scaled_moment: factor must be positive");
    WeightFamily copy = *this;
    copy.log_moment_shift_[n] += std::log(factor);
    return copy;
  }

 private:
  struct Table {
    std::vector<double> u;
    std::vector<double> rho;

    double value(double x) const {
      if (x < u.front() || x > u.back()) return 0.0;
      auto it = std::upper_bound(u.begin(), u.end(), x);
      const std::size_t i = (it == u.end()) ? u.size() - 2 : static_cast<std::size_t>(it - u.begin()) - 1;
      return segment(i, x);
    }

    double segment(std::size_t i, double x) const {
      const double t = (x - u[i]) / (u[i + 1] - u[i]);
      if (rho[i] > 0 && rho[i + 1] > 0) return rho[i] * std::pow(rho[i + 1] / rho[i], t);
      return rho[i] + t * (rho[i + 1] - rho[i]);
    }

    double half_moment(int p, int nodes_per_segment) const {
      const auto rule = make_quadrature(QuadratureKind::gauss_legendre, std::min(nodes_per_segment, 64), {0.0, 1.0});
      double sum = 0;
      for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        const double h = u[i + 1] - u[i];
        for (std::size_t q = 0; q < rule.size(); ++q) {
          const double x = u[i] + h * rule.nodes[q];
          sum += h * rule.weights[q] * std::pow(x, 0.5 * p) * segment(i, x);
        }
      }
      return sum;
    }
  };

  WeightFamily() = default;

  std::string name_;
  std::function<double(double)> rho_;
  std::function<double(int)> closed_log_moment_;
  std::vector<double> stored_log_moments_;
  std::function<double(int, int)> half_moment_;
  std::function<double(double)> closed_m_squared_;
  std::function<double(double)> closed_k_;
  std::map<int, double> log_moment_shift_;
  int moment_limit_ = INT_MAX / 4;
};

/// Built-in families by name: "exponential" or "sqrt-exponential".
inline WeightFamily builtin_family(const std::string& name) {
  if (name == "exponential") return WeightFamily::exponential();
  if (name == "sqrt-exponential") return WeightFamily::sqrt_exponential();
  throw ConfigError("unknown weight family '" + name + "' (expected exponential or sqrt-exponential)");
}

inline double moment(const WeightFamily& family, int n) { return family.moment(n); }

/// M(u) = [sum_{n<=n_max} u^n / rho_n]^{-1/2}. Throws TruncationError when
/// the last term exceeds 1e-14 of the sum.
inline double normalization_M(const WeightFamily& family, double u, int n_max = default_series_terms) {
  if (u < 0) throw DomainError("normalization_M: u must be >= 0");
  if (n_max < 0) throw DomainError("normalization_M: n_max must be >= 0");
  const double log_sum = family.log_series(u, n_max);
  if (u > 0) {
    const double log_last = n_max * std::log(u) - family.log_moment(n_max);
    if (log_last - log_sum > std::log(1e-14)) {
      throw TruncationError("normalization_M: series for family '" + family.name() + "' at u=" +
                            std::to_string(u) + " not converged by n_max=" + std::to_string(n_max));
    }
  }
  return std::exp(-0.5 * log_sum);
}

inline double k_weight(const WeightFamily& family, double u) { return family.k(u); }

struct CheckResult {
  std::string name;
  bool passed = true;
  double measured = 0.0;  ///< worst deviation seen
  double bound = 0.0;     ///< tolerance it was held to
  int worst_index = -1;   ///< moment index or grid index of the worst deviation
  std::string detail;
};

struct MomentRow {
  int n;
  double stored;
  double quadrature;
  double relative_error;
};

struct ValidationReport {
  std::string family;
  std::vector<CheckResult> checks;
  std::vector<MomentRow> moments;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

/**
 * Cross-checks a family: stored vs quadrature moments (to tol), rho = M^2 k
 * on a log-spaced grid, positivity of rho_n and k, and, when M^2 has a closed
 * form, M^2(u) sum u^n/rho_n = 1. Failures are reported, never thrown.
 */
inline ValidationReport validate_family(const WeightFamily& family, int n_max, double tol) {
  if (n_max < 1) throw ConfigError("validate_family: n_max must be >= 1");
  ValidationReport report{family.name(), {}, {}};
  const int top = std::min(n_max, family.moment_limit());

  CheckResult moments{"moments", true, 0.0, tol, -1, ""};
  for (int n = 0; n <= top; ++n) {
    const double stored = family.moment(n);
    const double quad = family.quadrature_moment(n);
    const double rel = std::fabs(quad - stored) / stored;
    report.moments.push_back({n, stored, quad, rel});
    if (!(rel <= tol)) {
      if (moments.passed) moments.detail = "rho_" + std::to_string(n) + " disagrees with quadrature";
      moments.passed = false;
    }
    if (!(rel <= moments.measured)) {
      moments.measured = rel;
      moments.worst_index = n;
    }
  }
  report.checks.push_back(moments);

  constexpr int grid_points = 41;
  auto log_grid = [](double lo, double hi, int i) {
    return lo * std::pow(hi / lo, static_cast<double>(i) / (grid_points - 1));
  };

  CheckResult factor{"factorization", true, 0.0, 1e-10, -1, "rho(u) = M^2(u) k(u)"};
  CheckResult positivity{"positivity", true, 0.0, 0.0, -1, "rho_n > 0 and k(u) >= 0"};
  for (int i = 0; i < grid_points; ++i) {
    const double u = log_grid(1e-3, 1e2, i);
    const double r = family.rho(u);
    const double kv = family.k(u);
    if (!(kv >= 0)) {
      positivity.passed = false;
      positivity.worst_index = i;
    }
    if (r == 0.0) continue;
    const double dev = std::fabs(family.m_squared(u) * kv - r) / r;
    if (!(dev <= factor.measured)) {
      factor.measured = dev;
      factor.worst_index = i;
    }
  }
  factor.passed = factor.measured <= factor.bound;
  for (int n = 0; n <= top; ++n) {
    if (!(family.moment(n) > 0)) {
      positivity.passed = false;
      positivity.worst_index = n;
    }
  }
  report.checks.push_back(factor);
  report.checks.push_back(positivity);

  if (family.has_closed_form_normalization()) {
    CheckResult norm{"normalization", true, 0.0, 1e-10, -1, "M^2(u) sum u^n/rho_n = 1"};
    for (int i = 0; i < grid_points; ++i) {
      const double u = log_grid(1e-3, 10.0, i);
      const double dev = std::fabs(family.m_squared(u) * std::exp(family.log_series(u, default_series_terms)) - 1.0);
      if (!(dev <= norm.measured)) {
        norm.measured = dev;
        norm.worst_index = i;
      }
    }
    norm.passed = norm.measured <= norm.bound;
    report.checks.push_back(norm);
  }
  return report;
}

}  // namespace hcs
