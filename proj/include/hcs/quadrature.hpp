// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcs Authors

#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hcs/errors.hpp"

namespace hcs {

enum class QuadratureKind {
  gauss_legendre,  ///< interval [a, b], unit weight
  gauss_laguerre,  ///< [0, inf), weight u^alpha e^{-u}
  trapezoid,       ///< one period [a, a + period), uniform weights
};

struct QuadratureParams {
  double a = -1.0;      ///< Legendre lower limit / trapezoid start
  double b = 1.0;       ///< Legendre upper limit
  double alpha = 0.0;   ///< generalized Laguerre exponent, > -1
  double period = 2.0 * std::numbers::pi;
};

struct QuadratureRule {
  QuadratureKind kind;
  std::vector<double> nodes;
  std::vector<double> weights;
  /// Laguerre only: weights[i] * e^{nodes[i]}, formed before rounding so the
  /// product does not underflow for the far nodes.
  std::vector<double> exp_weights;

  std::size_t size() const { return nodes.size(); }

  template <class F>
  auto integrate(F&& f) const {
    decltype(f(0.0) * 1.0) sum{};
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

namespace detail {

inline QuadratureRule gauss_legendre(int m, double a, double b) {
  QuadratureRule rule{QuadratureKind::gauss_legendre, std::vector<double>(m), std::vector<double>(m), {}};
  const long double mid = 0.5L * (static_cast<long double>(b) + a);
  const long double half = 0.5L * (static_cast<long double>(b) - a);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    long double z = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (m + 0.5L));
    long double pp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      long double p1 = 1, p2 = 0;
      for (int j = 1; j <= m; ++j) {
        const long double p3 = p2;
        p2 = p1;
        p1 = ((2 * j - 1) * z * p2 - (j - 1) * p3) / j;
      }
      pp = m * (z * p1 - p2) / (z * z - 1);
      const long double dz = p1 / pp;
      z -= dz;
      if (std::fabs(dz) <= 1e-19L) break;
    }
    const long double w = 2 * half / ((1 - z * z) * pp * pp);
    rule.nodes[i] = static_cast<double>(mid - half * z);
    rule.nodes[m - 1 - i] = static_cast<double>(mid + half * z);
    rule.weights[i] = rule.weights[m - 1 - i] = static_cast<double>(w);
  }
  if (m % 2 == 1) rule.nodes[m / 2] = static_cast<double>(mid);
  return rule;
}

// Newton iteration on L_m^alpha with the classical asymptotic starting
// guesses, carried in extended precision.
inline QuadratureRule gauss_laguerre(int m, double alpha) {
  if (m > 128) throw ConfigError("gauss_laguerre: node count above 128 is unsupported");
  if (!(alpha > -1.0)) throw ConfigError("gauss_laguerre: alpha must exceed -1");
  QuadratureRule rule{QuadratureKind::gauss_laguerre, std::vector<double>(m), std::vector<double>(m),
                      std::vector<double>(m)};
  const long double a = alpha;
  std::vector<long double> x(m);
  long double z = 0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = (1 + a) * (3 + 0.92L * a) / (1 + 2.4L * m + 1.8L * a);
    } else if (i == 1) {
      z += (15 + 6.25L * a) / (1 + 0.9L * a + 2.5L * m);
    } else {
      const long double ai = i - 1;
      z += ((1 + 2.55L * ai) / (1.9L * ai) + 1.26L * ai * a / (1 + 3.5L * ai)) * (z - x[i - 2]) /
           (1 + 0.3L * a);
    }
    long double pp = 0, p2 = 0;
    bool converged = false;
    for (int iter = 0; iter < 200; ++iter) {
      long double p1 = 1;
      p2 = 0;
      for (int j = 1; j <= m; ++j) {
        const long double p3 = p2;
        p2 = p1;
        p1 = ((2 * j - 1 + a - z) * p2 - (j - 1 + a) * p3) / j;
      }
      pp = (m * p1 - (m + a) * p2) / z;
      const long double dz = p1 / pp;
      z -= dz;
      if (std::fabs(dz) <= 1e-17L * std::fmax(1.0L, std::fabs(z))) {
        converged = true;
        break;
      }
      // stalled at a few ulps of long double
      if (iter > 50 && std::fabs(dz) <= 1e-15L * std::fmax(1.0L, std::fabs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NumericalError("gauss_laguerre: Newton failed at node " + std::to_string(i));
    x[i] = z;
    // w = Gamma(m+alpha) / (m! ...) in log form; sign of pp*p2 is negative
    const long double log_w = std::lgamma(static_cast<long double>(a + m)) -
                              std::lgamma(static_cast<long double>(m)) - std::log(std::fabs(pp * m * p2));
    rule.nodes[i] = static_cast<double>(z);
    rule.weights[i] = static_cast<double>(std::exp(log_w));
    rule.exp_weights[i] = static_cast<double>(std::exp(log_w + z));
  }
  for (int i = 1; i < m; ++i) {
    if (!(rule.nodes[i] > rule.nodes[i - 1])) {
      throw NumericalError("gauss_laguerre: root finder produced non-increasing nodes at m=" +
                           std::to_string(m));
    }
  }
  long double total = 0;
  for (double w : rule.weights) total += w;
  const long double expected = std::tgamma(1.0L + a);
  if (std::fabs(total - expected) > 1e-12L * expected) {
    throw NumericalError("gauss_laguerre: weight sum check failed at m=" + std::to_string(m));
  }
  return rule;
}

inline QuadratureRule trapezoid(int m, double start, double period) {
  QuadratureRule rule{QuadratureKind::trapezoid, std::vector<double>(m), std::vector<double>(m, period / m), {}};
  for (int k = 0; k < m; ++k) rule.nodes[k] = start + period * k / m;
  return rule;
}

}  // namespace detail

/// Builds a quadrature rule with m nodes. Gauss-Laguerre is limited to
/// m <= 128; beyond that the smallest weights underflow.
inline QuadratureRule make_quadrature(QuadratureKind kind, int m, const QuadratureParams& params = {}) {
  if (m < 1) throw ConfigError("make_quadrature: need at least one node, got " + std::to_string(m));
  switch (kind) {
    case QuadratureKind::gauss_legendre:
      if (!(params.b > params.a)) throw ConfigError("make_quadrature: Gauss-Legendre needs a < b");
      return detail::gauss_legendre(m, params.a, params.b);
    case QuadratureKind::gauss_laguerre:
      return detail::gauss_laguerre(m, params.alpha);
    case QuadratureKind::trapezoid:
      if (!(params.period > 0)) throw ConfigError("make_quadrature: trapezoid needs a positive period");
      return detail::trapezoid(m, params.a, params.period);
  }
  throw ConfigError("make_quadrature: unknown kind");
}

/**
 * Rule for integrals over r in [0, inf) of integrands decaying like
 * e^{-decay r}: Gauss-Laguerre in t = decay * r with the e^{t} factor folded
 * into the weights, so callers pass the full integrand f(r).
 */
struct RadialRule {
  std::vector<double> r;
  std::vector<double> weights;

  RadialRule(int nodes, double decay) {
    if (!(decay > 0)) throw ConfigError("RadialRule: decay rate must be positive");
    const QuadratureRule base = make_quadrature(QuadratureKind::gauss_laguerre, nodes);
    r.resize(base.size());
    weights.resize(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      r[i] = base.nodes[i] / decay;
      weights[i] = base.exp_weights[i] / decay;
    }
  }

  template <class F>
  double integrate(F&& f) const {
    double sum = 0;
    for (std::size_t i = 0; i < r.size(); ++i) sum += weights[i] * f(r[i]);
    return sum;
  }
};

}  // namespace hcs
