// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcs Authors

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "hcs/errors.hpp"
#include "hcs/parallel.hpp"
#include "hcs/quadrature.hpp"
#include "hcs/specfun.hpp"

namespace hcs {

/// Label (theta_bar, phi_bar, psi_bar) of an angular-momentum coherent state.
/// phi_bar and psi_bar are stored modulo 2 pi.
class EulerAngles {
 public:
  EulerAngles() = default;
  EulerAngles(double theta_bar, double phi_bar, double psi_bar)
      : theta_(theta_bar), phi_(wrap(phi_bar)), psi_(wrap(psi_bar)) {
    if (!(theta_bar >= 0 && theta_bar <= std::numbers::pi)) {
      throw DomainError("EulerAngles: theta_bar must lie in [0, pi], got " + std::to_string(theta_bar));
    }
  }

  double theta_bar() const { return theta_; }
  double phi_bar() const { return phi_; }
  double psi_bar() const { return psi_; }

 private:
  static double wrap(double a) {
    if (!std::isfinite(a)) throw DomainError("EulerAngles: non-finite angle");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(a, two_pi);
    if (r < 0) r += two_pi;
    return r >= two_pi ? 0.0 : r;
  }

  double theta_ = 0;
  double phi_ = 0;
  double psi_ = 0;
};

/// Coefficients over one shell, indexed (l ascending, m ascending); flat
/// index l^2 + (m + l).
struct ShellExpansion {
  int n = 0;
  std::vector<std::complex<double>> coeffs;

  std::complex<double> coeff(int ell, int m) const { return coeffs[ell * ell + m + ell]; }
  int dimension() const { return static_cast<int>(coeffs.size()); }
};

/// Coefficient of |n+1 l m> in the shell-n angular-momentum coherent state.
/// It depends on (l, m) only, never on the shell it sits in.
inline std::complex<double> angular_coefficient(int ell, int m, const EulerAngles& omega) {
  const double half = 0.5 * omega.theta_bar();
  const double mag = sqrt_binomial_weight(ell, m) * std::pow(std::sin(half), ell - m) *
                     std::pow(std::cos(half), ell + m) * std::sqrt(2.0 * ell + 1.0);
  return std::polar(mag, -(m * omega.phi_bar() + ell * omega.psi_bar()));
}

/**
 * The shell-n state sum_{l<=n} sum_m sqrt(C(2l, l+m)) sin^{l-m}(theta/2)
 * cos^{l+m}(theta/2) e^{-i(m phi + l psi)} sqrt(2l+1) |n+1 l m>.
 *
 * Its squared norm is (n+1)^2, not 1: the states are used unnormalized.
 */
inline ShellExpansion angular_cs(int n, const EulerAngles& omega) {
  if (n < 0) throw DomainError("angular_cs: n must be >= 0");
  ShellExpansion out{n, std::vector<std::complex<double>>((n + 1) * (n + 1))};
  for (int ell = 0; ell <= n; ++ell) {
    for (int m = -ell; m <= ell; ++m) out.coeffs[ell * ell + m + ell] = angular_coefficient(ell, m, omega);
  }
  return out;
}

inline double shell_norm_squared(int n, const EulerAngles& omega) {
  double sum = 0;
  for (const auto& c : angular_cs(n, omega).coeffs) sum += std::norm(c);
  return sum;
}

namespace detail {

/// Numerical rank by Gaussian elimination with partial pivoting.
inline int numeric_rank(std::vector<std::complex<double>> a, int dim, double tol = 1e-8) {
  int rank = 0;
  for (int col = 0; col < dim && rank < dim; ++col) {
    int pivot = rank;
    for (int r = rank + 1; r < dim; ++r) {
      if (std::abs(a[r * dim + col]) > std::abs(a[pivot * dim + col])) pivot = r;
    }
    if (std::abs(a[pivot * dim + col]) <= tol) continue;
    for (int c = 0; c < dim; ++c) std::swap(a[rank * dim + c], a[pivot * dim + c]);
    for (int r = rank + 1; r < dim; ++r) {
      const auto f = a[r * dim + col] / a[rank * dim + col];
      for (int c = col; c < dim; ++c) a[r * dim + c] -= f * a[rank * dim + c];
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

struct AngularResolutionReport {
  int n = 0;
  int dimension = 0;
  std::vector<std::complex<double>> gram;  ///< row-major
  double max_deviation = 0;                ///< max |G - I| entry
  int rank = 0;
};

/// Smallest node count per angle for which the shell-n Gram quadrature is exact.
constexpr int angular_node_threshold(int n) { return 2 * n + 1; }

/**
 * Gram matrix G = int a a^H dOmega over the shell-n coefficients, with
 * dOmega = sin(theta) dtheta dphi dpsi / 8 pi^2, on a tensor rule:
 * Gauss-Legendre in cos(theta), periodic trapezoid in phi and psi. The
 * integrand is a trigonometric polynomial, so at or above the node
 * thresholds the rule is exact and G should be the identity to rounding.
 */
inline AngularResolutionReport angular_resolution_check(int n, int theta_nodes, int phi_nodes, int psi_nodes) {
  if (n < 0) throw ConfigError("angular_resolution_check: n must be >= 0");
  const int need = angular_node_threshold(n);
  if (theta_nodes < need || phi_nodes < need || psi_nodes < need) {
    throw ConfigError("angular_resolution_check: shell " + std::to_string(n) + " needs at least " +
                      std::to_string(need) + " nodes per angle, got (" + std::to_string(theta_nodes) + ", " +
                      std::to_string(phi_nodes) + ", " + std::to_string(psi_nodes) + ")");
  }
  const auto xs = make_quadrature(QuadratureKind::gauss_legendre, theta_nodes);
  const auto phis = make_quadrature(QuadratureKind::trapezoid, phi_nodes, {.a = 0.0});
  const auto psis = make_quadrature(QuadratureKind::trapezoid, psi_nodes, {.a = 0.0});
  const double norm = 1.0 / (8.0 * std::numbers::pi * std::numbers::pi);

  const int dim = (n + 1) * (n + 1);
  std::vector<double> node_weight;
  std::vector<std::complex<double>> node_coeffs;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double theta = std::acos(std::clamp(xs.nodes[i], -1.0, 1.0));
    for (std::size_t j = 0; j < phis.size(); ++j) {
      for (std::size_t k = 0; k < psis.size(); ++k) {
        node_weight.push_back(xs.weights[i] * phis.weights[j] * psis.weights[k] * norm);
        const auto a = angular_cs(n, EulerAngles(theta, phis.nodes[j], psis.nodes[k]));
        node_coeffs.insert(node_coeffs.end(), a.coeffs.begin(), a.coeffs.end());
      }
    }
  }

  AngularResolutionReport rep{n, dim, std::vector<std::complex<double>>(static_cast<std::size_t>(dim) * dim), 0.0, 0};
  // Hermitian: fill the upper triangle, mirror the rest
  parallel_for(static_cast<std::size_t>(dim), [&](std::size_t row) {
    for (int col = static_cast<int>(row); col < dim; ++col) {
      std::complex<double> sum = 0;
      for (std::size_t q = 0; q < node_weight.size(); ++q) {
        sum += node_weight[q] * node_coeffs[q * dim + row] * std::conj(node_coeffs[q * dim + col]);
      }
      rep.gram[row * dim + col] = sum;
    }
  });
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < i; ++j) rep.gram[i * dim + j] = std::conj(rep.gram[j * dim + i]);
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      rep.max_deviation = std::max(rep.max_deviation, std::abs(rep.gram[i * dim + j] - (i == j ? 1.0 : 0.0)));
    }
  }
  rep.rank = detail::numeric_rank(rep.gram, dim);
  return rep;
}

}  // namespace hcs
