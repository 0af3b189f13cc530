// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcs Authors

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <string>

#include "hcs/errors.hpp"

/// Special functions for hydrogen bound states. Radial functions use atomic
/// units (Bohr radius 1, omega = 1); the shell index n is 0-based, so shell n
/// holds the states of principal quantum number n + 1.
namespace hcs {

/// Hydrogen bound-state label (n, l, m) with 0 <= l <= n and |m| <= l.
struct BasisIndex {
  int n;
  int ell;
  int m;

  BasisIndex(int n_, int ell_, int m_) : n(n_), ell(ell_), m(m_) {
    if (n < 0 || ell < 0 || ell > n || std::abs(m) > ell) {
      throw DomainError("BasisIndex: need 0 <= l <= n and |m| <= l, got (" + std::to_string(n) +
                        ", " + std::to_string(ell) + ", " + std::to_string(m) + ")");
    }
  }

  /// Traditional principal quantum number.
  int principal() const { return n + 1; }

  /// Position of (l, m) inside its shell: l^2 + (m + l).
  int shell_offset() const { return ell * ell + m + ell; }

  /// Position in a flat vector holding shells 0, 1, ... in order.
  int flat() const { return n * (n + 1) * (2 * n + 1) / 6 + shell_offset(); }

  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

/// Number of basis states in shells 0..n_max inclusive.
constexpr int shells_dimension(int n_max) { return (n_max + 1) * (n_max + 2) * (2 * n_max + 3) / 6; }

/// ln(k!). Exact products for k <= 20, log-gamma beyond.
inline double log_factorial(int k) {
  if (k < 0) throw DomainError("log_factorial: negative argument " + std::to_string(k));
  if (k <= 20) {
    std::uint64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
    return static_cast<double>(std::log(static_cast<long double>(f)));
  }
  return std::lgamma(static_cast<double>(k) + 1.0);
}

/// [(2l)! / ((l+m)! (l-m)!)]^{1/2}
inline double sqrt_binomial_weight(int ell, int m) {
  if (ell < 0 || std::abs(m) > ell) {
    throw DomainError("sqrt_binomial_weight: need |m| <= l, got l=" + std::to_string(ell) +
                      " m=" + std::to_string(m));
  }
  const int a = std::abs(m);  // fixed subtraction order keeps the weight exactly even in m
  return std::exp(0.5 * (log_factorial(2 * ell) - log_factorial(ell + a) - log_factorial(ell - a)));
}

/**
 * Orthonormal spherical harmonic Y_lm(theta, phi) with the Condon-Shortley
 * phase, Y_{l,-m} = (-1)^m conj(Y_lm).
 *
 * Uses the fully normalized associated Legendre recurrence, which stays
 * O(1) for every l, m.
 */
template <std::floating_point Real = double>
std::complex<Real> spherical_harmonic(int ell, int m, Real theta, Real phi) {
  if (ell < 0 || std::abs(m) > ell) {
    throw DomainError("spherical_harmonic: need |m| <= l, got l=" + std::to_string(ell) +
                      " m=" + std::to_string(m));
  }
  const int am = std::abs(m);
  const Real x = std::cos(theta);
  const Real sx = std::sin(theta);

  Real pmm = Real(1) / std::sqrt(Real(4) * std::numbers::pi_v<Real>);
  for (int i = 1; i <= am; ++i) pmm *= -std::sqrt(Real(2 * i + 1) / Real(2 * i)) * sx;

  Real plm = pmm;
  if (ell > am) {
    Real prev = pmm;
    Real cur = x * std::sqrt(Real(2 * am + 3)) * pmm;
    for (int l = am + 2; l <= ell; ++l) {
      const Real a = std::sqrt(Real(4 * l * l - 1) / Real(l * l - am * am));
      const Real b = std::sqrt(Real((l - 1) * (l - 1) - am * am) / Real(4 * (l - 1) * (l - 1) - 1));
      const Real next = a * (x * cur - b * prev);
      prev = cur;
      cur = next;
    }
    plm = cur;
  }

  const std::complex<Real> y = std::polar(plm, Real(am) * phi);
  if (m >= 0) return y;
  return (am % 2 == 0) ? std::conj(y) : -std::conj(y);
}

/**
 * Terminating confluent hypergeometric series F(-n+l, 2l+2, z), a polynomial
 * of degree n - l.
 *
 * Terms are formed by forward recurrence, term_j = term_{j-1} *
 * (l-n+j-1) / ((2l+1+j) j) * z, so no factorial is ever materialized.
 */
template <std::floating_point Real = double>
Real confluent_polynomial(int n, int ell, Real z) {
  if (ell < 0 || ell > n) throw DomainError("confluent_polynomial: need 0 <= l <= n");
  Real term = 1;
  Real sum = 1;
  for (int j = 1; j <= n - ell; ++j) {
    term *= Real(ell - n + j - 1) / Real((2 * ell + 1 + j) * j) * z;
    sum += term;
  }
  return sum;
}

/// d/dz of confluent_polynomial, by the same term recurrence.
template <std::floating_point Real = double>
Real confluent_polynomial_derivative(int n, int ell, Real z) {
  if (ell < 0 || ell > n) throw DomainError("confluent_polynomial_derivative: need 0 <= l <= n");
  if (n == ell) return 0;
  // dterm_j = j a_j z^{j-1}
  Real dterm = Real(ell - n) / Real(2 * ell + 2);
  Real sum = dterm;
  for (int j = 2; j <= n - ell; ++j) {
    dterm *= Real(ell - n + j - 1) / Real((2 * ell + 1 + j) * (j - 1)) * z;
    sum += dterm;
  }
  return sum;
}

/// ln N_{n+1}^l, the radial normalization in log form.
inline double log_radial_normalization(int n, int ell) {
  if (ell < 0 || ell > n) throw DomainError("radial_normalization: need 0 <= l <= n");
  const double np1 = n + 1.0;
  return -log_factorial(2 * ell + 1) +
         0.5 * (log_factorial(n + ell + 1) - std::log(2.0 * np1) - log_factorial(n - ell)) +
         1.5 * std::log(2.0 / np1);
}

/// N_{n+1}^l = 1/(2l+1)! sqrt((n+l+1)! / (2(n+1)(n-l)!)) (2/(n+1))^{3/2}
inline double radial_normalization(int n, int ell) { return std::exp(log_radial_normalization(n, ell)); }

/**
 * Hydrogen radial function u_{n+1}^l(r) = N [2r/(n+1)]^l F(-n+l, 2l+2, 2r/(n+1)) e^{-r/(n+1)}.
 * Orthonormal under the measure r^2 dr.
 */
inline double radial_eigenfunction(int n, int ell, double r) {
  if (r < 0) throw DomainError("radial_eigenfunction: r must be >= 0");
  if (ell < 0 || ell > n) throw DomainError("radial_eigenfunction: need 0 <= l <= n");
  const double x = 2.0 * r / (n + 1.0);
  const double poly = confluent_polynomial(n, ell, x);
  if (x == 0.0) return ell == 0 ? radial_normalization(n, ell) * poly : 0.0;
  return std::exp(log_radial_normalization(n, ell) + ell * std::log(x) - 0.5 * x) * poly;
}

/// d/dr of radial_eigenfunction, differentiated analytically term by term.
inline double radial_eigenfunction_derivative(int n, int ell, double r) {
  if (r < 0) throw DomainError("radial_eigenfunction_derivative: r must be >= 0");
  if (ell < 0 || ell > n) throw DomainError("radial_eigenfunction_derivative: need 0 <= l <= n");
  const double dx_dr = 2.0 / (n + 1.0);
  const double x = dx_dr * r;
  const double f = confluent_polynomial(n, ell, x);
  const double df = confluent_polynomial_derivative(n, ell, x);
  if (x == 0.0) {
    const double norm = radial_normalization(n, ell);
    if (ell == 0) return dx_dr * norm * (df - 0.5 * f);
    if (ell == 1) return dx_dr * norm * f;
    return 0.0;
  }
  const double scale = std::exp(log_radial_normalization(n, ell) + ell * std::log(x) - 0.5 * x);
  return dx_dr * scale * (ell / x * f + df - 0.5 * f);
}

}  // namespace hcs
