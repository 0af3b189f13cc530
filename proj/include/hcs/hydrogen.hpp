// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcs Authors

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "hcs/angular.hpp"
#include "hcs/errors.hpp"
#include "hcs/fock1d.hpp"
#include "hcs/phase.hpp"
#include "hcs/specfun.hpp"
#include "hcs/weights.hpp"

namespace hcs {

/// Bound-state energy E_n = -omega / (n+1)^2 (0-based n). In atomic units
/// omega = 1; physically omega = m e^4 / 2.
inline double hydrogen_spectrum(double omega, int n) {
  if (!(omega > 0)) throw DomainError("hydrogen_spectrum: omega must be positive");
  if (n < 0) throw DomainError("hydrogen_spectrum: n must be >= 0");
  const double np1 = n + 1.0;
  return -omega / (np1 * np1);
}

/// The five real labels (s, gamma, theta_bar, phi_bar, psi_bar). gamma lives
/// on the covering space and is unbounded. At s = 0 every omega_bar names
/// the same ray.
struct HydrogenLabel {
  double s = 0;
  CoveringAngle gamma;
  EulerAngles omega_bar;

  HydrogenLabel shifted(double omega, double t) const {
    return {s, gamma + CoveringAngle::product(omega, t), omega_bar};
  }
};

/// Coefficients over (n, l, m) for all shells n <= n_max, flat index
/// BasisIndex::flat().
struct HydrogenExpansion {
  int n_max = 0;
  std::vector<std::complex<double>> coeffs;
  std::string family;
  HydrogenLabel label;

  std::complex<double> coeff(const BasisIndex& idx) const { return coeffs.at(idx.flat()); }

  double norm_squared() const {
    double sum = 0;
    for (const auto& c : coeffs) sum += std::norm(c);
    return sum;
  }

  /// sum_{l,m} |c_{nlm}|^2 for one shell.
  double shell_weight(int n) const {
    const int begin = BasisIndex(n, 0, 0).flat();
    double sum = 0;
    for (int i = 0; i < (n + 1) * (n + 1); ++i) sum += std::norm(coeffs[begin + i]);
    return sum;
  }
};

/**
 * |s, gamma, omega_bar> = M(s^2) sum_n s^n e^{i gamma/(n+1)^2} / sqrt(rho_n) |n, omega_bar>
 * truncated at n_max.
 *
 * The tail rule weighs the last shell by its (n+1)^2 multiplicity.
 */
inline HydrogenExpansion hydrogen_cs(const HydrogenLabel& label, const WeightFamily& family, int n_max,
                                     TailPolicy policy = TailPolicy::enforce) {
  const auto logs = detail::log_radial_factors(family, label.s, n_max);
  const auto angular = angular_cs(n_max, label.omega_bar);
  HydrogenExpansion x{n_max, std::vector<std::complex<double>>(shells_dimension(n_max)), family.name(), label};
  double total = 0, last = 0;
  for (int n = 0; n <= n_max; ++n) {
    if (std::isinf(logs[n])) continue;
    const double np1 = n + 1.0;
    const std::complex<double> shell = std::exp(logs[n]) * label.gamma.divided(np1 * np1).unit();
    const int begin = BasisIndex(n, 0, 0).flat();
    for (int i = 0; i < (n + 1) * (n + 1); ++i) x.coeffs[begin + i] = shell * angular.coeffs[i];
    const double w = std::exp(2.0 * logs[n]) * np1 * np1;
    total += w;
    if (n == n_max) last = w;
  }
  // s = 0 is exactly the n = 0 shell at any truncation
  if (policy == TailPolicy::enforce && label.s > 0 && last > tail_tolerance * total) {
    throw TruncationError("hydrogen_cs: n_max=" + std::to_string(n_max) + " too small for s=" +
                          std::to_string(label.s) + " in family '" + family.name() + "'");
  }
  return x;
}

/// e^{-iHt}: shell n picks up e^{i omega t/(n+1)^2}. H is diagonal on shells
/// (N|n, omega_bar> = n|n, omega_bar>).
inline HydrogenExpansion evolve_hydrogen(const HydrogenExpansion& x, double omega, double t) {
  if (!(omega > 0)) throw DomainError("evolve_hydrogen: omega must be positive");
  HydrogenExpansion out = x;
  const CoveringAngle omega_t = CoveringAngle::product(omega, t);
  for (int n = 0; n <= x.n_max; ++n) {
    const double np1 = n + 1.0;
    const auto phase = omega_t.divided(np1 * np1).unit();
    const int begin = BasisIndex(n, 0, 0).flat();
    for (int i = 0; i < (n + 1) * (n + 1); ++i) out.coeffs[begin + i] *= phase;
  }
  out.label = x.label.shifted(omega, t);
  return out;
}

/// max |evolve(cs(L), t) - cs(L shifted by omega t)| over all coefficients.
inline double hydrogen_stability_residual(const HydrogenLabel& label, const WeightFamily& family, double omega,
                                          double t, int n_max) {
  const auto evolved = evolve_hydrogen(hydrogen_cs(label, family, n_max), omega, t);
  const auto shifted = hydrogen_cs(label.shifted(omega, t), family, n_max);
  double worst = 0;
  for (std::size_t i = 0; i < evolved.coeffs.size(); ++i) {
    worst = std::max(worst, std::abs(evolved.coeffs[i] - shifted.coeffs[i]));
  }
  return worst;
}

/**
 * sqrt(M^2(s^2) sum_{n<=n_max} s^{2n} (n+1)^2 / rho_n), checked against the
 * coefficient sum of the constructed state to 1e-10.
 */
inline double state_norm(const HydrogenLabel& label, const WeightFamily& family, int n_max,
                         TailPolicy policy = TailPolicy::enforce) {
  const auto logs = detail::log_radial_factors(family, label.s, n_max);
  double closed = 0;
  for (int n = 0; n <= n_max; ++n) {
    if (!std::isinf(logs[n])) closed += std::exp(2.0 * logs[n]) * (n + 1.0) * (n + 1.0);
  }
  const double brute = hydrogen_cs(label, family, n_max, policy).norm_squared();
  if (std::fabs(brute - closed) > 1e-10 * closed) {
    throw NumericalError("state_norm: closed sum " + std::to_string(closed) + " disagrees with coefficient sum " +
                         std::to_string(brute));
  }
  return std::sqrt(closed);
}

struct HydrogenResolutionReport {
  int n_max = 0;
  int dimension = 0;
  double gamma_window = 0;
  double max_diagonal_deviation = 0;
  double max_within_shell_off_diagonal = 0;
  double max_cross_shell = 0;
  double max_certificate = 0;
  bool certificate_holds = true;
  double angular_max_deviation = 0;
  int angular_rank = 0;
};

/**
 * Resolution of unity over (s, gamma, omega_bar) in the (n, l, m) basis.
 *
 * The operator factorizes into radial x window-average x angular pieces:
 *   O = R_{nn'} sinc(G gap_{nn'}) A_{(lm),(l'm')},
 * with R from radial quadrature, the gamma window in closed form and A from
 * the exact angular Gram rule (computed, not assumed to be the identity).
 * Angular coefficients depend on (l, m) only, so A at shell n_max covers
 * every shell pair.
 */
inline HydrogenResolutionReport hydrogen_resolution_check(const WeightFamily& family, int n_max, int radial_nodes,
                                                          double gamma_window, int theta_nodes, int phi_nodes,
                                                          int psi_nodes) {
  if (n_max < 0) throw ConfigError("hydrogen_resolution_check: n_max must be >= 0");
  if (!(gamma_window > 0)) throw ConfigError("hydrogen_resolution_check: gamma window must be positive");
  const auto angular = angular_resolution_check(n_max, theta_nodes, phi_nodes, psi_nodes);
  const auto radial = radial_overlap_matrix(family, n_max, radial_nodes);
  const int shells = n_max + 1;
  const int adim = angular.dimension;

  HydrogenResolutionReport rep;
  rep.n_max = n_max;
  rep.dimension = shells_dimension(n_max);
  rep.gamma_window = gamma_window;
  rep.angular_max_deviation = angular.max_deviation;
  rep.angular_rank = angular.rank;

  for (int n = 0; n < shells; ++n) {
    for (int np = 0; np < shells; ++np) {
      const double r = radial[n * shells + np];
      const double gap = inverse_square_gap(n, np);
      const double window = sinc(gamma_window * gap);
      for (int i = 0; i < (n + 1) * (n + 1); ++i) {
        for (int j = 0; j < (np + 1) * (np + 1); ++j) {
          const double value = std::abs(r * window * angular.gram[i * adim + j]);
          if (n == np) {
            if (i == j) {
              const double diag = std::abs(r * angular.gram[i * adim + j] - 1.0);
              rep.max_diagonal_deviation = std::max(rep.max_diagonal_deviation, diag);
            } else {
              rep.max_within_shell_off_diagonal = std::max(rep.max_within_shell_off_diagonal, value);
            }
            continue;
          }
          const double certificate = std::fabs(r) * std::abs(angular.gram[i * adim + j]) /
                                     (gamma_window * std::fabs(gap));
          rep.max_cross_shell = std::max(rep.max_cross_shell, value);
          rep.max_certificate = std::max(rep.max_certificate, certificate);
          if (value > certificate * (1 + 1e-12)) rep.certificate_holds = false;
        }
      }
    }
  }
  return rep;
}

}  // namespace hcs
