// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcs Authors

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "hcs/errors.hpp"
#include "hcs/phase.hpp"
#include "hcs/specfun.hpp"
#include "hcs/weights.hpp"

namespace hcs {

using complex = std::complex<double>;

/// Ratio |c_{n_max}|^2 / sum |c_n|^2 a constructor output must stay under.
inline constexpr double tail_tolerance = 1e-16;

enum class TailPolicy {
  enforce,  ///< throw TruncationError when the tail rule fails
  allow,    ///< build the truncated expansion as requested
};

/// Truncated expansion sum_{n <= n_max} c_n |n>.
struct FockExpansion {
  std::vector<complex> coeffs;
  std::string label;
  std::string family;

  int n_max() const { return static_cast<int>(coeffs.size()) - 1; }

  double norm_squared() const {
    double sum = 0;
    for (const auto& c : coeffs) sum += std::norm(c);
    return sum;
  }
};

/// Either E_n = omega n or E_n = -omega / (n+1)^2.
class Spectrum {
 public:
  enum class Kind { oscillator, inverse_square };

  Spectrum(Kind kind, double omega) : kind_(kind), omega_(omega) {
    if (!(omega > 0)) throw DomainError("Spectrum: omega must be positive");
  }

  static Spectrum oscillator(double omega = 1.0) { return {Kind::oscillator, omega}; }
  static Spectrum inverse_square(double omega = 1.0) { return {Kind::inverse_square, omega}; }

  Kind kind() const { return kind_; }
  double omega() const { return omega_; }

  double energy(int n) const {
    if (n < 0) throw DomainError("Spectrum::energy: n must be >= 0");
    if (kind_ == Kind::oscillator) return omega_ * n;
    const double np1 = n + 1.0;
    return -omega_ / (np1 * np1);
  }

  /// -E_n t, formed in double-double.
  CoveringAngle evolution_phase(int n, double t) const {
    const CoveringAngle omega_t = CoveringAngle::product(omega_, t);
    if (kind_ == Kind::oscillator) return omega_t.scaled(-static_cast<double>(n));
    const double np1 = n + 1.0;
    return omega_t.divided(np1 * np1);
  }

 private:
  Kind kind_;
  double omega_;
};

namespace detail {

inline void check_tail(const std::vector<complex>& coeffs, const std::string& what) {
  if (coeffs.size() == 1 || std::all_of(coeffs.begin() + 1, coeffs.end(), [](complex c) { return c == 0.0; })) {
    return;  // vacuum-only expansions are exact at any truncation
  }
  double total = 0;
  for (const auto& c : coeffs) total += std::norm(c);
  if (std::norm(coeffs.back()) > tail_tolerance * total) {
    throw TruncationError(what + ": n_max=" + std::to_string(coeffs.size() - 1) +
                          " too small, |c_nmax|^2 / norm^2 = " + std::to_string(std::norm(coeffs.back()) / total));
  }
}

/// ln of M(r^2) r^n / sqrt(rho_n); -inf where the coefficient vanishes.
inline std::vector<double> log_radial_factors(const WeightFamily& family, double r, int n_max) {
  if (!(r >= 0)) throw DomainError("coherent-state radius must be >= 0");
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  if (n_max > family.moment_limit()) {
    throw ConfigError("n_max=" + std::to_string(n_max) + " exceeds the moments available in family '" +
                      family.name() + "'");
  }
  std::vector<double> out(n_max + 1, -std::numeric_limits<double>::infinity());
  const double half_log_m2 = 0.5 * std::log(family.m_squared(r * r));
  const double log_r = (r > 0) ? std::log(r) : 0.0;
  for (int n = 0; n <= n_max; ++n) {
    if (r == 0 && n > 0) break;
    out[n] = half_log_m2 + n * log_r - 0.5 * family.log_moment(n);
  }
  return out;
}

}  // namespace detail

/**
 * Smallest n_max whose expansion at radius r meets the tail rule, when each
 * shell carries an extra multiplicity (n+1)^{2 * degeneracy_power}.
 */
inline int adequate_n_max(const WeightFamily& family, double r, int degeneracy_power = 0, int floor = 0,
                          int ceiling = 128) {
  ceiling = std::min(ceiling, family.moment_limit());
  const auto logs = detail::log_radial_factors(family, r, ceiling);
  double total = 0;
  for (int n = 0; n <= ceiling; ++n) {
    const double w = std::exp(2.0 * logs[n]) * std::pow(n + 1.0, 2.0 * degeneracy_power);
    total += w;
    if (n >= floor && w <= tail_tolerance * total) return n;
  }
  throw TruncationError("adequate_n_max: no truncation up to " + std::to_string(ceiling) + " suffices for r=" +
                        std::to_string(r) + " in family '" + family.name() + "'");
}

/// Glauber state: c_n = e^{-|z|^2/2} z^n / sqrt(n!).
inline FockExpansion oscillator_cs(complex z, int n_max, TailPolicy policy = TailPolicy::enforce) {
  const double a = std::abs(z);
  const int required = std::max(16, static_cast<int>(std::ceil(a * a + 10.0 * a)));
  if (policy == TailPolicy::enforce && n_max < required) {
    throw TruncationError("oscillator_cs: n_max=" + std::to_string(n_max) + " below required " +
                          std::to_string(required) + " for |z|=" + std::to_string(a));
  }
  if (n_max < 0) throw DomainError("oscillator_cs: n_max must be >= 0");
  FockExpansion x{std::vector<complex>(n_max + 1), "oscillator z=(" + std::to_string(z.real()) + "," +
                                                       std::to_string(z.imag()) + ")",
                  "exponential"};
  const CoveringAngle arg = std::arg(z);
  x.coeffs[0] = std::exp(-0.5 * a * a);
  if (a > 0) {
    const double log_a = std::log(a);
    for (int n = 1; n <= n_max; ++n) {
      const double mag = std::exp(-0.5 * a * a + n * log_a - 0.5 * log_factorial(n));
      x.coeffs[n] = mag * arg.scaled(n).unit();
    }
  }
  if (policy == TailPolicy::enforce) detail::check_tail(x.coeffs, "oscillator_cs");
  return x;
}

/// Covering-space state |r, theta>: c_n = M(r^2) r^n e^{i n theta} / sqrt(rho_n).
inline FockExpansion generalized_cs(double r, CoveringAngle theta, const WeightFamily& family, int n_max,
                                    TailPolicy policy = TailPolicy::enforce) {
  const auto logs = detail::log_radial_factors(family, r, n_max);
  FockExpansion x{std::vector<complex>(n_max + 1),
                  "generalized r=" + std::to_string(r) + " theta=" + std::to_string(theta.value()), family.name()};
  for (int n = 0; n <= n_max; ++n) {
    if (std::isinf(logs[n])) continue;
    x.coeffs[n] = std::exp(logs[n]) * theta.scaled(n).unit();
  }
  if (policy == TailPolicy::enforce) detail::check_tail(x.coeffs, "generalized_cs");
  return x;
}

/// States for the spectrum -omega/(N+1)^2: c_n = M(s^2) s^n e^{i gamma/(n+1)^2} / sqrt(rho_n).
inline FockExpansion degen_cs(double s, CoveringAngle gamma, const WeightFamily& family, int n_max,
                              TailPolicy policy = TailPolicy::enforce) {
  const auto logs = detail::log_radial_factors(family, s, n_max);
  FockExpansion x{std::vector<complex>(n_max + 1),
                  "degenerate s=" + std::to_string(s) + " gamma=" + std::to_string(gamma.value()), family.name()};
  for (int n = 0; n <= n_max; ++n) {
    if (std::isinf(logs[n])) continue;
    const double np1 = n + 1.0;
    x.coeffs[n] = std::exp(logs[n]) * gamma.divided(np1 * np1).unit();
  }
  if (policy == TailPolicy::enforce) detail::check_tail(x.coeffs, "degen_cs");
  return x;
}

/// <a|b>, the shorter expansion padded with zeros.
inline complex overlap(const FockExpansion& a, const FockExpansion& b) {
  const std::size_t n = std::min(a.coeffs.size(), b.coeffs.size());
  complex sum = 0;
  for (std::size_t i = 0; i < n; ++i) sum += std::conj(a.coeffs[i]) * b.coeffs[i];
  return sum;
}

/// e^{-iHt} applied in the eigenbasis: c_n -> e^{-i E_n t} c_n.
inline FockExpansion evolve_spectral(const FockExpansion& x, const Spectrum& spec, double t) {
  FockExpansion out = x;
  for (int n = 0; n <= x.n_max(); ++n) out.coeffs[n] *= spec.evolution_phase(n, t).unit();
  return out;
}

struct OscillatorLabel {
  complex z;
};
struct GeneralizedLabel {
  double r;
  CoveringAngle theta;
};
struct DegenerateLabel {
  double s;
  CoveringAngle gamma;
};
using FockLabel = std::variant<OscillatorLabel, GeneralizedLabel, DegenerateLabel>;

/// Builds the state named by a label. OscillatorLabel ignores the family.
inline FockExpansion make_state(const FockLabel& label, const WeightFamily& family, int n_max,
                                TailPolicy policy = TailPolicy::enforce) {
  return std::visit(
      [&](const auto& l) -> FockExpansion {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, OscillatorLabel>) return oscillator_cs(l.z, n_max, policy);
        if constexpr (std::is_same_v<L, GeneralizedLabel>) return generalized_cs(l.r, l.theta, family, n_max, policy);
        if constexpr (std::is_same_v<L, DegenerateLabel>) return degen_cs(l.s, l.gamma, family, n_max, policy);
      },
      label);
}

/**
 * The label a state moves to under e^{-iHt}: z -> e^{-i omega t} z and
 * theta -> theta - omega t for the oscillator spectrum, gamma -> gamma +
 * omega t for the inverse-square spectrum. Other pairings have no label
 * shift and are rejected.
 */
inline FockLabel shift_label(const FockLabel& label, const Spectrum& spec, double t) {
  const CoveringAngle omega_t = CoveringAngle::product(spec.omega(), t);
  const bool osc = spec.kind() == Spectrum::Kind::oscillator;
  if (const auto* l = std::get_if<OscillatorLabel>(&label); l && osc) {
    return OscillatorLabel{(-omega_t).unit() * l->z};
  }
  if (const auto* l = std::get_if<GeneralizedLabel>(&label); l && osc) {
    return GeneralizedLabel{l->r, l->theta - omega_t};
  }
  if (const auto* l = std::get_if<DegenerateLabel>(&label); l && !osc) {
    return DegenerateLabel{l->s, l->gamma + omega_t};
  }
  throw ConfigError("shift_label: this label family is not stable under the given spectrum");
}

/// max_n |(e^{-iHt} x)_n - (x at the shifted label)_n|, raw coefficients.
inline double stability_residual(const FockLabel& label, const WeightFamily& family, const Spectrum& spec, double t,
                                 int n_max) {
  const FockExpansion evolved = evolve_spectral(make_state(label, family, n_max), spec, t);
  const FockExpansion shifted = make_state(shift_label(label, spec, t), family, n_max);
  double worst = 0;
  for (int n = 0; n <= n_max; ++n) worst = std::max(worst, std::abs(evolved.coeffs[n] - shifted.coeffs[n]));
  return worst;
}

enum class PhaseAverage {
  periodic,  ///< exact integral over one period of an integer-frequency phase
  covering,  ///< (1/2G) int_{-G}^{G} over frequencies 1/(n+1)^2
};

inline double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

/// Difference of the inverse-square frequencies 1/(n+1)^2 - 1/(n'+1)^2.
inline double inverse_square_gap(int n, int np) {
  const double a = n + 1.0, b = np + 1.0;
  return 1.0 / (a * a) - 1.0 / (b * b);
}

/// Radial factor int rho(u) u^{(n+n')/2} du / sqrt(rho_n rho_n') for n, n' <= n_max.
inline std::vector<double> radial_overlap_matrix(const WeightFamily& family, int n_max, int radial_nodes) {
  const int dim = n_max + 1;
  std::vector<double> out(static_cast<std::size_t>(dim) * dim);
  for (int n = 0; n <= n_max; ++n) {
    for (int np = n; np <= n_max; ++np) {
      const double integral = family.quadrature_half_moment(n + np, radial_nodes);
      const double v = std::exp(std::log(integral) - 0.5 * (family.log_moment(n) + family.log_moment(np)));
      out[n * dim + np] = out[np * dim + n] = v;
    }
  }
  return out;
}

struct ResolutionReport {
  int dimension = 0;
  std::vector<double> matrix;  ///< row-major, dimension x dimension
  double max_diagonal_deviation = 0;
  double max_off_diagonal = 0;
  /// max over off-diagonal pairs of the bound |radial| / (G |gap|).
  double max_certificate = 0;
  /// every measured off-diagonal entry sits below its own bound
  bool certificate_holds = true;
  double gamma_window = 0;
};

/**
 * Assembles O_{nn'} = int <n|x><x|n'> dnu over the truncated basis.
 *
 * The phase integral is never sampled: for the periodic measure it is
 * delta_{nn'} exactly; on the covering space the window average is
 * sinc(G * gap_{nn'}) in closed form. Only the radial factor goes through
 * quadrature.
 */
inline ResolutionReport resolution_check_1d(const WeightFamily& family, PhaseAverage phase, int n_max,
                                            int radial_nodes, double gamma_window = 0.0) {
  if (n_max < 0) throw ConfigError("resolution_check_1d: n_max must be >= 0");
  if (phase == PhaseAverage::covering && !(gamma_window > 0)) {
    throw ConfigError("resolution_check_1d: covering-space average needs a positive window");
  }
  ResolutionReport rep;
  rep.dimension = n_max + 1;
  rep.gamma_window = gamma_window;
  const auto radial = radial_overlap_matrix(family, n_max, radial_nodes);
  const int dim = rep.dimension;
  rep.matrix.assign(static_cast<std::size_t>(dim) * dim, 0.0);
  for (int n = 0; n <= n_max; ++n) {
    for (int np = 0; np <= n_max; ++np) {
      const double r = radial[n * dim + np];
      if (n == np) {
        rep.matrix[n * dim + np] = r;
        rep.max_diagonal_deviation = std::max(rep.max_diagonal_deviation, std::fabs(r - 1.0));
        continue;
      }
      if (phase == PhaseAverage::periodic) continue;
      const double gap = inverse_square_gap(n, np);
      const double value = r * sinc(gamma_window * gap);
      const double certificate = std::fabs(r) / (gamma_window * std::fabs(gap));
      rep.matrix[n * dim + np] = value;
      rep.max_off_diagonal = std::max(rep.max_off_diagonal, std::fabs(value));
      rep.max_certificate = std::max(rep.max_certificate, certificate);
      if (std::fabs(value) > certificate * (1 + 1e-12)) rep.certificate_holds = false;
    }
  }
  return rep;
}

}  // namespace hcs
