// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcs Authors

#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "hcs/angular.hpp"
#include "hcs/errors.hpp"
#include "hcs/fock1d.hpp"
#include "hcs/hydrogen.hpp"
#include "hcs/parallel.hpp"
#include "hcs/quadrature.hpp"
#include "hcs/specfun.hpp"

namespace hcs {

/// Sampling grid in spherical coordinates.
struct GridSpec {
  std::vector<double> r;
  std::vector<double> theta;
  std::vector<double> phi;

  void validate() const {
    if (r.empty() || theta.empty() || phi.empty()) throw ConfigError("GridSpec: every axis needs at least one value");
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (!(r[i] > 0)) throw ConfigError("GridSpec: r values must be positive");
      if (i > 0 && !(r[i] > r[i - 1])) throw ConfigError("GridSpec: r must be strictly increasing");
    }
    for (double t : theta) {
      if (!(t >= 0 && t <= std::numbers::pi)) throw ConfigError("GridSpec: theta values must lie in [0, pi]");
    }
    for (double p : phi) {
      if (!(p >= 0 && p < 2 * std::numbers::pi)) throw ConfigError("GridSpec: phi values must lie in [0, 2 pi)");
    }
  }
};

/// <r theta phi | n+1 l m> = u_{n+1}^l(r) Y_lm(theta, phi).
inline std::complex<double> eval_eigenstate(const BasisIndex& idx, double r, double theta, double phi) {
  return radial_eigenfunction(idx.n, idx.ell, r) * spherical_harmonic(idx.ell, idx.m, theta, phi);
}

/// <r theta phi | n, omega_bar> = sum_{l,m} a_lm(omega_bar) u_{n+1}^l(r) Y_lm(theta, phi).
inline std::complex<double> eval_angular_cs_position(int n, const EulerAngles& omega, double r, double theta,
                                                     double phi) {
  const auto a = angular_cs(n, omega);
  std::complex<double> sum = 0;
  for (int ell = 0; ell <= n; ++ell) {
    const double u = radial_eigenfunction(n, ell, r);
    for (int m = -ell; m <= ell; ++m) sum += a.coeff(ell, m) * u * spherical_harmonic(ell, m, theta, phi);
  }
  return sum;
}

namespace detail {

/// Channel radial functions f_lm(r) = sum_{n>=l} c_{nlm} u_{n+1}^l(r), and
/// their r-derivatives, indexed l^2 + m + l.
struct ChannelValues {
  std::vector<std::complex<double>> f;
  std::vector<std::complex<double>> df;
};

inline ChannelValues channel_values(const HydrogenExpansion& x, double r, bool with_derivative) {
  const int lmax = x.n_max;
  ChannelValues out{std::vector<std::complex<double>>((lmax + 1) * (lmax + 1)), {}};
  if (with_derivative) out.df.assign(out.f.size(), 0.0);
  for (int n = 0; n <= x.n_max; ++n) {
    for (int ell = 0; ell <= n; ++ell) {
      const double u = radial_eigenfunction(n, ell, r);
      const double du = with_derivative ? radial_eigenfunction_derivative(n, ell, r) : 0.0;
      for (int m = -ell; m <= ell; ++m) {
        const auto c = x.coeffs[BasisIndex(n, ell, m).flat()];
        const int ch = ell * ell + m + ell;
        out.f[ch] += c * u;
        if (with_derivative) out.df[ch] += c * du;
      }
    }
  }
  return out;
}

inline std::vector<std::complex<double>> harmonics_table(int lmax, double theta, double phi) {
  std::vector<std::complex<double>> y((lmax + 1) * (lmax + 1));
  for (int ell = 0; ell <= lmax; ++ell) {
    for (int m = -ell; m <= ell; ++m) y[ell * ell + m + ell] = spherical_harmonic(ell, m, theta, phi);
  }
  return y;
}

inline std::complex<double> combine(const std::vector<std::complex<double>>& f,
                                    const std::vector<std::complex<double>>& y) {
  std::complex<double> sum = 0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * y[i];
  return sum;
}

}  // namespace detail

/// <r theta phi | x> for a hydrogen expansion (linear in the coefficients).
inline std::complex<double> eval_hydrogen_cs_position(const HydrogenExpansion& x, double r, double theta,
                                                      double phi) {
  if (r < 0) throw DomainError("eval_hydrogen_cs_position: r must be >= 0");
  return detail::combine(detail::channel_values(x, r, false).f, detail::harmonics_table(x.n_max, theta, phi));
}

/// Default radial decay for rules covering every shell up to n_max: the
/// slowest density |u_{n_max+1}|^2 falls like e^{-2r/(n_max+1)}.
inline double radial_decay(int n_max) { return 2.0 / (n_max + 1.0); }

/**
 * int |psi|^2 d^3r by direct quadrature of the position-space wavefunction:
 * Gauss-Laguerre in r, Gauss-Legendre in cos(theta) and a periodic
 * trapezoid in phi, the angular rules sized to be exact for shells <= n_max.
 */
inline double position_norm_squared(const HydrogenExpansion& x, int radial_nodes = 96) {
  const RadialRule radial(radial_nodes, radial_decay(x.n_max));
  const auto xs = make_quadrature(QuadratureKind::gauss_legendre, x.n_max + 2);
  const auto phis = make_quadrature(QuadratureKind::trapezoid, 2 * x.n_max + 2, {.a = 0.0});

  std::vector<std::vector<std::complex<double>>> harmonics;
  std::vector<double> angular_weights;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < phis.size(); ++j) {
      harmonics.push_back(detail::harmonics_table(x.n_max, std::acos(xs.nodes[i]), phis.nodes[j]));
      angular_weights.push_back(xs.weights[i] * phis.weights[j]);
    }
  }
  std::vector<double> per_radius(radial.r.size());
  parallel_for(radial.r.size(), [&](std::size_t q) {
    const auto f = detail::channel_values(x, radial.r[q], false).f;
    double angular_sum = 0;
    for (std::size_t a = 0; a < harmonics.size(); ++a) {
      angular_sum += angular_weights[a] * std::norm(detail::combine(f, harmonics[a]));
    }
    per_radius[q] = angular_sum * radial.r[q] * radial.r[q];
  });
  double total = 0;
  for (std::size_t q = 0; q < per_radius.size(); ++q) total += radial.weights[q] * per_radius[q];
  return total;
}

/// Radial moments of a state, each already divided by the quadrature norm.
struct RadialMoments {
  double norm_squared = 0;  ///< int |psi|^2 d^3r, unnormalized
  double r_mean = 0;
  double r2_mean = 0;
  double pr_mean = 0;
  double pr2_mean = 0;

  double r_variance() const { return r2_mean - r_mean * r_mean; }
  double pr_variance() const { return pr2_mean - pr_mean * pr_mean; }
};

/**
 * Radial moments with p_r = -i (d/dr + 1/r). Channels (l, m) add
 * incoherently after the angular integral; within a channel the shells
 * interfere, so each channel amplitude g = r f_lm is formed before squaring.
 * <p_r^2> = sum int |g'|^2 dr and <p_r> = sum int Im(conj(g) g') dr, with g'
 * from the analytic derivative of the radial functions.
 */
inline RadialMoments radial_moments(const HydrogenExpansion& x, int radial_nodes = 96) {
  const RadialRule radial(radial_nodes, radial_decay(x.n_max));
  RadialMoments out;
  double r1 = 0, r2 = 0, p1 = 0, p2 = 0;
  for (std::size_t q = 0; q < radial.r.size(); ++q) {
    const double r = radial.r[q];
    const double w = radial.weights[q];
    const auto ch = detail::channel_values(x, r, true);
    for (std::size_t c = 0; c < ch.f.size(); ++c) {
      const std::complex<double> g = r * ch.f[c];
      const std::complex<double> dg = ch.f[c] + r * ch.df[c];
      const double density = std::norm(g);
      out.norm_squared += w * density;
      r1 += w * density * r;
      r2 += w * density * r * r;
      p1 += w * std::imag(std::conj(g) * dg);
      p2 += w * std::norm(dg);
    }
  }
  if (!(out.norm_squared > 0)) throw NumericalError("radial_moments: state has zero quadrature norm");
  out.r_mean = r1 / out.norm_squared;
  out.r2_mean = r2 / out.norm_squared;
  out.pr_mean = p1 / out.norm_squared;
  out.pr2_mean = p2 / out.norm_squared;
  return out;
}

/// <r^k> / <1> for k >= -1.
inline double radial_expectation(const HydrogenExpansion& x, int k, int radial_nodes = 96) {
  if (k < -1) throw DomainError("radial_expectation: power must be >= -1");
  const RadialRule radial(radial_nodes, radial_decay(x.n_max));
  double num = 0, den = 0;
  for (std::size_t q = 0; q < radial.r.size(); ++q) {
    const double r = radial.r[q];
    double density = 0;
    for (const auto& f : detail::channel_values(x, r, false).f) density += std::norm(f);
    density *= r * r;
    den += radial.weights[q] * density;
    num += radial.weights[q] * density * std::pow(r, k);
  }
  if (!(den > 0)) throw NumericalError("radial_expectation: state has zero quadrature norm");
  return num / den;
}

/// <(r - <r>)^2> <(p_r - <p_r>)^2>, hbar = 1; never below 1/4.
inline double radial_uncertainty_product(const HydrogenExpansion& x, int radial_nodes = 96) {
  const auto m = radial_moments(x, radial_nodes);
  return m.r_variance() * m.pr_variance();
}

namespace detail {

inline void write_number(std::ostream& os, double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  os.write(buf, res.ptr - buf);
}

inline void write_row(std::ostream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os.put(',');
    first = false;
    write_number(os, v);
  }
  os.put('\n');
}

}  // namespace detail

inline constexpr const char* density_csv_header = "t,r,theta,phi,re_psi,im_psi,abs_psi_sq";
inline constexpr const char* fock_trace_csv_header = "t,n,re_c,im_c,abs_c_sq";

/**
 * Writes rows (t, r, theta, phi, Re psi, Im psi, |psi|^2), t-major then r,
 * theta, phi. Time evolution is applied as e^{-iHt} on the coefficients,
 * which is the gamma shift gamma -> gamma + omega t.
 */
inline void export_density_grid(const HydrogenExpansion& x, const GridSpec& grid, const std::vector<double>& times,
                                double omega, std::ostream& os) {
  grid.validate();
  os << density_csv_header << '\n';
  const std::size_t nr = grid.r.size(), nt = grid.theta.size(), np = grid.phi.size();
  std::vector<std::vector<std::complex<double>>> harmonics;
  for (double th : grid.theta) {
    for (double ph : grid.phi) harmonics.push_back(detail::harmonics_table(x.n_max, th, ph));
  }
  for (double t : times) {
    const auto xt = evolve_hydrogen(x, omega, t);
    std::vector<std::complex<double>> psi(nr * nt * np);
    parallel_for(nr, [&](std::size_t i) {
      const auto f = detail::channel_values(xt, grid.r[i], false).f;
      for (std::size_t a = 0; a < harmonics.size(); ++a) psi[i * harmonics.size() + a] = detail::combine(f, harmonics[a]);
    });
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t j = 0; j < nt; ++j) {
        for (std::size_t k = 0; k < np; ++k) {
          const auto v = psi[(i * nt + j) * np + k];
          detail::write_row(os, {t, grid.r[i], grid.theta[j], grid.phi[k], v.real(), v.imag(), std::norm(v)});
        }
      }
    }
  }
}

inline void export_density_grid(const HydrogenExpansion& x, const GridSpec& grid, const std::vector<double>& times,
                                double omega, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::system_error(errno, std::generic_category(), "cannot open '" + path + "' for writing");
  export_density_grid(x, grid, times, omega, os);
  if (!os) throw std::system_error(errno, std::generic_category(), "write failed for '" + path + "'");
}

/// One-dimensional counterpart: rows (t, n, Re c_n, Im c_n, |c_n|^2) of
/// e^{-iHt} x.
inline void export_fock_trace(const FockExpansion& x, const Spectrum& spec, const std::vector<double>& times,
                              std::ostream& os) {
  os << fock_trace_csv_header << '\n';
  for (double t : times) {
    const auto xt = evolve_spectral(x, spec, t);
    for (int n = 0; n <= xt.n_max(); ++n) {
      const auto c = xt.coeffs[n];
      detail::write_row(os, {t, static_cast<double>(n), c.real(), c.imag(), std::norm(c)});
    }
  }
}

}  // namespace hcs
