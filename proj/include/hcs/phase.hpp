// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcs Authors

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <tuple>
#include <utility>

namespace hcs {

/**
 * A real angle on the covering space of the circle, held as an unevaluated
 * sum hi + lo of two doubles (double-double).
 *
 * Phase labels such as gamma are unbounded and get shifted by omega*t.
 * Rounding gamma + omega*t to a single double loses up to ulp(|gamma|)/2 of
 * phase, which is far larger than the 1e-15 residuals the stability checks
 * demand once |gamma| grows past a few units. Keeping the label and every
 * derived phase gamma/(n+1)^2 in double-double makes the label shift and
 * the spectral phase agree to ~1e-16 absolute for |phase| up to ~1e15.
 */
class CoveringAngle {
 public:
  constexpr CoveringAngle() = default;
  constexpr CoveringAngle(double value) : hi_(value) {}  // NOLINT(google-explicit-constructor)

  static CoveringAngle from_parts(double hi, double lo) {
    auto [s, e] = quick_two_sum(hi, lo);
    return CoveringAngle(s, e);
  }

  /// Exact product a*b (error term recovered with fma).
  static CoveringAngle product(double a, double b) {
    const double p = a * b;
    const double e = std::fma(a, b, -p);
    return from_parts(p, e);
  }

  double hi() const { return hi_; }
  double lo() const { return lo_; }
  double value() const { return hi_ + lo_; }

  CoveringAngle operator-() const { return CoveringAngle(-hi_, -lo_); }

  friend CoveringAngle operator+(CoveringAngle a, CoveringAngle b) {
    auto [s, e] = two_sum(a.hi_, b.hi_);
    auto [t, f] = two_sum(a.lo_, b.lo_);
    e += t;
    std::tie(s, e) = quick_two_sum(s, e);
    e += f;
    return from_parts(s, e);
  }
  friend CoveringAngle operator-(CoveringAngle a, CoveringAngle b) { return a + (-b); }

  /// Multiplication by an integer-valued (or any) double.
  CoveringAngle scaled(double k) const {
    const double p = hi_ * k;
    const double e = std::fma(hi_, k, -p) + lo_ * k;
    return from_parts(p, e);
  }

  CoveringAngle divided(double d) const {
    const double q1 = hi_ / d;
    // remainder (hi + lo) - q1*d, with q1*d formed exactly
    const double p = q1 * d;
    const double pe = std::fma(q1, d, -p);
    const double r = ((hi_ - p) - pe) + lo_;
    const double q2 = r / d;
    return from_parts(q1, q2);
  }

  /// Representative of the angle in [-pi, pi], reduced in double-double.
  double reduced() const {
    constexpr double two_pi_hi = 6.283185307179586;
    constexpr double two_pi_lo = 2.4492935982947064e-16;
    const double k = std::nearbyint(hi_ / two_pi_hi);
    if (k == 0.0) return value();
    const CoveringAngle multiple = product(k, two_pi_hi) + CoveringAngle(k * two_pi_lo);
    return (*this - multiple).value();
  }

  /// e^{i * angle}.
  std::complex<double> unit() const { return std::polar(1.0, reduced()); }

 private:
  constexpr CoveringAngle(double hi, double lo) : hi_(hi), lo_(lo) {}

  static std::pair<double, double> two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double e = (a - (s - bb)) + (b - bb);
    return {s, e};
  }
  static std::pair<double, double> quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
  }

  double hi_ = 0.0;
  double lo_ = 0.0;
};

}  // namespace hcs
