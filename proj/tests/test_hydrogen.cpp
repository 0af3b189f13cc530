// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcs Authors

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hcs/hydrogen.hpp"

using namespace hcs;
using std::numbers::pi;

namespace {

const WeightFamily& expo() {
  static const auto f = WeightFamily::exponential();
  return f;
}
const WeightFamily& sqrt_expo() {
  static const auto f = WeightFamily::sqrt_exponential();
  return f;
}

}  // namespace

TEST(HydrogenSpectrum, Examples) {
  EXPECT_EQ(hydrogen_spectrum(1.0, 0), -1.0);
  EXPECT_EQ(hydrogen_spectrum(1.0, 1), -0.25);
  EXPECT_NEAR(hydrogen_spectrum(0.5, 2), -0.5 / 9, 1e-17);
  EXPECT_THROW(hydrogen_spectrum(-1.0, 0), DomainError);
  EXPECT_THROW(hydrogen_spectrum(1.0, -1), DomainError);
}

TEST(HydrogenSpectrum, AccumulatesBelowZero) {
  for (int n = 1; n < 200; ++n) {
    EXPECT_GT(hydrogen_spectrum(2.0, n + 1) - hydrogen_spectrum(2.0, n), 0.0);
    EXPECT_GT(hydrogen_spectrum(2.0, n), -2.0);
    EXPECT_LT(hydrogen_spectrum(2.0, n), 0.0);
  }
}

TEST(HydrogenCS, GroundLabel) {
  const auto x = hydrogen_cs({0.0, 0.9, EulerAngles(1, 2, 3)}, expo(), 4);
  EXPECT_LT(std::abs(x.coeff({0, 0, 0}) - std::polar(1.0, 0.9)), 1e-15);
  for (std::size_t i = 1; i < x.coeffs.size(); ++i) EXPECT_EQ(x.coeffs[i], std::complex<double>(0.0));
  EXPECT_NEAR(x.norm_squared(), 1.0, 1e-15);
}

TEST(HydrogenCS, Examples) {
  const auto x = hydrogen_cs({1.0, 0.0, EulerAngles(0, 0, 0)}, expo(), 30);
  EXPECT_NEAR(x.norm_squared(), 5.0, 1e-12);
  EXPECT_NEAR(x.coeff({1, 1, 1}).real(), std::sqrt(3.0) * std::exp(-0.5), 1e-15);
  EXPECT_NEAR(x.coeff({1, 1, 1}).real(), 1.0505419189705506, 1e-15);
  EXPECT_EQ(x.coeffs.size(), static_cast<std::size_t>(shells_dimension(30)));
}

TEST(HydrogenCS, ShellWeightMarginal) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> th(0, pi), ph(0, 2 * pi);
  for (const auto* f : {&expo(), &sqrt_expo()}) {
    const HydrogenLabel label{1.3, 0.4, EulerAngles(th(rng), ph(rng), ph(rng))};
    const auto x = hydrogen_cs(label, *f, 30);
    const double m2 = f->m_squared(label.s * label.s);
    for (int n = 0; n <= 30; ++n) {
      const double expect = m2 * std::exp(2 * n * std::log(label.s) - f->log_moment(n)) * (n + 1.0) * (n + 1.0);
      EXPECT_NEAR(x.shell_weight(n), expect, 1e-12) << f->name() << " " << n;
    }
  }
}

TEST(HydrogenCS, EnforcesTailRule) {
  EXPECT_THROW(hydrogen_cs({1.0, 0.0, {}}, expo(), 8), TruncationError);
  EXPECT_NO_THROW(hydrogen_cs({1.0, 0.0, {}}, expo(), 8, TailPolicy::allow));
  EXPECT_THROW(state_norm({1.0, 0.0, {}}, expo(), 8), TruncationError);
}

TEST(EvolveHydrogen, Examples) {
  const HydrogenLabel label{1.2, 0.5, EulerAngles(0.3, 1.0, 2.0)};
  const auto x = hydrogen_cs(label, expo(), 30);
  const auto same = evolve_hydrogen(x, 1.0, 0.0);
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) EXPECT_EQ(same.coeffs[i], x.coeffs[i]);

  for (double t : {0.1, 3.7, 250.0}) {
    const auto ev = evolve_hydrogen(x, 1.0, t);
    const auto sh = hydrogen_cs(label.shifted(1.0, t), expo(), 30);
    double worst = 0;
    for (std::size_t i = 0; i < x.coeffs.size(); ++i) worst = std::max(worst, std::abs(ev.coeffs[i] - sh.coeffs[i]));
    EXPECT_LE(worst, 5e-15);
    EXPECT_LE(std::fabs(ev.norm_squared() - x.norm_squared()), 8 * std::numeric_limits<double>::epsilon() * x.norm_squared());
    EXPECT_NEAR(ev.label.gamma.value(), 0.5 + t, 1e-15 * (1 + t));
  }
}

TEST(StabilityResidual, Examples) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> th(0, pi), ph(0, 2 * pi);
  const EulerAngles w(th(rng), ph(rng), ph(rng));
  EXPECT_LE(hydrogen_stability_residual({1.2, 0.5, w}, expo(), 1.0, 3.7, 30), 5e-15);
  const double commensurate = 2 * pi * 362880.0 * 362880.0;  // 2 pi (9!)^2
  EXPECT_LE(hydrogen_stability_residual({1.2, 0.5, w}, expo(), 1.0, commensurate, 30), 5e-15);
  EXPECT_LE(hydrogen_stability_residual({2.0, 0.0, w}, sqrt_expo(), 1.0, 100.0, 30), 5e-15);
}

TEST(StabilityResidual, RandomSweep) {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> s(0, 1.5), g(-50, 50), th(0, pi), ph(0, 2 * pi), t(0, 1e4), om(0.1, 3);
  for (int k = 0; k < 50; ++k) {
    const auto& f = (k % 2) ? expo() : sqrt_expo();
    const HydrogenLabel label{s(rng), g(rng), EulerAngles(th(rng), ph(rng), ph(rng))};
    EXPECT_LE(hydrogen_stability_residual(label, f, om(rng), t(rng), 30), 5e-15) << k;
  }
}

TEST(HydrogenResolution, Examples) {
  const auto rep = hydrogen_resolution_check(expo(), 8, 64, 1e5, 17, 17, 17);
  EXPECT_LE(rep.max_diagonal_deviation, 1e-10);
  EXPECT_TRUE(rep.certificate_holds);
  EXPECT_LE(rep.max_cross_shell, rep.max_certificate * (1 + 1e-12));
  EXPECT_LE(rep.angular_max_deviation, 1e-12);
  EXPECT_EQ(rep.angular_rank, 81);
  EXPECT_EQ(rep.dimension, shells_dimension(8));

  for (double window : {1.0, 1e3}) {
    const auto one = hydrogen_resolution_check(expo(), 0, 64, window, 1, 1, 1);
    EXPECT_EQ(one.dimension, 1);
    EXPECT_LE(one.max_diagonal_deviation, 1e-12);
    EXPECT_EQ(one.max_cross_shell, 0.0);
  }
}

TEST(HydrogenResolution, CertificateFollowsInverseWindow) {
  const auto a = hydrogen_resolution_check(expo(), 8, 64, 1e4, 17, 17, 17);
  const auto b = hydrogen_resolution_check(expo(), 8, 64, 4e4, 17, 17, 17);
  EXPECT_NEAR(a.max_certificate / b.max_certificate, 4.0, 4.0 * 1e-12);
  EXPECT_LE(a.max_within_shell_off_diagonal, 1e-12);
}

TEST(HydrogenResolution, RejectsBadConfiguration) {
  EXPECT_THROW(hydrogen_resolution_check(expo(), 4, 64, 1e4, 8, 9, 9), ConfigError);
  EXPECT_THROW(hydrogen_resolution_check(expo(), 4, 64, 0.0, 9, 9, 9), ConfigError);
}

TEST(StateNorm, Examples) {
  EXPECT_NEAR(state_norm({0.0, 0.0, {}}, expo(), 8), 1.0, 1e-15);
  EXPECT_NEAR(state_norm({1.0, 0.0, {}}, expo(), 30), std::sqrt(5.0), 1e-12);
  // brute-force oracle: explicit sum over (n, l, m) of the printed coefficient
  long double brute = 0;
  for (int n = 0; n <= 30; ++n) {
    long double fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    for (int l = 0; l <= n; ++l)
      for (int m = -l; m <= l; ++m) {
        long double b = 1;  // binom(2l, l+m) at theta_bar = 0 is nonzero only for m = l
        if (m != l) continue;
        brute += std::exp(-1.0L) / fact * b * (2 * l + 1);
      }
  }
  EXPECT_NEAR(state_norm({1.0, 0.0, {}}, expo(), 30), std::sqrt(static_cast<double>(brute)), 1e-10);
}
