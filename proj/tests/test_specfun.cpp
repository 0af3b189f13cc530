// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcs Authors

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hcs/quadrature.hpp"
#include "hcs/specfun.hpp"

using namespace hcs;
using std::numbers::pi;

namespace {

// Textbook associated-Laguerre form of the hydrogen radial function, written
// from the explicit finite sum so it shares no code with the recurrence.
long double textbook_radial(int principal, int ell, long double r) {
  auto fact = [](int k) {
    long double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  const int k = principal - ell - 1;
  const int alpha = 2 * ell + 1;
  const long double x = 2 * r / principal;
  long double lag = 0;
  for (int i = 0; i <= k; ++i) {
    const long double binom = fact(k + alpha) / (fact(k - i) * fact(alpha + i));
    lag += ((i % 2) ? -1 : 1) * binom * std::pow(x, i) / fact(i);
  }
  const long double norm =
      std::sqrt(std::pow(2.0L / principal, 3) * fact(principal - ell - 1) / (2 * principal * fact(principal + ell)));
  return norm * std::exp(-r / principal) * std::pow(x, ell) * lag;
}

}  // namespace

TEST(BasisIndex, EnforcesRanges) {
  EXPECT_NO_THROW(BasisIndex(3, 2, -2));
  EXPECT_THROW(BasisIndex(1, 2, 0), DomainError);
  EXPECT_THROW(BasisIndex(2, 1, 2), DomainError);
  EXPECT_THROW(BasisIndex(-1, 0, 0), DomainError);
  EXPECT_EQ(BasisIndex(0, 0, 0).principal(), 1);
}

TEST(BasisIndex, FlatIndexIsDenseAndOrdered) {
  int expected = 0;
  for (int n = 0; n <= 6; ++n)
    for (int l = 0; l <= n; ++l)
      for (int m = -l; m <= l; ++m) EXPECT_EQ(BasisIndex(n, l, m).flat(), expected++);
  EXPECT_EQ(expected, shells_dimension(6));
}

TEST(LogFactorial, Examples) {
  EXPECT_EQ(log_factorial(0), 0.0);
  EXPECT_NEAR(log_factorial(5), 4.787491742782046, 1e-15);
  EXPECT_NEAR(log_factorial(20), 42.335616460753485, 4e-15);
  EXPECT_THROW(log_factorial(-1), DomainError);
}

TEST(LogFactorial, MatchesExtendedPrecisionProduct) {
  long double acc = 0;
  for (int k = 1; k <= 170; ++k) {
    acc += std::log(static_cast<long double>(k));
    EXPECT_NEAR(log_factorial(k), static_cast<double>(acc), 1e-14 * static_cast<double>(acc)) << k;
  }
}

TEST(SqrtBinomialWeight, Examples) {
  EXPECT_DOUBLE_EQ(sqrt_binomial_weight(0, 0), 1.0);
  EXPECT_NEAR(sqrt_binomial_weight(1, 0), 1.4142135623730951, 1e-15);
  EXPECT_NEAR(sqrt_binomial_weight(2, 2), 1.0, 1e-15);
  EXPECT_THROW(sqrt_binomial_weight(2, 3), DomainError);
}

TEST(SqrtBinomialWeight, SymmetricInM) {
  for (int l = 0; l <= 12; ++l)
    for (int m = -l; m <= l; ++m) EXPECT_DOUBLE_EQ(sqrt_binomial_weight(l, m), sqrt_binomial_weight(l, -m));
}

TEST(SqrtBinomialWeight, BinomialTheoremOnGrid) {
  for (int l = 0; l <= 12; ++l) {
    for (int i = 0; i < 50; ++i) {
      const double th = pi * i / 49.0;
      double sum = 0;
      for (int m = -l; m <= l; ++m) {
        const double w = sqrt_binomial_weight(l, m);
        sum += w * w * std::pow(std::sin(th / 2), 2 * (l - m)) * std::pow(std::cos(th / 2), 2 * (l + m));
      }
      EXPECT_NEAR(sum, 1.0, 1e-12) << "l=" << l << " theta=" << th;
    }
  }
}

TEST(SphericalHarmonic, Examples) {
  EXPECT_NEAR(spherical_harmonic(0, 0, 0.3, 1.1).real(), 0.28209479177387814, 1e-15);
  EXPECT_NEAR(spherical_harmonic(1, 0, 0.0, 0.0).real(), 0.48860251190291992, 1e-15);
  const auto y11 = spherical_harmonic(1, 1, pi / 2, 0.0);
  EXPECT_NEAR(y11.real(), -0.34549414947133548, 1e-15);
  EXPECT_NEAR(y11.imag(), 0.0, 1e-16);
  EXPECT_THROW(spherical_harmonic(1, 2, 0.1, 0.1), DomainError);
}

TEST(SphericalHarmonic, MatchesClosedFormsUpToL2) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> th(0, pi), ph(0, 2 * pi);
  const std::complex<double> i(0, 1);
  for (int k = 0; k < 20; ++k) {
    const double t = th(rng), p = ph(rng);
    const double c = std::cos(t), s = std::sin(t);
    const std::complex<double> e1 = std::exp(i * p), e2 = std::exp(2.0 * i * p);
    EXPECT_LT(std::abs(spherical_harmonic(1, 1, t, p) - (-std::sqrt(3 / (8 * pi)) * s * e1)), 1e-14);
    EXPECT_LT(std::abs(spherical_harmonic(1, -1, t, p) - (std::sqrt(3 / (8 * pi)) * s * std::conj(e1))), 1e-14);
    EXPECT_LT(std::abs(spherical_harmonic(2, 0, t, p) - std::sqrt(5 / (16 * pi)) * (3 * c * c - 1)), 1e-14);
    EXPECT_LT(std::abs(spherical_harmonic(2, 1, t, p) - (-std::sqrt(15 / (8 * pi)) * s * c * e1)), 1e-14);
    EXPECT_LT(std::abs(spherical_harmonic(2, 2, t, p) - std::sqrt(15 / (32 * pi)) * s * s * e2), 1e-14);
  }
}

TEST(SphericalHarmonic, GramMatrixIsIdentityUnderExactQuadrature) {
  const int lmax = 6;
  const auto xs = make_quadrature(QuadratureKind::gauss_legendre, lmax + 1);
  const auto ps = make_quadrature(QuadratureKind::trapezoid, 2 * lmax + 1, {.a = 0.0});
  double worst = 0;
  for (int l1 = 0; l1 <= lmax; ++l1)
    for (int m1 = -l1; m1 <= l1; ++m1)
      for (int l2 = 0; l2 <= lmax; ++l2)
        for (int m2 = -l2; m2 <= l2; ++m2) {
          std::complex<double> sum = 0;
          for (std::size_t a = 0; a < xs.size(); ++a)
            for (std::size_t b = 0; b < ps.size(); ++b) {
              const double t = std::acos(xs.nodes[a]);
              sum += xs.weights[a] * ps.weights[b] * spherical_harmonic(l1, m1, t, ps.nodes[b]) *
                     std::conj(spherical_harmonic(l2, m2, t, ps.nodes[b]));
            }
          worst = std::max(worst, std::abs(sum - ((l1 == l2 && m1 == m2) ? 1.0 : 0.0)));
        }
  EXPECT_LE(worst, 1e-12);
}

TEST(ConfluentPolynomial, Examples) {
  EXPECT_EQ(confluent_polynomial(0, 0, 3.7), 1.0);
  EXPECT_NEAR(confluent_polynomial(1, 0, 2.0), 0.0, 1e-16);
  EXPECT_NEAR(confluent_polynomial(2, 0, 1.0), 1.0 / 6.0, 1e-15);
  EXPECT_THROW(confluent_polynomial(1, 2, 0.5), DomainError);
}

TEST(ConfluentPolynomial, MatchesRisingFactorialSeries) {
  for (int n = 0; n <= 10; ++n)
    for (int l = 0; l <= n; ++l)
      for (double z : {0.0, 0.3, 1.7, 5.0}) {
        long double sum = 0, num = 1, den = 1, fact = 1;
        for (int j = 0; j <= n - l; ++j) {
          if (j > 0) {
            num *= (l - n + j - 1);
            den *= (2 * l + 2 + j - 1);
            fact *= j;
          }
          sum += num / den * std::pow(static_cast<long double>(z), j) / fact;
        }
        EXPECT_NEAR(confluent_polynomial(n, l, z), static_cast<double>(sum), 1e-12 * (1 + std::fabs((double)sum)));
      }
}

TEST(ConfluentPolynomial, HasExactDegree) {
  // Divided differences on integer nodes: order d = n-l is constant
  // (leading coefficient), order d+1 vanishes.
  for (int n = 0; n <= 8; ++n)
    for (int l = 0; l <= n; ++l) {
      const int d = n - l;
      std::vector<double> v(d + 2);
      for (int i = 0; i < d + 2; ++i) v[i] = confluent_polynomial(n, l, 0.5 * i);
      std::vector<double> level = v;
      std::vector<double> order_d;
      for (int k = 1; k <= d + 1; ++k) {
        std::vector<double> next(level.size() - 1);
        for (std::size_t i = 0; i + 1 < level.size(); ++i) next[i] = (level[i + 1] - level[i]) / (0.5 * k);
        level = next;
        if (k == d) order_d = level;
      }
      double scale = 0;
      for (double x : v) scale = std::max(scale, std::fabs(x));
      if (d > 0) {
        EXPECT_NEAR(order_d[0], order_d[1], 1e-9 * std::max(1.0, std::fabs(order_d[0])));
        EXPECT_NE(order_d[0], 0.0);
      }
      EXPECT_LE(std::fabs(level[0]), 1e-9 * std::max(1.0, scale)) << n << "," << l;
    }
}

TEST(ConfluentPolynomial, DerivativeMatchesFiniteDifference) {
  for (int n = 1; n <= 8; ++n)
    for (int l = 0; l < n; ++l)
      for (double z : {0.0, 0.4, 2.5}) {
        const double h = 1e-5;
        const double fd = (confluent_polynomial(n, l, z + h) - confluent_polynomial(n, l, z - h)) / (2 * h);
        EXPECT_NEAR(confluent_polynomial_derivative(n, l, z), fd, 1e-6 * (1 + std::fabs(fd)));
      }
  EXPECT_EQ(confluent_polynomial_derivative(3, 3, 1.0), 0.0);
}

TEST(RadialNormalization, Examples) {
  EXPECT_NEAR(radial_normalization(0, 0), 2.0, 1e-15);
  EXPECT_NEAR(radial_normalization(1, 0), 0.70710678118654752, 1e-15);
  EXPECT_NEAR(radial_normalization(1, 1), 0.20412414523193151, 1e-15);
  EXPECT_THROW(radial_normalization(1, 2), DomainError);
}

TEST(RadialEigenfunction, Examples) {
  EXPECT_NEAR(radial_eigenfunction(0, 0, 0.0), 2.0, 1e-12);
  EXPECT_NEAR(radial_eigenfunction(1, 0, 2.0), 0.0, 1e-12);
  EXPECT_THROW(radial_eigenfunction(0, 0, -1.0), DomainError);
  const auto rule = make_quadrature(QuadratureKind::gauss_laguerre, 64);
  // int 4 e^{-2r} r^2 dr with t = 2r
  const double v = rule.integrate([](double t) { return 0.5 * std::pow(radial_eigenfunction(0, 0, t / 2), 2) * t * t / 4 * std::exp(t); });
  EXPECT_NEAR(v, 1.0, 1e-13);
}

TEST(RadialEigenfunction, MatchesAssociatedLaguerreForm) {
  for (int n = 0; n <= 8; ++n)
    for (int l = 0; l <= n; ++l)
      for (double r : {0.0, 0.2, 1.0, 3.5, 12.0, 30.0}) {
        const double ref = static_cast<double>(textbook_radial(n + 1, l, r));
        EXPECT_NEAR(radial_eigenfunction(n, l, r), ref, 1e-12 * std::max(1.0, std::fabs(ref)))
            << "n=" << n << " l=" << l << " r=" << r;
      }
}

TEST(RadialEigenfunction, Orthonormality) {
  const RadialRule rule(96, 2.0 / 9.0);
  double worst = 0;
  for (int l = 0; l <= 8; ++l)
    for (int n = l; n <= 8; ++n)
      for (int np = l; np <= 8; ++np) {
        const double v = rule.integrate([&](double r) {
          return radial_eigenfunction(n, l, r) * radial_eigenfunction(np, l, r) * r * r;
        });
        worst = std::max(worst, std::fabs(v - (n == np ? 1.0 : 0.0)));
      }
  EXPECT_LE(worst, 1e-10);
}

TEST(RadialEigenfunction, DerivativeMatchesFiniteDifference) {
  for (int n = 0; n <= 6; ++n)
    for (int l = 0; l <= n; ++l)
      for (double r : {0.0, 0.3, 2.0, 9.0}) {
        const double h = 1e-5;
        const double fd = r < h ? (radial_eigenfunction(n, l, r + h) - radial_eigenfunction(n, l, r)) / h
                                : (radial_eigenfunction(n, l, r + h) - radial_eigenfunction(n, l, r - h)) / (2 * h);
        EXPECT_NEAR(radial_eigenfunction_derivative(n, l, r), fd, 1e-4 * (1 + std::fabs(fd))) << n << l << r;
      }
}
