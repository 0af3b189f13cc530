// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The hcs Authors

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hcs/phase.hpp"

using hcs::CoveringAngle;

TEST(CoveringAngle, ProductCarriesRoundingError) {
  // 0.1 * 3 in double is 0.30000000000000004; the error term holds the rest.
  const auto p = CoveringAngle::product(0.1, 3.0);
  const long double exact = static_cast<long double>(0.1) * 3.0L;  // 55 significant bits, exact in long double
  EXPECT_NEAR(static_cast<long double>(p.hi()) + p.lo(), exact, 1e-19L);
  EXPECT_NE(p.lo(), 0.0);
}

TEST(CoveringAngle, ReducedLiesInPrincipalRange) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double r = CoveringAngle(d(rng)).reduced();
    EXPECT_LE(std::fabs(r), std::numbers::pi + 1e-12);
  }
}

TEST(CoveringAngle, ReductionMatchesExtendedPrecision) {
  for (double x : {1.0, 7.3, -20.5, 1234.5678, 1e6 + 0.25}) {
    const long double two_pi = 2 * 3.14159265358979323846264338327950288L;
    long double ref = std::fmod(static_cast<long double>(x), two_pi);
    if (ref > two_pi / 2) ref -= two_pi;
    if (ref < -two_pi / 2) ref += two_pi;
    EXPECT_NEAR(CoveringAngle(x).reduced(), static_cast<double>(ref), 1e-15 * std::max(1.0, std::fabs(x) * 1e-3));
  }
}

TEST(CoveringAngle, ShiftByWholeTurnsIsInvisibleInUnit) {
  const CoveringAngle turn = CoveringAngle::from_parts(2 * std::numbers::pi, 2.4492935982947064e-16);
  const CoveringAngle a = 0.7;
  const auto b = a + turn.scaled(1e6);
  EXPECT_LT(std::abs(a.unit() - b.unit()), 1e-9);
}

TEST(CoveringAngle, DivisionIsInverseOfScaling) {
  const CoveringAngle big = CoveringAngle::product(1.0, 8.1e11);
  for (double d : {1.0, 4.0, 9.0, 49.0, 169.0}) {
    const auto q = big.divided(d);
    const auto back = q.scaled(d);
    EXPECT_NEAR((back - big).value(), 0.0, 1e-10);
  }
}

TEST(CoveringAngle, SumsAreAssociativeToDoubleDoublePrecision) {
  const CoveringAngle a = 1e12, b = 0.1, c = -1e12;
  EXPECT_NEAR(((a + b) + c).value(), 0.1, 1e-17);
  EXPECT_NEAR((-(c - a) - CoveringAngle(2e12)).value(), 0.0, 0.0);
}
