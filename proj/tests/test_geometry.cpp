#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mobius/geometry.hpp"
#include "support/oracles.hpp"

using namespace mobius;
using namespace mobius::geometry;
constexpr double kPi = std::numbers::pi;

TEST(Geometry, TorusPointMatchesParametrisation) {
  const TorusGeometry g{2.0, 0.5, 0.3};
  const Point3 p = torus_point(0.7, 1.9, g);
  EXPECT_NEAR(p.x, (2 + 0.5 * std::sin(0.7)) * std::cos(1.9), 1e-15);
  EXPECT_NEAR(p.y, (2 + 0.5 * std::sin(0.7)) * std::sin(1.9), 1e-15);
  EXPECT_NEAR(p.z, 0.3 + 0.5 * std::cos(0.7), 1e-15);
}

TEST(Geometry, ConstraintPutsTorusPointOnStripWithTorusSign) {
  const TorusGeometry g{1.0, 0.5, 0.2};
  for (double phi = -4 * kPi; phi <= 4 * kPi; phi += 0.173) {
    const Point3 t = torus_point(constraint_theta(phi), phi, g);
    const Point3 m = mobius_point(phi, g, kTorusSign);
    EXPECT_LT(distance(t, m), 2e-15) << phi;
  }
}

TEST(Geometry, LabelSignIsTheMirrorImage) {
  const TorusGeometry g{1.0, 0.5, 0.0};
  for (double phi = 0; phi < 4 * kPi; phi += 0.31) {
    const Point3 a = mobius_point(phi, g, kLabelSign);
    const Point3 b = mobius_point(phi, g, kTorusSign);
    EXPECT_NEAR(a.x, b.x, 1e-15);
    EXPECT_NEAR(a.y, b.y, 1e-15);
    EXPECT_NEAR(a.z, -b.z, 1e-15);
  }
}

TEST(Geometry, StripClosesAfterFourPiNotTwoPi) {
  const TorusGeometry g{1.0, 0.5, 0.0};
  for (double phi = 0; phi < 4 * kPi; phi += 0.37) {
    EXPECT_LT(distance(mobius_point(phi, g), mobius_point(phi + 4 * kPi, g)), 1e-14);
    // After 2 pi the point sits on the opposite edge of the band.
    const Point3 a = mobius_point(phi, g), b = mobius_point(phi + 2 * kPi, g);
    EXPECT_NEAR(std::hypot(a.x + b.x - 2 * std::cos(phi), a.y + b.y - 2 * std::sin(phi), a.z + b.z), 0.0, 1e-14);
  }
}

TEST(Geometry, LabelMapModulusIsExpMinusLprime) {
  for (double phi = 0; phi < 4 * kPi; phi += 0.41)
    for (double r : {0.0, 0.3, 0.9}) {
      const double lp = lprime(0.4, phi, r);
      EXPECT_NEAR(std::abs(xi_label(0.4, phi, r)), std::exp(-lp), 1e-15);
      EXPECT_NEAR(lp, oracle::lprime(0.4, phi, r, +1), 1e-15);
      EXPECT_NEAR(std::remainder(std::arg(xi_label(0.4, phi, r)) - phi, 2 * kPi), 0.0, 1e-14);
    }
  EXPECT_NEAR(lprime(0, 0, 0.5), oracle::frozen::lprime_l0_phi0_r_half, 1e-16);
}

TEST(Geometry, LprimeAtOddMultiplesOfPi) {
  EXPECT_DOUBLE_EQ(lprime(0.0, kPi, 0.5), 0.5);
  EXPECT_NEAR(lprime(0.0, 3 * kPi, 0.5), -0.5, 1e-15);
  EXPECT_NEAR(lprime(0.25, kPi, 0.25), 0.5, 1e-15);
}

TEST(Geometry, CylinderLimitDropsRadialTerms) {
  for (double phi : {0.0, 1.0, kPi, 5.0}) {
    EXPECT_DOUBLE_EQ(lprime(0.7, phi, 0.0), 0.7);
    EXPECT_NEAR(std::abs(xi_label(0.7, phi, 0.0) - std::polar(std::exp(-0.7), phi)), 0.0, 1e-15);
  }
}

TEST(Geometry, DomainChecks) {
  EXPECT_THROW(lprime(0, 0, 1.0), mobius::domain_error);
  EXPECT_THROW(lprime(0, 0, -0.1), mobius::domain_error);
  EXPECT_THROW(xi_label(0, 0, 0.5, SignConvention{2}), mobius::domain_error);
  EXPECT_THROW(torus_point(0, 0, TorusGeometry{1.0, 1.5, 0.0}), mobius::domain_error);
}
