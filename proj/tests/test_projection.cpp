#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "mobius/projection.hpp"
#include "support/oracles.hpp"

using namespace mobius;
using namespace mobius::projection;
using C = std::complex<double>;
constexpr double kPi = std::numbers::pi;

TEST(TorusLabels, OnConstraintAuxiliaryPartIsPurePhaseAndScale) {
  for (double phi : {0.3, 1.0, 2.5, 5.0}) {
    const double theta = geometry::constraint_theta(phi);
    const auto t = torus_labels(0.2, theta, phi, 0.5);
    const double A = -2 * kPi * std::sin(phi) * std::sin(phi);
    EXPECT_NEAR(t.aux_log_modulus, A, 1e-14);
    EXPECT_NEAR(t.xi_aux.i_part.real(), std::exp(A) * std::cos(theta), 1e-15);
    EXPECT_NEAR(t.xi_aux.k_part.real(), std::exp(A) * std::sin(theta), 1e-15);
    EXPECT_EQ(t.xi_aux.i_part.imag(), 0.0);
    EXPECT_EQ(t.xi_aux.k_part.imag(), 0.0);
  }
}

TEST(TorusLabels, StripLabelUsesTorusSign) {
  const auto t = torus_labels(0.0, kPi, kPi, 0.5);
  EXPECT_NEAR(t.xi_ms.real(), -std::exp(0.5), 1e-15);
  EXPECT_NEAR(t.xi_ms.imag(), 0.0, 1e-15);
  const auto c = torus_labels(0.4, 1.0, 2.0, 0.0);
  EXPECT_LT(std::abs(c.xi_ms - std::polar(std::exp(-0.4), 2.0)), 1e-15);
}

TEST(TorusFock, RankOneAndMarginal) {
  for (double theta : {0.0, 0.8, 2.0})
    for (double phi : {0.4, kPi, 4.0}) {
      const TorusFock t = build_torus_cs(0.3, theta, phi, 0.5);
      const auto sv = singular_values(t);
      EXPECT_LE(sv[1], 1e-12 * sv[0]);
      const FockVector m = j_marginal(t);
      const FockVector ref = states::build_cs({0.3, phi, 0.5, Offset::integer, kTorusSign});
      EXPECT_LT(distance(m, ref), 1e-12 * ref.norm());
    }
}

TEST(TorusFock, CoefficientsAreProductOfLabelPowers) {
  const double theta = 0.9, phi = 1.7, l = -0.2, r = 0.4;
  const auto lab = torus_labels(l, theta, phi, r);
  const TorusFock t = build_torus_cs(l, theta, phi, r);
  for (Eigen::Index row = 0; row < t.rows(); row += 3)
    for (Eigen::Index col = 0; col < t.cols(); col += 4) {
      const double j = t.first_j() + row;
      const double m = t.first_m() + col;
      const C a = std::pow(lab.xi_ms, -j) * std::exp(-j * j / 2);
      const double mag = std::exp(-m * lab.aux_log_modulus - m * m / 2);
      const auto c = t.coefficient(row, col);
      EXPECT_LT(std::abs(c.i_part - a * mag * std::cos(m * theta)), 1e-12 * std::max(1.0, std::abs(a) * mag));
      EXPECT_LT(std::abs(c.k_part + a * mag * std::sin(m * theta)), 1e-12 * std::max(1.0, std::abs(a) * mag));
    }
}

TEST(TorusFock, FiducialIsSeparableGaussian) {
  const TorusFock f = fiducial_torus();
  for (Eigen::Index row = 0; row < f.rows(); ++row)
    for (Eigen::Index col = 0; col < f.cols(); ++col) {
      const double j = f.first_j() + row, m = f.first_m() + col;
      EXPECT_NEAR(f.i_grid()(row, col).real(), std::exp(-(j * j + m * m) / 2), 1e-16);
      EXPECT_EQ(f.k_grid()(row, col), C(0.0));
    }
}

TEST(ProjectOverlap, SandwichedQuotientEqualsTermByTermSeries) {
  auto gen = oracle::rng(20);
  std::uniform_real_distribution<double> ul(-1, 1), up(0, 4 * kPi);
  for (Offset s : {Offset::integer, Offset::half})
    for (int k = 0; k < 20; ++k) {
      const states::StateLabel a{ul(gen), up(gen), 0.5, s}, b{ul(gen), up(gen), 0.5, s};
      const C v = project_overlap(a, b);
      const C series = project_overlap_series(a, b);
      EXPECT_LT(std::abs(v - series), 1e-10 * std::abs(series));
      const C ref = oracle::overlap(oracle::lprime(a.l, a.phi, 0.5, -1), a.phi, oracle::lprime(b.l, b.phi, 0.5, -1),
                                    b.phi, offset_value(s));
      EXPECT_LT(std::abs(v - ref), 1e-12 * std::abs(ref));
    }
}

TEST(ProjectOverlap, DiagonalIsRealPositive) {
  const states::StateLabel a{0.3, 2.0, 0.5};
  const C v = project_overlap(a, a);
  EXPECT_GT(v.real(), 0.0);
  EXPECT_EQ(v.imag(), 0.0);
}

TEST(ProjectOverlap, PrintedPhasePlacementDiffersUnlessAnglesMatch) {
  const states::StateLabel a{0.3, 2.0, 0.5}, b{0.1, 1.0, 0.5}, c{0.1, 2.0, 0.5};
  EXPECT_GT(std::abs(project_overlap_printed(a, b) - project_overlap_series(a, b)), 1e-3);
  EXPECT_LT(std::abs(project_overlap_printed(a, c) - project_overlap_series(a, c)), 1e-14);
}

TEST(ProjectOverlap, CylinderLimitIsCircleOverlap) {
  for (double la : {-0.5, 0.4})
    for (double pb : {0.0, 2.2, 5.0}) {
      const states::StateLabel a{la, 1.0, 0.0}, b{0.2, pb, 0.0};
      const C ref = oracle::overlap(la, 1.0, 0.2, pb, 0.0);
      EXPECT_LT(std::abs(project_overlap(a, b) - ref), 1e-12 * std::abs(ref));
      EXPECT_LT(std::abs(circle_overlap(la, 1.0, 0.2, pb) - ref), 1e-12 * std::abs(ref));
    }
}

TEST(Projector, ClosedFormIndicator) {
  const double d = 0.1;
  const double th0 = geometry::constraint_theta(0.6);
  EXPECT_EQ(universal_projector({d, th0, 0.6}).value, 1.0);
  EXPECT_EQ(universal_projector({d, th0 + 0.05, 0.6}).value, 1.0);
  EXPECT_EQ(universal_projector({d, th0 + 0.2, 0.6}).value, 0.0);
  const auto edge = universal_projector({d, th0 - d, 0.6});
  EXPECT_TRUE(edge.boundary);
  EXPECT_EQ(edge.value, 0.5);
  EXPECT_THROW(universal_projector({0.0, 0.0, 0.0}), mobius::domain_error);
}

TEST(Projector, QuadratureWithinItsTailBoundOfIndicator) {
  for (double d : {0.1, 0.3})
    for (double ratio : {0.0, 0.5, 0.9, 1.2, 2.0, 5.0}) {
      const double th0 = geometry::constraint_theta(0.6);
      const ProjectionSpec p{d, th0 + ratio * d, 0.6};
      const auto q = universal_projector_quadrature(p);
      EXPECT_LE(q.error_bound, 1e-4 * (1 + 1e-12));
      EXPECT_LE(std::abs(q.value - universal_projector(p).value), q.error_bound + 1e-6) << d << " " << ratio;
    }
}

TEST(Projector, BoundaryAndIdempotence) {
  const double d = 0.1;
  const double th0 = geometry::constraint_theta(1.0);
  const auto b = universal_projector_quadrature({d, th0 + d, 1.0});
  EXPECT_TRUE(b.boundary);
  EXPECT_NEAR(b.value, 0.5, 5e-3);
  for (double x : {0.0, 0.03, 0.3}) {
    const ProjectionSpec p{d, th0 + x, 1.0};
    const double e = universal_projector(p).value;
    EXPECT_EQ(e * e, e);
    const double q = universal_projector_quadrature(p).value;
    EXPECT_NEAR(q * q, q, 2e-3);
    EXPECT_GE(q, -1e-3);
    EXPECT_LE(q, 1 + 1e-3);
  }
}

TEST(Circle, ProjectionIsIdempotentAndMatchesCircleState) {
  const FockVector f = projection::project_mobius_to_circle(states::fiducial(9.0, Offset::half));
  EXPECT_LT(distance(f, states::fiducial()), 1e-14);

  const states::StateLabel a{0.3, 1.0, 0.5, Offset::half};
  const FockVector once = project_mobius_to_circle(states::build_cs(a));
  const FockVector twice = project_mobius_to_circle(once);
  EXPECT_LE(distance(once, twice), 1e-15 * once.norm());
  const auto lbl = project_mobius_to_circle(a);
  EXPECT_LT(distance(once, circle_cs(lbl.l, lbl.phi)), 1e-13 * once.norm());
  EXPECT_NEAR(lbl.l, states::lprime(a), 0.0);

  const TorusFock t = build_torus_cs(0.3, 0.5, 1.0, 0.5);
  const FockVector chain = project_mobius_to_circle(j_marginal(t));
  const double lp = oracle::lprime(0.3, 1.0, 0.5, -1);
  EXPECT_LT(distance(chain, circle_cs(lp, 1.0)), 1e-10 * chain.norm());
}

TEST(Circle, RejectsVectorsThatAreNotCoherentStates) {
  EXPECT_THROW(project_mobius_to_circle(FockVector(Offset::integer, -1, {1.0, 5.0, 1.0, 3.0})), mobius::domain_error);
}
