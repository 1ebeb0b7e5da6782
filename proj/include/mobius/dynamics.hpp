#pragma once

// Classical mechanics of a unit-mass particle on the Moebius strip and on the
// torus it is cut from (central radius R = 1 unless stated).
//
// Strip Lagrangian, with c = cos(phi/2), s = sin(phi/2), rho = 1 + r c and
// sigma the SignConvention z_sign:
//
//   L = 1/2 { phi_dot^2 [rho^2 + r^2/4] + sigma r c Z0_dot phi_dot + Z0_dot^2 }
//
// This is exactly the kinetic energy of the embedding. Z0 is cyclic, so
// L0 = dL/dZ0_dot is conserved, and in terms of (phi_dot, L0) the angular
// momentum and the energy read
//
//   J = phi_dot D + sigma (r/2) c L0,      D = rho^2 + (r^2/4) s^2
//   H = 1/2 { phi_dot^2 D + L0^2 }.
//
// J itself is not conserved (H depends on phi). The conserved action is its
// average over one closed loop of the strip, phi in [0, 4 pi).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "mobius/errors.hpp"
#include "mobius/geometry.hpp"

namespace mobius::dynamics {

struct MobiusState {
  double phi = 0;
  double phi_dot = 0;
  double z0 = 0;
  double z0_dot = 0;
};

struct TorusState {
  double theta = 0;
  double theta_dot = 0;
  double phi = 0;
  double phi_dot = 0;
  double z0 = 0;
  double z0_dot = 0;
};

struct MobiusMomenta {
  double p_phi;
  double L0;
};

// J here is the action variable (loop average of p_phi), not the
// instantaneous momentum.
struct ConservedSet {
  double J;
  double L0;
  double E;
};

struct TorusConservedSet {
  double J0;
  double L0;
  double p_theta;
  double E;
};

struct SpectrumEntry {
  double j;
  double L0;
  double E;
};

namespace detail {

struct StripTerms {
  double c, s, rho, D;
};

inline StripTerms strip_terms(double phi, double r) {
  const double c = std::cos(phi / 2);
  const double s = std::sin(phi / 2);
  const double rho = 1.0 + r * c;
  return {c, s, rho, rho * rho + 0.25 * r * r * s * s};
}

inline void validate(const MobiusState& s) {
  if (!std::isfinite(s.phi) || !std::isfinite(s.phi_dot) || !std::isfinite(s.z0) ||
      !std::isfinite(s.z0_dot))
    throw domain_error("MobiusState: non-finite component");
}

// Canonical coordinates (phi, J, Z0, L0).
using Canonical = std::array<double, 4>;

inline double phidot(const Canonical& y, double r, SignConvention sc) {
  const auto t = strip_terms(y[0], r);
  return (y[1] - sc.z_sign * 0.5 * r * t.c * y[3]) / t.D;
}

inline Canonical hamilton_rhs(const Canonical& y, double r, SignConvention sc) {
  const double L0 = y[3];
  const auto t = strip_terms(y[0], r);
  const double w = (y[1] - sc.z_sign * 0.5 * r * t.c * L0) / t.D;
  // dH/dphi = w du/dphi - w^2 dD/dphi / 2, u = J - sigma (r/2) c L0.
  const double du = sc.z_sign * 0.25 * r * t.s * L0;
  const double dD = -r * t.rho * t.s + 0.25 * r * r * t.s * t.c;
  const double dH_dphi = w * du - 0.5 * w * w * dD;
  const double z0_dot = L0 - sc.z_sign * 0.5 * r * t.c * w;
  return {w, -dH_dphi, z0_dot, 0.0};
}

inline Canonical rk4_step(const Canonical& y, double h, double r, SignConvention sc) {
  auto axpy = [](const Canonical& a, double k, const Canonical& d) {
    return Canonical{a[0] + k * d[0], a[1] + k * d[1], a[2] + k * d[2], a[3] + k * d[3]};
  };
  const Canonical k1 = hamilton_rhs(y, r, sc);
  const Canonical k2 = hamilton_rhs(axpy(y, h / 2, k1), r, sc);
  const Canonical k3 = hamilton_rhs(axpy(y, h / 2, k2), r, sc);
  const Canonical k4 = hamilton_rhs(axpy(y, h, k3), r, sc);
  Canonical out;
  for (int i = 0; i < 4; ++i) out[i] = y[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Strip Lagrangian and momenta

// Closed form. With sc = kTorusSign the cross term is -r c Z0_dot phi_dot.
inline double mobius_lagrangian(const MobiusState& s, double r, SignConvention sc = kTorusSign) {
  validate_strip_radius(r);
  validate(sc);
  detail::validate(s);
  const auto t = detail::strip_terms(s.phi, r);
  return 0.5 * (s.phi_dot * s.phi_dot * (t.rho * t.rho + 0.25 * r * r) +
                sc.z_sign * r * t.c * s.z0_dot * s.phi_dot + s.z0_dot * s.z0_dot);
}

// The textbook form with the cross term fixed to -r c Z0_dot phi_dot,
// regardless of which strip parametrisation is in use.
inline double mobius_lagrangian_printed(const MobiusState& s, double r) {
  validate_strip_radius(r);
  detail::validate(s);
  const auto t = detail::strip_terms(s.phi, r);
  return 0.5 * (s.phi_dot * s.phi_dot * (t.rho * t.rho + 0.25 * r * r) -
                r * t.c * s.z0_dot * s.phi_dot + s.z0_dot * s.z0_dot);
}

// 1/2 |dP/dt|^2 with the velocity of the embedded point obtained by a
// complex-step derivative of the embedding along (phi_dot, Z0_dot).
inline double mobius_lagrangian_embedding(const MobiusState& s, double r,
                                          SignConvention sc = kTorusSign) {
  validate_strip_radius(r);
  validate(sc);
  detail::validate(s);
  using C = std::complex<double>;
  constexpr double h = 1e-30;
  const auto p = geometry::mobius_embed<C>(C(s.phi, h * s.phi_dot), 1.0, r,
                                           C(s.z0, h * s.z0_dot), sc);
  const double vx = p.x.imag() / h, vy = p.y.imag() / h, vz = p.z.imag() / h;
  return 0.5 * (vx * vx + vy * vy + vz * vz);
}

inline MobiusMomenta mobius_momenta(const MobiusState& s, double r, SignConvention sc = kTorusSign) {
  validate_strip_radius(r);
  validate(sc);
  detail::validate(s);
  const auto t = detail::strip_terms(s.phi, r);
  const double L0 = s.z0_dot + sc.z_sign * 0.5 * r * t.c * s.phi_dot;
  const double p_phi = s.phi_dot * t.D + sc.z_sign * 0.5 * r * t.c * L0;
  return {p_phi, L0};
}

inline double mobius_phidot_from_J(double J, double L0, double phi, double r,
                                   SignConvention sc = kTorusSign) {
  validate_strip_radius(r);
  validate(sc);
  return detail::phidot({phi, J, 0.0, L0}, r, sc);
}

// H = 1/2 { phidot^2 D + L0^2 }, phidot from (J, L0).
inline double mobius_hamiltonian(double J, double L0, double phi, double r,
                                 SignConvention sc = kTorusSign) {
  const double w = mobius_phidot_from_J(J, L0, phi, r, sc);
  const auto t = detail::strip_terms(phi, r);
  return 0.5 * (w * w * t.D + L0 * L0);
}

// Variant with the bracket rho^2 - (r^2/4) cos(phi) in place of D. It agrees
// with mobius_hamiltonian only where cos(phi/2) = 0.
inline double mobius_hamiltonian_printed(double J, double L0, double phi, double r,
                                         SignConvention sc = kTorusSign) {
  const double w = mobius_phidot_from_J(J, L0, phi, r, sc);
  const auto t = detail::strip_terms(phi, r);
  return 0.5 * (w * w * (t.rho * t.rho - 0.25 * r * r * std::cos(phi)) + L0 * L0);
}

// Action variable J = (1/4pi) \oint p_phi dphi at fixed (E, L0); direction is
// the sign of phi_dot. The integrand is smooth and 4 pi periodic, so the
// trapezoidal rule converges geometrically.
inline double action_variable(double E, double L0, double r, int direction) {
  validate_strip_radius(r);
  const double kinetic = std::max(0.0, 2 * E - L0 * L0);
  constexpr int n = 512;
  double sum = 0;
  for (int k = 0; k < n; ++k) {
    const double phi = 4 * std::numbers::pi * k / n;
    sum += std::sqrt(detail::strip_terms(phi, r).D);
  }
  return (direction > 0 ? 1.0 : direction < 0 ? -1.0 : 0.0) * std::sqrt(kinetic) * sum / n;
}

inline ConservedSet conserved(const MobiusState& s, double r, SignConvention sc = kTorusSign) {
  const auto m = mobius_momenta(s, r, sc);
  const double E = mobius_hamiltonian(m.p_phi, m.L0, s.phi, r, sc);
  const int dir = s.phi_dot > 0 ? 1 : s.phi_dot < 0 ? -1 : 0;
  return {action_variable(E, m.L0, r, dir), m.L0, E};
}

// ---------------------------------------------------------------------------
// Integration

struct Trajectory {
  double dt = 0;
  int substeps = 1;  // RK4 steps per output interval after step halving
  std::vector<double> t;
  std::vector<MobiusState> states;
};

struct IntegratorOptions {
  double max_energy_drift = 1e-6;  // relative; exceeded -> halve the step
  int max_halvings = 6;
};

// Fixed-step RK4 on Hamilton's equations in (phi, J, Z0, L0). Output is
// sampled every dt; if the relative energy drift over the run exceeds
// max_energy_drift the inner step is halved and the run repeated.
inline Trajectory integrate_mobius(const MobiusState& s0, double r, double t_end, double dt,
                                   SignConvention sc = kTorusSign, IntegratorOptions opt = {}) {
  validate_strip_radius(r);
  validate(sc);
  detail::validate(s0);
  if (!(dt > 0) || !(t_end > 0)) throw domain_error("integrate_mobius: need dt > 0 and t_end > 0");

  const auto m0 = mobius_momenta(s0, r, sc);
  const detail::Canonical y0{s0.phi, m0.p_phi, s0.z0, m0.L0};
  const double E0 = mobius_hamiltonian(m0.p_phi, m0.L0, s0.phi, r, sc);
  const auto steps = static_cast<long long>(std::llround(t_end / dt));
  const double energy_scale = std::max(std::abs(E0), 1e-300);

  double drift = 0;
  for (int halving = 0, substeps = 1; halving <= opt.max_halvings; ++halving, substeps *= 2) {
    Trajectory traj;
    traj.dt = dt;
    traj.substeps = substeps;
    traj.t.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    auto emit = [&](long long k, const detail::Canonical& y) {
      const double w = detail::phidot(y, r, sc);
      const double c = std::cos(y[0] / 2);
      traj.t.push_back(k * dt);
      traj.states.push_back({y[0], w, y[2], y[3] - sc.z_sign * 0.5 * r * c * w});
    };

    detail::Canonical y = y0;
    emit(0, y);
    const double h = dt / substeps;
    drift = 0;
    for (long long k = 1; k <= steps; ++k) {
      for (int i = 0; i < substeps; ++i) y = detail::rk4_step(y, h, r, sc);
      drift = std::max(drift, std::abs(mobius_hamiltonian(y[1], y[3], y[0], r, sc) - E0));
      emit(k, y);
    }
    if (drift / energy_scale <= opt.max_energy_drift) return traj;
  }
  throw step_rejected_error("integrate_mobius: energy drift above bound after step halving",
                            drift / energy_scale);
}

// ---------------------------------------------------------------------------
// Torus

// 1/2 { phi_dot^2 (R + r sin th)^2 + r^2 th_dot^2 - 2 r sin th Z0_dot th_dot + Z0_dot^2 },
// the kinetic energy of the torus embedding with Z = Z0 + r cos(theta).
inline double torus_lagrangian(const TorusState& s, const geometry::TorusGeometry& g) {
  geometry::validate(g);
  const double st = std::sin(s.theta);
  const double rho = g.R + g.r * st;
  return 0.5 * (s.phi_dot * s.phi_dot * rho * rho + g.r * g.r * s.theta_dot * s.theta_dot -
                2 * g.r * st * s.z0_dot * s.theta_dot + s.z0_dot * s.z0_dot);
}

// Same with an extra (r^2/4) phi_dot^2 inside the first bracket. Not the
// kinetic energy of the embedding; kept for comparison.
inline double torus_lagrangian_printed(const TorusState& s, const geometry::TorusGeometry& g) {
  geometry::validate(g);
  const double st = std::sin(s.theta);
  const double rho = g.R + g.r * st;
  return 0.5 * (s.phi_dot * s.phi_dot * (rho * rho + 0.25 * g.r * g.r) +
                g.r * g.r * s.theta_dot * s.theta_dot - 2 * g.r * st * s.z0_dot * s.theta_dot +
                s.z0_dot * s.z0_dot);
}

inline double torus_lagrangian_embedding(const TorusState& s, const geometry::TorusGeometry& g) {
  geometry::validate(g);
  using C = std::complex<double>;
  constexpr double h = 1e-30;
  const auto p = geometry::torus_embed<C>(C(s.theta, h * s.theta_dot), C(s.phi, h * s.phi_dot),
                                          g.R, g.r, C(s.z0, h * s.z0_dot));
  const double vx = p.x.imag() / h, vy = p.y.imag() / h, vz = p.z.imag() / h;
  return 0.5 * (vx * vx + vy * vy + vz * vz);
}

// Torus state obeying theta = (phi + pi)/2 and theta_dot = phi_dot/2.
inline TorusState constrained_torus_state(const MobiusState& s) {
  return {geometry::constraint_theta(s.phi), 0.5 * s.phi_dot, s.phi, s.phi_dot, s.z0, s.z0_dot};
}

// Canonical momenta and energy for R = 1.
inline TorusConservedSet torus_momenta(const TorusState& s, double r) {
  validate_strip_radius(r);
  const double st = std::sin(s.theta);
  const double rho = 1.0 + r * st;
  return {s.phi_dot * rho * rho, s.z0_dot - r * st * s.theta_dot,
          r * r * s.theta_dot - r * st * s.z0_dot, torus_lagrangian(s, {1.0, r, 0.0})};
}

inline constexpr double kTorusSingularityTol = 1e-10;

// H = 1/2 { J0^2/(1 + r sin th)^2 + (p_th + r sin th L0)^2/(r cos th)^2 + L0^2 }.
inline double torus_hamiltonian(double J0, double L0, double p_theta, double theta, double r) {
  validate_strip_radius(r);
  const double ct = std::cos(theta);
  if (std::abs(ct) < kTorusSingularityTol || r == 0.0)
    throw coordinate_singularity_error("torus_hamiltonian: r cos(theta) vanishes");
  const double st = std::sin(theta);
  const double rho = 1.0 + r * st;
  const double a = p_theta + r * st * L0;
  return 0.5 * (J0 * J0 / (rho * rho) + a * a / (r * r * ct * ct) + L0 * L0);
}

// ---------------------------------------------------------------------------
// Quantum spectrum: |j> is an eigenvector of the Hamiltonian with J -> j.

enum class SpectrumForm {
  legendre,  // H built from D = rho^2 + (r^2/4) sin^2(phi/2), consistent with the Lagrangian
  printed,   // bracket rho^2 - (r^2/4) cos(phi)
};

inline SpectrumEntry energy_spectrum(double j, double L0, double phi, double r,
                                     SpectrumForm form = SpectrumForm::legendre,
                                     SignConvention sc = kTorusSign) {
  const double E = form == SpectrumForm::legendre ? mobius_hamiltonian(j, L0, phi, r, sc)
                                                  : mobius_hamiltonian_printed(j, L0, phi, r, sc);
  return {j, L0, E};
}

// Energy on the quantised angles phi = (2k+1) pi: E = 2 j^2 / (4 + r^2) + L0^2 / 2.
inline double energy_quantized(double j, double L0, double r) {
  validate_strip_radius(r);
  return 2 * j * j / (4 + r * r) + 0.5 * L0 * L0;
}

}  // namespace mobius::dynamics
