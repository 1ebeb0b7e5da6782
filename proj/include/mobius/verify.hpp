#pragma once

// Identity checks run by `mobius verify`: each compares two independent
// evaluation routes of the library over a fixed grid and records the worst
// discrepancy.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "mobius/dynamics.hpp"
#include "mobius/geometry.hpp"
#include "mobius/projection.hpp"
#include "mobius/states.hpp"
#include "mobius/theta.hpp"

namespace mobius::verify {

struct VerificationReport {
  std::string check;
  std::string anchor;  // the identity being checked
  double max_error = 0;
  double tolerance = 0;
  bool pass = false;
  std::string grid;
};

inline VerificationReport make_report(std::string check, std::string anchor, double max_error,
                                      double tolerance, std::string grid) {
  const bool pass = std::isfinite(max_error) && max_error <= tolerance;
  return {std::move(check), std::move(anchor), max_error, tolerance, pass, std::move(grid)};
}

inline double rel_err(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

inline constexpr double kPi = std::numbers::pi;
inline constexpr std::uint64_t kSeed = 20240917;

inline std::vector<VerificationReport> theta_suite() {
  using C = std::complex<double>;
  using theta::ThetaArgument;
  std::vector<VerificationReport> out;

  double e1 = 0;
  for (double lp : linspace(-2, 2, 50)) {
    const C direct = theta::theta3(ThetaArgument<double>{C(0, lp / kPi), C(0, 1 / kPi)});
    const C dual = std::exp(lp * lp) * std::sqrt(kPi) * theta::theta3(ThetaArgument<double>{C(lp, 0), C(0, kPi)});
    e1 = std::max(e1, rel_err(direct, dual));
  }
  out.push_back(make_report("theta3_imaginary_modular", "theta_3(i l'/pi | i/pi) = exp(l'^2) sqrt(pi) theta_3(l' | i pi)",
                            e1, 1e-12, "l' in [-2, 2], 50 points"));

  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> u(-1, 1);
  double e2 = 0;
  for (int k = 0; k < 200; ++k) {
    const ThetaArgument<double> arg{C(u(rng), 0.5 * u(rng)), C(0.5 * u(rng), 0.3 + 0.7 * (u(rng) + 1))};
    e2 = std::max(e2, rel_err(theta::theta3_modular(arg), theta::theta3(arg)));
  }
  out.push_back(make_report("theta3_modular_transformation", "theta_3(nu | tau) = (-i tau)^{-1/2} e^{-i pi nu^2/tau} theta_3(nu/tau | -1/tau)",
                            e2, 1e-12, "200 random (nu, tau), |Re nu| <= 1, |Im nu| <= 0.5, Im tau in [0.3, 1.7]"));

  double e3 = 0;
  for (double nu : linspace(-1, 1, 41)) {
    const ThetaArgument<double> arg{C(nu, 0), C(0, kPi)};
    const C ratio = theta::theta3_derivative(arg) / theta::theta3(arg);
    e3 = std::max(e3, std::abs(theta::theta3_logderiv(arg) - ratio));
  }
  out.push_back(make_report("theta3_logderiv_product", "triple-product log-derivative = theta_3'/theta_3",
                            e3, 1e-12, "nu in [-1, 1], 41 points, tau = i pi"));

  double e4 = 0;
  for (double y : linspace(-2, 2, 21)) {
    const ThetaArgument<double> arg{C(0.1, y / kPi), C(0, 1 / kPi)};
    C direct = 0;
    for (int n = -60; n < 60; ++n) {
      const double h = n + 0.5;
      direct += std::exp(C(0, kPi) * arg.tau * (h * h) + C(0, 2 * kPi) * arg.nu * h);
    }
    e4 = std::max(e4, rel_err(theta::theta2(arg), direct));
  }
  out.push_back(make_report("theta2_half_period", "theta_2(nu|tau) = e^{i pi (tau/4 + nu)} theta_3(nu + tau/2 | tau)",
                            e4, 1e-12, "nu = 0.1 + i y/pi, y in [-2, 2], 21 points, tau = i/pi"));
  return out;
}

inline std::vector<VerificationReport> states_suite() {
  using states::StateLabel;
  std::vector<VerificationReport> out;
  const auto ls = linspace(-1.5, 1.5, 20);
  const auto phis = linspace(0, 4 * kPi, 20);

  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> ul(-1.5, 1.5), up(0, 4 * kPi);
  double e_ov = 0;
  for (Offset s : {Offset::integer, Offset::half})
    for (int k = 0; k < 50; ++k) {
      const StateLabel a{ul(rng), up(rng), 0.5, s};
      const StateLabel b{ul(rng), up(rng), 0.5, s};
      e_ov = std::max(e_ov, rel_err(states::overlap(a, b, states::OverlapRoute::fock),
                                    states::overlap(a, b, states::OverlapRoute::closed)));
    }
  out.push_back(make_report("overlap_dual_route", "<xi|eta> = theta(nu | i/pi), direct sum vs closed form", e_ov, 1e-12,
                            "100 random label pairs, r = 0.5, both sectors"));

  double e_n = 0, e_j = 0, e_u = 0, e_p = 0;
  for (Offset s : {Offset::integer, Offset::half})
    for (double l : ls)
      for (double phi : phis) {
        const StateLabel a{l, phi, 0.5, s};
        const double n_t = states::norm2(a, states::NormRoute::theta);
        e_n = std::max({e_n, std::abs(n_t - states::norm2(a, states::NormRoute::modular)) / n_t,
                        std::abs(n_t - states::norm2(a, states::NormRoute::fock)) / n_t});
        const double j_r = states::expect_J(a, states::ExpectJRoute::ratio);
        e_j = std::max({e_j, std::abs(j_r - states::expect_J(a, states::ExpectJRoute::theta_derivative)),
                        std::abs(j_r - states::expect_J(a, states::ExpectJRoute::product_series))});
        e_u = std::max(e_u, std::abs(states::expect_U(a, states::ExpectURoute::fock) -
                                     states::expect_U(a, states::ExpectURoute::closed)));
        const FockVector v = states::build_cs(a);
        double total = 0;
        for (std::size_t i = 0; i < v.size(); ++i) total += states::distribution(a, v.j_at(i));
        e_p = std::max(e_p, std::abs(total - 1));
      }
  const std::string grid = "l in [-1.5, 1.5] x phi in [0, 4pi], 20 x 20, r = 0.5, both sectors";
  out.push_back(make_report("norm_routes", "<xi|xi> = theta(i l'/pi | i/pi) = e^{l'^2} sqrt(pi) theta_3(l' - s | i pi)", e_n,
                            1e-12, grid));
  out.push_back(make_report("expect_J_routes", "<J> = ratio = l' + theta_3'/2theta_3 = l' + triple-product series", e_j, 1e-10,
                            grid));
  out.push_back(make_report("expect_U_routes", "<U> = e^{-1/4} e^{i phi} theta_2/theta_3 vs shifted-vector overlap", e_u,
                            1e-12, grid));
  out.push_back(make_report("distribution_normalisation", "SUM_j P(j) = 1", e_p, 1e-12, grid));

  double e_g = 0;
  for (double lp : linspace(0, 1, 41))
    for (int j = -12; j <= 12; ++j) {
      const StateLabel a{lp, 0.0, 0.0};
      e_g = std::max(e_g, std::abs(states::distribution(a, j) - states::distribution_gaussian(lp, j)));
    }
  out.push_back(make_report("distribution_gaussian_law", "P(j) ~ e^{-(j - l')^2}/sqrt(pi)", e_g, 1.1e-4,
                            "l' in [0, 1], 41 points, j in [-12, 12]"));

  double e_q = 0;
  for (double r : {0.1, 0.25, 0.5, 0.75})
    for (double target : {-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5})
      for (Offset s : {Offset::integer, Offset::half}) {
        const StateLabel a{target - r, kPi, r, s};
        e_q = std::max(e_q, std::abs(states::expect_J(a) - target));
      }
  out.push_back(make_report("half_integer_quantisation", "<J> = l + r at phi = pi when l + r in Z/2", e_q, 1e-12,
                            "r in {0.1, 0.25, 0.5, 0.75}, l + r in {-1.5, ..., 1.5}"));
  return out;
}

inline std::vector<VerificationReport> dynamics_suite() {
  std::vector<VerificationReport> out;
  double e_s = 0, e_t = 0;
  for (double r : {0.1, 0.5, 0.9})
    for (double L0 : {-1.0, 0.0, 0.7})
      for (double j = -3; j <= 3; j += 0.5) {
        const double general = dynamics::energy_spectrum(j, L0, kPi, r).E;
        e_s = std::max(e_s, std::abs(general - dynamics::energy_quantized(j, L0, r)));
        e_t = std::max(e_t, std::abs(general - dynamics::energy_spectrum(-j, -L0, kPi, r).E));
      }
  out.push_back(make_report("spectrum_reduction", "E(j, phi = pi) = 2 j^2/(4 + r^2) + L0^2/2", e_s, 1e-12,
                            "j in {-3, ..., 3} + s, r in {0.1, 0.5, 0.9}, L0 in {-1, 0, 0.7}"));
  out.push_back(make_report("spectrum_time_reversal", "E(j, L0) = E(-j, -L0)", e_t, 0.0, "same grid"));

  double e_l = 0, e_k = 0;
  for (double phi : linspace(0, 4 * kPi, 50))
    for (double w : linspace(-2, 2, 50)) {
      const dynamics::MobiusState s{phi, w, 0.1, 0.3 - 0.2 * w};
      const double strip = dynamics::mobius_lagrangian_embedding(s, 0.5);
      const double torus = dynamics::torus_lagrangian(dynamics::constrained_torus_state(s), {1.0, 0.5, 0.0});
      e_l = std::max(e_l, std::abs(torus - strip));
      e_k = std::max(e_k, std::abs(dynamics::mobius_lagrangian(s, 0.5) - strip));
    }
  out.push_back(make_report("torus_to_strip_lagrangian", "L_torus(theta = (phi + pi)/2) = L_strip", e_l, 1e-10,
                            "phi in [0, 4pi] x phi_dot in [-2, 2], 50 x 50, r = 0.5"));
  out.push_back(make_report("strip_lagrangian_closed_form", "closed-form L = embedding kinetic energy", e_k, 1e-10,
                            "same grid"));

  const dynamics::MobiusState s0{0.3, 1.1, 0.0, 0.4};
  const auto c0 = dynamics::conserved(s0, 0.5);
  const auto traj = dynamics::integrate_mobius(s0, 0.5, 20.0, 1e-3);
  double dE = 0, dL = 0, dJ = 0;
  for (std::size_t i = 0; i < traj.states.size(); i += 97) {
    const auto c = dynamics::conserved(traj.states[i], 0.5);
    dE = std::max(dE, std::abs(c.E - c0.E) / std::abs(c0.E));
    dL = std::max(dL, std::abs(c.L0 - c0.L0) / std::abs(c0.L0));
    dJ = std::max(dJ, std::abs(c.J - c0.J) / std::abs(c0.J));
  }
  out.push_back(make_report("conservation", "E, L0 and the loop action constant along the flow", std::max({dE, dL, dJ}),
                            1e-8, "r = 0.5, t in [0, 20], dt = 1e-3"));
  return out;
}

inline std::vector<VerificationReport> projection_suite() {
  std::vector<VerificationReport> out;
  double e_rank = 0;
  for (double l : {-0.5, 0.0, 0.8})
    for (double phi : {0.3, kPi, 2.5})
      for (double theta : {0.0, 1.0, geometry::constraint_theta(phi)}) {
        const auto sv = projection::singular_values(projection::build_torus_cs(l, theta, phi, 0.5));
        e_rank = std::max(e_rank, sv[1] / sv[0]);
      }
  out.push_back(make_report("torus_separability", "sigma_2 / sigma_1 of the torus coefficient grid", e_rank, 1e-12,
                            "l in {-0.5, 0, 0.8}, phi in {0.3, pi, 2.5}, 3 theta values, r = 0.5"));

  double e_q = 0;
  for (double ratio : {0.0, 0.5, 2.0, 5.0}) {
    const double delta = 0.1;
    const projection::ProjectionSpec p{delta, geometry::constraint_theta(0.4) + ratio * delta, 0.4};
    e_q = std::max(e_q, std::abs(projection::universal_projector_quadrature(p).value -
                                 projection::universal_projector(p).value));
  }
  out.push_back(make_report("projector_quadrature", "Dirichlet integral = window indicator", e_q, 1e-3,
                            "|x|/delta in {0, 0.5, 2, 5}, delta = 0.1"));

  double e_o = 0, e_c = 0;
  for (double la : {-0.7, 0.2})
    for (double lb : {0.1, 0.9})
      for (double pa : {0.0, 1.3})
        for (double pb : {kPi, 4.0}) {
          const states::StateLabel a{la, pa, 0.5}, b{lb, pb, 0.5};
          e_o = std::max(e_o, rel_err(projection::project_overlap(a, b), projection::project_overlap_series(a, b)));
          const states::StateLabel ca{la, pa, 0.0}, cb{lb, pb, 0.0};
          e_c = std::max(e_c, rel_err(projection::project_overlap(ca, cb), projection::circle_overlap(la, pa, lb, pb)));
        }
  out.push_back(make_report("projected_overlap", "sandwiched torus quotient = strip series", e_o, 1e-10,
                            "16 label pairs, r = 0.5"));
  out.push_back(make_report("projected_overlap_circle_limit", "r = 0 projected overlap = circle overlap", e_c, 1e-10,
                            "16 label pairs, r = 0"));
  return out;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"theta", "states", "dynamics", "projection", "all"};
  return names;
}

inline std::vector<VerificationReport> run_suite(const std::string& name) {
  if (name == "theta") return theta_suite();
  if (name == "states") return states_suite();
  if (name == "dynamics") return dynamics_suite();
  if (name == "projection") return projection_suite();
  if (name == "all") {
    std::vector<VerificationReport> out;
    for (auto* f : {&theta_suite, &states_suite, &dynamics_suite, &projection_suite}) {
      auto part = (*f)();
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw domain_error("unknown verification suite '" + name + "'");
}

}  // namespace mobius::verify
