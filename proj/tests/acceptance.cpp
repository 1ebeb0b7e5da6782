// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "mobius/mobius.hpp"
#include "support/oracles.hpp"

using namespace mobius;
using C = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

struct Outcome {
  double measured;
  double tolerance;
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& run) {
  Outcome o;
  try {
    o = run();
  } catch (const std::exception& e) {
    o = {NAN, NAN, false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s  %2d  %-34s measured=%.3e  tol=%.1e  %s\n", o.pass ? "PASS" : "FAIL", id, name, o.measured,
              o.tolerance, o.detail.c_str());
  std::fflush(stdout);
}

double rel(C a, C b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

Outcome theta_modular() {
  double worst = 0;
  for (double lp : linspace(-2, 2, 50)) {
    const C lhs = theta::theta3(theta::ThetaArgument<double>{C(0, lp / kPi), C(0, 1 / kPi)});
    const C rhs = std::exp(lp * lp) * std::sqrt(kPi) * theta::theta3(theta::ThetaArgument<double>{C(lp, 0), C(0, kPi)});
    worst = std::max(worst, rel(lhs, rhs));
    // Independent lattice sum guards against both sides sharing a bug.
    worst = std::max(worst, rel(lhs, oracle::theta3(C(0, lp / kPi), C(0, 1 / kPi))));
  }
  return {worst, 1e-12, worst <= 1e-12, "50 l' in [-2, 2], plus brute-force lattice sum"};
}

Outcome overlap_closed_form() {
  auto gen = oracle::rng(101);
  std::uniform_real_distribution<double> ul(-2.5, 2.5), up(0, 4 * kPi);
  double worst = 0;
  int pairs = 0;
  while (pairs < 100) {
    const Offset s = pairs % 2 ? Offset::half : Offset::integer;
    const states::StateLabel a{ul(gen), up(gen), 0.5, s}, b{ul(gen), up(gen), 0.5, s};
    const double la = states::lprime(a), lb = states::lprime(b);
    if (std::abs(la) > 2 || std::abs(lb) > 2) continue;
    const C closed = states::overlap(a, b, states::OverlapRoute::closed);
    const C fock = states::overlap(a, b, states::OverlapRoute::fock);
    const C brute = oracle::overlap(la, a.phi, lb, b.phi, offset_value(s));
    worst = std::max({worst, rel(fock, closed), rel(brute, closed)});
    ++pairs;
  }
  return {worst, 1e-12, worst <= 1e-12, "100 random pairs, both sectors"};
}

Outcome expect_J_routes() {
  double route_gap = 0, quantised = 0;
  for (Offset s : {Offset::integer, Offset::half})
    for (double l : linspace(-2, 2, 20))
      for (double phi : linspace(0, 4 * kPi * 19 / 20, 20)) {
        const states::StateLabel a{l, phi, 0.5, s};
        const double p = states::expect_J(a, states::ExpectJRoute::product_series);
        const double d = states::expect_J(a, states::ExpectJRoute::theta_derivative);
        const double q = states::expect_J(a, states::ExpectJRoute::ratio);
        const double o = oracle::expect_J(states::lprime(a), offset_value(s));
        route_gap = std::max({route_gap, std::abs(p - d), std::abs(p - q), std::abs(p - o)});
      }
  // phi = pi, -3 pi, 5 pi all have sin(phi/2) = 1 and cos(phi/2) = 0, so l' = l + r.
  for (Offset s : {Offset::integer, Offset::half})
    for (double r : {0.25, 0.5, 0.75})
      for (int k = -4; k <= 4; ++k)
        for (double phi : {kPi, -3 * kPi, 5 * kPi}) {
          const double l = 0.5 * k - r;
          const double J = states::expect_J({l, phi, r, s});
          quantised = std::max(quantised, std::abs(J - (l + r)));
        }
  const bool pass = route_gap <= 1e-10 && quantised <= 1e-12;
  char buf[160];
  std::snprintf(buf, sizeof buf, "route gap %.2e (tol 1e-10), quantised |<J> - (l+r)| %.2e (tol 1e-12)", route_gap,
                quantised);
  return {route_gap, 1e-10, pass, buf};
}

Outcome gaussian_law() {
  double worst = 0;
  for (Offset s : {Offset::integer, Offset::half})
    for (double lp : linspace(0, 1, 101)) {
      const states::StateLabel a{lp - 0.5, kPi, 0.5, s};
      for (int n = -12; n <= 12; ++n) {
        const double j = n + offset_value(s);
        const double exact = static_cast<double>(std::exp(2 * static_cast<oracle::ld>(lp) * j - j * j) /
                                                 oracle::moment(lp, offset_value(s), 0));
        worst = std::max(worst, std::abs(states::distribution(a, j) - states::distribution_gaussian(states::lprime(a), j)));
        worst = std::max(worst, std::abs(exact - states::distribution_gaussian(lp, j)));
      }
    }
  return {worst, 1.1e-4, worst <= 1.1e-4, "l' in [0, 1], both sectors, |j| <= 12"};
}

Outcome spectrum_reduction() {
  double worst = 0;
  bool symmetric = true;
  for (Offset s : {Offset::integer, Offset::half})
    for (double r : {0.1, 0.5, 0.9})
      for (int n = -3; n <= 3; ++n)
        for (double L0 : {-1.0, 0.0, 0.6}) {
          const double j = n + offset_value(s);
          const double ref = 2 * j * j / (4 + r * r) + L0 * L0 / 2;
          worst = std::max(worst, std::abs(dynamics::energy_spectrum(j, L0, kPi, r).E - ref));
          for (double phi : {0.0, 0.7, kPi, 4.0})
            symmetric = symmetric &&
                        dynamics::energy_spectrum(j, L0, phi, r).E == dynamics::energy_spectrum(-j, -L0, phi, r).E;
        }
  return {worst, 1e-12, worst <= 1e-12 && symmetric, symmetric ? "T-symmetry exact" : "T-symmetry broken"};
}

Outcome conservation() {
  auto gen = oracle::rng(6);
  std::uniform_real_distribution<double> u(-1, 1);
  const dynamics::MobiusState s0{2 * kPi * (u(gen) + 1), 1.5 * u(gen), u(gen), u(gen)};
  const double r = 0.5;
  const auto c0 = dynamics::conserved(s0, r);
  const auto traj = dynamics::integrate_mobius(s0, r, 100.0, 1e-3);
  double dE = 0, dL = 0, dJ = 0;
  for (const auto& st : traj.states) {
    const auto c = dynamics::conserved(st, r);
    dE = std::max(dE, std::abs(c.E - c0.E) / std::abs(c0.E));
    dL = std::max(dL, std::abs(c.L0 - c0.L0) / std::max(std::abs(c0.L0), 1e-300));
    dJ = std::max(dJ, std::abs(c.J - c0.J) / std::max(std::abs(c0.J), 1e-300));
  }
  const dynamics::MobiusState c{0.4, -0.8, 0.2, 0.5};
  const auto cyl = dynamics::integrate_mobius(c, 0.0, 100.0, 1e-3);
  double dc = 0;
  for (std::size_t i = 0; i < cyl.states.size(); ++i) {
    const double t = cyl.t[i];
    dc = std::max({dc, std::abs(cyl.states[i].phi - (c.phi + c.phi_dot * t)),
                   std::abs(cyl.states[i].z0 - (c.z0 + c.z0_dot * t)),
                   std::abs(cyl.states[i].phi_dot - c.phi_dot), std::abs(cyl.states[i].z0_dot - c.z0_dot)});
  }
  const double drift = std::max({dE, dL, dJ});
  char buf[160];
  std::snprintf(buf, sizeof buf, "dE %.1e dL0 %.1e dJ %.1e (tol 1e-8), cylinder %.1e (tol 1e-10)", dE, dL, dJ, dc);
  return {drift, 1e-8, drift <= 1e-8 && dc <= 1e-10, buf};
}

Outcome torus_reduction() {
  double worst = 0, printed = 0;
  for (double phi : linspace(-2 * kPi, 2 * kPi, 50))
    for (double w : linspace(-3, 3, 50)) {
      const dynamics::MobiusState s{phi, w, 0.3, 0.4 - 0.3 * w};
      const auto t = dynamics::constrained_torus_state(s);
      const geometry::TorusGeometry g{1.0, 0.5, 0.0};
      const double lt = dynamics::torus_lagrangian(t, g);
      worst = std::max(worst, std::abs(lt - dynamics::mobius_lagrangian_embedding(s, 0.5, kTorusSign)));
      worst = std::max(worst, std::abs(lt - dynamics::mobius_lagrangian(s, 0.5, kTorusSign)));
      printed = std::max(printed, std::abs(dynamics::torus_lagrangian_printed(t, g) - lt));
    }
  char buf[120];
  std::snprintf(buf, sizeof buf, "50x50 grid; printed-form discrepancy up to %.3g (reported only)", printed);
  return {worst, 1e-10, worst <= 1e-10, buf};
}

Outcome projector() {
  const double d = 0.1, phi = 0.6;
  const double th0 = geometry::constraint_theta(phi);
  double worst = 0;
  for (double ratio : {0.0, 0.5, 2.0, 5.0})
    for (double sign : {1.0, -1.0}) {
      const projection::ProjectionSpec p{d, th0 + sign * ratio * d, phi};
      worst = std::max(worst, std::abs(projection::universal_projector_quadrature(p).value -
                                       projection::universal_projector(p).value));
    }
  const auto edge = projection::universal_projector_quadrature({d, th0 + d, phi});
  const double bgap = std::abs(edge.value - 0.5);
  char buf[120];
  std::snprintf(buf, sizeof buf, "boundary value %.6f (tol 0.5 +/- 5e-3)", edge.value);
  return {worst, 1e-3, worst <= 1e-3 && bgap <= 5e-3 && edge.boundary, buf};
}

Outcome projection_chain() {
  double worst = 0, rank = 0;
  for (double la : {-1.0, -0.3, 0.0, 0.8})
    for (double pa : {0.0, 1.3, 4.0})
      for (double pb : {0.5, 3.0, 9.0}) {
        const states::StateLabel a{la, pa, 0.0}, b{0.25, pb, 0.0};
        const C v = projection::project_overlap(a, b);
        worst = std::max({worst, rel(v, projection::circle_overlap(la, pa, 0.25, pb)),
                          rel(v, oracle::overlap(la, pa, 0.25, pb, 0.0))});
      }
  for (double theta : {0.0, 1.0, 2.5})
    for (double phi : {0.3, kPi, 5.0})
      for (double l : {-0.5, 0.4}) {
        const auto sv = projection::singular_values(projection::build_torus_cs(l, theta, phi, 0.5));
        rank = std::max(rank, sv[1] / sv[0]);
      }
  char buf[120];
  std::snprintf(buf, sizeof buf, "sigma_2/sigma_1 max %.2e (tol 1e-12)", rank);
  return {worst, 1e-10, worst <= 1e-10 && rank <= 1e-12, buf};
}

Outcome fermion_sector() {
  const double r = 0.5;
  std::set<double> realised;
  double off_lattice = 0, cover_gap = 0;
  bool two_pi_distinct = true;
  for (double l : {-1.0, -0.5, 0.0, 0.5, 1.0})
    for (const auto& q : states::quantization_scan(r, l, Offset::half)) {
      const double J = q.expect_J;
      off_lattice = std::max(off_lattice, std::abs(J - 0.5 - std::round(J - 0.5)));
      off_lattice = std::max(off_lattice, std::abs(J - oracle::expect_J(q.lprime, 0.5)));
      realised.insert(std::round(J - 0.5) + 0.5);
      // Double cover: phi + 4 pi returns the same state, phi + 2 pi does not.
      const states::StateLabel a4{l, q.phi + 4 * kPi, r, Offset::half};
      const states::StateLabel a2{l, q.phi + 2 * kPi, r, Offset::half};
      cover_gap = std::max(cover_gap, std::abs(states::expect_J(a4) - J));
      two_pi_distinct = two_pi_distinct && std::abs(states::expect_J(a2) - J) > 0.5;
    }
  const std::set<double> expected{-1.5, -0.5, 0.5, 1.5};
  // The integer sector at the same angles realises integers only.
  bool integer_sector = true;
  for (double l : {-1.0, 0.0, 1.0})
    for (const auto& q : states::quantization_scan(r, l + 0.5, Offset::integer))
      integer_sector = integer_sector && std::abs(q.expect_J - std::round(q.expect_J)) <= 1e-12;
  std::string detail = "realised <J>:";
  for (double v : realised) detail += " " + std::to_string(v).substr(0, std::to_string(v).find('.') + 2);
  const double worst = std::max(off_lattice, cover_gap);
  const bool pass = worst <= 1e-12 && realised == expected && two_pi_distinct && integer_sector;
  if (!two_pi_distinct) detail += "; phi+2pi did not change <J>";
  if (!integer_sector) detail += "; integer sector left Z";
  return {worst, 1e-12, pass, detail};
}

}  // namespace

int main() {
  report(1, "theta modular identity", theta_modular);
  report(2, "overlap closed form", overlap_closed_form);
  report(3, "<J> triple-path agreement", expect_J_routes);
  report(4, "Gaussian distribution law", gaussian_law);
  report(5, "spectrum reduction", spectrum_reduction);
  report(6, "dynamics conservation", conservation);
  report(7, "torus to strip reduction", torus_reduction);
  report(8, "universal projector", projector);
  report(9, "projection chain", projection_chain);
  report(10, "fermion sector", fermion_sector);
  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
