#pragma once

// Torus coherent states, their factorisation into a strip part and an
// auxiliary part, the projected strip overlap, and the constraint projector.
//
// On the torus the label factorises as xi_torus = xi_MS * xi_aux with
//
//   xi_MS  = exp(-(l - r sin(phi/2)) + ln(1 + r cos(phi/2)) + i phi)
//   xi_aux = exp(-2 pi sin^2(phi) - r (cos(theta) + sin(phi/2))
//                + ln((1 + r sin(theta)) / (1 + r cos(phi/2))) + k theta)
//
// where k is a second imaginary unit, independent of i. Bicomplex keeps the
// k-plane as a separate component and never multiplies i against k.
//
// The torus state is SUM_{j,m} xi_MS^{-j} e^{-j^2/2} xi_aux^{-m} e^{-m^2/2} |j,m>.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include "mobius/errors.hpp"
#include "mobius/fock.hpp"
#include "mobius/geometry.hpp"
#include "mobius/states.hpp"

namespace mobius::projection {

using cplx = std::complex<double>;

// i_part + k * k_part, with i_part and k_part in the ordinary (i) complex plane.
struct Bicomplex {
  cplx i_part;
  cplx k_part;
};

struct TorusLabels {
  cplx xi_ms;
  Bicomplex xi_aux;
  double aux_log_modulus;  // A in xi_aux = exp(A + k theta)
  double theta;
};

inline TorusLabels torus_labels(double l, double theta, double phi, double r) {
  validate_strip_radius(r);
  if (!std::isfinite(l) || !std::isfinite(theta) || !std::isfinite(phi))
    throw domain_error("torus_labels: non-finite argument");
  constexpr double pi = std::numbers::pi;
  const cplx xi_ms = geometry::xi_label(l, phi, r, kTorusSign);
  const double s2 = std::sin(phi) * std::sin(phi);
  const double A = -2 * pi * s2 - r * (std::cos(theta) + std::sin(phi / 2)) +
                   std::log1p(r * std::sin(theta)) - std::log1p(r * std::cos(phi / 2));
  const double e = std::exp(A);
  return {xi_ms, Bicomplex{e * std::cos(theta), e * std::sin(theta)}, A, theta};
}

// Coefficient grid c_{j,m} = a_j (beta_m + k gamma_m) stored as the two real-k
// components: i_grid(j, m) = a_j beta_m and k_grid(j, m) = a_j gamma_m.
class TorusFock {
 public:
  using Grid = Eigen::MatrixXcd;

  TorusFock(Offset s, double first_j, int first_m, Grid i_grid, Grid k_grid, double tail_bound)
      : offset_(s), first_j_(first_j), first_m_(first_m), i_grid_(std::move(i_grid)),
        k_grid_(std::move(k_grid)), tail_bound_(tail_bound) {
    if (i_grid_.rows() != k_grid_.rows() || i_grid_.cols() != k_grid_.cols())
      throw domain_error("TorusFock: component grids differ in shape");
  }

  Offset offset() const { return offset_; }
  double first_j() const { return first_j_; }
  int first_m() const { return first_m_; }
  Eigen::Index rows() const { return i_grid_.rows(); }
  Eigen::Index cols() const { return i_grid_.cols(); }
  const Grid& i_grid() const { return i_grid_; }
  const Grid& k_grid() const { return k_grid_; }
  double tail_bound() const { return tail_bound_; }

  Bicomplex coefficient(Eigen::Index row, Eigen::Index col) const {
    return {i_grid_(row, col), k_grid_(row, col)};
  }

  // Column index of m, or -1 if outside the stored range.
  Eigen::Index column_of(int m) const {
    const int c = m - first_m_;
    return (c >= 0 && c < cols()) ? c : -1;
  }

 private:
  Offset offset_;
  double first_j_;
  int first_m_;
  Grid i_grid_;
  Grid k_grid_;
  double tail_bound_;
};

namespace detail {

// Integer window |m| <= M around the peak -A of exp(-m A - m^2/2).
inline int aux_window(double A) { return static_cast<int>(std::ceil(std::abs(A))) + 9; }

inline TorusFock assemble(const FockVector& a, double A, double theta) {
  const int M = aux_window(A);
  const int cols = 2 * M + 1;
  const auto rows = static_cast<Eigen::Index>(a.size());
  TorusFock::Grid gi(rows, cols), gk(rows, cols);
  double mass = 0;
  for (int c = 0; c < cols; ++c) {
    const double m = -M + c;
    const double mag = std::exp(-m * A - 0.5 * m * m);
    // xi_aux^{-m} = exp(-m A) (cos(m theta) - k sin(m theta))
    const double beta = mag * std::cos(m * theta);
    const double gamma = -mag * std::sin(m * theta);
    mass += mag * mag;
    for (Eigen::Index r = 0; r < rows; ++r) {
      gi(r, c) = a[static_cast<std::size_t>(r)] * beta;
      gk(r, c) = a[static_cast<std::size_t>(r)] * gamma;
    }
  }
  const double aux_tail = states::detail::omitted_mass(-A, -M, M);
  if (!(aux_tail <= states::kTailTolerance * mass))
    throw precision_error("TorusFock: auxiliary window too small", aux_tail / mass);
  const double tail = a.tail_bound() * (mass + aux_tail) + a.norm2() * aux_tail;
  return TorusFock(a.offset(), a.first_j(), -M, std::move(gi), std::move(gk), tail);
}

}  // namespace detail

// Torus coherent state; the j-sector uses offset s and the window |j| <= J_max
// (NaN: default from l'), the m-sector is integer and sized from xi_aux.
inline TorusFock build_torus_cs(double l, double theta, double phi, double r, Offset s = Offset::integer,
                                double J_max = std::numeric_limits<double>::quiet_NaN()) {
  const TorusLabels t = torus_labels(l, theta, phi, r);
  const states::StateLabel ms{l, phi, r, s, kTorusSign};
  return detail::assemble(states::build_cs(ms, J_max), t.aux_log_modulus, theta);
}

// |1_torus> = SUM exp(-(j^2 + m^2)/2) |j,m>.
inline TorusFock fiducial_torus(double J_max = 9.0, Offset s = Offset::integer) {
  return detail::assemble(states::fiducial(J_max, s), 0.0, 0.0);
}

// Singular values of [i_grid | k_grid], descending. Rank one for every torus coherent state.
inline std::vector<double> singular_values(const TorusFock& t) {
  Eigen::MatrixXcd joined(t.rows(), 2 * t.cols());
  joined << t.i_grid(), t.k_grid();
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(joined);
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

// The m = 0 column as a strip vector.
inline FockVector j_marginal(const TorusFock& t) {
  const Eigen::Index c = t.column_of(0);
  if (c < 0) throw domain_error("j_marginal: m = 0 outside the stored window");
  std::vector<cplx> coeffs(static_cast<std::size_t>(t.rows()));
  for (Eigen::Index r = 0; r < t.rows(); ++r) {
    if (t.k_grid()(r, c) != cplx(0)) throw domain_error("j_marginal: m = 0 column has a k component");
    coeffs[static_cast<std::size_t>(r)] = t.i_grid()(r, c);
  }
  return FockVector(t.offset(), t.first_j(), std::move(coeffs), t.tail_bound());
}

// <a| Pi |b> with Pi = 1_j (x) |0><0|_m. The m = 0 sector carries no k part,
// so the contraction stays inside the i-plane.
inline cplx sector_contraction(const TorusFock& a, const TorusFock& b) {
  return inner(j_marginal(a), j_marginal(b));
}

// Torus state on the constraint surface theta = (phi + pi)/2 for a strip label.
inline TorusFock torus_state_on_strip(const states::StateLabel& a) {
  return build_torus_cs(a.l, geometry::constraint_theta(a.phi), a.phi, a.r, a.s);
}

// Strip overlap recovered from torus states:
//   <xi_torus| Pi |xi'_torus> / ( <1_torus| Pi |1_torus> / <1_MS|1_MS> ),
// Pi = 1_j (x) |0><0|_m. The denominator removes the m-sector fiducial weight.
// Labels are read in the torus sign convention.
inline cplx project_overlap(const states::StateLabel& a, const states::StateLabel& b) {
  states::detail::require_same_sector(a, b);
  const TorusFock ta = torus_state_on_strip(a);
  const TorusFock tb = torus_state_on_strip(b);
  const double J = std::max({states::default_jmax(states::lprime({a.l, a.phi, a.r, a.s, kTorusSign})),
                             states::default_jmax(states::lprime({b.l, b.phi, b.r, b.s, kTorusSign})),
                             9.0});
  const TorusFock one = fiducial_torus(J, a.s);
  const FockVector one_ms = states::fiducial(J, a.s);
  const double weight = sector_contraction(one, one).real() / one_ms.norm2();
  if (!(std::abs(weight) > 1e-300)) throw degeneracy_error("project_overlap: vanishing m-sector weight");
  return sector_contraction(ta, tb) / weight;
}

// Term-by-term strip series SUM_j exp((l'_a + l'_b) j + i (phi_a - phi_b) j - j^2).
inline cplx project_overlap_series(const states::StateLabel& a, const states::StateLabel& b) {
  states::detail::require_same_sector(a, b);
  const double la = states::lprime({a.l, a.phi, a.r, a.s, kTorusSign});
  const double lb = states::lprime({b.l, b.phi, b.r, b.s, kTorusSign});
  const double J = std::max(states::default_jmax(la), states::default_jmax(lb));
  const auto [lo, hi] = states::detail::window(J, a.s);
  cplx sum = 0;
  for (double j = lo; j <= hi + 0.25; j += 1.0)
    sum += std::exp(cplx((la + lb) * j - j * j, (a.phi - b.phi) * j));
  return sum;
}

// The same series with the phase pulled out of the sum, exp(-i (phi_a - phi_b)) SUM_j
// exp((l'_a + l'_b) j - j^2). Differs from the term-by-term series unless phi_a = phi_b.
inline cplx project_overlap_printed(const states::StateLabel& a, const states::StateLabel& b) {
  states::detail::require_same_sector(a, b);
  const double la = states::lprime({a.l, a.phi, a.r, a.s, kTorusSign});
  const double lb = states::lprime({b.l, b.phi, b.r, b.s, kTorusSign});
  const double J = std::max(states::default_jmax(la), states::default_jmax(lb));
  const auto [lo, hi] = states::detail::window(J, a.s);
  double sum = 0;
  for (double j = lo; j <= hi + 0.25; j += 1.0) sum += std::exp((la + lb) * j - j * j);
  return std::polar(sum, -(a.phi - b.phi));
}

// ---------------------------------------------------------------------------
// Constraint projector E(|theta - (pi + phi)/2| <= delta).

struct ProjectionSpec {
  double delta = 0.1;
  double theta = 0.0;
  double phi = 0.0;
};

inline void validate(const ProjectionSpec& p) {
  if (!(p.delta > 0) || !std::isfinite(p.delta)) throw domain_error("ProjectionSpec: delta must be > 0");
  if (!std::isfinite(p.theta) || !std::isfinite(p.phi)) throw domain_error("ProjectionSpec: non-finite angle");
}

struct ProjectorValue {
  double value;
  bool boundary;      // | x^2 - delta^2 | < boundary_tol
  double error_bound;  // truncation bound (quadrature path), 0 for the closed form
};

inline constexpr double kBoundaryTol = 1e-12;

// x^2 with x = theta - (pi + phi)/2.
inline double constraint_argument(const ProjectionSpec& p) {
  const double x = p.theta - geometry::constraint_theta(p.phi);
  return x * x;
}

// Dirichlet-integral value: 1 inside the window, 0 outside, 1/2 on the edge.
inline ProjectorValue universal_projector(const ProjectionSpec& p, double boundary_tol = kBoundaryTol) {
  validate(p);
  const double c = constraint_argument(p);
  const double d2 = p.delta * p.delta;
  if (std::abs(c - d2) < boundary_tol) return {0.5, true, 0.0};
  return {c < d2 ? 1.0 : 0.0, false, 0.0};
}

struct QuadratureOptions {
  double tail_tol = 1e-4;   // bound on the truncated part of the infinite range
  long max_panels = 2'000'000;
};

// Integral of exp(-i lambda x^2) sin(delta^2 lambda) / (pi lambda) over [-Lambda, Lambda].
// The odd imaginary part cancels; the even part is integrated on [0, Lambda]
// with 20-point Gauss-Legendre panels of half a period each. Lambda is chosen
// so that the discarded tails, each bounded by 2 / (pi |omega| Lambda) for
// the two frequencies omega = delta^2 +- x^2, sum below tail_tol.
inline ProjectorValue universal_projector_quadrature(const ProjectionSpec& p, QuadratureOptions opt = {},
                                                     double boundary_tol = kBoundaryTol) {
  validate(p);
  constexpr double pi = std::numbers::pi;
  const double c = constraint_argument(p);
  const double d2 = p.delta * p.delta;
  const bool boundary = std::abs(c - d2) < boundary_tol;

  double inv_sum = 0;
  for (double w : {d2 + c, d2 - c})
    if (std::abs(w) > boundary_tol) inv_sum += 1.0 / std::abs(w);
  double lambda_max = 2.0 * inv_sum / (pi * opt.tail_tol);

  const double top = d2 + c;
  const double panel = pi / top;
  long panels = static_cast<long>(std::ceil(lambda_max / panel));
  if (panels > opt.max_panels) {
    panels = opt.max_panels;
    lambda_max = panels * panel;
  }
  auto f = [&](double lam) {
    if (std::abs(lam) < 1e-8) return d2 / pi * std::cos(c * lam);
    return std::cos(c * lam) * std::sin(d2 * lam) / (pi * lam);
  };
  double sum = 0;
  for (long k = 0; k < panels; ++k)
    sum += boost::math::quadrature::gauss<double, 20>::integrate(f, k * panel, (k + 1) * panel);
  return {2 * sum, boundary, 2.0 * inv_sum / (pi * lambda_max)};
}

// ---------------------------------------------------------------------------
// Reduction to the circle (r = 0, integer j).

inline states::StateLabel circle_label(double l, double phi) {
  return {l, phi, 0.0, Offset::integer, kLabelSign};
}

inline FockVector circle_cs(double l, double phi, double J_max = std::numeric_limits<double>::quiet_NaN()) {
  return states::build_cs(circle_label(l, phi), J_max);
}

inline cplx circle_overlap(double l_a, double phi_a, double l_b, double phi_b) {
  return states::overlap(circle_label(l_a, phi_a), circle_label(l_b, phi_b));
}

// (l', phi) of a coherent-state vector, read off adjacent coefficient ratios
// c_{j+1}/c_j = exp(l' - i phi - j - 1/2). phi is returned in (-pi, pi].
inline std::pair<double, double> recover_label(const FockVector& v, double tol = 1e-8) {
  if (v.size() < 2) throw domain_error("recover_label: need at least two coefficients");
  std::size_t best = 0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (std::abs(v[i]) * std::abs(v[i + 1]) > std::abs(v[best]) * std::abs(v[best + 1])) best = i;
  if (v[best] == cplx(0) || v[best + 1] == cplx(0)) throw domain_error("recover_label: zero vector");
  const cplx z = std::log(v[best + 1] / v[best]) + (v.j_at(best) + 0.5);
  const double lp = z.real();
  const double phi = -z.imag();
  // Coherent-state check on the neighbouring ratios that are numerically meaningful.
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (std::abs(v[i]) < 1e-150 || std::abs(v[i + 1]) < 1e-150) continue;
    const cplx zi = std::log(v[i + 1] / v[i]) + (v.j_at(i) + 0.5);
    const cplx diff = std::exp(zi - z) - 1.0;
    if (std::abs(diff) > tol) throw domain_error("recover_label: vector is not a coherent state");
  }
  return {lp, phi};
}

// Relabels a strip coherent state (either sector) as the circle state with the
// same profile centre and angle, on the integer lattice.
inline FockVector project_mobius_to_circle(const FockVector& v) {
  const auto [lp, phi] = recover_label(v);
  return circle_cs(lp, phi);
}

inline states::StateLabel project_mobius_to_circle(const states::StateLabel& a) {
  return circle_label(states::lprime(a), a.phi);
}

}  // namespace mobius::projection
