#pragma once

// Coherent states on the strip in the angular-momentum basis.
//
// A label (l, phi, r) determines xi = exp(-(l + z r sin(phi/2)) + i phi)(1 + r cos(phi/2))
// and the state
//
//   |xi> = SUM_{j in Z+s} xi^{-j} exp(-j^2/2) |j>,   c_j = exp(l' j - i phi j - j^2/2),
//
// with l' = -ln|xi|. Everything physical depends on the label through l' and phi:
//
//   <xi|xi>          = theta_3(i l'/pi | i/pi)          (s = 0)
//                    = theta_2(i l'/pi | i/pi)          (s = 1/2)
//                    = exp(l'^2) sqrt(pi) theta_3(l' - s | i pi)
//   <J>              = l' + (1/2) d/dnu ln theta_3(nu | i pi) at nu = l' - s
//   <U>, U|j>=|j+1>  = exp(-1/4) exp(i phi) theta_3(l' - s - 1/2 | i pi) / theta_3(l' - s | i pi)
//   P(j)             = exp(2 l' j - j^2) / <xi|xi>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "mobius/dynamics.hpp"
#include "mobius/errors.hpp"
#include "mobius/fock.hpp"
#include "mobius/geometry.hpp"
#include "mobius/theta.hpp"

namespace mobius::states {

using cplx = std::complex<double>;

struct StateLabel {
  double l = 0.0;
  double phi = 0.0;
  double r = 0.5;
  Offset s = Offset::integer;
  SignConvention sign = kLabelSign;
};

inline void validate(const StateLabel& a) {
  if (!std::isfinite(a.l) || !std::isfinite(a.phi))
    throw domain_error("StateLabel: l and phi must be finite");
  validate_strip_radius(a.r);
  mobius::validate(a.sign);
}

inline double lprime(const StateLabel& a) {
  validate(a);
  return geometry::lprime(a.l, a.phi, a.r, a.sign);
}

inline cplx xi(const StateLabel& a) {
  validate(a);
  return geometry::xi_label(a.l, a.phi, a.r, a.sign);
}

// Relative truncation tolerance used when building vectors.
inline constexpr double kTailTolerance = 1e-12;

inline double default_jmax(double lp) { return std::ceil(std::abs(lp)) + 9.0; }

namespace detail {

inline constexpr double kPi = std::numbers::pi;
inline const cplx kTauSmall{0.0, 1.0 / std::numbers::pi};  // i/pi
inline const cplx kTauLarge{0.0, std::numbers::pi};        // i pi

// Bound on SUM_{k>=0} exp(-(d+k)^2), d > 0.
inline double gaussian_side(double d) {
  if (!(d > 0)) return std::numeric_limits<double>::infinity();
  return std::exp(-d * d) / (1.0 - std::exp(-(2 * d + 1)));
}

// Bound on SUM exp(2 l' j - j^2) over lattice points outside [lo, hi].
inline double omitted_mass(double lp, double lo, double hi) {
  return std::exp(lp * lp) * (gaussian_side(hi + 1 - lp) + gaussian_side(lp - (lo - 1)));
}

// Symmetric lattice window |j| <= J_max for offset s.
inline std::pair<double, double> window(double J_max, Offset s) {
  const double off = offset_value(s);
  const double n = std::floor(J_max - off + 1e-12);
  return {-(n + off), n + off};
}

inline double relative_tail(double lp, double J_max, Offset s) {
  const auto [lo, hi] = window(J_max, s);
  if (hi < lo) return std::numeric_limits<double>::infinity();
  // Norm^2 >= the largest retained term; exact value comes later, this is only for the estimate.
  const double norm_lb = std::exp(lp * lp - std::pow(std::clamp(std::round(lp - offset_value(s)) +
                                                                    offset_value(s), lo, hi) - lp, 2));
  return omitted_mass(lp, lo, hi) / norm_lb;
}

inline double required_jmax(double lp, Offset s) {
  double J = std::ceil(std::abs(lp)) + 1.0;
  while (relative_tail(lp, J, s) > kTailTolerance && J < 1e6) J += 1.0;
  return J;
}

inline cplx profile(double lp, double phi, double j) {
  return std::exp(cplx(lp * j - 0.5 * j * j, -phi * j));
}

inline FockVector profile_vector(double lp, double phi, Offset s, double J_max) {
  if (!(J_max >= 0) || !std::isfinite(J_max)) throw domain_error("J_max must be finite and >= 0");
  const auto [lo, hi] = window(J_max, s);
  if (hi < lo)
    throw precision_error("J_max too small to hold any basis state", std::numeric_limits<double>::infinity(),
                          required_jmax(lp, s));
  std::vector<cplx> c;
  c.reserve(static_cast<std::size_t>(hi - lo + 1.5));
  for (double j = lo; j <= hi + 0.25; j += 1.0) c.push_back(profile(lp, phi, j));
  const double tail = omitted_mass(lp, lo, hi);
  FockVector v(s, lo, std::move(c), tail);
  if (!(tail <= kTailTolerance * v.norm2()))
    throw precision_error("J_max = " + std::to_string(J_max) + " leaves a truncation tail above " +
                              "1e-12 of the norm; increase J_max",
                          tail / v.norm2(), required_jmax(lp, s));
  return v;
}

inline void require_same_sector(const StateLabel& a, const StateLabel& b) {
  if (a.s != b.s) throw domain_error("overlap: labels live in different basis sectors");
  if (a.r != b.r) throw domain_error("overlap: labels must share the strip radius r");
  if (!(a.sign == b.sign)) throw domain_error("overlap: labels must share the sign convention");
}

}  // namespace detail

// Coherent state truncated to |j| <= J_max (NaN selects the default window).
inline FockVector build_cs(const StateLabel& a, double J_max = std::numeric_limits<double>::quiet_NaN()) {
  const double lp = lprime(a);
  if (std::isnan(J_max)) J_max = default_jmax(lp);
  return detail::profile_vector(lp, a.phi, a.s, J_max);
}

// The state at xi = 1: coefficients exp(-j^2/2).
inline FockVector fiducial(double J_max = 9.0, Offset s = Offset::integer) {
  return detail::profile_vector(0.0, 0.0, s, J_max);
}

// <j| bra of the coherent state in the Bargmann form (xi*)^{-j} exp(-j^2/2) = conj(c_j).
inline cplx bargmann_coeff(const StateLabel& a, double j) {
  if (!on_lattice(j, a.s)) throw domain_error("bargmann_coeff: j is not on the basis lattice");
  return std::conj(detail::profile(lprime(a), a.phi, j));
}

enum class OverlapRoute { fock, closed };

// <a|b>. The closed route evaluates theta_3 (s = 0) or theta_2 (s = 1/2) at
//   nu = (phi_a - phi_b)/(2 pi) - i (l'_a + l'_b)/(2 pi),  tau = i/pi,
// through the modular transformation.
inline cplx overlap(const StateLabel& a, const StateLabel& b, OverlapRoute route = OverlapRoute::closed) {
  detail::require_same_sector(a, b);
  const double la = lprime(a);
  const double lb = lprime(b);
  if (route == OverlapRoute::fock) {
    const double J = std::max(default_jmax(la), default_jmax(lb));
    return inner(build_cs(a, J), build_cs(b, J));
  }
  using theta::ThetaArgument;
  const cplx nu{(a.phi - b.phi) / (2 * detail::kPi), -(la + lb) / (2 * detail::kPi)};
  const cplx tau = detail::kTauSmall;
  if (a.s == Offset::integer) return theta::theta3_modular(ThetaArgument<double>{nu, tau});
  const cplx pre = std::exp(cplx(0, detail::kPi) * (tau / 4.0 + nu));
  return pre * theta::theta3_modular(ThetaArgument<double>{nu + tau / 2.0, tau});
}

enum class NormRoute {
  fock,     // SUM |c_j|^2 over the truncated vector
  theta,    // theta_3 / theta_2 at (i l'/pi | i/pi), direct series
  modular,  // exp(l'^2) sqrt(pi) theta_3(l' - s | i pi)
};

inline double norm2(const StateLabel& a, NormRoute route = NormRoute::theta) {
  const double lp = lprime(a);
  using theta::ThetaArgument;
  switch (route) {
    case NormRoute::fock:
      return build_cs(a).norm2();
    case NormRoute::theta: {
      const ThetaArgument<double> arg{cplx(0, lp / detail::kPi), detail::kTauSmall};
      return (a.s == Offset::integer ? theta::theta3(arg) : theta::theta2(arg)).real();
    }
    case NormRoute::modular:
      return std::exp(lp * lp) * std::sqrt(detail::kPi) *
             theta::theta3(ThetaArgument<double>{cplx(lp - offset_value(a.s), 0), detail::kTauLarge}).real();
  }
  throw domain_error("norm2: unknown route");
}

enum class ExpectJRoute {
  ratio,             // SUM j |c_j|^2 / SUM |c_j|^2
  theta_derivative,  // l' + theta_3'/(2 theta_3) with the derivative summed termwise
  product_series,    // l' + (1/2) triple-product log-derivative
};

// <J> - l' = (1/2) d/dnu ln theta_3(nu | i pi) at nu = l' - s.
// Approximately -2 pi exp(-pi^2) sin(2 pi (l' - s)); zero for l' in Z/2.
inline double expect_J_correction(double lp, Offset s) {
  return 0.5 * theta::theta3_logderiv(lp - offset_value(s), detail::kTauLarge);
}

inline double expect_J(const StateLabel& a, ExpectJRoute route = ExpectJRoute::product_series) {
  const double lp = lprime(a);
  switch (route) {
    case ExpectJRoute::ratio: {
      const FockVector v = build_cs(a);
      double num = 0, den = 0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const double w = std::norm(v[i]);
        num += v.j_at(i) * w;
        den += w;
      }
      return num / den;
    }
    case ExpectJRoute::theta_derivative: {
      const theta::ThetaArgument<double> arg{cplx(lp - offset_value(a.s), 0), detail::kTauLarge};
      return lp + 0.5 * (theta::theta3_derivative(arg) / theta::theta3(arg)).real();
    }
    case ExpectJRoute::product_series:
      return lp + expect_J_correction(lp, a.s);
  }
  throw domain_error("expect_J: unknown route");
}

enum class ExpectURoute { fock, closed };

// <U> / <xi|xi>. Closed form:
//   s = 0:   exp(-1/4) exp(i phi) theta_2(i l'/pi | i/pi) / theta_3(i l'/pi | i/pi)
//   s = 1/2: exp(-1/4) exp(i phi) theta_3(i l'/pi | i/pi) / theta_2(i l'/pi | i/pi)
inline cplx expect_U(const StateLabel& a, ExpectURoute route = ExpectURoute::closed) {
  const double lp = lprime(a);
  if (route == ExpectURoute::fock) {
    const FockVector v = build_cs(a);
    return inner(v, shift_up(v)) / v.norm2();
  }
  const theta::ThetaArgument<double> arg{cplx(0, lp / detail::kPi), detail::kTauSmall};
  const cplx t3 = theta::theta3(arg);
  const cplx t2 = theta::theta2(arg);
  const cplx ratio = a.s == Offset::integer ? t2 / t3 : t3 / t2;
  return std::exp(-0.25) * std::polar(1.0, a.phi) * ratio.real();
}

// P(j) = |<j|xi>|^2 / <xi|xi>.
inline double distribution(const StateLabel& a, double j) {
  if (!on_lattice(j, a.s)) throw domain_error("distribution: j is not on the basis lattice");
  const double lp = lprime(a);
  return std::exp(2 * lp * j - j * j) / norm2(a);
}

// The continuum approximation exp(-(j - l')^2) / sqrt(pi).
inline double distribution_gaussian(double lp, double j) {
  return std::exp(-(j - lp) * (j - lp)) / std::sqrt(detail::kPi);
}

struct QuantizedAngle {
  double phi;
  double lprime;
  double expect_J;
};

struct ScanOptions {
  int samples = 2048;        // bracketing grid on [0, 4 pi)
  double lattice_tol = 1e-9;  // |<J> - (Z + s)| acceptance
};

// Angles in [0, 4 pi) where the radial log term ln(1 + r cos(phi/2)) vanishes,
// so that l' = l + z r sin(phi/2) exactly, kept when <J> there lies on Z + s.
// For r = 0 every angle has l' = l; the sampling grid is returned when l is on
// the lattice, nothing otherwise.
inline std::vector<QuantizedAngle> quantization_scan(double r, double l, Offset s,
                                                     SignConvention sign = kLabelSign,
                                                     ScanOptions opt = {}) {
  validate_strip_radius(r);
  mobius::validate(sign);
  if (!std::isfinite(l)) throw domain_error("quantization_scan: l must be finite");
  if (opt.samples < 2) throw domain_error("quantization_scan: need at least 2 samples");

  const double period = 4 * detail::kPi;
  auto accept = [&](double phi, std::vector<QuantizedAngle>& out) {
    const StateLabel label{l, phi, r, s, sign};
    const double J = expect_J(label);
    const double k = J - offset_value(s);
    if (std::abs(k - std::round(k)) <= opt.lattice_tol) out.push_back({phi, lprime(label), J});
  };

  std::vector<QuantizedAngle> out;
  if (r == 0.0) {
    for (int i = 0; i < opt.samples; ++i) accept(period * i / opt.samples, out);
    return out;
  }

  auto h = [&](double phi) { return std::log1p(r * std::cos(phi / 2)); };
  std::vector<double> roots;
  double a = 0.0;
  double fa = h(a);
  for (int i = 1; i <= opt.samples; ++i) {
    const double b = period * i / opt.samples;
    const double fb = h(b);
    if (fa == 0.0) {
      roots.push_back(a);
    } else if ((fa < 0) != (fb < 0) && fb != 0.0) {
      std::uintmax_t iters = 200;
      const auto [lo, hi] = boost::math::tools::toms748_solve(
          h, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(52), iters);
      roots.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  for (double phi : roots) accept(phi, out);
  return out;
}

// Diagonal time evolution on the quantised-angle spectrum E_j = 2 j^2/(4 + r^2) + L0^2/2.
inline FockVector evolve(const FockVector& v, double t, double r, double L0) {
  validate_strip_radius(r);
  if (!std::isfinite(t) || !std::isfinite(L0)) throw domain_error("evolve: t and L0 must be finite");
  std::vector<cplx> c(v.coefficients());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] *= std::polar(1.0, -dynamics::energy_quantized(v.j_at(i), L0, r) * t);
  return FockVector(v.offset(), v.first_j(), std::move(c), v.tail_bound());
}

struct EvolutionReport {
  FockVector evolved;
  double omega;     // dE/dj at j = l'
  double fidelity;  // |<l', phi + omega t | evolved>| / norms
};

// Evolves the coherent state and compares it with the label-shifted state phi -> phi + omega t.
// The spectrum is quadratic, so the fidelity drops below one as t grows.
inline EvolutionReport evolution_fidelity(const StateLabel& a, double t, double L0) {
  const double lp = lprime(a);
  const FockVector v = build_cs(a);
  const double omega = 4 * lp / (4 + a.r * a.r);
  FockVector evolved = evolve(v, t, a.r, L0);
  const FockVector target = detail::profile_vector(lp, a.phi + omega * t, a.s, default_jmax(lp));
  const double fid = std::abs(inner(target, evolved)) / (target.norm() * evolved.norm());
  return {std::move(evolved), omega, fid};
}

}  // namespace mobius::states
