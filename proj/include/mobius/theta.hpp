#pragma once

// Jacobi theta functions theta_2 and theta_3 in the (nu | tau) convention
//
//   theta_3(nu | tau) = SUM_{n in Z} exp(i pi tau n^2 + 2 i pi nu n)
//   theta_2(nu | tau) = SUM_{n in Z} exp(i pi tau (n+1/2)^2 + 2 i pi nu (n+1/2))
//
// with the nome q = exp(i pi tau), |q| < 1 iff Im(tau) > 0.
//
// Every series is truncated with an explicit Gaussian tail bound: summation
// starts at the largest term and walks outward until the bound on everything
// not yet added drops below SeriesPolicy::target_tol. Running out of
// SeriesPolicy::max_terms first raises precision_error with the bound that
// was reached.
//
// The modular transformation
//
//   theta_3(nu/tau | -1/tau) = sqrt(-i tau) exp(i pi nu^2 / tau) theta_3(nu | tau)
//
// gives a second, numerically independent route to theta_3 (theta3_modular),
// and the Jacobi triple product gives the logarithmic derivative as a rapidly
// convergent sum of rational terms (theta3_logderiv).

#include <cmath>
#include <complex>
#include <concepts>
#include <limits>
#include <numbers>
#include <string>

#include "mobius/errors.hpp"

namespace mobius::theta {

template <std::floating_point Real>
struct ThetaArgument {
  std::complex<Real> nu;
  std::complex<Real> tau;
};

template <class Real>
ThetaArgument(std::complex<Real>, std::complex<Real>) -> ThetaArgument<Real>;

template <std::floating_point Real = double>
struct SeriesPolicy {
  Real target_tol = Real(1e-14);  // absolute bound on the discarded tail
  int max_terms = 10000;
};

template <std::floating_point Real>
struct SeriesResult {
  std::complex<Real> value;
  Real tail_bound;  // rigorous bound on |value - exact| from truncation
  int terms;
};

namespace detail {

template <class Real>
void validate(const ThetaArgument<Real>& arg) {
  if (!(arg.tau.imag() > 0))
    throw domain_error("theta: Im(tau) must be positive, got " + std::to_string(arg.tau.imag()));
  if (!std::isfinite(arg.nu.real()) || !std::isfinite(arg.nu.imag()) ||
      !std::isfinite(arg.tau.real()))
    throw domain_error("theta: non-finite argument");
}

template <class Real>
void validate(const SeriesPolicy<Real>& policy) {
  if (!(policy.target_tol > 0)) throw domain_error("theta: target_tol must be positive");
  if (policy.max_terms < 1) throw domain_error("theta: max_terms must be at least 1");
}

// Bound on SUM_{m>=0} |n+m|^k a_{n+m} given a_{n+m} <= a_n rho^m, k in {0, 1}.
template <class Real>
Real geometric_tail(Real a_n, Real abs_n, Real rho, int k) {
  if (!(rho < 1)) return std::numeric_limits<Real>::infinity();
  const Real lead = (k == 0 ? Real(1) : abs_n) / (1 - rho);
  const Real extra = k == 0 ? Real(0) : rho / ((1 - rho) * (1 - rho));
  return a_n * (lead + extra);
}

// SUM_n n^k exp(i pi tau n^2 + 2 i pi nu n), summed outward from the peak
// term n* = -Im(nu)/Im(tau).
template <class Real>
SeriesResult<Real> lattice_sum(const ThetaArgument<Real>& arg, const SeriesPolicy<Real>& policy,
                               int k) {
  using C = std::complex<Real>;
  constexpr Real pi = std::numbers::pi_v<Real>;
  const C ipi_tau = C(0, pi) * arg.tau;
  const C two_ipi_nu = C(0, 2 * pi) * arg.nu;
  const Real t = arg.tau.imag();
  const Real b = arg.nu.imag();
  const Real peak = -b / t;
  if (!(std::abs(peak) < Real(1e12)))
    throw precision_error("theta: peak index out of range (|Im nu| / Im tau too large)",
                          std::numeric_limits<Real>::infinity());

  auto term = [&](long long n) {
    const Real rn = static_cast<Real>(n);
    C z = std::exp(ipi_tau * (rn * rn) + two_ipi_nu * rn);
    return k == 0 ? z : z * rn;
  };
  auto magnitude = [&](long long n) {
    const Real rn = static_cast<Real>(n);
    return std::exp(-pi * t * rn * rn - 2 * pi * b * rn);
  };
  // Tail bounds for the not-yet-summed ranges [up, inf) and (-inf, down].
  auto tail_up = [&](long long up) {
    const Real rho = std::exp(-2 * pi * t * (static_cast<Real>(up) + Real(0.5) - peak));
    return geometric_tail(magnitude(up), std::abs(static_cast<Real>(up)), rho, k);
  };
  auto tail_down = [&](long long down) {
    const Real rho = std::exp(-2 * pi * t * (peak - static_cast<Real>(down) + Real(0.5)));
    return geometric_tail(magnitude(down), std::abs(static_cast<Real>(down)), rho, k);
  };

  const long long center = std::llround(peak);
  C sum = term(center);
  int terms = 1;
  long long up = center + 1;
  long long down = center - 1;
  Real tu = tail_up(up);
  Real td = tail_down(down);
  const Real half_tol = policy.target_tol / 2;
  while (tu >= half_tol || td >= half_tol) {
    if (terms >= policy.max_terms)
      throw precision_error("theta: max_terms exhausted before tail bound met", tu + td,
                            2.0 * policy.max_terms);
    if (tu >= td) {
      sum += term(up++);
      tu = tail_up(up);
    } else {
      sum += term(down--);
      td = tail_down(down);
    }
    ++terms;
  }
  return {sum, tu + td, terms};
}

}  // namespace detail

// Direct two-sided series with its truncation bound.
template <std::floating_point Real>
SeriesResult<Real> theta3_series(const ThetaArgument<Real>& arg,
                                 const SeriesPolicy<Real>& policy = {}) {
  detail::validate(arg);
  detail::validate(policy);
  return detail::lattice_sum(arg, policy, 0);
}

template <std::floating_point Real>
std::complex<Real> theta3(const ThetaArgument<Real>& arg, const SeriesPolicy<Real>& policy = {}) {
  return theta3_series(arg, policy).value;
}

// theta_2 through the half-period shift
//   theta_2(nu | tau) = exp(i pi (tau/4 + nu)) theta_3(nu + tau/2 | tau).
template <std::floating_point Real>
std::complex<Real> theta2(const ThetaArgument<Real>& arg, const SeriesPolicy<Real>& policy = {}) {
  using C = std::complex<Real>;
  constexpr Real pi = std::numbers::pi_v<Real>;
  detail::validate(arg);
  const C prefactor = std::exp(C(0, pi) * (arg.tau / Real(4) + arg.nu));
  return prefactor * theta3(ThetaArgument<Real>{arg.nu + arg.tau / Real(2), arg.tau}, policy);
}

// theta_3(nu | tau) evaluated on the transformed lattice:
//   (-i tau)^{-1/2} exp(-i pi nu^2 / tau) theta_3(nu/tau | -1/tau).
// Re(nu) is first reduced mod 1 and Re(tau) mod 2 (exact symmetries), which
// keeps the transformed argument near the origin. Fast when Im(tau) is small.
template <std::floating_point Real>
std::complex<Real> theta3_modular(const ThetaArgument<Real>& arg,
                                  const SeriesPolicy<Real>& policy = {}) {
  using C = std::complex<Real>;
  constexpr Real pi = std::numbers::pi_v<Real>;
  detail::validate(arg);
  const C nu = arg.nu - std::round(arg.nu.real());
  const C tau = arg.tau - Real(2) * std::round(arg.tau.real() / Real(2));
  const C factor = std::exp(C(0, -pi) * nu * nu / tau) / std::sqrt(C(0, -1) * tau);
  return factor * theta3(ThetaArgument<Real>{nu / tau, Real(-1) / tau}, policy);
}

// d theta_3 / d nu by termwise differentiation of the defining series.
template <std::floating_point Real>
std::complex<Real> theta3_derivative(const ThetaArgument<Real>& arg,
                                     const SeriesPolicy<Real>& policy = {}) {
  using C = std::complex<Real>;
  constexpr Real pi = std::numbers::pi_v<Real>;
  detail::validate(arg);
  detail::validate(policy);
  // Scale the tolerance so that the 2 pi prefactor does not eat the budget.
  SeriesPolicy<Real> scaled = policy;
  scaled.target_tol = policy.target_tol / (2 * pi);
  return C(0, 2 * pi) * detail::lattice_sum(arg, scaled, 1).value;
}

// (1/theta_3) d theta_3 / d nu from the triple product:
//   2 pi i SUM_{n>=1} [ a_n w / (1 + a_n w) - (a_n / w) / (1 + a_n / w) ],
//   a_n = q^{2n-1}, w = exp(2 i pi nu).
template <std::floating_point Real>
std::complex<Real> theta3_logderiv(const ThetaArgument<Real>& arg,
                                   const SeriesPolicy<Real>& policy = {}) {
  using C = std::complex<Real>;
  constexpr Real pi = std::numbers::pi_v<Real>;
  detail::validate(arg);
  detail::validate(policy);

  if (std::abs(theta3(arg, policy)) <= policy.target_tol)
    throw degeneracy_error("theta3_logderiv: theta_3 vanishes at this argument");

  const C q = std::exp(C(0, pi) * arg.tau);
  const C q2 = q * q;
  const C w = std::exp(C(0, 2 * pi) * arg.nu);
  const C w_inv = Real(1) / w;
  const Real spread = std::max(std::abs(w), std::abs(w_inv));
  const Real abs_q2 = std::abs(q2);

  C sum = 0;
  C a = q;
  for (int n = 1;; ++n) {
    const C up = a * w;
    const C down = a * w_inv;
    const C den_up = Real(1) + up;
    const C den_down = Real(1) + down;
    if (std::abs(den_up) <= policy.target_tol || std::abs(den_down) <= policy.target_tol)
      throw degeneracy_error("theta3_logderiv: triple-product factor vanishes");
    sum += up / den_up - down / den_down;
    a *= q2;
    const Real next = std::abs(a) * spread;
    if (next < 1) {
      const Real tail = 2 * pi * 2 * next / ((1 - next) * (1 - abs_q2));
      if (tail < policy.target_tol) break;
    }
    if (n >= policy.max_terms)
      throw precision_error("theta3_logderiv: max_terms exhausted", next, 2.0 * policy.max_terms);
  }
  return C(0, 2 * pi) * sum;
}

// Real-valued log-derivative for real nu. Requires a real nome (Re(tau) an
// integer); otherwise the result is genuinely complex and domain_error is raised.
template <std::floating_point Real>
Real theta3_logderiv(Real nu, std::complex<Real> tau, const SeriesPolicy<Real>& policy = {}) {
  if (std::abs(tau.real() - std::round(tau.real())) > 0)
    throw domain_error("theta3_logderiv: real result needs integer Re(tau)");
  return theta3_logderiv(ThetaArgument<Real>{{nu, 0}, tau}, policy).real();
}

}  // namespace mobius::theta
