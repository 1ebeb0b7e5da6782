#pragma once

// Torus and Moebius-strip embeddings and the coherent-state label map.
//
// Torus (central radius R, tube radius r, axial offset l):
//   X = (R + r sin(theta)) cos(phi)
//   Y = (R + r sin(theta)) sin(phi)
//   Z = l + r cos(theta)
//
// The strip is cut out by theta = (phi + pi) / 2, which closes only after
// phi -> phi + 4 pi. Substituting gives sin(theta) = cos(phi/2) and
// cos(theta) = -sin(phi/2), i.e. Z = l - r sin(phi/2). The strip formulas
// used for the coherent-state label print the opposite sign, Z = l + r sin(phi/2);
// SignConvention selects between the two.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "mobius/errors.hpp"

namespace mobius {

// z_sign = +1: Z = l + r sin(phi/2), the convention of the printed label map.
// z_sign = -1: Z = l - r sin(phi/2), what the torus constraint actually produces.
struct SignConvention {
  int z_sign = +1;

  constexpr bool operator==(const SignConvention&) const = default;
};

inline constexpr SignConvention kLabelSign{+1};
inline constexpr SignConvention kTorusSign{-1};

inline void validate(SignConvention sc) {
  if (sc.z_sign != 1 && sc.z_sign != -1)
    throw domain_error("SignConvention: z_sign must be +1 or -1");
}

// Strip half-width r relative to unit central radius. r = 0 is the cylinder limit.
inline void validate_strip_radius(double r) {
  if (!(r >= 0.0 && r < 1.0))
    throw domain_error("strip radius r must lie in [0, 1), got " + std::to_string(r));
}

}  // namespace mobius

namespace mobius::geometry {

struct TorusGeometry {
  double R = 1.0;  // central radius
  double r = 0.5;  // tube radius / strip half-width
  double l = 0.0;  // axial offset
};

inline void validate(const TorusGeometry& g) {
  if (!(g.R > 0) || !(g.r >= 0) || !(g.r < g.R))
    throw domain_error("TorusGeometry: need 0 <= r < R");
  if (!std::isfinite(g.l)) throw domain_error("TorusGeometry: non-finite l");
}

template <class T>
struct Point3T {
  T x{}, y{}, z{};
};
using Point3 = Point3T<double>;

inline double distance(const Point3& a, const Point3& b) {
  return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

// Scalar-generic embeddings. T may be std::complex<double> so callers can take
// complex-step derivatives through them.
template <class T>
Point3T<T> torus_embed(T theta, T phi, double R, double r, T z0) {
  using std::cos;
  using std::sin;
  const T rho = R + r * sin(theta);
  return {rho * cos(phi), rho * sin(phi), z0 + r * cos(theta)};
}

template <class T>
Point3T<T> mobius_embed(T phi, double R, double r, T z0, SignConvention sc) {
  using std::cos;
  using std::sin;
  const T half = phi / 2.0;
  const T rho = R + r * cos(half);
  return {rho * cos(phi), rho * sin(phi), z0 + double(sc.z_sign) * r * sin(half)};
}

inline Point3 torus_point(double theta, double phi, const TorusGeometry& g) {
  validate(g);
  return torus_embed(theta, phi, g.R, g.r, g.l);
}

inline double constraint_theta(double phi) { return (phi + std::numbers::pi) / 2.0; }

inline Point3 mobius_point(double phi, const TorusGeometry& g, SignConvention sc = kLabelSign) {
  validate(g);
  validate(sc);
  return mobius_embed(phi, g.R, g.r, g.l, sc);
}

// Coherent-state label xi = exp(-(l + z r sin(phi/2)) + i phi) (1 + r cos(phi/2)),
// central radius fixed to 1.
inline std::complex<double> xi_label(double l, double phi, double r, SignConvention sc = kLabelSign) {
  validate_strip_radius(r);
  validate(sc);
  const double height = l + sc.z_sign * r * std::sin(phi / 2);
  const double radius = 1.0 + r * std::cos(phi / 2);
  return std::polar(std::exp(-height) * radius, phi);
}

// l' = (l + z r sin(phi/2)) - ln(1 + r cos(phi/2)) = -ln|xi|: the centre of the
// Gaussian coefficient profile of the coherent state.
inline double lprime(double l, double phi, double r, SignConvention sc = kLabelSign) {
  validate_strip_radius(r);
  validate(sc);
  return (l + sc.z_sign * r * std::sin(phi / 2)) - std::log1p(r * std::cos(phi / 2));
}

}  // namespace mobius::geometry
