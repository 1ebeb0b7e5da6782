#pragma once

// Truncated vectors over the angular-momentum basis |j>, j in Z + s.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mobius/errors.hpp"

namespace mobius {

// Basis offset: j runs over Z (bosonic sector) or Z + 1/2 (fermionic sector).
enum class Offset { integer, half };

constexpr double offset_value(Offset s) { return s == Offset::half ? 0.5 : 0.0; }

inline bool on_lattice(double j, Offset s, double tol = 1e-12) {
  const double k = j - offset_value(s);
  return std::abs(k - std::round(k)) <= tol;
}

class FockVector {
 public:
  using value_type = std::complex<double>;

  FockVector() = default;

  // Coefficients for j = first_j, first_j + 1, ...; first_j must lie on the lattice of s.
  FockVector(Offset s, double first_j, std::vector<value_type> coeffs, double tail_bound = 0.0)
      : offset_(s), first_j_(first_j), coeffs_(std::move(coeffs)), tail_bound_(tail_bound) {
    if (!on_lattice(first_j, s))
      throw domain_error("FockVector: first index " + std::to_string(first_j) +
                         " is not on the basis lattice");
    first_j_ = std::round(first_j - offset_value(s)) + offset_value(s);
  }

  Offset offset() const { return offset_; }
  std::size_t size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }
  double first_j() const { return first_j_; }
  double last_j() const { return first_j_ + static_cast<double>(coeffs_.size()) - 1; }
  double j_at(std::size_t i) const { return first_j_ + static_cast<double>(i); }
  // Largest |j| represented.
  double j_max() const { return empty() ? 0.0 : std::max(std::abs(first_j_), std::abs(last_j())); }

  // Bound on the squared norm of the discarded coefficients.
  double tail_bound() const { return tail_bound_; }

  const std::vector<value_type>& coefficients() const { return coeffs_; }
  value_type operator[](std::size_t i) const { return coeffs_[i]; }

  // <j|v>; zero outside the stored range.
  value_type coefficient(double j) const {
    if (empty() || !on_lattice(j, offset_)) return 0.0;
    const double k = std::round(j - first_j_);
    if (k < 0 || k >= static_cast<double>(coeffs_.size())) return 0.0;
    return coeffs_[static_cast<std::size_t>(k)];
  }

  double norm2() const {
    double s = 0;
    for (const auto& c : coeffs_) s += std::norm(c);
    return s;
  }
  double norm() const { return std::sqrt(norm2()); }

 private:
  Offset offset_ = Offset::integer;
  double first_j_ = 0.0;
  std::vector<value_type> coeffs_;
  double tail_bound_ = 0.0;
};

// <a|b> over the common index range.
inline std::complex<double> inner(const FockVector& a, const FockVector& b) {
  if (a.offset() != b.offset()) throw domain_error("inner: vectors live on different lattices");
  if (a.empty() || b.empty()) return 0.0;
  const double lo = std::max(a.first_j(), b.first_j());
  const double hi = std::min(a.last_j(), b.last_j());
  std::complex<double> s = 0;
  for (double j = lo; j <= hi + 0.25; j += 1.0) s += std::conj(a.coefficient(j)) * b.coefficient(j);
  return s;
}

// ||a - b|| over the union of index ranges.
inline double distance(const FockVector& a, const FockVector& b) {
  if (a.offset() != b.offset()) throw domain_error("distance: vectors live on different lattices");
  if (a.empty() && b.empty()) return 0.0;
  const double lo = a.empty() ? b.first_j() : b.empty() ? a.first_j() : std::min(a.first_j(), b.first_j());
  const double hi = a.empty() ? b.last_j() : b.empty() ? a.last_j() : std::max(a.last_j(), b.last_j());
  double s = 0;
  for (double j = lo; j <= hi + 0.25; j += 1.0) s += std::norm(a.coefficient(j) - b.coefficient(j));
  return std::sqrt(s);
}

// Raising shift U|j> = |j+1>.
inline FockVector shift_up(const FockVector& v) {
  return FockVector(v.offset(), v.first_j() + 1.0, v.coefficients(), v.tail_bound());
}

}  // namespace mobius
