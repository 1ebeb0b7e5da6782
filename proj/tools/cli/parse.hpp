#pragma once

// Text -> value parsing for CLI parameters and grid specifications.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mobius::cli {

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::optional<double> try_parse_real(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) return std::nullopt;
  double v = 0;
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline double parse_real(std::string_view text, const std::string& what) {
  if (auto v = try_parse_real(text)) return *v;
  throw usage_error(what + ": expected a real number, got '" + std::string(text) + "'");
}

// Radians, with symbolic multiples of pi: "pi", "-pi", "3pi", "3*pi", "pi/2", "0.5pi", "3pi/4".
inline std::optional<double> try_parse_angle(std::string_view text) {
  const std::string s = trim(text);
  static const std::regex re(R"(^([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*pi(?:\s*/\s*((?:\d+\.?\d*|\.\d+)))?$)");
  std::smatch m;
  if (std::regex_match(s, m, re)) {
    double v = std::numbers::pi;
    if (m[2].matched) v *= *try_parse_real(m[2].str());
    if (m[3].matched) v /= *try_parse_real(m[3].str());
    return m[1].str() == "-" ? -v : v;
  }
  return try_parse_real(s);
}

inline double parse_angle(std::string_view text, const std::string& what) {
  if (auto v = try_parse_angle(text)) return *v;
  throw usage_error(what + ": expected an angle (radians or multiple of pi), got '" + std::string(text) + "'");
}

inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// One grid dimension: name=a:b:n (n points on the half-open range [a, b)) or name=v1,v2,...
struct GridDim {
  std::string name;
  std::vector<std::string> values;
};

using Grid = std::vector<GridDim>;

// Dimensions separated by ';'. is_angle decides whether range endpoints accept pi notation.
template <class IsAngle>
Grid parse_grid(std::string_view spec, IsAngle is_angle) {
  Grid grid;
  if (trim(spec).empty()) return grid;
  for (const auto& part : split(spec, ';')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw usage_error("grid: dimension '" + part + "' lacks '='");
    GridDim dim{trim(part.substr(0, eq)), {}};
    const std::string body = trim(part.substr(eq + 1));
    if (dim.name.empty()) throw usage_error("grid: empty dimension name");
    for (const auto& d : grid)
      if (d.name == dim.name) throw usage_error("grid: dimension '" + dim.name + "' given twice");
    if (body.find(':') != std::string::npos) {
      const auto f = split(body, ':');
      if (f.size() != 3) throw usage_error("grid: range for '" + dim.name + "' must be a:b:n");
      const std::string what = "grid " + dim.name;
      const double a = is_angle(dim.name) ? parse_angle(f[0], what) : parse_real(f[0], what);
      const double b = is_angle(dim.name) ? parse_angle(f[1], what) : parse_real(f[1], what);
      const double n = parse_real(f[2], what + " count");
      if (!(n >= 0) || n != std::floor(n) || n > 1e7) throw usage_error(what + ": count must be a non-negative integer");
      for (long i = 0; i < static_cast<long>(n); ++i) dim.values.push_back(format_real(a + (b - a) * i / n));
    } else if (!body.empty()) {
      dim.values = split(body, ',');
    }
    grid.push_back(std::move(dim));
  }
  return grid;
}

inline std::size_t grid_size(const Grid& g) {
  std::size_t n = 1;
  for (const auto& d : g) n *= d.values.size();
  return g.empty() ? 1 : n;
}

// Index tuple for row k, lexicographic with the last dimension fastest.
inline std::vector<std::size_t> grid_index(const Grid& g, std::size_t k) {
  std::vector<std::size_t> idx(g.size());
  for (std::size_t d = g.size(); d-- > 0;) {
    idx[d] = k % g[d].values.size();
    k /= g[d].values.size();
  }
  return idx;
}

}  // namespace mobius::cli
