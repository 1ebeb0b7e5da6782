#pragma once

// Command dispatch for the mobius CLI. A RunConfig names a command, an
// optional action, parameter strings and an optional grid; execute() expands
// the grid, evaluates every point (concurrently if asked) and assembles the
// rows in grid order.

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "cli/parse.hpp"
#include "cli/table.hpp"
#include "mobius/mobius.hpp"

namespace mobius::cli {

enum class ParamKind { real, angle, offset, sign, form, text };

struct ParamSpec {
  std::string name;
  ParamKind kind;
  std::string default_value;  // empty: required when read
  std::string help;
};

struct RunConfig {
  std::string command;
  std::string action;
  std::map<std::string, std::string> params;
  std::string grid;
  std::string format = "csv";
  int workers = 1;  // not part of the serialised config: output does not depend on it
};

inline nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["command"] = c.command;
  j["action"] = c.action;
  j["params"] = c.params;
  j["grid"] = c.grid;
  j["format"] = c.format;
  return j;
}

inline RunConfig from_json(const nlohmann::json& j) {
  const auto& c = j.contains("config") ? j.at("config") : j;
  RunConfig out;
  for (const auto& [key, value] : c.items())
    if (key != "command" && key != "action" && key != "params" && key != "grid" && key != "format")
      throw usage_error("config: unknown key '" + key + "'");
  out.command = c.at("command").get<std::string>();
  out.action = c.value("action", "");
  out.grid = c.value("grid", "");
  out.format = c.value("format", "csv");
  if (c.contains("params"))
    for (const auto& [key, value] : c.at("params").items()) {
      if (!value.is_string()) throw usage_error("config: parameter '" + key + "' must be a string");
      out.params[key] = value.get<std::string>();
    }
  return out;
}

class Params {
 public:
  Params(const std::vector<ParamSpec>& specs, std::map<std::string, std::string> values)
      : specs_(&specs), values_(std::move(values)) {}

  bool has(const std::string& name) const { return !raw(name).empty(); }

  double real(const std::string& name) const { return parse_real(require(name), "--" + flag(name)); }
  double angle(const std::string& name) const { return parse_angle(require(name), "--" + flag(name)); }

  Offset offset(const std::string& name) const {
    const std::string v = require(name);
    if (v == "int" || v == "integer" || v == "0") return Offset::integer;
    if (v == "half" || v == "0.5" || v == "1/2") return Offset::half;
    throw usage_error("--" + flag(name) + ": expected int or half, got '" + v + "'");
  }

  SignConvention sign(const std::string& name) const {
    const std::string v = require(name);
    if (v == "label" || v == "+1" || v == "1") return kLabelSign;
    if (v == "torus" || v == "-1") return kTorusSign;
    throw usage_error("--" + flag(name) + ": expected label or torus, got '" + v + "'");
  }

  dynamics::SpectrumForm form(const std::string& name) const {
    const std::string v = require(name);
    if (v == "legendre") return dynamics::SpectrumForm::legendre;
    if (v == "printed") return dynamics::SpectrumForm::printed;
    throw usage_error("--" + flag(name) + ": expected legendre or printed, got '" + v + "'");
  }

  std::string text(const std::string& name) const { return require(name); }

  static std::string flag(std::string name) {
    std::replace(name.begin(), name.end(), '_', '-');
    return name;
  }

 private:
  std::string raw(const std::string& name) const {
    if (auto it = values_.find(name); it != values_.end()) return it->second;
    for (const auto& s : *specs_)
      if (s.name == name) return s.default_value;
    throw usage_error("internal: parameter '" + name + "' not declared");
  }
  std::string require(const std::string& name) const {
    std::string v = raw(name);
    if (v.empty()) throw usage_error("missing required parameter --" + flag(name));
    return v;
  }

  const std::vector<ParamSpec>* specs_;
  std::map<std::string, std::string> values_;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<std::string> actions;  // empty: the command takes no action
  std::string default_action;
  std::vector<ParamSpec> params;
  std::function<std::vector<std::string>(const std::string&)> columns;
  std::function<std::vector<Row>(const std::string&, const Params&)> evaluate;
};

namespace detail {

using cplx = std::complex<double>;

inline states::StateLabel label(const Params& p, const char* l = "l", const char* phi = "phi") {
  return {p.real(l), p.angle(phi), p.real("r"), p.offset("s"), p.sign("sign")};
}

inline theta::SeriesPolicy<double> policy(const Params& p) {
  theta::SeriesPolicy<double> pol;
  if (p.has("tol")) pol.target_tol = p.real("tol");
  return pol;
}

inline CommandSpec theta_command() {
  CommandSpec c;
  c.name = "theta";
  c.help = "Jacobi theta functions theta_3, theta_2 and the log-derivative at (nu | tau)";
  c.actions = {"theta3", "theta2", "theta3-modular", "derivative", "logderiv"};
  c.default_action = "theta3";
  c.params = {{"nu_re", ParamKind::real, "0", "Re nu"},
              {"nu_im", ParamKind::real, "0", "Im nu"},
              {"tau_re", ParamKind::real, "0", "Re tau"},
              {"tau_im", ParamKind::real, "1", "Im tau (> 0)"},
              {"tol", ParamKind::real, "", "series tail tolerance (default 1e-14)"}};
  c.columns = [](const std::string& a) -> std::vector<std::string> {
    if (a == "theta3") return {"re", "im", "tail_bound", "terms"};
    return {"re", "im"};
  };
  c.evaluate = [](const std::string& a, const Params& p) -> std::vector<Row> {
    const theta::ThetaArgument<double> arg{cplx(p.real("nu_re"), p.real("nu_im")),
                                           cplx(p.real("tau_re"), p.real("tau_im"))};
    const auto pol = policy(p);
    if (a == "theta3") {
      const auto r = theta::theta3_series(arg, pol);
      return {{r.value.real(), r.value.imag(), r.tail_bound, double(r.terms)}};
    }
    cplx v;
    if (a == "theta2") v = theta::theta2(arg, pol);
    else if (a == "theta3-modular") v = theta::theta3_modular(arg, pol);
    else if (a == "derivative") v = theta::theta3_derivative(arg, pol);
    else v = theta::theta3_logderiv(arg, pol);
    return {{v.real(), v.imag()}};
  };
  return c;
}

inline std::vector<ParamSpec> label_params() {
  return {{"l", ParamKind::real, "0", "axial label l"},
          {"phi", ParamKind::angle, "0", "angle label phi (radians, pi notation accepted)"},
          {"r", ParamKind::real, "0.5", "strip half-width r in [0, 1)"},
          {"s", ParamKind::offset, "int", "basis offset: int (j in Z) or half (j in Z + 1/2)"},
          {"sign", ParamKind::sign, "label", "strip height convention: label (+) or torus (-)"}};
}

inline CommandSpec cs_command() {
  CommandSpec c;
  c.name = "cs";
  c.help = "Coherent states: vectors, norms, overlaps, expectations, distributions, quantised angles";
  c.actions = {"build", "norm", "overlap", "expect-j", "expect-u", "distribution",
               "gaussian-gap", "bargmann", "quantize", "evolve"};
  c.params = label_params();
  c.params.insert(c.params.end(), {{"l2", ParamKind::real, "0", "second label l (overlap)"},
                                   {"phi2", ParamKind::angle, "0", "second label phi (overlap)"},
                                   {"j", ParamKind::real, "", "basis index j in Z + s"},
                                   {"j_max", ParamKind::real, "", "truncation |j| <= J_max (default ceil|l'| + 9)"},
                                   {"t", ParamKind::real, "1", "evolution time"},
                                   {"L0", ParamKind::real, "0", "axial momentum L0"},
                                   {"tol", ParamKind::real, "", "lattice tolerance for quantize (default 1e-9)"}});
  c.columns = [](const std::string& a) -> std::vector<std::string> {
    if (a == "build") return {"j", "re", "im"};
    if (a == "norm") return {"lprime", "norm2", "norm2_modular", "norm2_fock"};
    if (a == "overlap") return {"re", "im", "fock_re", "fock_im", "route_gap"};
    if (a == "expect-j") return {"lprime", "expect_j", "ratio", "theta_derivative", "route_gap"};
    if (a == "expect-u") return {"re", "im", "abs", "route_gap"};
    if (a == "distribution") return {"j", "p", "gaussian"};
    if (a == "gaussian-gap") return {"lprime", "sup_gap"};
    if (a == "bargmann") return {"j", "re", "im"};
    if (a == "quantize") return {"phi", "lprime", "expect_j"};
    return {"omega", "fidelity", "norm_change"};
  };
  c.evaluate = [](const std::string& a, const Params& p) -> std::vector<Row> {
    using namespace states;
    const StateLabel x = label(p);
    std::vector<Row> rows;
    if (a == "build") {
      const FockVector v = build_cs(x, p.has("j_max") ? p.real("j_max") : std::numeric_limits<double>::quiet_NaN());
      for (std::size_t i = 0; i < v.size(); ++i) rows.push_back({v.j_at(i), v[i].real(), v[i].imag()});
    } else if (a == "norm") {
      rows.push_back({lprime(x), norm2(x, NormRoute::theta), norm2(x, NormRoute::modular), norm2(x, NormRoute::fock)});
    } else if (a == "overlap") {
      const StateLabel y = label(p, "l2", "phi2");
      const cplx closed = overlap(x, y, OverlapRoute::closed);
      const cplx fock = overlap(x, y, OverlapRoute::fock);
      rows.push_back({closed.real(), closed.imag(), fock.real(), fock.imag(), std::abs(closed - fock)});
    } else if (a == "expect-j") {
      const double ps = expect_J(x, ExpectJRoute::product_series);
      const double ra = expect_J(x, ExpectJRoute::ratio);
      const double td = expect_J(x, ExpectJRoute::theta_derivative);
      rows.push_back({lprime(x), ps, ra, td, std::max(std::abs(ps - ra), std::abs(ps - td))});
    } else if (a == "expect-u") {
      const cplx u = expect_U(x, ExpectURoute::closed);
      rows.push_back({u.real(), u.imag(), std::abs(u), std::abs(u - expect_U(x, ExpectURoute::fock))});
    } else if (a == "distribution") {
      const double lp = lprime(x);
      if (p.has("j")) {
        const double j = p.real("j");
        rows.push_back({j, distribution(x, j), distribution_gaussian(lp, j)});
      } else {
        const FockVector v = build_cs(x);
        for (std::size_t i = 0; i < v.size(); ++i)
          rows.push_back({v.j_at(i), distribution(x, v.j_at(i)), distribution_gaussian(lp, v.j_at(i))});
      }
    } else if (a == "gaussian-gap") {
      const double lp = lprime(x);
      const FockVector v = build_cs(x);
      double gap = 0;
      for (std::size_t i = 0; i < v.size(); ++i)
        gap = std::max(gap, std::abs(distribution(x, v.j_at(i)) - distribution_gaussian(lp, v.j_at(i))));
      rows.push_back({lp, gap});
    } else if (a == "bargmann") {
      const double j = p.real("j");
      const cplx b = bargmann_coeff(x, j);
      rows.push_back({j, b.real(), b.imag()});
    } else if (a == "quantize") {
      ScanOptions opt;
      if (p.has("tol")) opt.lattice_tol = p.real("tol");
      for (const auto& q : quantization_scan(x.r, x.l, x.s, x.sign, opt)) rows.push_back({q.phi, q.lprime, q.expect_J});
    } else {
      const auto rep = evolution_fidelity(x, p.real("t"), p.real("L0"));
      const double n0 = build_cs(x).norm();
      rows.push_back({rep.omega, rep.fidelity, std::abs(rep.evolved.norm() - n0) / n0});
    }
    return rows;
  };
  return c;
}

inline CommandSpec spectrum_command() {
  CommandSpec c;
  c.name = "spectrum";
  c.help = "Energy levels E_j on the basis lattice |j| <= J_max";
  c.params = {{"r", ParamKind::real, "0.5", "strip half-width r"},
              {"s", ParamKind::offset, "int", "basis offset int or half"},
              {"j_max", ParamKind::real, "3", "largest |j|"},
              {"L0", ParamKind::real, "0", "axial momentum L0"},
              {"phi", ParamKind::angle, "pi", "angle at which the general form is evaluated"},
              {"form", ParamKind::form, "legendre", "legendre or printed Hamiltonian bracket"},
              {"sign", ParamKind::sign, "torus", "strip height convention"}};
  c.columns = [](const std::string&) -> std::vector<std::string> { return {"j", "E", "E_quantized"}; };
  c.evaluate = [](const std::string&, const Params& p) -> std::vector<Row> {
    const double r = p.real("r");
    const double L0 = p.real("L0");
    const double phi = p.angle("phi");
    const auto form = p.form("form");
    const auto sign = p.sign("sign");
    const auto [lo, hi] = states::detail::window(p.real("j_max"), p.offset("s"));
    std::vector<Row> rows;
    for (double j = lo; j <= hi + 0.25; j += 1.0)
      rows.push_back({j, dynamics::energy_spectrum(j, L0, phi, r, form, sign).E, dynamics::energy_quantized(j, L0, r)});
    return rows;
  };
  return c;
}

inline CommandSpec dynamics_command() {
  CommandSpec c;
  c.name = "dynamics";
  c.help = "Classical motion on the strip: trajectory export and conservation diagnostics";
  c.actions = {"trajectory", "conserved"};
  c.default_action = "trajectory";
  c.params = {{"phi", ParamKind::angle, "0", "initial phi"},
              {"phidot", ParamKind::real, "1", "initial phi_dot"},
              {"z0", ParamKind::real, "0", "initial Z0"},
              {"z0dot", ParamKind::real, "0", "initial Z0_dot"},
              {"r", ParamKind::real, "0.5", "strip half-width r"},
              {"t_end", ParamKind::real, "10", "final time"},
              {"dt", ParamKind::real, "0.01", "output step"},
              {"every", ParamKind::real, "1", "emit every n-th step"},
              {"sign", ParamKind::sign, "torus", "strip height convention"}};
  c.columns = [](const std::string& a) -> std::vector<std::string> {
    if (a == "trajectory") return {"t", "phi", "phi_dot", "z0", "z0_dot", "p_phi", "E", "L0", "J"};
    return {"E", "L0", "J", "drift_E", "drift_L0", "drift_J", "substeps"};
  };
  c.evaluate = [](const std::string& a, const Params& p) -> std::vector<Row> {
    using namespace dynamics;
    const MobiusState s0{p.angle("phi"), p.real("phidot"), p.real("z0"), p.real("z0dot")};
    const double r = p.real("r");
    const auto sign = p.sign("sign");
    const double every = p.real("every");
    if (!(every >= 1) || every != std::floor(every)) throw usage_error("--every must be a positive integer");
    const auto traj = integrate_mobius(s0, r, p.real("t_end"), p.real("dt"), sign);
    std::vector<Row> rows;
    if (a == "trajectory") {
      for (std::size_t i = 0; i < traj.states.size(); i += static_cast<std::size_t>(every)) {
        const auto& s = traj.states[i];
        const auto m = mobius_momenta(s, r, sign);
        const auto k = conserved(s, r, sign);
        rows.push_back({traj.t[i], s.phi, s.phi_dot, s.z0, s.z0_dot, m.p_phi, k.E, k.L0, k.J});
      }
      return rows;
    }
    const auto c0 = conserved(s0, r, sign);
    double dE = 0, dL = 0, dJ = 0;
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
    for (const auto& s : traj.states) {
      const auto k = conserved(s, r, sign);
      dE = std::max(dE, rel(k.E, c0.E));
      dL = std::max(dL, c0.L0 == 0 ? std::abs(k.L0) : rel(k.L0, c0.L0));
      dJ = std::max(dJ, c0.J == 0 ? std::abs(k.J) : rel(k.J, c0.J));
    }
    rows.push_back({c0.E, c0.L0, c0.J, dE, dL, dJ, double(traj.substeps)});
    return rows;
  };
  return c;
}

inline CommandSpec project_command() {
  CommandSpec c;
  c.name = "project";
  c.help = "Torus states, projected overlaps, the constraint projector and the circle reduction";
  c.actions = {"labels", "overlap", "projector", "rank", "circle"};
  c.params = label_params();
  c.params.insert(c.params.end(), {{"theta", ParamKind::angle, "", "torus angle theta (default: on the strip)"},
                                   {"l2", ParamKind::real, "0", "second label l"},
                                   {"phi2", ParamKind::angle, "0", "second label phi"},
                                   {"delta", ParamKind::real, "0.1", "projector window half-width"}});
  c.columns = [](const std::string& a) -> std::vector<std::string> {
    if (a == "labels") return {"xi_ms_re", "xi_ms_im", "xi_aux_i_re", "xi_aux_i_im", "xi_aux_k_re", "xi_aux_k_im"};
    if (a == "overlap")
      return {"re", "im", "series_re", "series_im", "printed_re", "printed_im", "series_gap", "printed_gap"};
    if (a == "projector") return {"closed", "quadrature", "boundary", "error_bound"};
    if (a == "rank") return {"sigma1", "sigma2", "ratio"};
    return {"circle_l", "circle_phi", "chain_gap"};
  };
  c.evaluate = [](const std::string& a, const Params& p) -> std::vector<Row> {
    const double phi = p.angle("phi");
    const double theta = p.has("theta") ? p.angle("theta") : geometry::constraint_theta(phi);
    const double l = p.real("l");
    const double r = p.real("r");
    if (a == "labels") {
      const auto t = projection::torus_labels(l, theta, phi, r);
      return {{t.xi_ms.real(), t.xi_ms.imag(), t.xi_aux.i_part.real(), t.xi_aux.i_part.imag(),
               t.xi_aux.k_part.real(), t.xi_aux.k_part.imag()}};
    }
    if (a == "overlap") {
      const auto x = label(p);
      const auto y = label(p, "l2", "phi2");
      const cplx v = projection::project_overlap(x, y);
      const cplx s = projection::project_overlap_series(x, y);
      const cplx pr = projection::project_overlap_printed(x, y);
      return {{v.real(), v.imag(), s.real(), s.imag(), pr.real(), pr.imag(), std::abs(v - s), std::abs(v - pr)}};
    }
    if (a == "projector") {
      const projection::ProjectionSpec spec{p.real("delta"), theta, phi};
      const auto closed = projection::universal_projector(spec);
      const auto quad = projection::universal_projector_quadrature(spec);
      return {{closed.value, quad.value, closed.boundary, quad.error_bound}};
    }
    if (a == "rank") {
      const auto sv = projection::singular_values(projection::build_torus_cs(l, theta, phi, r, p.offset("s")));
      return {{sv[0], sv[1], sv[1] / sv[0]}};
    }
    const auto torus = projection::build_torus_cs(l, theta, phi, r, p.offset("s"));
    const FockVector circ = projection::project_mobius_to_circle(projection::j_marginal(torus));
    const auto target = projection::project_mobius_to_circle(states::StateLabel{l, phi, r, p.offset("s"), kTorusSign});
    const FockVector direct = projection::circle_cs(target.l, target.phi);
    return {{target.l, target.phi, distance(circ, direct) / direct.norm()}};
  };
  return c;
}

inline CommandSpec verify_command() {
  CommandSpec c;
  c.name = "verify";
  c.help = "Run identity-verification suites (theta, states, dynamics, projection, all)";
  c.params = {{"suite", ParamKind::text, "all", "suite name"},
              {"tol", ParamKind::real, "", "override every tolerance"}};
  c.columns = [](const std::string&) -> std::vector<std::string> {
    return {"check", "anchor", "max_error", "tolerance", "pass", "grid"};
  };
  c.evaluate = [](const std::string&, const Params& p) -> std::vector<Row> {
    std::vector<Row> rows;
    for (auto rep : verify::run_suite(p.text("suite"))) {
      if (p.has("tol")) {
        rep.tolerance = p.real("tol");
        rep.pass = std::isfinite(rep.max_error) && rep.max_error <= rep.tolerance;
      }
      rows.push_back({rep.check, rep.anchor, rep.max_error, rep.tolerance, rep.pass, rep.grid});
    }
    return rows;
  };
  return c;
}

}  // namespace detail

inline const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> all{detail::theta_command(), detail::cs_command(), detail::spectrum_command(),
                                            detail::dynamics_command(), detail::project_command(),
                                            detail::verify_command()};
  return all;
}

inline const CommandSpec& find_command(const std::string& name) {
  for (const auto& c : commands())
    if (c.name == name) return c;
  throw usage_error("unknown command '" + name + "'");
}

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 evaluation or verification failure, 2 usage error
  Table table;
  std::vector<std::string> messages;
};

inline std::string describe(const std::exception& e) {
  if (const auto* pe = dynamic_cast<const precision_error*>(&e)) {
    std::string m = std::string(e.what()) + " (achieved bound " + format_real(pe->achieved_bound());
    if (pe->suggested() > 0) m += ", suggested " + format_real(pe->suggested());
    return m + ")";
  }
  if (const auto* se = dynamic_cast<const step_rejected_error*>(&e))
    return std::string(e.what()) + " (relative drift " + format_real(se->drift()) + ")";
  return e.what();
}

inline const ParamSpec* find_param(const CommandSpec& spec, const std::string& name) {
  for (const auto& p : spec.params)
    if (p.name == name) return &p;
  return nullptr;
}

// Validates the configuration, then evaluates every grid point.
inline RunResult execute(const RunConfig& cfg) {
  RunResult res;
  const CommandSpec* spec = nullptr;
  Grid grid;
  std::string action = cfg.action;
  try {
    spec = &find_command(cfg.command);
    if (spec->actions.empty()) {
      if (!action.empty()) throw usage_error(spec->name + " takes no action, got '" + action + "'");
    } else {
      if (action.empty()) action = spec->default_action;
      if (action.empty()) throw usage_error(spec->name + ": missing action");
      if (std::find(spec->actions.begin(), spec->actions.end(), action) == spec->actions.end())
        throw usage_error(spec->name + ": unknown action '" + action + "'");
    }
    if (cfg.format != "csv" && cfg.format != "json") throw usage_error("--format must be csv or json");
    for (const auto& [key, value] : cfg.params)
      if (!find_param(*spec, key)) throw usage_error(spec->name + ": unknown parameter '" + key + "'");
    grid = parse_grid(cfg.grid, [&](const std::string& name) {
      const auto* p = find_param(*spec, name);
      return p && p->kind == ParamKind::angle;
    });
    for (auto& dim : grid) {
      std::replace(dim.name.begin(), dim.name.end(), '-', '_');
      if (!find_param(*spec, dim.name)) throw usage_error("grid: unknown parameter '" + dim.name + "'");
    }
  } catch (const usage_error& e) {
    res.exit_code = 2;
    res.messages.push_back(e.what());
    return res;
  }

  const bool sweep = !grid.empty();
  for (const auto& d : grid) res.table.columns.push_back(d.name);
  const auto out_cols = spec->columns(action);
  res.table.columns.insert(res.table.columns.end(), out_cols.begin(), out_cols.end());

  const std::size_t n = grid_size(grid);
  struct Point {
    std::vector<Row> rows;
    std::string error;
    bool usage = false;
  };
  std::vector<Point> points(n);
  auto eval = [&](std::size_t k) {
    auto values = cfg.params;
    const auto idx = grid_index(grid, k);
    for (std::size_t d = 0; d < grid.size(); ++d) values[grid[d].name] = grid[d].values[idx[d]];
    try {
      points[k].rows = spec->evaluate(action, Params(spec->params, std::move(values)));
    } catch (const usage_error& e) {
      points[k].error = e.what();
      points[k].usage = true;
    } catch (const mobius::domain_error& e) {
      points[k].error = e.what();
      points[k].usage = true;
    } catch (const std::exception& e) {
      points[k].error = describe(e);
    }
  };
  const unsigned workers = static_cast<unsigned>(std::clamp<long>(cfg.workers, 1, 256));
  if (workers == 1 || n < 2) {
    for (std::size_t k = 0; k < n; ++k) eval(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(workers, n); ++w)
      pool.emplace_back([&] {
        for (std::size_t k; (k = next.fetch_add(1)) < n;) eval(k);
      });
    for (auto& t : pool) t.join();
  }

  bool any_error = false;
  for (const auto& pt : points) any_error = any_error || !pt.error.empty();
  if (any_error && sweep) res.table.columns.push_back("error");
  for (std::size_t k = 0; k < n; ++k) {
    const auto& pt = points[k];
    Row prefix;
    const auto idx = grid_index(grid, k);
    for (std::size_t d = 0; d < grid.size(); ++d) {
      const std::string& v = grid[d].values[idx[d]];
      const auto* ps = find_param(*spec, grid[d].name);
      std::optional<double> num = ps->kind == ParamKind::angle ? try_parse_angle(v)
                                  : ps->kind == ParamKind::real ? try_parse_real(v)
                                                                : std::nullopt;
      prefix.push_back(num ? Cell(*num) : Cell(v));
    }
    if (!pt.error.empty()) {
      if (sweep) {
        Row row = prefix;
        row.resize(res.table.columns.size() - 1, std::string());
        row.push_back(pt.error);
        res.table.rows.push_back(std::move(row));
      }
      res.messages.push_back((sweep ? "row " + std::to_string(k) + ": " : std::string()) + pt.error);
      res.exit_code = std::max(res.exit_code, !sweep && pt.usage ? 2 : 1);
      continue;
    }
    for (const auto& r : pt.rows) {
      Row row = prefix;
      row.insert(row.end(), r.begin(), r.end());
      if (any_error) row.push_back(std::string());
      res.table.rows.push_back(std::move(row));
    }
  }
  if (spec->name == "verify")
    for (const auto& row : res.table.rows)
      if (const auto* pass = std::get_if<bool>(&row[grid.size() + 4]); pass && !*pass)
        res.exit_code = std::max(res.exit_code, 1);
  return res;
}

inline void write_table(std::ostream& os, const RunResult& res, const RunConfig& cfg) {
  if (cfg.format == "json")
    write_json(os, res.table, to_json(cfg));
  else
    write_csv(os, res.table);
}

}  // namespace mobius::cli
