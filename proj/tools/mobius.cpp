// mobius: command-line frontend for the coherent-state, dynamics and
// projection library. See README.md for commands and output schemas.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "cli/run.hpp"

namespace {

int default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace mobius::cli;

  CLI::App app{"Coherent states on the Moebius strip: theta functions, states, dynamics, projection"};
  app.set_config("--config", "", "TOML/INI file with the same keys as the flags");
  app.fallthrough();
  app.require_subcommand(0, 1);

  RunConfig cfg;
  std::string out_path;
  std::string replay_path;
  cfg.workers = default_workers();
  app.add_option("--out", out_path, "write the table to this file instead of stdout");
  app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--workers", cfg.workers, "concurrent grid rows")->envname("MOBIUS_WORKERS")->check(CLI::PositiveNumber);
  app.add_option("--replay", replay_path, "re-run the configuration stored in a JSON output file");

  std::map<std::string, CLI::App*> subs;
  for (const auto& spec : commands()) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    if (!spec.actions.empty()) sub->add_option("action", cfg.action, "action")->check(CLI::IsMember(spec.actions));
    for (const auto& p : spec.params) {
      const std::string name = p.name;
      sub->add_option_function<std::string>(
          "--" + Params::flag(name), [&cfg, name](const std::string& v) { cfg.params[name] = v; },
          p.help + (p.default_value.empty() ? "" : " [" + p.default_value + "]"));
    }
    sub->add_option("--grid", cfg.grid, "sweep: 'name=a:b:n; name=v1,v2,...'");
    subs[spec.name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!replay_path.empty()) {
    if (!app.get_subcommands().empty()) {
      std::cerr << "mobius: --replay cannot be combined with a command\n";
      return 2;
    }
    try {
      std::ifstream in(replay_path, std::ios::binary);
      if (!in) throw usage_error("cannot open '" + replay_path + "'");
      const int workers = cfg.workers;
      cfg = from_json(nlohmann::json::parse(in));
      cfg.workers = workers;
    } catch (const std::exception& e) {
      std::cerr << "mobius: replay: " << e.what() << "\n";
      return 2;
    }
  } else {
    if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();
  }

  const RunResult res = execute(cfg);
  for (const auto& m : res.messages) std::cerr << "mobius: " << m << "\n";
  if (res.exit_code == 2) return 2;

  if (out_path.empty()) {
    write_table(std::cout, res, cfg);
    std::cout.flush();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "mobius: cannot write '" << out_path << "'\n";
      return 2;
    }
    write_table(out, res, cfg);
  }
  return res.exit_code;
}
