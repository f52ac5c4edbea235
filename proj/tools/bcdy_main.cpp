// Command-line front end: runs verification suites and emits exact series
// data as deterministic JSON.
#include "bcdy/suite.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using bcdy::RunConfig;

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bcdy::ConfigError("cannot open output file: " + path);
  out << text;
}

int run_checks(const RunConfig& config, const std::string& out_path, const std::string& emit) {
  if (!emit.empty()) {
    auto j = bcdy::emit_series(config, emit);
    write_output(j.dump(2) + "\n", out_path);
    return 0;
  }
  auto report = bcdy::run_suite(config);
  write_output(report.to_string(), out_path);
  std::cerr << report.config.suite << ": " << report.passed() << " passed, " << report.failed()
            << " failed, " << report.errored() << " errored\n";
  for (auto& c : report.checks)
    if (!c.ok())
      std::cerr << "  " << c.status << ": " << c.name
                << (c.witnesses.empty() ? "" : " [" + c.witnesses.front().first + "]") << "\n";
  return bcdy::report_exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact workbench for rational R-matrix structures in types B, C and D"};
  app.require_subcommand(1);

  RunConfig config;
  std::string algebra = "o";
  std::string level = "crit";
  std::string out_path;
  std::string emit;
  std::string config_path;
  std::string suite_name = "all";

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--algebra", algebra, "algebra family: o (orthogonal) or sp (symplectic)");
    cmd->add_option("--N", config.N, "vector representation dimension");
    cmd->add_option("--level", level, "level: crit or an exact rational p/q");
    cmd->add_option("--hord", config.trunc.hord, "deformation truncation order (exclusive)");
    cmd->add_option("--deg", config.trunc.deg, "module degree bound");
    cmd->add_option("--udeg", config.trunc.udeg, "series power bound");
    cmd->add_option("--forder", config.trunc.forder, "normalization series order");
    cmd->add_option("--m", config.m, "series index for emission targets");
    cmd->add_option("--seed", config.seed, "seed for randomized probes");
    cmd->add_option("--out", out_path, "output path for the JSON report ('-' = stdout)");
    cmd->add_option("--config", config_path, "JSON file with the run configuration");
    cmd->add_flag("--timings", config.timings, "include per-check timings in the report");
    return cmd;
  };

  auto* c_rmatrix = add_common(app.add_subcommand("rmatrix", "R-matrix identities, exact and normalized"));
  auto* c_fseries = add_common(app.add_subcommand("fseries", "normalization series checks"));
  auto* c_brauer = add_common(app.add_subcommand("brauer", "symmetrizer, fusion and trace reduction"));
  auto* c_engine = add_common(app.add_subcommand("engine", "relation compilation and rewriting checks"));
  auto* c_center = add_common(app.add_subcommand("center", "central series verifications"));
  auto* c_classical = add_common(app.add_subcommand("classical", "classical oracle checks"));
  auto* c_suite = add_common(app.add_subcommand("suite", "run a named suite selection"));
  c_suite->add_option("--suite", suite_name, "selection: one of the named suites or 'all'");

  for (auto* cmd : {c_fseries, c_brauer, c_center, c_classical})
    cmd->add_option("--emit", emit, "emit series data: fseries | symmetrizer | Tplus | Phi | segal-sugawara");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw bcdy::ConfigError("cannot read config file: " + config_path);
      nlohmann::json j;
      in >> j;
      RunConfig base = RunConfig::from_json(j);
      // explicit flags take precedence over the file
      auto* active = app.get_subcommands().front();
      if (!active->count("--N")) config.N = base.N;
      if (!active->count("--hord")) config.trunc.hord = base.trunc.hord;
      if (!active->count("--deg")) config.trunc.deg = base.trunc.deg;
      if (!active->count("--udeg")) config.trunc.udeg = base.trunc.udeg;
      if (!active->count("--forder")) config.trunc.forder = base.trunc.forder;
      if (!active->count("--m")) config.m = base.m;
      if (!active->count("--seed")) config.seed = base.seed;
      if (!active->count("--algebra")) algebra = bcdy::kind_str(base.kind);
      if (!active->count("--level"))
        level = base.critical_level ? "crit" : bcdy::rat_str(base.level);
      auto* sopt = active->get_option_no_throw("--suite");
      if ((sopt == nullptr || sopt->count() == 0) && !base.suite.empty()) suite_name = base.suite;
    }
    if (algebra == "o")
      config.kind = bcdy::AlgebraKind::orthogonal;
    else if (algebra == "sp")
      config.kind = bcdy::AlgebraKind::symplectic;
    else
      throw bcdy::ConfigError("unknown algebra kind: " + algebra);
    if (level == "crit") {
      config.critical_level = true;
    } else {
      config.critical_level = false;
      config.level = bcdy::rat_from_string(level);
    }
    config.context();  // validate early

    if (c_rmatrix->parsed()) config.suite = "rmatrix+rbar";
    if (c_fseries->parsed()) config.suite = "fseries";
    if (c_brauer->parsed()) config.suite = "brauer";
    if (c_engine->parsed()) config.suite = "engine";
    if (c_center->parsed()) config.suite = "center+smap+dy";
    if (c_classical->parsed()) config.suite = "classical";
    if (c_suite->parsed()) config.suite = suite_name;
    if (!emit.empty()) {
      // emission targets are independent of the suite name
      return run_checks(config, out_path, emit);
    }
    return run_checks(config, out_path, "");
  } catch (const bcdy::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
