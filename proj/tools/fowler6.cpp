#include <CLI11.hpp>
#include <iostream>

#include "fowler6/commands.hpp"

using namespace fowler6;

namespace {

// Flags shared by every subcommand. Values land in `flags` as text and are
// applied over the config file afterwards.
struct Flags {
  std::string config_file;
  std::map<std::string, std::string> values;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config_file, "flat key = value config file");
  for (const char* key : {"n", "m", "c-mode", "tol-rel", "tol-abs", "tol-newton", "horizon-mult", "escape-safety",
                          "jobs", "seed", "out", "format"}) {
    sub->add_option_function<std::string>(std::string("--") + key,
                                          [&f, key](const std::string& v) { f.values[key] = v; });
  }
}

RunConfig build_config(const Flags& f) {
  RunConfig c;
  if (!f.config_file.empty()) apply_config_file(f.config_file, c);
  for (const auto& [k, v] : f.values) set_config_value(c, k, v);
  c.validate();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial solutions of the critical tri-harmonic equation: audits, periodic orbits, sweeps, "
               "reconstruction and verification"};
  app.require_subcommand(1);
  Flags flags;
  std::string a0 = "0.5", grid;
  ReconstructArgs rec;
  double r_min = -1;
  VerifyOptions vopt;

  CLI::App* audit = app.add_subcommand("audit", "constants and coupling audit");
  CLI::App* periodic = app.add_subcommand("periodic", "solve one periodic orbit");
  CLI::App* sweep = app.add_subcommand("sweep", "solve a grid of minima");
  CLI::App* reconstruct = app.add_subcommand("reconstruct", "PDE profile from a periodic orbit");
  CLI::App* verify = app.add_subcommand("verify", "run the property suite");
  for (CLI::App* s : {audit, periodic, sweep, reconstruct, verify}) add_common(s, flags);

  periodic->add_option("--a0", a0, "minimum of the orbit")->required();
  sweep->add_option("--a0,--grid", grid, "start:stop:step or a comma-separated list")->required();
  reconstruct->add_option("--a0", rec.a0, "minimum of the orbit, or 'astar'");
  reconstruct->add_option("--T", rec.T, "phase shift");
  reconstruct->add_option("--r-min", r_min, "smallest radius");
  reconstruct->add_option("--count", rec.count, "number of radii");
  reconstruct->add_option("--periods", rec.periods, "log-radius span in periods");
  verify->add_option("--perturb-k2", vopt.perturb_k2)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  RunConfig config;
  try {
    config = build_config(flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }

  if (*audit) return cmd_audit(config, std::cout, std::cerr);
  if (*periodic) return cmd_periodic(config, a0, std::cout, std::cerr);
  if (*sweep) return cmd_sweep(config, grid, std::cout, std::cerr);
  if (*reconstruct) {
    if (reconstruct->count("--r-min")) rec.r_min = r_min;
    return cmd_reconstruct(config, rec, std::cout, std::cerr);
  }
  return cmd_verify(config, vopt, std::cout, std::cerr);
}
