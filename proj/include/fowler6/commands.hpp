#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "fowler6/config.hpp"
#include "fowler6/verify.hpp"

namespace fowler6 {

enum ExitCode { exit_ok = 0, exit_violation = 1, exit_usage = 2, exit_nonconvergence = 3 };

int cmd_audit(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_periodic(const RunConfig& config, const std::string& a0, std::ostream& out, std::ostream& err);
// grid "start:stop:step" or a comma-separated list
int cmd_sweep(const RunConfig& config, const std::string& grid, std::ostream& out, std::ostream& err);

struct ReconstructArgs {
  std::string a0 = "0.5";  // a number or "astar"
  double T = 0;
  std::optional<double> r_min;  // default: three periods centred on r = 1
  int count = 20;
  double periods = 3;
};
int cmd_reconstruct(const RunConfig& config, const ReconstructArgs& args, std::ostream& out, std::ostream& err);

int cmd_verify(const RunConfig& config, const VerifyOptions& options, std::ostream& out, std::ostream& err);

std::vector<double> parse_grid(const std::string& grid);

}  // namespace fowler6
