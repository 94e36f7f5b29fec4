#pragma once

#include <string>
#include <vector>

#include "fowler6/config.hpp"

namespace fowler6 {

struct Check {
  std::string name;
  double value = 0;
  double threshold = 0;
  std::string relation;  // how value compares to threshold when passing: "<", ">", "<=", "=="
  bool asserted = true;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  double perturb_k2 = 0;  // added to K2 in the floating-point operator only
  std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  std::size_t kernel_draws = 10000;
  int phase_points = 100;
  int conservation_periods = 10;
};

struct VerifyReport {
  std::vector<Check> checks;
  std::vector<std::string> failed;  // asserted checks that did not pass
  bool pass() const { return failed.empty(); }
  std::string to_json(const RunConfig& config) const;
};

VerifyReport run_verification(const RunConfig& config, const VerifyOptions& options = {});

}  // namespace fowler6
