#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "fowler6/operator.hpp"
#include "fowler6/shooting.hpp"

namespace fowler6 {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  int n = 7;
  int m = 3;
  CouplingMode c_mode = CouplingMode::audited;
  double tol_rel = 1e-13;
  double tol_abs = 1e-15;
  double tol_newton = 1e-12;
  double horizon_mult = 20.0;
  double escape_safety = 2.0;
  std::uint64_t seed = 42;
  int jobs = 1;
  std::string out;  // defaults to $FOWLER6_OUT, then "out"
  std::string format = "csv";

  // throws ConfigError
  void validate() const;
  ShootOptions shoot_options() const;
  std::string output_dir() const;
};

// Flat "key = value" lines; '#' starts a comment. Unknown keys are rejected.
void apply_config_file(const std::string& path, RunConfig& config);
void apply_config_text(const std::string& text, RunConfig& config);
void set_config_value(RunConfig& config, const std::string& key, const std::string& value);

}  // namespace fowler6
