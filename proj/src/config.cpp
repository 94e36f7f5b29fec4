#include "fowler6/config.hpp"

#include <boost/algorithm/string/trim.hpp>
#include <boost/lexical_cast.hpp>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fowler6 {

namespace {

template <typename T>
T parse_value(const std::string& key, const std::string& value) {
  try {
    return boost::lexical_cast<T>(value);
  } catch (const boost::bad_lexical_cast&) {
    throw ConfigError("invalid value '" + value + "' for " + key);
  }
}

}  // namespace

void RunConfig::validate() const {
  if (m < 1) throw ConfigError("m must be at least 1");
  if (n < 2 * m + 1) throw ConfigError("n must exceed 2m");
  if (!(tol_rel > 0 && tol_abs > 0 && tol_newton > 0)) throw ConfigError("tolerances must be positive");
  if (!(horizon_mult > 0)) throw ConfigError("horizon-mult must be positive");
  if (!(escape_safety >= 1)) throw ConfigError("escape-safety must be at least 1");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
}

ShootOptions RunConfig::shoot_options() const {
  ShootOptions o;
  o.tol = {tol_rel, tol_abs};
  o.newton_tol = tol_newton;
  o.horizon_mult = horizon_mult;
  o.escape_safety = escape_safety;
  return o;
}

std::string RunConfig::output_dir() const {
  if (!out.empty()) return out;
  if (const char* env = std::getenv("FOWLER6_OUT"); env && *env) return env;
  return "out";
}

void set_config_value(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "n") c.n = parse_value<int>(key, value);
  else if (key == "m") c.m = parse_value<int>(key, value);
  else if (key == "c_mode" || key == "c-mode") {
    try {
      c.c_mode = parse_coupling_mode(value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  else if (key == "tol_rel" || key == "tol-rel") c.tol_rel = parse_value<double>(key, value);
  else if (key == "tol_abs" || key == "tol-abs") c.tol_abs = parse_value<double>(key, value);
  else if (key == "tol_newton" || key == "tol-newton") c.tol_newton = parse_value<double>(key, value);
  else if (key == "horizon_mult" || key == "horizon-mult") c.horizon_mult = parse_value<double>(key, value);
  else if (key == "escape_safety" || key == "escape-safety") c.escape_safety = parse_value<double>(key, value);
  else if (key == "seed") c.seed = parse_value<std::uint64_t>(key, value);
  else if (key == "jobs") c.jobs = parse_value<int>(key, value);
  else if (key == "out") c.out = value;
  else if (key == "format") c.format = value;
  else throw ConfigError("unknown config key '" + key + "'");
}

void apply_config_text(const std::string& text, RunConfig& config) {
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    boost::algorithm::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    boost::algorithm::trim(key);
    boost::algorithm::trim(value);
    set_config_value(config, key, value);
  }
}

void apply_config_file(const std::string& path, RunConfig& config) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  apply_config_text(ss.str(), config);
}

}  // namespace fowler6
