#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fowler6/commands.hpp"
#include "fowler6/io.hpp"

using namespace fowler6;
namespace fs = std::filesystem;

namespace {

RunConfig scratch(const std::string& name) {
  RunConfig c;
  c.out = (fs::temp_directory_path() / ("fowler6_test_" + name)).string();
  fs::remove_all(c.out);
  return c;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("config text") {
  RunConfig c;
  apply_config_text("# comment\nn = 9\ntol-rel=1e-12  # trailing\n\nc_mode = paper-gamma\njobs = 2\n", c);
  CHECK(c.n == 9);
  CHECK(c.tol_rel == 1e-12);
  CHECK(c.c_mode == CouplingMode::paper_gamma);
  CHECK(c.jobs == 2);
  CHECK_THROWS_AS(apply_config_text("colour = red\n", c), ConfigError);
  CHECK_THROWS_AS(apply_config_text("n 7\n", c), ConfigError);
  CHECK_THROWS_AS(set_config_value(c, "n", "seven"), ConfigError);
}

TEST_CASE("config validation") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.n = 6;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.tol_rel = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.jobs = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.format = "xml";
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig{};
  c.out = "somewhere";
  CHECK(c.output_dir() == "somewhere");
}

TEST_CASE("grid parsing") {
  std::vector<double> g = parse_grid("0.1:0.5:0.1");
  REQUIRE(g.size() == 5);
  CHECK(g[2] == 0.3);
  CHECK(g[4] == 0.5);
  g = parse_grid("0.2, 0.7,0.4");
  REQUIRE(g.size() == 3);
  CHECK(g[1] == 0.7);
  CHECK(parse_grid("0.5:0.1:0.1").empty());
  CHECK_THROWS_AS(parse_grid("0.1:0.5:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid("a,b"), std::invalid_argument);
}

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3, 6.692953, -1e-300}) CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("audit") {
  const RunConfig c = scratch("audit");
  std::ostringstream out, err;
  CHECK(cmd_audit(c, out, err) == exit_ok);
  const nlohmann::json j = nlohmann::json::parse(out.str());
  CHECK(j["K"][0] == "2025/64");
  CHECK(j["K"][1] == "2131/16");
  CHECK(j["K"][2] == "107/4");
  CHECK(fs::exists(c.out + "/audit_n7_m3.json"));

  RunConfig bad = c;
  bad.n = 6;
  std::ostringstream o2, e2;
  CHECK(cmd_audit(bad, o2, e2) == exit_usage);
  CHECK(e2.str().find("2m") != std::string::npos);
}

TEST_CASE("periodic command") {
  const RunConfig c = scratch("periodic");
  std::ostringstream out, err;
  CHECK(cmd_periodic(c, "0.5", out, err) == exit_ok);
  const std::string csv = slurp(c.out + "/periodic_a0_0.5.csv");
  CHECK(csv.rfind("t,v,v1,v2,v3,v4,v5,H\n", 0) == 0);
  CHECK(fs::exists(c.out + "/periodic_a0_0.5_summary.json"));

  std::ostringstream o2, e2;
  CHECK(cmd_periodic(c, "0.9", o2, e2) == exit_usage);
  CHECK(cmd_periodic(c, "-0.1", o2, e2) == exit_usage);
  CHECK(cmd_periodic(c, "zero", o2, e2) == exit_usage);
}

TEST_CASE("sweep resumes without duplicating rows") {
  RunConfig c = scratch("sweep");
  c.jobs = 2;
  std::ostringstream out, err;
  CHECK(cmd_sweep(c, "0.4,0.6", out, err) == exit_ok);
  const std::string first = slurp(c.out + "/sweep.csv");
  std::ostringstream o2, e2;
  CHECK(cmd_sweep(c, "0.4,0.6", o2, e2) == exit_ok);
  CHECK(slurp(c.out + "/sweep.csv") == first);
  CHECK(nlohmann::json::parse(o2.str())["skipped"] == 2);
  // extending the grid keeps earlier rows byte-identical
  std::ostringstream o3, e3;
  CHECK(cmd_sweep(c, "0.4,0.5,0.6", o3, e3) == exit_ok);
  const std::string third = slurp(c.out + "/sweep.csv");
  const nlohmann::json j = nlohmann::json::parse(o3.str());
  CHECK(j["solved"] == 1);
  CHECK(j["monotone_H"] == true);
  std::istringstream lines(first);
  std::string line;
  while (std::getline(lines, line)) CHECK(third.find(line) != std::string::npos);

  std::ostringstream o4, e4;
  CHECK(cmd_sweep(c, "0.5:0.1:0.1", o4, e4) == exit_usage);
  CHECK(cmd_sweep(c, "0.5,0.95", o4, e4) == exit_usage);
}

TEST_CASE("reconstruct command") {
  const RunConfig c = scratch("reconstruct");
  ReconstructArgs a;
  std::ostringstream out, err;
  CHECK(cmd_reconstruct(c, a, out, err) == exit_ok);
  const nlohmann::json j = nlohmann::json::parse(out.str());
  CHECK(j["monotone"] == true);
  a.a0 = "astar";
  CHECK(cmd_reconstruct(c, a, out, err) == exit_ok);
  a.r_min = 0.0;
  std::ostringstream o2, e2;
  CHECK(cmd_reconstruct(c, a, o2, e2) == exit_usage);
  CHECK(e2.str().find("r-min") != std::string::npos);
}
