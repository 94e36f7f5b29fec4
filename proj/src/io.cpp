#include "fowler6/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fowler6 {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  return f;
}

}  // namespace

void write_states_csv(const std::string& path, const std::vector<State>& states, const EnergyCoefficients& k) {
  std::ofstream f = open_out(path);
  f << "t,v,v1,v2,v3,v4,v5,H\n";
  for (const State& s : states) {
    f << format_number(s.t);
    for (Eigen::Index i = 0; i < s.y.size(); ++i) f << ',' << format_number(s.y(i));
    f << ',' << format_number(hamiltonian_value(k, s.y)) << '\n';
  }
}

std::string sweep_line(const PeriodicSolution& sol) {
  std::ostringstream os;
  os << format_number(sol.a0) << ',' << format_number(sol.a2) << ',' << format_number(sol.a4) << ','
     << format_number(sol.period) << ',' << format_number(sol.max_value) << ',' << format_number(sol.energy) << ','
     << format_number(sol.newton_residual);
  return os.str();
}

std::map<std::string, std::string> read_sweep_csv(const std::string& path) {
  std::map<std::string, std::string> rows;
  std::ifstream f(path);
  if (!f) return rows;
  std::string line;
  if (!std::getline(f, line) || line != sweep_header()) return rows;
  while (std::getline(f, line)) {
    // a row is complete when it carries all seven columns
    if (std::count(line.begin(), line.end(), ',') != 6) continue;
    rows[line.substr(0, line.find(','))] = line;
  }
  return rows;
}

void write_profile_csv(const std::string& path, const std::vector<ProfileRow>& rows) {
  std::ofstream f = open_out(path);
  f << "r,u,du,neg_lap,bilap,residual\n";
  for (const ProfileRow& r : rows)
    f << format_number(r.r) << ',' << format_number(r.u) << ',' << format_number(r.du) << ','
      << format_number(r.neg_lap) << ',' << format_number(r.bilap) << ',' << format_number(r.residual) << '\n';
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f = open_out(path);
  f << text;
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir + ": " + ec.message());
}

}  // namespace fowler6
