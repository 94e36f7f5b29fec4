#pragma once

#include <map>
#include <string>
#include <vector>

#include "fowler6/energy.hpp"
#include "fowler6/periodic.hpp"
#include "fowler6/profiles.hpp"
#include "fowler6/shooting.hpp"

namespace fowler6 {

// 17 significant digits
std::string format_number(double x);

// t,v,v1,v2,v3,v4,v5,H
void write_states_csv(const std::string& path, const std::vector<State>& states, const EnergyCoefficients& k);

inline const char* sweep_header() { return "a0,a2,a4,period,max,H,newton_residual"; }
std::string sweep_line(const PeriodicSolution& sol);
// completed rows keyed by the a0 column text
std::map<std::string, std::string> read_sweep_csv(const std::string& path);

// r,u,du,neg_lap,bilap,residual
void write_profile_csv(const std::string& path, const std::vector<ProfileRow>& rows);

void write_text(const std::string& path, const std::string& text);
void ensure_directory(const std::string& dir);

}  // namespace fowler6
