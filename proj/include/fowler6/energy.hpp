#pragma once

#include <Eigen/Core>
#include <cmath>
#include <string>
#include <vector>

#include "fowler6/operator.hpp"

namespace fowler6 {

struct EnergyBreakdown {
  double H = 0;         // direct form
  double kinetic3 = 0;  // (v''')^2 / 2
  double e1_term = 0;   // E1 v'
  double e2_term = 0;   // E2 v''
  double G = 0;
  double F = 0;
  double R = 0;             // e1_term + e2_term
  double H_factored = 0;    // kinetic3 + e1_term + e2_term + G
};

// Constants entering the sixth-order energy, precomputed once.
struct EnergyCoefficients {
  double K0 = 0, K2 = 0, K4 = 0;
  double c = 0, c_hat = 0, pm1 = 0, q = 0;  // q = 2n/(n-6)

  EnergyCoefficients() = default;
  EnergyCoefficients(const ProblemParams& params, const OperatorSpec& spec);

  double F(double v) const { return c_hat * std::pow(std::abs(v), q); }
  double f(double v) const { return v == 0.0 ? 0.0 : c * std::pow(std::abs(v), pm1) * v; }
  double G(double v) const { return F(v) - 0.5 * K0 * v * v; }
};

// Requires m = 3; throws std::invalid_argument otherwise.
EnergyBreakdown hamiltonian(const ProblemParams& params, const OperatorSpec& spec,
                            const Eigen::Ref<const Eigen::VectorXd>& y);
EnergyBreakdown hamiltonian(const EnergyCoefficients& k, const Eigen::Ref<const Eigen::VectorXd>& y);
double hamiltonian_value(const EnergyCoefficients& k, const Eigen::Ref<const Eigen::VectorXd>& y);

struct AuxiliarySummands {
  double E1 = 0, E2 = 0;
};
AuxiliarySummands auxiliary_summands(const ProblemParams& params, const OperatorSpec& spec,
                                     const Eigen::Ref<const Eigen::VectorXd>& y);
AuxiliarySummands auxiliary_summands(const EnergyCoefficients& k, const Eigen::Ref<const Eigen::VectorXd>& y);

Eigen::VectorXd energy_gradient(const EnergyCoefficients& k, const Eigen::Ref<const Eigen::VectorXd>& y);
// dH/dt = grad H . rhs(y), evaluated without the integrator
double energy_rate(const ProblemParams& params, const OperatorSpec& spec,
                   const Eigen::Ref<const Eigen::VectorXd>& y);

// Largest root of G(R) = level above a* (level >= G(a*)).
double energy_level_radius(const ProblemParams& params, const OperatorSpec& spec, double level);

struct Orbit;

struct MonitorReport {
  std::size_t samples = 0;
  double H0 = 0;
  double max_drift = 0;
  double relative_drift = 0;  // max_drift / (1 + |H0|)
  double min_R = 0;           // >= 0 expected on bounded orbits
  // worst sign(E1) vs sign(v') and sign(E2) vs sign(v'') disagreement, as
  // min over samples of sign(v^(k)) * E_k where |v^(k)| is above the cut
  double sign1_margin = 0;
  double sign2_margin = 0;
  std::size_t sign1_violations = 0;
  std::size_t sign2_violations = 0;
  std::vector<double> sign2_violation_times;
  // extrema
  std::vector<double> maxima_t, maxima_v, minima_t, minima_v;
  double straddle_margin = 0;  // min over maxima of (v - a*) and over minima of (a* - v)
  // distance of end values from {0, +a*, -a*}
  double endpoint_limit_distance = 0;
  bool bounded = true;
};

struct MonitorOptions {
  double sign_cut = 1e-8;    // relative to the orbit scale
  double sign_margin = 1e-9;
};

MonitorReport monitor_orbit(const ProblemParams& params, const OperatorSpec& spec, const Orbit& orbit,
                            const MonitorOptions& options = {});

}  // namespace fowler6
