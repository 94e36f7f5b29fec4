#pragma once

#include <Eigen/Core>
#include <memory>
#include <string>
#include <vector>

#include "fowler6/integrator.hpp"

namespace fowler6 {

// Trigonometric interpolant of each state component over one period:
// f(t) = a_0/2 + sum_k (a_k cos k w t + b_k sin k w t), w = 2 pi / period.
class PeriodicInterpolant {
 public:
  PeriodicInterpolant() = default;
  // values: N x d, uniform samples at t_j = j period / N
  PeriodicInterpolant(double period, const Eigen::MatrixXd& values);

  double period() const { return period_; }
  int size() const { return n_; }
  int components() const { return static_cast<int>(a_.cols()); }

  double derivative(int component, int order, double t) const;
  double value(int component, double t) const { return derivative(component, 0, t); }
  Eigen::VectorXd state(double t) const;
  // Taylor coefficients v^(j)(t)/j!, j = 0..order; slot j <= d-1 is read from
  // component j, higher orders differentiate the last component.
  Eigen::VectorXd taylor(double t, int order) const;

 private:
  double period_ = 0, omega_ = 0;
  int n_ = 0;
  Eigen::MatrixXd a_, b_;  // (N/2 + 1) x d
};

struct PeriodicSolution {
  double a0 = 0;
  double a2 = 0;  // v''(0)
  double a4 = 0;  // v''''(0)
  double period = 0;
  double max_value = 0;
  double energy = 0;
  double newton_residual = 0;    // max-norm of the full shooting residual
  double symmetry_residual = 0;  // max |(v', v''', v^(5))(period/2)|
  int newton_iterations = 0;
  int segments = 0;
  std::string method;
  bool equilibrium = false;  // constant orbit v = a*

  std::vector<Eigen::VectorXd> nodes;  // shooting nodes on [0, period/2]
  Orbit half;                          // dense orbit over [0, period/2]
  std::vector<State> samples;          // one full period, t in [0, period]

  // state at any t by reflection and periodic extension
  Eigen::VectorXd state_at(double t) const;
};

struct InterpolationOptions {
  int min_points = 32;
  int max_points = 4096;
  double tolerance = 1e-12;  // midpoint check, relative to each component's range
};

struct InterpolationReport {
  int points = 0;
  double midpoint_error = 0;
  bool converged = false;
};

// throws std::runtime_error carrying the required sample count when the
// midpoint check cannot be met within max_points
std::shared_ptr<const PeriodicInterpolant> interpolate(const PeriodicSolution& sol,
                                                       const InterpolationOptions& options = {},
                                                       InterpolationReport* report = nullptr);

// constant orbit at the equilibrium amplitude
PeriodicSolution equilibrium_solution(const ProblemParams& params, const OperatorSpec& spec);

}  // namespace fowler6
