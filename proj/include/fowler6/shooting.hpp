#pragma once

#include <Eigen/Core>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fowler6/periodic.hpp"

namespace fowler6 {

enum class Classification { S1, S2, undecided };
std::string to_string(Classification c);

struct ShootParams {
  double a0 = 0;
  Eigen::Vector2d b = Eigen::Vector2d::Zero();  // (v''(0), v''''(0))
  double horizon = 0;
  double R = 0;  // escape radius
  Classification classification = Classification::undecided;
  double escape_time = 0;
};

struct ShootOptions {
  Tolerances tol{1e-13, 1e-15};
  double newton_tol = 1e-12;    // max-norm of the shooting residual
  int max_newton = 40;
  double horizon_mult = 20.0;   // classification horizon in linear periods
  double escape_safety = 2.0;
  double v_min_factor = 1e-3;   // lower guard -v_min_factor * a*
  double segment_span = 3.0;    // max mu_max * segment length
  bool allow_continuation = true;
  bool allow_seam = true;
};

class ShootingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Initial state (a0, 0, b1, 0, b2, 0).
Eigen::VectorXd shooting_state(double a0, const Eigen::Vector2d& b);

// R(a0, b): safety * (largest root of G(R) = max(H(b), 0)).
double escape_radius(const ProblemParams& params, const OperatorSpec& spec, double a0, const Eigen::Vector2d& b,
                     const ShootOptions& options = {});

// Linearization at a*: real root omega of w^6 + K4 w^4 + K2 w^2 = (p - 1) K0.
double linear_frequency(const ProblemParams& params, const OperatorSpec& spec);

ShootParams classify(const ProblemParams& params, const OperatorSpec& spec, double a0, const Eigen::Vector2d& b,
                     const ShootOptions& options = {}, double horizon = 0, double R = 0);

struct SeamOptions {
  int grid_lines = 17;
  double b1_scale = 2.0;   // b1 in [0, b1_scale * delta * omega^2]
  double b2_scale = 2.0;   // b2 in [-s, s] * delta * omega^4
  double grid_shift = 0.0; // fraction of a grid spacing, for independent grids
  int max_bisections = 60;
  int max_golden = 80;
  double b1_width = 1e-14;
  double b2_width = 1e-12;
};

struct SeamBracket {
  bool found = false;
  Eigen::Vector2d b1_range = Eigen::Vector2d::Zero();  // (lo, hi)
  Eigen::Vector2d b2_range = Eigen::Vector2d::Zero();
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double escape_time = 0;
  int lines_with_sign_change = 0;
  int max_bisection_steps = 0;
  int widenings = 0;
  std::string diagnostic;
  // coarse classification map: rows b2 lines, (b2, b1_seam, escape_time)
  std::vector<Eigen::Vector3d> seam_curve;
};

SeamBracket seam_search(const ProblemParams& params, const OperatorSpec& spec, double a0,
                        const SeamOptions& seam = {}, const ShootOptions& options = {});

// Newton refinement from an explicit guess for (b, half period).
PeriodicSolution refine_periodic(const ProblemParams& params, const OperatorSpec& spec, double a0,
                                 const Eigen::Vector2d& b, double half_period, const ShootOptions& options = {});

// Seam search followed by Newton; falls back to continuation from the
// equilibrium when the seam route fails. Throws ShootingError on failure.
PeriodicSolution solve_periodic(const ProblemParams& params, const OperatorSpec& spec, double a0,
                                const ShootOptions& options = {});
PeriodicSolution solve_periodic_seam(const ProblemParams& params, const OperatorSpec& spec, double a0,
                                     const SeamOptions& seam, const ShootOptions& options = {});
PeriodicSolution solve_periodic_continuation(const ProblemParams& params, const OperatorSpec& spec, double a0,
                                             const ShootOptions& options = {});

struct SweepRow {
  double a0 = 0;
  bool ok = false;
  std::string error;
  PeriodicSolution solution;
};

// Points are solved independently, so results do not depend on jobs.
std::vector<SweepRow> sweep(const ProblemParams& params, const OperatorSpec& spec, const std::vector<double>& grid,
                            const ShootOptions& options = {}, int jobs = 1);

struct ConservationReport {
  int periods = 0;
  double H0 = 0;
  double max_drift = 0;       // max |H(t) - H0| over all steps
  double relative_drift = 0;  // max_drift / (1 + |H0|)
};

// Energy drift along the orbit over several periods. Each shooting segment is
// re-integrated from its node (forward on the rising half, from the reflected
// node on the falling half) since the flow is too unstable for one pass.
ConservationReport periodic_energy_drift(const ProblemParams& params, const OperatorSpec& spec,
                                         const PeriodicSolution& sol, int periods = 10, const Tolerances& tol = {});

struct QuotientReport {
  std::size_t samples = 0;
  double max_w = 0;          // max v'/v
  double w_margin = 0;       // mu1 - max_w
  double max_phi1 = 0;       // expected < 0
  double min_phi2 = 0;       // expected > 0
  bool positive = true;
  bool w_ok = false, phi1_ok = false, phi2_ok = false;
};

// Factor-chain monitor: w = v'/v < mu1, Phi1 = (d^2 - lam1) v < 0, Phi2 = (d^2 - lam2)(d^2 - lam1) v > 0.
QuotientReport quotient_check(const Orbit& orbit, const OperatorSpec& spec);

}  // namespace fowler6
