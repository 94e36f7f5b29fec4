#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "fowler6/jet.hpp"
#include "fowler6/periodic.hpp"

namespace fowler6 {

// Taylor jet of a function about x0, with `order` coefficients beyond the value.
using JetEvaluator = std::function<Jet<double>(double x0, int order)>;

enum class ProfileKind { spherical, homoclinic_ef, constant, reconstructed, tabulated, power, ef_image, kelvin };
std::string to_string(ProfileKind k);

struct RadialProfile {
  ProfileKind kind = ProfileKind::spherical;
  int n = 7, m = 3;
  double mu = 1, T = 0, a = 0, q = 0;  // kind parameters
  double r_min = 0, r_max = std::numeric_limits<double>::infinity();
  JetEvaluator jet;
  // tabulated kinds report an interpolation error estimate here
  std::function<double(double)> error_estimate;

  double operator()(double r) const { return jet(r, 0).value(); }
  double derivative(double r, int k) const { return jet(r, k).derivative(k); }
};

// EF-side function v(t)
struct EfProfile {
  int n = 7, m = 3;
  double t_min = -std::numeric_limits<double>::infinity(), t_max = std::numeric_limits<double>::infinity();
  JetEvaluator jet;
  double operator()(double t) const { return jet(t, 0).value(); }
  Eigen::VectorXd state(double t, int dim) const;  // (v, v', ..., v^(dim-1))
};

// (2 mu / (mu^2 + r^2))^((n - 2m)/2)
RadialProfile spherical(int n, int m, double mu);
// r^-a cosh(ln r - T)^-a, a = (n - 2m)/2; the EF image of the homoclinic
RadialProfile homoclinic_profile(int n, int m, double T);
// a r^-(n-2m)/2: the EF constant v = a
RadialProfile constant_profile(int n, int m, double a);
RadialProfile power_profile(int n, int m, double q);
// local polynomial interpolation through the nearest samples
RadialProfile tabulated(int n, int m, const std::vector<double>& r, const std::vector<double>& u, int half_width = 6);

EfProfile ef_transform(const RadialProfile& u);
RadialProfile ef_inverse(const EfProfile& v);
EfProfile homoclinic_ef(int n, int m, double T);

// (v, v', ..., v^(5)) of v0 = cosh(t)^(-(n-6)/2), from sech/tanh polynomial recurrences
Eigen::VectorXd homoclinic_jet(const ProblemParams& params, double t);
template <typename S>
Eigen::Matrix<S, Eigen::Dynamic, 1> homoclinic_derivatives(const S& a, const S& t, int count);

// (-Delta)^m u at r
double radial_polylaplacian(int n, int m, const RadialProfile& u, double r);

// u(r) = r^((2m-n)/2) v_a(-ln r + T)
RadialProfile reconstruct(const ProblemParams& params, const PeriodicSolution& sol, double T,
                          std::shared_ptr<const PeriodicInterpolant> interp = nullptr);

struct ProfileRow {
  double r = 0, u = 0, du = 0;
  double neg_lap = 0;  // -Delta u
  double bilap = 0;    // Delta^2 u
  double polylap = 0;  // (-Delta)^m u
  double residual = 0; // |(-Delta)^m u - c u^p| / |c u^p|
};
std::vector<ProfileRow> profile_table(const ProblemParams& params, const RadialProfile& u,
                                      const std::vector<double>& radii);

RadialProfile kelvin_transform(int n, const RadialProfile& u, double mu);

// E = |z-y|^(2m-n) - (|z-x|/mu)^(2m-n) |I(z) - y|^(2m-n)
double kernel_E(int n, int m, const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& z,
                double mu);

struct KernelReport {
  std::size_t draws = 0;
  std::size_t positive = 0;
  double min_E = 0;
  double max_boundary_abs = 0;  // |E| at |z-x| = mu
  double max_y_sphere_abs = 0;  // |E| at |y-x| = mu
  double min_interior_E = 0;    // E with y inside the ball (expected < 0)
};
KernelReport kernel_positivity_sample(int n, int m, std::size_t draws, std::uint64_t seed);

struct SuperharmonicityReport {
  std::size_t samples = 0;
  // corrected forms, asserted
  double max_first = 0;   // v'' + 4v' - alpha v, expected < 0
  double min_second = 0;  // v'''' + 4v''' - (alpha+beta) v'' - 4 beta v' + alpha beta v, expected > 0
  bool first_ok = false, second_ok = false;
  // printed forms, reported only
  double printed_first_max = 0;
  double printed_second_min = 0;
  double printed_factored_min = 0;
  double nu_plus_sq = 0, nu_minus_sq = 0;  // nu^2 = 5 +- sqrt(...)
  bool nu_minus_real = false;
};
SuperharmonicityReport superharmonicity_check(const ProblemParams& params, const std::vector<State>& samples);

template <typename S>
Eigen::Matrix<S, Eigen::Dynamic, 1> homoclinic_derivatives(const S& a, const S& t, int count) {
  using std::abs;
  using std::exp;
  using std::pow;
  const S e = exp(-abs(t));
  const S sech = S(2) * e / (S(1) + e * e);
  S tanh = (S(1) - e * e) / (S(1) + e * e);
  if (t < S(0)) tanh = -tanh;
  // v^(k) = sech^a P_k(tanh), P_{k+1} = (1 - T^2) P_k' - a T P_k
  std::vector<S> P{S(1)};
  Eigen::Matrix<S, Eigen::Dynamic, 1> out(count);
  const S base = pow(sech, a);
  for (int k = 0; k < count; ++k) {
    S val(0);
    for (int i = static_cast<int>(P.size()) - 1; i >= 0; --i) val = val * tanh + P[i];
    out(k) = base * val;
    std::vector<S> next(P.size() + 1, S(0));
    for (std::size_t i = 1; i < P.size(); ++i) {
      const S d = S(static_cast<int>(i)) * P[i];
      next[i - 1] += d;
      next[i + 1] -= d;
    }
    for (std::size_t i = 0; i < P.size(); ++i) next[i + 1] -= a * P[i];
    P = std::move(next);
  }
  return out;
}

}  // namespace fowler6
