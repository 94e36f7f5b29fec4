#include "fowler6/energy.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <limits>
#include <stdexcept>

#include "fowler6/integrator.hpp"

namespace fowler6 {

namespace {

void require_m3(int m) {
  if (m != 3) throw std::invalid_argument("the Hamiltonian is defined for m = 3 only");
}

double sgn(double x) { return (x > 0) - (x < 0); }

}  // namespace

EnergyCoefficients::EnergyCoefficients(const ProblemParams& params, const OperatorSpec& spec) {
  require_m3(spec.m);
  K0 = spec.K(0);
  K2 = spec.K(1);
  K4 = spec.K(2);
  c = params.c;
  c_hat = params.c_hat();
  pm1 = params.pm1();
  q = params.energy_exponent();
}

EnergyBreakdown hamiltonian(const EnergyCoefficients& k, const Eigen::Ref<const Eigen::VectorXd>& y) {
  const double v = y(0), v1 = y(1), v2 = y(2), v3 = y(3), v4 = y(4), v5 = y(5);
  EnergyBreakdown e;
  e.F = k.F(v);
  e.G = e.F - 0.5 * k.K0 * v * v;
  e.H = (v5 * v1 - v4 * v2 + 0.5 * v3 * v3) - k.K4 * (v3 * v1 - 0.5 * v2 * v2) + 0.5 * k.K2 * v1 * v1 -
        0.5 * k.K0 * v * v + e.F;
  const AuxiliarySummands a = auxiliary_summands(k, y);
  e.kinetic3 = 0.5 * v3 * v3;
  e.e1_term = a.E1 * v1;
  e.e2_term = a.E2 * v2;
  e.R = e.e1_term + e.e2_term;
  e.H_factored = e.kinetic3 + e.e2_term + e.e1_term + e.G;
  return e;
}

EnergyBreakdown hamiltonian(const ProblemParams& params, const OperatorSpec& spec,
                            const Eigen::Ref<const Eigen::VectorXd>& y) {
  return hamiltonian(EnergyCoefficients(params, spec), y);
}

double hamiltonian_value(const EnergyCoefficients& k, const Eigen::Ref<const Eigen::VectorXd>& y) {
  const double v = y(0), v1 = y(1), v2 = y(2), v3 = y(3), v4 = y(4), v5 = y(5);
  return (v5 * v1 - v4 * v2 + 0.5 * v3 * v3) - k.K4 * (v3 * v1 - 0.5 * v2 * v2) + 0.5 * k.K2 * v1 * v1 -
         0.5 * k.K0 * v * v + k.F(v);
}

AuxiliarySummands auxiliary_summands(const EnergyCoefficients& k, const Eigen::Ref<const Eigen::VectorXd>& y) {
  return {y(5) - k.K4 * y(3) + 0.5 * k.K2 * y(1), -y(4) + 0.5 * k.K4 * y(2)};
}

AuxiliarySummands auxiliary_summands(const ProblemParams& params, const OperatorSpec& spec,
                                     const Eigen::Ref<const Eigen::VectorXd>& y) {
  return auxiliary_summands(EnergyCoefficients(params, spec), y);
}

Eigen::VectorXd energy_gradient(const EnergyCoefficients& k, const Eigen::Ref<const Eigen::VectorXd>& y) {
  Eigen::VectorXd g(6);
  g(0) = -k.K0 * y(0) + k.f(y(0));
  g(1) = y(5) - k.K4 * y(3) + k.K2 * y(1);
  g(2) = -y(4) + k.K4 * y(2);
  g(3) = y(3) - k.K4 * y(1);
  g(4) = -y(2);
  g(5) = y(1);
  return g;
}

double energy_rate(const ProblemParams& params, const OperatorSpec& spec,
                   const Eigen::Ref<const Eigen::VectorXd>& y) {
  const EnergyCoefficients k(params, spec);
  return energy_gradient(k, y).dot(make_field(params, spec)(Eigen::VectorXd(y)));
}

double energy_level_radius(const ProblemParams& params, const OperatorSpec& spec, double level) {
  const EnergyCoefficients k(params, spec);
  const double a_star = equilibrium_amplitude(params, spec);
  if (level < k.G(a_star)) throw std::invalid_argument("level below the equilibrium energy");
  double hi = 2.0 * a_star;
  while (k.G(hi) < level) hi *= 2.0;
  auto g = [&](double x) { return k.G(x) - level; };
  boost::uintmax_t iters = 200;
  auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-15 * std::abs(a); };
  const double ga = g(a_star), gb = g(hi);
  if (ga == 0.0) return a_star;
  const auto r = boost::math::tools::toms748_solve(g, a_star, hi, ga, gb, tol, iters);
  return 0.5 * (r.first + r.second);
}

MonitorReport monitor_orbit(const ProblemParams& params, const OperatorSpec& spec, const Orbit& orbit,
                            const MonitorOptions& options) {
  require_m3(spec.m);
  const EnergyCoefficients k(params, spec);
  const double a_star = equilibrium_amplitude(params, spec);
  MonitorReport r;
  r.samples = orbit.samples.size();
  if (orbit.samples.empty()) return r;
  r.bounded = orbit.status == OrbitStatus::completed;

  double scale1 = 0, scale2 = 0;
  for (const State& s : orbit.samples) {
    scale1 = std::max(scale1, std::abs(s.y(1)));
    scale2 = std::max(scale2, std::abs(s.y(2)));
  }
  const double cut1 = options.sign_cut * std::max(scale1, 1e-300);
  const double cut2 = options.sign_cut * std::max(scale2, 1e-300);

  r.H0 = hamiltonian_value(k, orbit.samples.front().y);
  r.min_R = std::numeric_limits<double>::infinity();
  r.sign1_margin = std::numeric_limits<double>::infinity();
  r.sign2_margin = std::numeric_limits<double>::infinity();
  for (const State& s : orbit.samples) {
    const EnergyBreakdown e = hamiltonian(k, s.y);
    r.max_drift = std::max(r.max_drift, std::abs(e.H - r.H0));
    r.min_R = std::min(r.min_R, e.R);
    const AuxiliarySummands a = auxiliary_summands(k, s.y);
    if (std::abs(s.y(1)) > cut1) {
      const double m1 = sgn(s.y(1)) * a.E1;
      r.sign1_margin = std::min(r.sign1_margin, m1);
      if (m1 < -options.sign_margin) ++r.sign1_violations;
    }
    if (std::abs(s.y(2)) > cut2) {
      const double m2 = sgn(s.y(2)) * a.E2;
      r.sign2_margin = std::min(r.sign2_margin, m2);
      if (m2 < -options.sign_margin) {
        ++r.sign2_violations;
        r.sign2_violation_times.push_back(s.t);
      }
    }
  }
  if (!std::isfinite(r.sign1_margin)) r.sign1_margin = 0;
  if (!std::isfinite(r.sign2_margin)) r.sign2_margin = 0;
  r.relative_drift = r.max_drift / (1.0 + std::abs(r.H0));

  // extrema: v' events when available, else sign changes of v' between samples
  bool have_events = false;
  for (const Event& ev : orbit.events) {
    if (ev.kind != EventKind::v1_zero) continue;
    have_events = true;
    const bool is_max = ev.direction < 0;
    (is_max ? r.maxima_t : r.minima_t).push_back(ev.t);
    (is_max ? r.maxima_v : r.minima_v).push_back(ev.y(0));
  }
  if (!have_events) {
    for (std::size_t i = 0; i < orbit.samples.size(); ++i) {
      const State& s = orbit.samples[i];
      const bool zero_here = s.y(1) == 0.0;
      const bool change = i + 1 < orbit.samples.size() && s.y(1) * orbit.samples[i + 1].y(1) < 0;
      if (!zero_here && !change) continue;
      const State& pick = (change && std::abs(orbit.samples[i + 1].y(1)) < std::abs(s.y(1)))
                              ? orbit.samples[i + 1]
                              : s;
      const bool is_max = pick.y(2) < 0;
      (is_max ? r.maxima_t : r.minima_t).push_back(pick.t);
      (is_max ? r.maxima_v : r.minima_v).push_back(pick.y(0));
      if (change) ++i;
    }
  }
  r.straddle_margin = std::numeric_limits<double>::infinity();
  for (double v : r.maxima_v) r.straddle_margin = std::min(r.straddle_margin, v - a_star);
  for (double v : r.minima_v) r.straddle_margin = std::min(r.straddle_margin, a_star - v);
  if (!std::isfinite(r.straddle_margin)) r.straddle_margin = 0;

  auto limit_distance = [&](double v) {
    return std::min({std::abs(v), std::abs(v - a_star), std::abs(v + a_star)});
  };
  r.endpoint_limit_distance =
      std::max(limit_distance(orbit.samples.front().y(0)), limit_distance(orbit.samples.back().y(0)));
  return r;
}

}  // namespace fowler6
