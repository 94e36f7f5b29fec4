#include "fowler6/integrator.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <sstream>
#include <stdexcept>

#include "fowler6/energy.hpp"

namespace fowler6 {

VectorField<double> make_field(const ProblemParams& params, const OperatorSpec& spec) {
  VectorField<double> f;
  f.m = spec.m;
  const Eigen::VectorXd s = spec.signed_coefficients();
  f.sigma = s.head(spec.m);
  f.c = params.c;
  f.pm1 = params.pm1();
  f.sign = (spec.m % 2 == 0) ? 1.0 : -1.0;
  return f;
}

Eigen::VectorXd rhs(const ProblemParams& params, const OperatorSpec& spec, const Eigen::VectorXd& y) {
  if (y.size() != 2 * spec.m) throw std::invalid_argument("state dimension must be 2m");
  return make_field(params, spec)(y);
}

std::string to_string(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::completed: return "completed";
    case OrbitStatus::blew_up: return "blew-up";
    case OrbitStatus::left_domain: return "left-domain";
    case OrbitStatus::step_underflow: return "step-underflow";
    case OrbitStatus::non_finite: return "non-finite";
    case OrbitStatus::max_steps: return "max-steps";
  }
  return "completed";
}

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::v_zero: return "v-zero";
    case EventKind::v1_zero: return "v1-zero";
    case EventKind::v2_zero: return "v2-zero";
    case EventKind::threshold_exit: return "threshold-exit";
  }
  return "v-zero";
}

Eigen::VectorXd Orbit::at(double t) const {
  if (samples.empty()) throw std::out_of_range("empty orbit");
  if (!has_dense()) {
    for (const State& s : samples)
      if (s.t == t) return s.y;
    throw std::logic_error("orbit has no dense output");
  }
  if (t < t_begin() || t > t_end()) throw std::out_of_range("time outside orbit");
  auto it = std::upper_bound(samples.begin(), samples.end(), t,
                             [](double x, const State& s) { return x < s.t; });
  std::size_t i = static_cast<std::size_t>(std::distance(samples.begin(), it));
  i = (i == 0) ? 0 : i - 1;
  if (i >= dense.size()) i = dense.size() - 1;
  return dense[i].at(t);
}

std::size_t Orbit::count(EventKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(events.begin(), events.end(), [kind](const Event& e) { return e.kind == kind; }));
}

namespace {

double locate_root(const DenseSegment<double>& d, int component, double level, double a, double b) {
  auto g = [&](double t) { return d.at(t)(component) - level; };
  double fa = g(a), fb = g(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0) return (std::abs(fa) < std::abs(fb)) ? a : b;
  boost::uintmax_t iters = 100;
  auto tol = [](double x, double y) { return std::abs(y - x) <= 1e-15 * (1.0 + std::abs(x)); };
  const auto r = boost::math::tools::toms748_solve(g, a, b, fa, fb, tol, iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace

Orbit integrate(const ProblemParams& params, const OperatorSpec& spec, const State& initial, double horizon,
                const Tolerances& tol, const Guards& guards, const IntegrateOptions& options) {
  if (!(tol.rel > 0) || !(tol.abs > 0)) throw std::invalid_argument("tolerances must be positive");
  if (!(horizon > 0)) throw std::invalid_argument("horizon must be positive");
  if (initial.y.size() != 2 * spec.m) throw std::invalid_argument("state dimension must be 2m");
  if (!initial.y.allFinite()) throw std::invalid_argument("initial state is not finite");

  const VectorField<double> field = make_field(params, spec);
  const bool track_energy = options.energy && spec.m == 3;
  EnergyCoefficients ek;
  if (track_energy) ek = EnergyCoefficients(params, spec);

  Orbit orbit;
  orbit.m = spec.m;
  orbit.samples.push_back(initial);
  double H0 = 0;
  if (track_energy) {
    H0 = hamiltonian_value(ek, initial.y);
    orbit.energy.push_back(H0);
  }

  Dop853<double, VectorField<double>> st(field, field.dim(), tol.rel, tol.abs);
  st.start(initial.t, initial.y);
  const double t_final = initial.t + horizon;
  const double hmax = std::min(horizon, options.max_step);
  double h = st.initial_step(hmax);
  double facold = 1e-4;
  const double beta = 0.04, expo = 1.0 / 8.0 - beta * 0.2, safe = 0.9;
  bool reject = false;
  DenseSegment<double> seg;
  const bool need_dense = options.dense || options.events || std::isfinite(guards.v_max) ||
                          std::isfinite(guards.v_min);

  auto finish = [&](OrbitStatus s, const std::string& why) {
    orbit.status = s;
    orbit.status_t = st.t;
    orbit.diagnostic = why;
  };

  while (true) {
    if (orbit.steps >= guards.max_steps) {
      finish(OrbitStatus::max_steps, "step budget exhausted");
      break;
    }
    if (0.1 * std::abs(h) <= std::abs(st.t) * 2.3e-16 || h < 1e-300) {
      std::ostringstream os;
      os.precision(17);
      os << "step size underflow at t = " << st.t;
      const bool large = std::abs(st.y(0)) > 1e6;
      finish(large ? OrbitStatus::blew_up : OrbitStatus::step_underflow, os.str());
      break;
    }
    bool last = false;
    if (st.t + 1.01 * h >= t_final) {
      h = t_final - st.t;
      last = true;
    }
    ++orbit.steps;
    const double err = st.attempt(h);
    if (!std::isfinite(err) || !st.trial_state().allFinite()) {
      h *= 0.2;
      reject = true;
      ++orbit.rejected;
      if (h < 1e-14 * (1.0 + std::abs(st.t))) {
        finish(std::abs(st.y(0)) > 1e6 ? OrbitStatus::blew_up : OrbitStatus::non_finite,
               "non-finite trial state");
        break;
      }
      continue;
    }
    if (err > 1.0) {
      h /= std::min(5.0, std::pow(err, expo) / safe);
      reject = true;
      ++orbit.rejected;
      continue;
    }
    double fac = std::pow(err, expo) * std::pow(facold, -beta) / safe;
    fac = std::clamp(fac, 0.2, 5.0);
    facold = std::max(err, 1e-4);
    const Eigen::VectorXd y_prev = st.y;
    st.accept(need_dense ? &seg : nullptr);
    const double t0 = seg.t0, t1 = st.t;

    // sign changes of v, v', v'' on [t0, t_end]
    auto scan_events = [&](double t_end, const Eigen::VectorXd& y_end) {
      for (int k = 0; k < 3 && k < field.dim(); ++k) {
        const double a = y_prev(k), b = y_end(k);
        if ((a < 0 && b > 0) || (a > 0 && b < 0) || (b == 0 && a != 0)) {
          const double te = locate_root(seg, k, 0.0, t0, t_end);
          Eigen::VectorXd ye = seg.at(te);
          ye(k) = 0.0;
          orbit.events.push_back({static_cast<EventKind>(k), te, ye, b > a ? 1 : -1});
        }
      }
    };

    // threshold exit
    bool stop = false;
    const double v_new = st.y(0);
    if (v_new > guards.v_max || v_new < guards.v_min) {
      const bool up = v_new > guards.v_max;
      const double level = up ? guards.v_max : guards.v_min;
      const double te = locate_root(seg, 0, level, t0, t1);
      Eigen::VectorXd ye = seg.at(te);
      if (options.events) {
        const std::size_t first = orbit.events.size();
        scan_events(te, ye);
        std::sort(orbit.events.begin() + first, orbit.events.end(),
                  [](const Event& a, const Event& b) { return a.t < b.t; });
      }
      ye(0) = level;
      if (options.events) orbit.events.push_back({EventKind::threshold_exit, te, ye, up ? 1 : -1});
      DenseSegment<double> cut = seg;
      if (options.dense) orbit.dense.push_back(cut);
      orbit.samples.push_back({te, ye});
      if (track_energy) orbit.energy.push_back(hamiltonian_value(ek, ye));
      orbit.status = up ? OrbitStatus::blew_up : OrbitStatus::left_domain;
      orbit.status_t = te;
      orbit.diagnostic = up ? "v exceeded the upper guard" : "v fell below the lower guard";
      stop = true;
    }
    if (!stop) {
      if (options.events) scan_events(t1, st.y);
      if (options.dense) orbit.dense.push_back(seg);
      orbit.samples.push_back({t1, st.y});
      if (track_energy) {
        const double H = hamiltonian_value(ek, st.y);
        orbit.energy.push_back(H);
        orbit.max_energy_drift = std::max(orbit.max_energy_drift, std::abs(H - H0));
      }
    } else if (track_energy) {
      orbit.max_energy_drift = std::max(orbit.max_energy_drift, std::abs(orbit.energy.back() - H0));
    }
    if (stop) break;
    if (last) {
      finish(OrbitStatus::completed, "");
      orbit.status_t = t1;
      break;
    }
    double hnew = h / fac;
    hnew = std::min(hnew, hmax);
    if (reject) hnew = std::min(hnew, h);
    reject = false;
    h = hnew;
  }
  orbit.evaluations = st.evaluations;
  return orbit;
}

Orbit integrate_backward(const ProblemParams& params, const OperatorSpec& spec, const State& initial,
                         double horizon, const Tolerances& tol, const Guards& guards,
                         const IntegrateOptions& options) {
  State mirrored{-initial.t, reflect(initial.y)};
  Orbit fwd = integrate(params, spec, mirrored, horizon, tol, guards, options);
  Orbit out = fwd;
  out.samples.clear();
  out.dense.clear();
  out.events.clear();
  out.energy.assign(fwd.energy.rbegin(), fwd.energy.rend());
  for (auto it = fwd.samples.rbegin(); it != fwd.samples.rend(); ++it)
    out.samples.push_back({-it->t, reflect(it->y)});
  // dense segments: u(t) = R w(-t); re-express each on its mirrored interval
  for (auto it = fwd.dense.rbegin(); it != fwd.dense.rend(); ++it) {
    // w on [a, a+h] with s = (x - a)/h; for t = -x, t in [-(a+h), -a], s' = (t + a + h)/h = 1 - s.
    // Swapping s <-> 1 - s in the nested form is not a coefficient permutation,
    // so re-interpolate by sampling the 7th-order polynomial at 8 nodes.
    const DenseSegment<double>& w = *it;
    DenseSegment<double> d;
    d.t0 = -(w.t0 + w.h);
    d.h = w.h;
    const int n = static_cast<int>(w.rc.rows());
    d.rc.resize(n, 8);
    // nodes s_k and the basis of the nested form evaluated there
    Eigen::Matrix<double, 8, 8> B;
    Eigen::Matrix<double, 8, Eigen::Dynamic> V(8, n);
    for (int k = 0; k < 8; ++k) {
      const double s = static_cast<double>(k) / 7.0, s1 = 1.0 - s;
      const double basis[8] = {1, s, s * s1, s * s1 * s, s * s1 * s * s1, s * s1 * s * s1 * s,
                               s * s1 * s * s1 * s * s1, s * s1 * s * s1 * s * s1 * s};
      for (int j = 0; j < 8; ++j) B(k, j) = basis[j];
      V.row(k) = reflect(w.at(-(d.t0 + s * d.h))).transpose();
    }
    const Eigen::Matrix<double, 8, Eigen::Dynamic> C = B.partialPivLu().solve(V);
    d.rc = C.transpose();
    out.dense.push_back(d);
  }
  for (auto it = fwd.events.rbegin(); it != fwd.events.rend(); ++it)
    out.events.push_back({it->kind, -it->t, reflect(it->y), it->kind == EventKind::threshold_exit
                                                                 ? it->direction
                                                                 : ((it->kind == EventKind::v1_zero) ? it->direction : -it->direction)});
  out.status_t = -fwd.status_t;
  return out;
}

}  // namespace fowler6
