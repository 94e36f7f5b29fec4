#pragma once

#include <Eigen/Core>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fowler6/dop853.hpp"
#include "fowler6/operator.hpp"
#include "fowler6/radial.hpp"

namespace fowler6 {

// Companion form of P v = (-1)^m c |v|^(p-1) v:
//   y' = (y1, ..., y_{2m-1}, -sum_{j<m} s_j y_{2j} + (-1)^m c |y0|^(p-1) y0)
template <typename S>
struct VectorField {
  using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
  int m = 3;
  Vec sigma;  // signed coefficient of d^(2j), j < m
  S c{0};
  S pm1{0};
  S sign{-1};  // (-1)^m

  int dim() const { return 2 * m; }

  S nonlinearity(const S& v) const {
    using std::abs;
    using std::pow;
    if (v == S(0)) return S(0);
    return c * pow(abs(v), pm1) * v;
  }

  void operator()(const Vec& y, Vec& dy) const {
    const int d = 2 * m;
    for (int i = 0; i < d - 1; ++i) dy(i) = y(i + 1);
    S top = sign * nonlinearity(y(0));
    for (int j = 0; j < m; ++j) top -= sigma(j) * y(2 * j);
    dy(d - 1) = top;
  }

  Vec operator()(const Vec& y) const {
    Vec dy(y.size());
    (*this)(y, dy);
    return dy;
  }
};

// Field from the floating-point operator coefficients (honours any
// perturbation applied to spec.K).
VectorField<double> make_field(const ProblemParams& params, const OperatorSpec& spec);

// Field in scalar type S from the exact rational coefficients and a given c.
template <typename S>
VectorField<S> make_exact_field(const OperatorSpec& spec, const ProblemParams& params, const S& c) {
  VectorField<S> f;
  f.m = spec.m;
  f.sigma.resize(spec.m);
  for (int j = 0; j < spec.m; ++j) {
    const S k = to_scalar<S>(spec.K_exact[j]);
    f.sigma(j) = ((spec.m - j) % 2 == 0) ? k : S(-k);
  }
  f.c = c;
  f.pm1 = to_scalar<S>(params.p) - S(1);
  f.sign = (spec.m % 2 == 0) ? S(1) : S(-1);
  return f;
}

Eigen::VectorXd rhs(const ProblemParams& params, const OperatorSpec& spec, const Eigen::VectorXd& y);

// negate odd-derivative slots: the t -> -t symmetry
template <typename Derived>
typename Derived::PlainObject reflect(const Eigen::MatrixBase<Derived>& y) {
  typename Derived::PlainObject r = y;
  for (Eigen::Index i = 1; i < r.size(); i += 2) r(i) = -r(i);
  return r;
}

struct State {
  double t = 0;
  Eigen::VectorXd y;
};

enum class OrbitStatus { completed, blew_up, left_domain, step_underflow, non_finite, max_steps };
enum class EventKind { v_zero, v1_zero, v2_zero, threshold_exit };

std::string to_string(OrbitStatus s);
std::string to_string(EventKind k);

struct Event {
  EventKind kind = EventKind::v_zero;
  double t = 0;
  Eigen::VectorXd y;
  int direction = 0;  // +1 rising through zero, -1 falling
};

struct Tolerances {
  double rel = 1e-12;
  double abs = 1e-14;
};

struct Guards {
  double v_max = 1e10;
  double v_min = -std::numeric_limits<double>::infinity();
  long max_steps = 5'000'000;
};

struct IntegrateOptions {
  bool events = true;
  bool dense = true;
  bool energy = true;  // m = 3 only
  double max_step = std::numeric_limits<double>::infinity();
};

struct Orbit {
  int m = 3;
  std::vector<State> samples;
  std::vector<DenseSegment<double>> dense;  // dense[i] spans samples[i], samples[i+1]
  std::vector<Event> events;
  std::vector<double> energy;               // H at each sample
  OrbitStatus status = OrbitStatus::completed;
  double status_t = 0;
  std::string diagnostic;
  double max_energy_drift = 0;
  long steps = 0, rejected = 0, evaluations = 0;

  double t_begin() const { return samples.front().t; }
  double t_end() const { return samples.back().t; }
  const State& back() const { return samples.back(); }
  bool has_dense() const { return !dense.empty() && dense.size() + 1 == samples.size(); }
  // dense evaluation, t within [t_begin, t_end]
  Eigen::VectorXd at(double t) const;
  std::size_t count(EventKind kind) const;
};

Orbit integrate(const ProblemParams& params, const OperatorSpec& spec, const State& initial, double horizon,
                const Tolerances& tol = {}, const Guards& guards = {}, const IntegrateOptions& options = {});

// Integrates toward t - horizon using the reflection symmetry; the returned
// orbit is expressed in the original (decreasing) time, samples sorted
// ascending.
Orbit integrate_backward(const ProblemParams& params, const OperatorSpec& spec, const State& initial,
                         double horizon, const Tolerances& tol = {}, const Guards& guards = {},
                         const IntegrateOptions& options = {});

// Final state only, any scalar type; used for extended-precision checks.
template <typename S>
struct Propagation {
  Eigen::Matrix<S, Eigen::Dynamic, 1> y;
  S t{0};
  bool ok = true;
  long steps = 0;
};

template <typename S>
Propagation<S> propagate(const VectorField<S>& field, const Eigen::Matrix<S, Eigen::Dynamic, 1>& y0,
                         const S& horizon, const S& rtol, const S& atol, long max_steps = 10'000'000) {
  using std::abs;
  Dop853<S, VectorField<S>> st(field, field.dim(), rtol, atol);
  st.start(S(0), y0);
  S h = st.initial_step(horizon);
  S facold(1e-4);
  const S beta(0.04), expo = S(1) / S(8) - beta * S(0.2), safe(0.9);
  Propagation<S> out;
  bool reject = false;
  while (st.t < horizon) {
    if (out.steps++ > max_steps) {
      out.ok = false;
      break;
    }
    bool last = false;
    if (st.t + S(1.01) * h >= horizon) {
      h = horizon - st.t;
      last = true;
    }
    const S err = st.attempt(h);
    using std::pow;
    if (err <= S(1)) {
      S fac = pow(err, expo) * pow(facold, -beta) / safe;
      fac = std::max(S(0.2), std::min(S(5), fac));
      facold = std::max(err, S(1e-4));
      st.accept(nullptr);
      if (last) break;
      S hnew = h / fac;
      if (reject) hnew = std::min(hnew, h);
      h = hnew;
      reject = false;
    } else {
      S fac = pow(err, expo) / safe;
      fac = std::min(S(5), fac);
      h = h / fac;
      reject = true;
      if (h < S(1e-30)) {
        out.ok = false;
        break;
      }
    }
  }
  out.y = st.y;
  out.t = st.t;
  return out;
}

}  // namespace fowler6
