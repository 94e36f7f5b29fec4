#include "fowler6/periodic.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <unsupported/Eigen/FFT>

namespace fowler6 {

PeriodicInterpolant::PeriodicInterpolant(double period, const Eigen::MatrixXd& values)
    : period_(period), omega_(2.0 * M_PI / period), n_(static_cast<int>(values.rows())) {
  if (n_ < 4 || n_ % 2 != 0) throw std::invalid_argument("interpolant needs an even number of samples");
  const int d = static_cast<int>(values.cols());
  const int half = n_ / 2;
  a_.setZero(half + 1, d);
  b_.setZero(half + 1, d);
  Eigen::FFT<double> fft;
  for (int c = 0; c < d; ++c) {
    std::vector<double> in(values.col(c).data(), values.col(c).data() + n_);
    std::vector<std::complex<double>> out;
    fft.fwd(out, in);
    for (int k = 0; k <= half; ++k) {
      a_(k, c) = 2.0 * out[k].real() / n_;
      b_(k, c) = -2.0 * out[k].imag() / n_;
    }
    a_(half, c) *= 0.5;
    b_(half, c) = 0.0;
  }
}

double PeriodicInterpolant::derivative(int component, int order, double t) const {
  double sum = (order == 0) ? 0.5 * a_(0, component) : 0.0;
  const int half = n_ / 2;
  for (int k = 1; k <= half; ++k) {
    const double w = k * omega_;
    const double ck = std::cos(w * t), sk = std::sin(w * t);
    // d^order/dt^order of a cos + b sin
    double ca, cb;
    switch (order % 4) {
      case 0: ca = ck; cb = sk; break;
      case 1: ca = -sk; cb = ck; break;
      case 2: ca = -ck; cb = -sk; break;
      default: ca = sk; cb = -ck; break;
    }
    sum += std::pow(w, order) * (a_(k, component) * ca + b_(k, component) * cb);
  }
  return sum;
}

Eigen::VectorXd PeriodicInterpolant::state(double t) const {
  Eigen::VectorXd s(components());
  for (int c = 0; c < components(); ++c) s(c) = value(c, t);
  return s;
}

Eigen::VectorXd PeriodicInterpolant::taylor(double t, int order) const {
  Eigen::VectorXd out(order + 1);
  const int d = components();
  double fact = 1.0;
  for (int j = 0; j <= order; ++j) {
    if (j > 0) fact *= j;
    const double deriv = (j < d) ? value(j, t) : derivative(d - 1, j - d + 1, t);
    out(j) = deriv / fact;
  }
  return out;
}

Eigen::VectorXd PeriodicSolution::state_at(double t) const {
  if (equilibrium) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(6);
    y(0) = a0;
    return y;
  }
  double s = std::fmod(t, period);
  if (s < 0) s += period;
  const double tau = 0.5 * period;
  if (s <= tau) return half.at(std::min(s, half.t_end()));
  return reflect(half.at(std::min(period - s, half.t_end())));
}

std::shared_ptr<const PeriodicInterpolant> interpolate(const PeriodicSolution& sol,
                                                       const InterpolationOptions& options,
                                                       InterpolationReport* report) {
  if (sol.equilibrium) {
    Eigen::MatrixXd vals = Eigen::MatrixXd::Zero(4, 6);
    vals.col(0).setConstant(sol.a0);
    if (report) *report = {4, 0.0, true};
    return std::make_shared<PeriodicInterpolant>(1.0, vals);
  }
  const int d = 6;
  int n = options.min_points;
  double err = 0;
  while (n <= options.max_points) {
    Eigen::MatrixXd vals(n, d);
    for (int j = 0; j < n; ++j) vals.row(j) = sol.state_at(sol.period * j / n).transpose();
    auto interp = std::make_shared<PeriodicInterpolant>(sol.period, vals);
    Eigen::VectorXd range = vals.cwiseAbs().colwise().maxCoeff().transpose();
    err = 0;
    for (int j = 0; j < n; ++j) {
      const double t = sol.period * (j + 0.5) / n;
      const Eigen::VectorXd truth = sol.state_at(t), approx = interp->state(t);
      for (int c = 0; c < d; ++c)
        err = std::max(err, std::abs(truth(c) - approx(c)) / std::max(range(c), 1e-300));
    }
    if (err <= options.tolerance) {
      if (report) *report = {n, err, true};
      return interp;
    }
    n *= 2;
  }
  if (report) *report = {n, err, false};
  std::ostringstream os;
  os << "interpolation density insufficient: midpoint error " << err << " with " << n / 2
     << " samples; at least " << n << " samples required";
  throw std::runtime_error(os.str());
}

PeriodicSolution equilibrium_solution(const ProblemParams& params, const OperatorSpec& spec) {
  PeriodicSolution s;
  s.equilibrium = true;
  s.a0 = equilibrium_amplitude(params, spec);
  s.max_value = s.a0;
  s.method = "equilibrium";
  s.period = std::numeric_limits<double>::infinity();
  if (spec.m == 3) {
    const double K0 = spec.K0();
    const double F = params.c_hat() * std::pow(s.a0, params.energy_exponent());
    s.energy = F - 0.5 * K0 * s.a0 * s.a0;
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(2 * spec.m);
  y(0) = s.a0;
  s.samples.push_back({0.0, y});
  return s;
}

}  // namespace fowler6
