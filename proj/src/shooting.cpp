#include "fowler6/shooting.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <atomic>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "fowler6/energy.hpp"

namespace fowler6 {

std::string to_string(Classification c) {
  switch (c) {
    case Classification::S1: return "S1";
    case Classification::S2: return "S2";
    case Classification::undecided: return "undecided";
  }
  return "undecided";
}

Eigen::VectorXd shooting_state(double a0, const Eigen::Vector2d& b) {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(6);
  y(0) = a0;
  y(2) = b(0);
  y(4) = b(1);
  return y;
}

double escape_radius(const ProblemParams& params, const OperatorSpec& spec, double a0, const Eigen::Vector2d& b,
                     const ShootOptions& options) {
  const double H = hamiltonian(params, spec, shooting_state(a0, b)).H;
  return options.escape_safety * energy_level_radius(params, spec, std::max(H, 0.0));
}

double linear_frequency(const ProblemParams& params, const OperatorSpec& spec) {
  if (spec.m != 3) throw std::invalid_argument("linear frequency is defined for m = 3");
  const double K0 = spec.K(0), K2 = spec.K(1), K4 = spec.K(2);
  const double rhs = params.pm1() * K0;
  auto g = [&](double s) { return ((s + K4) * s + K2) * s - rhs; };
  double hi = 1.0;
  while (g(hi) < 0) hi *= 2.0;
  boost::uintmax_t iters = 200;
  auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-16 * std::abs(a); };
  const auto r = boost::math::tools::toms748_solve(g, 0.0, hi, g(0.0), g(hi), tol, iters);
  return std::sqrt(0.5 * (r.first + r.second));
}

ShootParams classify(const ProblemParams& params, const OperatorSpec& spec, double a0, const Eigen::Vector2d& b,
                     const ShootOptions& options, double horizon, double R) {
  const double a_star = equilibrium_amplitude(params, spec);
  if (!(a0 > 0 && a0 < a_star)) throw std::invalid_argument("a0 must lie in (0, a*)");
  ShootParams sp;
  sp.a0 = a0;
  sp.b = b;
  sp.horizon = horizon > 0 ? horizon : options.horizon_mult * 2.0 * M_PI / linear_frequency(params, spec);
  sp.R = R > 0 ? R : escape_radius(params, spec, a0, b, options);
  Guards g;
  g.v_max = sp.R;
  g.v_min = -options.v_min_factor * a_star;
  IntegrateOptions io;
  io.events = false;
  io.dense = false;
  io.energy = false;
  const Orbit o = integrate(params, spec, {0.0, shooting_state(a0, b)}, sp.horizon, options.tol, g, io);
  switch (o.status) {
    case OrbitStatus::left_domain: sp.classification = Classification::S1; break;
    case OrbitStatus::blew_up: sp.classification = Classification::S2; break;
    case OrbitStatus::completed: sp.classification = Classification::undecided; break;
    default: throw ShootingError("integration failed during classification: " + o.diagnostic);
  }
  sp.escape_time = o.status_t;
  return sp;
}

namespace {

struct LineResult {
  bool change = false;
  double lo = 0, hi = 0;  // b1 bracket
  double escape = 0;
  int steps = 0;
};

// Bisection in b1 on the line b2 = const between an S1 end and an S2 end.
LineResult bisect_line(const ProblemParams& params, const OperatorSpec& spec, double a0, double b2, double B1,
                       const SeamOptions& seam, const ShootOptions& options, double horizon) {
  LineResult r;
  ShootParams s_lo = classify(params, spec, a0, {0.0, b2}, options, horizon);
  ShootParams s_hi = classify(params, spec, a0, {B1, b2}, options, horizon);
  if (s_lo.classification == s_hi.classification || s_lo.classification == Classification::undecided ||
      s_hi.classification == Classification::undecided)
    return r;
  r.change = true;
  double lo = 0.0, hi = B1;
  const Classification c_lo = s_lo.classification;
  double e_lo = s_lo.escape_time, e_hi = s_hi.escape_time;
  while (hi - lo > seam.b1_width && r.steps < seam.max_bisections) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const ShootParams s = classify(params, spec, a0, {mid, b2}, options, horizon);
    ++r.steps;
    if (s.classification == Classification::undecided) {
      lo = hi = mid;
      e_lo = e_hi = s.escape_time;
      break;
    }
    if (s.classification == c_lo) {
      lo = mid;
      e_lo = s.escape_time;
    } else {
      hi = mid;
      e_hi = s.escape_time;
    }
  }
  r.lo = lo;
  r.hi = hi;
  r.escape = std::min(e_lo, e_hi);
  return r;
}

}  // namespace

SeamBracket seam_search(const ProblemParams& params, const OperatorSpec& spec, double a0, const SeamOptions& seam,
                        const ShootOptions& options) {
  const double a_star = equilibrium_amplitude(params, spec);
  if (!(a0 > 0 && a0 < a_star)) throw std::invalid_argument("a0 must lie in (0, a*)");
  const double omega = linear_frequency(params, spec);
  const double horizon = options.horizon_mult * 2.0 * M_PI / omega;
  const double delta = a_star - a0;
  double B1 = seam.b1_scale * delta * omega * omega;
  double B2 = seam.b2_scale * delta * std::pow(omega, 4);

  SeamBracket out;
  const int L = std::max(3, seam.grid_lines);
  for (int attempt = 0; attempt < 3; ++attempt) {
    out.seam_curve.clear();
    out.lines_with_sign_change = 0;
    const double spacing = 2.0 * B2 / (L - 1);
    std::vector<double> b2s;
    std::vector<LineResult> lines;
    for (int i = 0; i < L; ++i) {
      const double b2 = -B2 + (i + seam.grid_shift) * spacing;
      LineResult lr = bisect_line(params, spec, a0, b2, B1, seam, options, horizon);
      b2s.push_back(b2);
      lines.push_back(lr);
      out.max_bisection_steps = std::max(out.max_bisection_steps, lr.steps);
      if (lr.change) {
        ++out.lines_with_sign_change;
        out.seam_curve.emplace_back(b2, 0.5 * (lr.lo + lr.hi), lr.escape);
      }
    }
    if (out.lines_with_sign_change == 0) {
      ++out.widenings;
      B1 *= 4.0;
      B2 *= 4.0;
      continue;
    }
    int best = -1;
    for (int i = 0; i < L; ++i)
      if (lines[i].change && (best < 0 || lines[i].escape > lines[best].escape)) best = i;

    // golden-section maximization of the seam escape time in b2
    auto objective = [&](double b2, LineResult* keep) {
      LineResult lr = bisect_line(params, spec, a0, b2, B1, seam, options, horizon);
      out.max_bisection_steps = std::max(out.max_bisection_steps, lr.steps);
      if (keep) *keep = lr;
      return lr.change ? lr.escape : 0.0;
    };
    double a = b2s[best] - spacing, b = b2s[best] + spacing;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    LineResult l1, l2;
    double f1 = objective(x1, &l1), f2 = objective(x2, &l2);
    LineResult best_line = lines[best];
    double best_b2 = b2s[best], best_f = lines[best].escape;
    auto note = [&](double x, double f, const LineResult& lr) {
      if (lr.change && f > best_f) {
        best_f = f;
        best_b2 = x;
        best_line = lr;
      }
    };
    note(x1, f1, l1);
    note(x2, f2, l2);
    for (int it = 0; it < seam.max_golden && (b - a) > seam.b2_width; ++it) {
      if (f1 >= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        l2 = l1;
        x1 = b - gr * (b - a);
        f1 = objective(x1, &l1);
        note(x1, f1, l1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        l1 = l2;
        x2 = a + gr * (b - a);
        f2 = objective(x2, &l2);
        note(x2, f2, l2);
      }
    }
    out.found = true;
    out.b1_range = {best_line.lo, best_line.hi};
    out.b2_range = {std::min(a, best_b2), std::max(b, best_b2)};
    out.center = {0.5 * (best_line.lo + best_line.hi), best_b2};
    out.escape_time = best_f;
    return out;
  }
  std::ostringstream os;
  os << "search-failed: no S1/S2 sign change on " << L << " lines after " << out.widenings << " widenings";
  out.diagnostic = os.str();
  return out;
}

namespace {

// Multiple shooting over the half period. Unknowns x = (b1, b2, tau, Y_1..Y_{K-1}).
struct HalfPeriodProblem {
  const ProblemParams& params;
  const OperatorSpec& spec;
  VectorField<double> field;
  double a0;
  int K;
  Tolerances tol;

  HalfPeriodProblem(const ProblemParams& p, const OperatorSpec& s, double a, int k, const Tolerances& t)
      : params(p), spec(s), field(make_field(p, s)), a0(a), K(k), tol(t) {}

  int size() const { return 3 + 6 * (K - 1); }

  Eigen::VectorXd start(const Eigen::VectorXd& x, int k) const {
    if (k == 0) return shooting_state(a0, {x(0), x(1)});
    return x.segment(3 + 6 * (k - 1), 6);
  }

  bool flow(const Eigen::VectorXd& y0, double h, Eigen::VectorXd& y1) const {
    if (!(h > 0)) return false;
    const Propagation<double> p = propagate<double>(field, y0, h, tol.rel, tol.abs, 200000);
    if (!p.ok || !p.y.allFinite()) return false;
    y1 = p.y;
    return true;
  }

  bool residual(const Eigen::VectorXd& x, Eigen::VectorXd& F, std::vector<Eigen::VectorXd>* ends) const {
    const double h = x(2) / K;
    F.resize(size());
    std::vector<Eigen::VectorXd> e(K);
    for (int k = 0; k < K; ++k) {
      if (!flow(start(x, k), h, e[k])) return false;
      if (k < K - 1) {
        F.segment(6 * k, 6) = e[k] - x.segment(3 + 6 * k, 6);
      } else {
        F(6 * k) = e[k](1);
        F(6 * k + 1) = e[k](3);
        F(6 * k + 2) = e[k](5);
      }
    }
    if (ends) *ends = std::move(e);
    return F.allFinite();
  }

  bool jacobian(const Eigen::VectorXd& x, const std::vector<Eigen::VectorXd>& ends, Eigen::MatrixXd& J) const {
    const int N = size();
    const double h = x(2) / K;
    J.setZero(N, N);
    auto put_rows = [&](int k, int col, const Eigen::VectorXd& d) {
      if (k < K - 1) {
        J.block(6 * k, col, 6, 1) += d;
      } else {
        J(6 * k, col) += d(1);
        J(6 * k + 1, col) += d(3);
        J(6 * k + 2, col) += d(5);
      }
    };
    for (int k = 0; k < K; ++k) {
      // d/dtau of segment end: f(end) / K
      put_rows(k, 2, field(ends[k]) / K);
      const Eigen::VectorXd s = start(x, k);
      std::vector<int> comps;
      std::vector<int> cols;
      if (k == 0) {
        comps = {2, 4};
        cols = {0, 1};
      } else {
        for (int j = 0; j < 6; ++j) {
          comps.push_back(j);
          cols.push_back(3 + 6 * (k - 1) + j);
        }
      }
      for (std::size_t q = 0; q < comps.size(); ++q) {
        const int j = comps[q];
        const double d = 1e-6 * std::max(std::abs(s(j)), 0.1);
        Eigen::VectorXd sp = s, sm = s, ep, em;
        sp(j) += d;
        sm(j) -= d;
        if (!flow(sp, h, ep) || !flow(sm, h, em)) return false;
        put_rows(k, cols[q], (ep - em) / (2.0 * d));
      }
      if (k >= 1) J.block(6 * (k - 1), 3 + 6 * (k - 1), 6, 6) -= Eigen::MatrixXd::Identity(6, 6);
    }
    return J.allFinite();
  }
};

struct NewtonResult {
  bool converged = false;
  int iterations = 0;
  double residual = std::numeric_limits<double>::infinity();
  Eigen::VectorXd x;
};

NewtonResult newton(const HalfPeriodProblem& prob, Eigen::VectorXd x, double target, int max_iter) {
  NewtonResult nr;
  Eigen::VectorXd F;
  std::vector<Eigen::VectorXd> ends;
  if (!prob.residual(x, F, &ends)) {
    nr.x = x;
    return nr;
  }
  double fn = F.lpNorm<Eigen::Infinity>();
  int stall = 0;
  for (int it = 0; it < max_iter; ++it) {
    if (fn < target) {
      nr.converged = true;
      break;
    }
    Eigen::MatrixXd J;
    if (!prob.jacobian(x, ends, J)) break;
    const Eigen::VectorXd dx = J.fullPivLu().solve(-F);
    if (!dx.allFinite()) break;
    double alpha = 1.0;
    bool improved = false;
    Eigen::VectorXd xn, Fn;
    std::vector<Eigen::VectorXd> en;
    for (int damp = 0; damp < 12; ++damp) {
      xn = x + alpha * dx;
      if (xn(2) > 0 && prob.residual(xn, Fn, &en)) {
        const double fnn = Fn.lpNorm<Eigen::Infinity>();
        if (fnn < (1.0 - 0.25 * alpha) * fn || (fnn < 1e3 * target && fnn <= fn)) {
          improved = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    ++nr.iterations;
    if (!improved) {
      // accept a tiny residual that can no longer be reduced
      if (fn < 1e2 * target) nr.converged = true;
      break;
    }
    const double prev = fn;
    x = xn;
    F = Fn;
    ends = std::move(en);
    fn = F.lpNorm<Eigen::Infinity>();
    if (fn > 0.5 * prev && fn < 1e2 * target) {
      if (++stall >= 2) {
        nr.converged = true;
        break;
      }
    }
  }
  if (fn < target) nr.converged = true;
  nr.x = x;
  nr.residual = fn;
  return nr;
}

int segment_count(const OperatorSpec& spec, double tau, double span) {
  const double mu_max = spec.mu(spec.m - 1);
  return std::max(4, static_cast<int>(std::ceil(tau * mu_max / span)));
}

// nodes of a new mesh, read off a dense orbit covering [0, tau]
Eigen::VectorXd mesh_from_orbit(const Orbit& o, double b1, double b2, double tau, int K) {
  Eigen::VectorXd x(3 + 6 * (K - 1));
  x(0) = b1;
  x(1) = b2;
  x(2) = tau;
  for (int k = 1; k < K; ++k) x.segment(3 + 6 * (k - 1), 6) = o.at(tau * k / K);
  return x;
}

// dense orbit over [0, tau] assembled from the segment integrations
Orbit assemble_half(const HalfPeriodProblem& prob, const Eigen::VectorXd& x, const Tolerances& tol) {
  const double h = x(2) / prob.K;
  Orbit half;
  half.m = 3;
  Guards g;
  g.v_max = std::numeric_limits<double>::infinity();
  IntegrateOptions io;
  io.events = true;
  for (int k = 0; k < prob.K; ++k) {
    const Orbit seg = integrate(prob.params, prob.spec, {h * k, prob.start(x, k)}, h, tol, g, io);
    if (seg.status != OrbitStatus::completed) throw ShootingError("segment integration failed: " + seg.diagnostic);
    const std::size_t first = half.samples.empty() ? 0 : 1;
    for (std::size_t i = first; i < seg.samples.size(); ++i) {
      half.samples.push_back(seg.samples[i]);
      half.energy.push_back(seg.energy[i]);
    }
    half.dense.insert(half.dense.end(), seg.dense.begin(), seg.dense.end());
    half.events.insert(half.events.end(), seg.events.begin(), seg.events.end());
    half.steps += seg.steps;
    half.evaluations += seg.evaluations;
  }
  // the last sample closes at exactly tau
  half.samples.back().t = x(2);
  const double H0 = half.energy.front();
  for (double H : half.energy) half.max_energy_drift = std::max(half.max_energy_drift, std::abs(H - H0));
  half.status = OrbitStatus::completed;
  half.status_t = x(2);
  return half;
}

PeriodicSolution build_solution(const HalfPeriodProblem& prob, const NewtonResult& nr, const ShootOptions& options,
                                const std::string& method) {
  const Eigen::VectorXd& x = nr.x;
  PeriodicSolution s;
  s.a0 = prob.a0;
  s.a2 = x(0);
  s.a4 = x(1);
  s.period = 2.0 * x(2);
  s.newton_residual = nr.residual;
  s.newton_iterations = nr.iterations;
  s.segments = prob.K;
  s.method = method;
  for (int k = 0; k < prob.K; ++k) s.nodes.push_back(prob.start(x, k));
  s.half = assemble_half(prob, x, options.tol);
  const Eigen::VectorXd yend = s.half.samples.back().y;
  s.symmetry_residual = std::max({std::abs(yend(1)), std::abs(yend(3)), std::abs(yend(5))});
  s.max_value = yend(0);
  s.energy = hamiltonian(prob.params, prob.spec, s.nodes.front()).H;
  for (const State& st : s.half.samples) s.samples.push_back(st);
  for (auto it = s.half.samples.rbegin() + 1; it != s.half.samples.rend(); ++it)
    s.samples.push_back({s.period - it->t, reflect(it->y)});
  // a single rise from the minimum to the maximum on the half period
  for (std::size_t i = 1; i + 1 < s.half.samples.size(); ++i)
    if (s.half.samples[i].y(1) <= 0.0)
      throw ShootingError("converged orbit is not monotone on the half period");
  return s;
}

}  // namespace

PeriodicSolution refine_periodic(const ProblemParams& params, const OperatorSpec& spec, double a0,
                                 const Eigen::Vector2d& b, double half_period, const ShootOptions& options) {
  if (!(half_period > 0)) throw std::invalid_argument("half period must be positive");
  const int K = segment_count(spec, half_period, options.segment_span);
  IntegrateOptions io;
  io.events = false;
  io.energy = false;
  Guards g;
  g.v_max = std::numeric_limits<double>::infinity();
  const Orbit o = integrate(params, spec, {0.0, shooting_state(a0, b)}, half_period, options.tol, g, io);
  if (o.status != OrbitStatus::completed) throw ShootingError("initial guess integration failed");
  HalfPeriodProblem prob(params, spec, a0, K, options.tol);
  const NewtonResult nr = newton(prob, mesh_from_orbit(o, b(0), b(1), half_period, K), options.newton_tol,
                                 options.max_newton);
  if (!nr.converged) {
    std::ostringstream os;
    os.precision(3);
    os << "Newton did not converge (residual " << nr.residual << " after " << nr.iterations << " iterations)";
    throw ShootingError(os.str());
  }
  return build_solution(prob, nr, options, "newton");
}

PeriodicSolution solve_periodic_seam(const ProblemParams& params, const OperatorSpec& spec, double a0,
                                     const SeamOptions& seam, const ShootOptions& options) {
  const SeamBracket br = seam_search(params, spec, a0, seam, options);
  if (!br.found) throw ShootingError(br.diagnostic);
  // half period from the first maximum along the seam orbit
  const double a_star = equilibrium_amplitude(params, spec);
  Guards g;
  g.v_max = escape_radius(params, spec, a0, br.center, options);
  g.v_min = -options.v_min_factor * a_star;
  const double horizon = options.horizon_mult * 2.0 * M_PI / linear_frequency(params, spec);
  const Orbit o = integrate(params, spec, {0.0, shooting_state(a0, br.center)}, horizon, options.tol, g);
  double tau = -1;
  for (const Event& e : o.events)
    if (e.kind == EventKind::v1_zero && e.direction < 0 && e.t > 0) {
      tau = e.t;
      break;
    }
  if (tau <= 0) throw ShootingError("seam orbit escapes before its first maximum");
  const int K = segment_count(spec, tau, options.segment_span);
  HalfPeriodProblem prob(params, spec, a0, K, options.tol);
  const NewtonResult nr =
      newton(prob, mesh_from_orbit(o, br.center(0), br.center(1), tau, K), options.newton_tol, options.max_newton);
  if (!nr.converged || nr.x(2) <= 0) {
    std::ostringstream os;
    os.precision(3);
    os << "Newton from the seam bracket did not converge (residual " << nr.residual << ")";
    throw ShootingError(os.str());
  }
  PeriodicSolution s = build_solution(prob, nr, options, "seam");
  if (std::abs(s.samples.front().y(0) - a0) > 1e-12) throw ShootingError("phase mismatch");
  return s;
}

PeriodicSolution solve_periodic_continuation(const ProblemParams& params, const OperatorSpec& spec, double a0,
                                             const ShootOptions& options) {
  const double a_star = equilibrium_amplitude(params, spec);
  if (!(a0 > 0 && a0 < a_star)) throw std::invalid_argument("a0 must lie in (0, a*)");
  const double omega = linear_frequency(params, spec);

  auto linear_guess = [&](double a, int& K) {
    const double delta = a_star - a, tau = M_PI / omega;
    K = segment_count(spec, tau, options.segment_span);
    Eigen::VectorXd x(3 + 6 * (K - 1));
    x(0) = delta * omega * omega;
    x(1) = -delta * std::pow(omega, 4);
    x(2) = tau;
    for (int k = 1; k < K; ++k) {
      const double t = tau * k / K;
      for (int j = 0; j < 6; ++j)
        x(3 + 6 * (k - 1) + j) = (j == 0 ? a_star : 0.0) - delta * std::pow(omega, j) * std::cos(omega * t + j * M_PI / 2);
    }
    return x;
  };

  const double loose = std::max(options.newton_tol, 1e-10);
  double a_cur = std::max(a0, a_star - 1e-3 * a_star);
  int K = 0;
  Eigen::VectorXd x = linear_guess(a_cur, K);
  {
    HalfPeriodProblem prob(params, spec, a_cur, K, options.tol);
    NewtonResult nr = newton(prob, x, a_cur == a0 ? options.newton_tol : loose, options.max_newton);
    if (!nr.converged) throw ShootingError("continuation start did not converge");
    x = nr.x;
  }
  Eigen::VectorXd x_prev;
  double prev_step = 0;
  double step = 0.02 * a_star;
  while (a_cur > a0) {
    const double h = std::min(step, a_cur - a0);
    const double a_next = (a_cur - h <= a0 + 1e-15) ? a0 : a_cur - h;
    Eigen::VectorXd guess = x;
    if (x_prev.size() == x.size() && prev_step > 0) guess = x + (x - x_prev) * ((a_cur - a_next) / prev_step);
    HalfPeriodProblem prob(params, spec, a_next, K, options.tol);
    const NewtonResult nr = newton(prob, guess, a_next == a0 ? options.newton_tol : loose, 15);
    if (!nr.converged || nr.x(2) <= 0) {
      step *= 0.5;
      if (step < 1e-7 * a_star) throw ShootingError("continuation step collapsed");
      continue;
    }
    x_prev = x;
    prev_step = a_cur - a_next;
    x = nr.x;
    a_cur = a_next;
    if (nr.iterations <= 4) step = std::min(step * 1.5, 0.1 * a_star);
    const int K_need = segment_count(spec, x(2), options.segment_span);
    if (K_need > K && a_cur > a0) {
      const Orbit half = assemble_half(prob, x, options.tol);
      x = mesh_from_orbit(half, x(0), x(1), x(2), K_need);
      K = K_need;
      x_prev.resize(0);
    }
  }
  HalfPeriodProblem prob(params, spec, a0, K, options.tol);
  NewtonResult nr = newton(prob, x, options.newton_tol, options.max_newton);
  if (!nr.converged) throw ShootingError("final Newton polish did not converge");
  return build_solution(prob, nr, options, "continuation");
}

PeriodicSolution solve_periodic(const ProblemParams& params, const OperatorSpec& spec, double a0,
                                const ShootOptions& options) {
  if (spec.m != 3) throw std::invalid_argument("periodic shooting is implemented for m = 3");
  const double a_star = equilibrium_amplitude(params, spec);
  if (!(a0 > 0 && a0 < a_star)) throw std::invalid_argument("a0 must lie in (0, a*)");
  std::string seam_error;
  if (options.allow_seam) {
    try {
      return solve_periodic_seam(params, spec, a0, SeamOptions{}, options);
    } catch (const ShootingError& e) {
      seam_error = e.what();
    }
  }
  if (options.allow_continuation) {
    try {
      return solve_periodic_continuation(params, spec, a0, options);
    } catch (const ShootingError& e) {
      throw ShootingError(std::string(e.what()) + (seam_error.empty() ? "" : "; seam: " + seam_error));
    }
  }
  throw ShootingError(seam_error.empty() ? "no solution strategy enabled" : seam_error);
}

std::vector<SweepRow> sweep(const ProblemParams& params, const OperatorSpec& spec, const std::vector<double>& grid,
                            const ShootOptions& options, int jobs) {
  std::vector<SweepRow> rows(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      rows[i].a0 = grid[i];
      try {
        rows[i].solution = solve_periodic(params, spec, grid[i], options);
        rows[i].ok = true;
      } catch (const std::exception& e) {
        rows[i].error = e.what();
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(grid.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < n; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

ConservationReport periodic_energy_drift(const ProblemParams& params, const OperatorSpec& spec,
                                         const PeriodicSolution& sol, int periods, const Tolerances& tol) {
  ConservationReport r;
  r.periods = periods;
  if (sol.equilibrium) return r;
  const EnergyCoefficients k(params, spec);
  r.H0 = hamiltonian_value(k, sol.nodes.front());
  const int K = static_cast<int>(sol.nodes.size());
  const double h = 0.5 * sol.period / K;
  Guards g;
  g.v_max = std::numeric_limits<double>::infinity();
  IntegrateOptions io;
  io.events = false;
  io.dense = false;
  for (int p = 0; p < periods; ++p) {
    const double base = p * sol.period;
    for (int j = 0; j < 2 * K; ++j) {
      Eigen::VectorXd y0;
      if (j < K) y0 = sol.nodes[j];
      else y0 = reflect(j == K ? sol.half.back().y : sol.nodes[2 * K - j]);
      const Orbit seg = integrate(params, spec, {base + j * h, y0}, h, tol, g, io);
      if (seg.status != OrbitStatus::completed) throw ShootingError("segment integration failed: " + seg.diagnostic);
      for (double H : seg.energy) r.max_drift = std::max(r.max_drift, std::abs(H - r.H0));
    }
  }
  r.relative_drift = r.max_drift / (1.0 + std::abs(r.H0));
  return r;
}

QuotientReport quotient_check(const Orbit& orbit, const OperatorSpec& spec) {
  QuotientReport r;
  r.samples = orbit.samples.size();
  const double mu1 = spec.mu(0), lam1 = spec.lam(0), lam2 = spec.m > 1 ? spec.lam(1) : 0.0;
  r.max_w = -std::numeric_limits<double>::infinity();
  r.max_phi1 = -std::numeric_limits<double>::infinity();
  r.min_phi2 = std::numeric_limits<double>::infinity();
  for (const State& s : orbit.samples) {
    const double v = s.y(0);
    if (!(v > 0)) {
      r.positive = false;
      continue;
    }
    r.max_w = std::max(r.max_w, s.y(1) / v);
    r.max_phi1 = std::max(r.max_phi1, s.y(2) - lam1 * v);
    if (s.y.size() >= 5)
      r.min_phi2 = std::min(r.min_phi2, s.y(4) - (lam1 + lam2) * s.y(2) + lam1 * lam2 * v);
  }
  r.w_margin = mu1 - r.max_w;
  r.w_ok = r.positive && r.max_w < mu1;
  r.phi1_ok = r.positive && r.max_phi1 < 0;
  r.phi2_ok = r.positive && r.min_phi2 > 0;
  return r;
}

}  // namespace fowler6
