// Runs the ten acceptance criteria and prints one line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "fowler6/energy.hpp"
#include "fowler6/homoclinic_quad.hpp"
#include "fowler6/profiles.hpp"
#include "fowler6/radial.hpp"
#include "fowler6/shooting.hpp"
#include "fowler6/verify.hpp"

using namespace fowler6;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + ("failed: " + what);
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const Constants& k7() {
  static const Constants k = derive_constants(7, 3);
  return k;
}

double a_star() { return equilibrium_amplitude(k7().params, k7().spec); }

Outcome constants_audit() {
  Outcome o;
  for (std::int64_t n = 7; n <= 20; ++n) {
    const OperatorSpec s = build_operator(static_cast<int>(n), 3);
    const std::int64_t q = (n - 6) * (n - 2) * (n + 2);
    o.require(s.K_exact[2] == Rational(3 * n * n - 12 * n + 44, 4), "K4 at n=" + std::to_string(n));
    o.require(s.K_exact[1] == Rational(3 * n * n * n * n - 24 * n * n * n + 72 * n * n - 96 * n + 304, 16),
              "K2 at n=" + std::to_string(n));
    o.require(s.K_exact[0] == Rational(q * q, 64), "K0 at n=" + std::to_string(n));
  }
  const OperatorSpec s2 = build_operator(5, 2);
  o.require(s2.K_exact[1] == Rational(13, 2) && s2.K_exact[0] == Rational(25, 16), "m=2, n=5");
  o.require(build_operator(3, 1).K_exact[0] == Rational(1, 4), "m=1, n=3");
  if (o.pass) o.note("n=7..20 exact; K0=2025/64 K2=2131/16 K4=107/4 at n=7");
  return o;
}

Outcome bubble_residual() {
  Outcome o;
  for (int n : {7, 10, 13}) {
    const CouplingAudit a = audit_coupling_constant(n, 3);
    o.require(a.spread < 1e-8, "spread at n=" + std::to_string(n));
    o.note("n=" + std::to_string(n) + " spread " + fmt(a.spread) + " c=" + fmt(a.audited_c));
  }
  return o;
}

Outcome homoclinic() {
  Outcome o;
  const Constants& k = k7();
  const double c = k.params.c, p = k.params.p_real();
  double worst = 0, worst_H = 0;
  for (int i = 0; i < 50; ++i) {
    const double t = -10 + 20.0 * i / 49;
    const Eigen::VectorXd d = homoclinic_derivatives<double>(0.5, t, 7);
    const double terms[] = {std::abs(d(6)), k.spec.K(2) * std::abs(d(4)), k.spec.K(1) * std::abs(d(2)),
                            k.spec.K0() * std::abs(d(0)), c * std::pow(std::abs(d(0)), p)};
    const double scale = *std::max_element(std::begin(terms), std::end(terms));
    const double res = d(6) - k.spec.K(2) * d(4) + k.spec.K(1) * d(2) - k.spec.K0() * d(0) + c * std::pow(d(0), p);
    worst = std::max(worst, std::abs(res) / scale);
    worst_H = std::max(worst_H, std::abs(hamiltonian(k.params, k.spec, d.head(6)).H));
  }
  o.require(worst < 1e-11, "ODE residual");
  o.require(worst_H < 1e-10, "H = 0");
  const HomoclinicPropagation h = homoclinic_propagation(7, 10.0);
  o.require(h.ok && h.relative_error < 1e-8, "propagation to t=10");
  o.note("residual " + fmt(worst) + ", |H| " + fmt(worst_H) + ", v(10) rel err " + fmt(h.relative_error) +
         " (full state " + fmt(h.state_error) + ")");
  return o;
}

Outcome conservation() {
  Outcome o;
  const Constants& k = k7();
  std::mt19937_64 rng(42);
  double worst_drift = 0, worst_rate = 0;
  for (int i = 1; i <= 8; ++i) {
    const double a0 = 0.1 * i;
    const PeriodicSolution s = solve_periodic(k.params, k.spec, a0);
    const ConservationReport r = periodic_energy_drift(k.params, k.spec, s, 10);
    worst_drift = std::max(worst_drift, r.max_drift / (1 + std::abs(r.H0)));
    std::uniform_real_distribution<double> phase(0, s.period);
    for (int j = 0; j < 100; ++j)
      worst_rate = std::max(worst_rate, std::abs(energy_rate(k.params, k.spec, s.state_at(phase(rng)))));
  }
  o.require(worst_drift < 1e-9, "drift over 10 periods");
  o.require(worst_rate < 1e-10, "dH/dt at phase points");
  o.note("max drift/(1+|H|) " + fmt(worst_drift) + ", max |dH/dt| " + fmt(worst_rate));
  return o;
}

Outcome shooting() {
  Outcome o;
  const Constants& k = k7();
  const PeriodicSolution s = solve_periodic_seam(k.params, k.spec, 0.5, SeamOptions{});
  o.require(s.newton_residual < 1e-10, "residual");
  double lo = 1e300;
  for (const State& st : s.samples) lo = std::min(lo, st.y(0));
  o.require(std::abs(lo - 0.5) < 1e-8, "min = a0");
  Orbit orbit;
  orbit.samples = s.samples;
  orbit.samples.pop_back();  // one period, endpoint excluded
  const MonitorReport m = monitor_orbit(k.params, k.spec, orbit);
  o.require(m.maxima_t.size() == 1, "one max per period");
  o.require(m.minima_t.size() <= 1, "one min per period");
  o.require(s.max_value > a_star() && a_star() > lo, "max > a* > min");
  o.require(std::abs(a_star() - 0.87256) < 1e-5, "a*");
  SeamOptions other;
  other.grid_lines = 13;
  other.grid_shift = 0.37;
  other.b2_scale = 2.5;
  const PeriodicSolution t = solve_periodic_seam(k.params, k.spec, 0.5, other);
  const double spread =
      std::max({std::abs(s.a2 - t.a2), std::abs(s.a4 - t.a4), std::abs(s.period - t.period)});
  o.require(spread < 1e-8, "independent brackets");
  o.note("|Phi| " + fmt(s.newton_residual) + ", period " + std::to_string(s.period) + ", bracket spread " +
         fmt(spread));
  return o;
}

Outcome equilibrium_period() {
  Outcome o;
  const Constants& k = k7();
  const PeriodicSolution s = solve_periodic(k.params, k.spec, a_star() - 1e-4);
  const double linear = 2 * M_PI / linear_frequency(k.params, k.spec);
  const double rel = std::abs(s.period - linear) / linear;
  o.require(rel < 1e-2, "period within 1%");
  o.note("period " + std::to_string(s.period) + " vs " + std::to_string(linear) + " (rel " + fmt(rel) + ")");
  return o;
}

Outcome signs_and_ordering() {
  Outcome o;
  const Constants& k = k7();
  const EnergyCoefficients ec(k.params, k.spec);
  std::size_t v1 = 0, v2 = 0;
  Orbit h;
  for (int i = 0; i <= 4000; ++i) {
    const double t = -10 + 20.0 * i / 4000;
    h.samples.push_back({t, homoclinic_jet(k.params, t)});
  }
  MonitorReport m = monitor_orbit(k.params, k.spec, h);
  v1 += m.sign1_violations;
  v2 += m.sign2_violations;
  const std::size_t homoclinic_v2 = m.sign2_violations;

  const double as = a_star();
  const std::vector<double> grid{0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.87, as - 1e-4, as - 1e-5};
  std::vector<double> H;
  for (double a0 : grid) {
    const PeriodicSolution s = solve_periodic(k.params, k.spec, a0);
    H.push_back(s.energy);
    Orbit p;
    p.samples = s.samples;
    m = monitor_orbit(k.params, k.spec, p);
    v1 += m.sign1_violations;
    v2 += m.sign2_violations;
  }
  bool monotone = true;
  for (std::size_t i = 1; i < H.size(); ++i) monotone = monotone && H[i] < H[i - 1];
  const double Gs = ec.G(as);
  o.require(v1 == 0, "E1 sign agreement");
  o.require(v2 == 0, "E2 sign agreement");
  o.require(monotone, "H monotone");
  o.require(std::abs(H.front()) < 1e-2 && std::abs(H.front()) < std::abs(H[3]), "H -> 0 as a0 -> 0");
  o.require(std::abs(H.back() - Gs) < 1e-6 && H.back() > Gs, "H -> G(a*) as a0 -> a*");
  o.note("E1 violations " + std::to_string(v1) + ", E2 violations " + std::to_string(v2) + " (" +
         std::to_string(homoclinic_v2) + " on the homoclinic), H(0.01) " + fmt(H.front()) +
         ", H(a*-1e-5) - G(a*) " + fmt(H.back() - Gs));
  return o;
}

Outcome reconstruction() {
  Outcome o;
  const Constants& k = k7();
  const PeriodicSolution s = solve_periodic(k.params, k.spec, 0.5);
  const RadialProfile u = reconstruct(k.params, s, 0.0);
  std::vector<double> radii;
  for (int i = 0; i < 20; ++i) radii.push_back(std::exp(-1.5 * s.period + 3 * s.period * i / 19.0));
  double worst = 0, max_du = -1e300;
  for (const ProfileRow& r : profile_table(k.params, u, radii)) {
    worst = std::max(worst, r.residual);
    max_du = std::max(max_du, r.du);
  }
  o.require(worst < 1e-6, "PDE residual");
  o.require(max_du < 0, "monotone");
  const RadialProfile e = reconstruct(k.params, equilibrium_solution(k.params, k.spec), 0.0);
  double worst_eq = 0;
  for (double r : {1e-3, 0.1, 1.0, 7.0, 1e3}) worst_eq = std::max(worst_eq, std::abs(e(r) / (a_star() / std::sqrt(r)) - 1));
  o.require(worst_eq < 4 * std::numeric_limits<double>::epsilon(), "power law limit");
  o.note("max residual " + fmt(worst) + ", max du " + fmt(max_du) + ", power law rel err " + fmt(worst_eq));
  return o;
}

Outcome kernel() {
  Outcome o;
  const KernelReport r = kernel_positivity_sample(7, 3, 10000, 42);
  o.require(r.positive == r.draws && r.draws == 10000, "E > 0");
  o.require(r.max_boundary_abs < 1e-12, "boundary");
  o.note(std::to_string(r.positive) + "/" + std::to_string(r.draws) + " positive, min E " + fmt(r.min_E) +
         ", boundary |E| " + fmt(r.max_boundary_abs));
  return o;
}

Outcome determinism() {
  Outcome o;
  RunConfig c;
  c.seed = 42;
  const std::string a = run_verification(c).to_json(c);
  const std::string b = run_verification(c).to_json(c);
  o.require(a == b, "byte reproducible");
  VerifyOptions perturbed;
  perturbed.perturb_k2 = 1e-6;
  const VerifyReport p = run_verification(c, perturbed);
  bool named = false;
  for (const std::string& f : p.failed)
    named = named || f.find("residual") != std::string::npos || f.find("conservation") != std::string::npos ||
            f.find("energy") != std::string::npos;
  o.require(!p.pass() && named, "perturbed K2 detected");
  std::string names;
  for (const std::string& f : p.failed) names += (names.empty() ? "" : ",") + f;
  o.note("report " + std::to_string(a.size()) + " bytes identical; perturbed run fails " + names);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;  // seconds
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "constants audit", 1, constants_audit},
      {2, "bubble residual", 1, bubble_residual},
      {3, "homoclinic", 5, homoclinic},
      {4, "conservation", 30, conservation},
      {5, "shooting and periodicity", 120, shooting},
      {6, "equilibrium-limit period", 60, equilibrium_period},
      {7, "sign identities and energy ordering", 120, signs_and_ordering},
      {8, "reconstruction", 60, reconstruction},
      {9, "kernel positivity", 5, kernel},
      {10, "determinism and negative control", 300, determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < c.budget, "runtime budget " + fmt(c.budget) + " s");
    if (!o.pass) ++failures;
    std::printf("%s  %2d %-38s %7.2f s  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures ? 1 : 0;
}
