#include "fowler6/verify.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <random>

#include "fowler6/energy.hpp"
#include "fowler6/homoclinic_quad.hpp"
#include "fowler6/io.hpp"
#include "fowler6/profiles.hpp"
#include "fowler6/radial.hpp"

namespace fowler6 {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

struct Suite {
  VerifyReport report;

  void below(const std::string& name, double value, double threshold, bool asserted = true,
             const std::string& detail = {}) {
    add({name, value, threshold, "<", asserted, value < threshold, detail});
  }
  void above(const std::string& name, double value, double threshold, bool asserted = true,
             const std::string& detail = {}) {
    add({name, value, threshold, ">", asserted, value > threshold, detail});
  }
  void add(Check c) {
    if (c.asserted && !c.pass) report.failed.push_back(c.name);
    report.checks.push_back(std::move(c));
  }
};

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Rational closed_form_K(int n, int j) {
  const std::int64_t N = n;
  switch (j) {
    case 0: {
      const std::int64_t q = (N - 6) * (N - 2) * (N + 2);
      return Rational(q * q, 64);
    }
    case 1: return Rational(3 * N * N * N * N - 24 * N * N * N + 72 * N * N - 96 * N + 304, 16);
    default: return Rational(3 * N * N - 12 * N + 44, 4);
  }
}

void constants_checks(Suite& s, const Constants& k) {
  const OperatorSpec& spec = k.spec;
  const int n = spec.n, m = spec.m;
  // exact coefficients against the closed forms (m = 3) or the symmetric functions of lam
  int mismatches = 0;
  if (m == 3) {
    for (int j = 0; j < 3; ++j) mismatches += spec.K_exact[j] != closed_form_K(n, j);
  } else {
    Rational sum(0), prod(1);
    for (const Rational& l : spec.lam_exact) {
      sum += l;
      prod *= l;
    }
    mismatches += spec.K_exact[m - 1] != sum;
    mismatches += spec.K_exact[0] != prod;
  }
  s.below("operator_coefficients", mismatches, 1, true, "exact rational comparison");

  const IndicialPolynomial ip = indicial_polynomial(spec);
  const Eigen::VectorXcd roots = ip.poly.roots();
  double worst = 0;
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    double best = inf;
    for (int j = 0; j < m; ++j) best = std::min(best, std::abs(std::abs(roots(i)) - spec.mu(j)) + std::abs(roots(i).imag()));
    worst = std::max(worst, best);
  }
  s.below("indicial_roots", worst, 1e-12);
  s.above("indicial_discriminant", ip.discriminant > 0 ? 1.0 : 0.0, 0.5, true, "sign of the discriminant");

  const CouplingAudit audit = audit_coupling_constant(n, m);
  s.below("coupling_audit_spread", audit.spread, 1e-8);

  const double a_star = equilibrium_amplitude(k.params, spec);
  s.below("equilibrium_defect", std::abs(equilibrium_defect(k.params, spec, a_star)) / (spec.K0() * a_star), 1e-14);
}

void power_law_checks(Suite& s, const Constants& k, std::mt19937_64& rng) {
  const int n = k.spec.n, m = k.spec.m;
  std::uniform_real_distribution<double> qd(-6.0, 6.0);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const double q = qd(rng);
    const double C = polyharmonic_power_law(n, m, q);
    for (double r : {0.5, 1.0, 2.0}) {
      const double direct = radial_polylaplacian(n, m, power_profile(n, m, q), r);
      const double expected = C * std::pow(r, q - 2 * m);
      worst = std::max(worst, std::abs(direct - expected) / std::max(std::abs(expected), std::pow(r, q - 2 * m)));
    }
  }
  s.below("power_law_oracle", worst, 1e-8);
}

void homoclinic_checks(Suite& s, const Constants& k) {
  const ProblemParams& params = k.params;
  const OperatorSpec& spec = k.spec;
  const EnergyCoefficients ec(params, spec);
  const double a = params.ef_exponent();
  double res = 0, energy = 0;
  for (int i = 0; i < 50; ++i) {
    const double t = -10.0 + 20.0 * i / 49.0;
    const Eigen::VectorXd d = homoclinic_derivatives<double>(a, t, 7);
    const Eigen::VectorXd y = d.head(6);
    const double v6 = rhs(params, spec, y)(5);
    const double scale = std::max({std::abs(d(6)), ec.K4 * std::abs(d(4)), ec.K2 * std::abs(d(2)),
                                   ec.K0 * std::abs(d(0)), std::abs(ec.f(d(0)))});
    res = std::max(res, std::abs(v6 - d(6)) / scale);
  }
  for (double t : {0.0, 1.0, 5.0, -3.0, 10.0}) energy = std::max(energy, std::abs(hamiltonian_value(ec, homoclinic_jet(params, t))));
  s.below("homoclinic_ode_residual", res, 1e-11, true, "relative to the largest term, 50 times in [-10, 10]");
  s.below("homoclinic_energy", energy, 1e-10);
  const HomoclinicPropagation hp = homoclinic_propagation(spec.n, 10.0);
  s.below("homoclinic_propagation", hp.ok ? hp.relative_error : inf, 1e-8, true,
          "t = 0 jet integrated to t = 10 in quad precision");
}

void profile_checks(Suite& s, const Constants& k) {
  const int n = k.spec.n, m = k.spec.m;
  const RadialProfile bubble = spherical(n, m, 1.0);
  double res = 0;
  for (const ProfileRow& row : profile_table(k.params, bubble, {0.5, 1.0, 2.0})) res = std::max(res, row.residual);
  s.below("bubble_pde_residual", res, 1e-8);

  const EfProfile v = ef_transform(bubble);
  const double a = k.params.ef_exponent();
  double ef = 0;
  for (double t : {0.0, 1.0, -1.0, 2.0, -2.0}) ef = std::max(ef, rel_diff(v(t), std::pow(std::cosh(t), -a)));
  const RadialProfile back = ef_inverse(v);
  for (double r : {0.25, 0.5, 1.0, 2.0, 4.0}) ef = std::max(ef, rel_diff(back(r), bubble(r)));
  s.below("ef_roundtrip", ef, 1e-12);

  double kelvin = 0;
  for (double mu : {0.5, 1.0, 3.0}) {
    const RadialProfile u = spherical(n, m, mu);
    const RadialProfile ku = kelvin_transform(n, u, mu);
    const RadialProfile other = spherical(n, m, 1.7);
    const RadialProfile twice = kelvin_transform(n, kelvin_transform(n, other, mu), mu);
    for (double r : {mu / 2, mu, 2 * mu}) {
      kelvin = std::max(kelvin, rel_diff(ku(r), u(r)));
      kelvin = std::max(kelvin, rel_diff(twice(r), other(r)));
    }
  }
  s.below("kelvin_fixed_point_involution", kelvin, 1e-12);
}

void kernel_checks(Suite& s, const Constants& k, const VerifyOptions& o, std::uint64_t seed) {
  const KernelReport kr = kernel_positivity_sample(k.spec.n, k.spec.m, o.kernel_draws, seed);
  s.below("kernel_positivity", static_cast<double>(kr.draws - kr.positive), 1, true,
          "draws with E <= 0 out of " + std::to_string(kr.draws));
  s.below("kernel_boundary", kr.max_boundary_abs, 1e-12);
}

Orbit homoclinic_orbit(const ProblemParams& params, double T) {
  Orbit o;
  for (int i = 0; i <= 2000; ++i) {
    const double t = -T + 2.0 * T * i / 2000.0;
    o.samples.push_back({t, homoclinic_jet(params, t)});
  }
  return o;
}

Orbit sample_orbit(const PeriodicSolution& sol) {
  Orbit o;
  o.samples = sol.samples;
  return o;
}

void periodic_checks(Suite& s, const RunConfig& config, const Constants& k, const VerifyOptions& o,
                     std::mt19937_64& rng) {
  const ProblemParams& params = k.params;
  const OperatorSpec& spec = k.spec;
  const double a_star = equilibrium_amplitude(params, spec);
  const ShootOptions shoot = config.shoot_options();
  const std::vector<SweepRow> rows = sweep(params, spec, o.grid, shoot, config.jobs);

  double worst_res = 0;
  int failures = 0;
  for (const SweepRow& r : rows) {
    if (!r.ok) ++failures;
    else worst_res = std::max(worst_res, r.solution.newton_residual);
  }
  s.below("periodic_convergence", failures ? inf : worst_res, 1e-10, true,
          std::to_string(failures) + " grid points failed");
  if (failures) return;

  double drift = 0, rate = 0, straddle = inf;
  std::uniform_real_distribution<double> phase(0.0, 1.0);
  const EnergyCoefficients ec(params, spec);
  std::size_t extrema_mismatch = 0;
  MonitorReport worst;
  worst.sign1_margin = worst.sign2_margin = worst.min_R = inf;
  std::size_t sign1 = 0, sign2 = 0;
  double phi_w = -inf, phi1 = -inf, phi2 = inf, sh1 = -inf, sh2 = inf, psh1 = -inf, psh2 = inf;
  auto absorb = [&](const Orbit& orbit, bool periodic, const Orbit& inner) {
    const MonitorReport m = monitor_orbit(params, spec, orbit);
    sign1 += m.sign1_violations;
    sign2 += m.sign2_violations;
    worst.sign1_margin = std::min(worst.sign1_margin, m.sign1_margin);
    worst.sign2_margin = std::min(worst.sign2_margin, m.sign2_margin);
    worst.min_R = std::min(worst.min_R, m.min_R);
    if (periodic) {
      straddle = std::min(straddle, m.straddle_margin);
      // samples span [0, period]: the minimum sits at both ends
      if (m.maxima_t.size() != 1) ++extrema_mismatch;
    }
    const QuotientReport q = quotient_check(inner, spec);
    phi_w = std::max(phi_w, q.max_w - spec.mu(0));
    phi1 = std::max(phi1, q.max_phi1);
    phi2 = std::min(phi2, q.min_phi2);
    const SuperharmonicityReport sh = superharmonicity_check(params, inner.samples);
    sh1 = std::max(sh1, sh.max_first);
    sh2 = std::min(sh2, sh.min_second);
    psh1 = std::max(psh1, sh.printed_first_max);
    psh2 = std::min(psh2, sh.printed_second_min);
  };
  // the fourth-order combinations fall below double resolution in the tails
  absorb(homoclinic_orbit(params, 10.0), false, homoclinic_orbit(params, 6.0));

  std::vector<double> energies;
  for (const SweepRow& r : rows) {
    const PeriodicSolution& sol = r.solution;
    energies.push_back(sol.energy);
    const ConservationReport c = periodic_energy_drift(params, spec, sol, o.conservation_periods, shoot.tol);
    drift = std::max(drift, c.relative_drift);
    for (int i = 0; i < o.phase_points; ++i)
      rate = std::max(rate, std::abs(energy_rate(params, spec, sol.state_at(phase(rng) * sol.period))));
    const Orbit orbit = sample_orbit(sol);
    absorb(orbit, true, orbit);
  }
  s.below("energy_conservation", drift, 1e-9, true,
          "max |H - H0| / (1 + |H0|) over " + std::to_string(o.conservation_periods) + " periods");
  s.below("energy_rate", rate, 1e-10, true, "analytic dH/dt at seeded phase points");

  double steps = inf;
  for (std::size_t i = 1; i < energies.size(); ++i)
    steps = std::min(steps, (energies[i - 1] - energies[i]) * (o.grid[i] > o.grid[i - 1] ? 1 : -1));
  s.above("energy_ordering", steps, 0.0, true, "min decrease of H between consecutive grid points");
  s.below("energy_above_equilibrium", ec.G(a_star) - *std::min_element(energies.begin(), energies.end()), 0.0);
  s.below("energy_below_homoclinic", *std::max_element(energies.begin(), energies.end()), 0.0);

  s.above("extrema_straddle", straddle, 0.0, true, "min over extrema of |v - a*|, signed");
  s.below("extrema_count", static_cast<double>(extrema_mismatch), 1, true, "orbits without exactly one max per period");
  s.below("sign_identity_E1", static_cast<double>(sign1), 1, true, "samples with sign(E1) != sign(v')");
  s.below("sign_identity_E2", static_cast<double>(sign2), 1, false,
          "samples with sign(E2) != sign(v''); reported only");
  s.above("auxiliary_R", worst.min_R, 0.0, true, "min of E1 v' + E2 v''");
  s.below("quotient_bound", phi_w, 0.0, true, "max of v'/v - mu1");
  s.below("factor_chain_first", phi1, 0.0, true, "max of v'' - lam1 v");
  s.above("factor_chain_second", phi2, 0.0, true, "min of (d^2 - lam2)(d^2 - lam1) v");
  s.below("superharmonicity_first", sh1, 0.0);
  s.above("superharmonicity_second", sh2, 0.0);
  s.below("superharmonicity_printed_first", psh1, 0.0, false, "printed coefficients, reported only");
  s.above("superharmonicity_printed_second", psh2, 0.0, false, "printed coefficients, reported only");

  // reconstruction at the grid point closest to 0.5
  std::size_t pick = 0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (std::abs(rows[i].a0 - 0.5) < std::abs(rows[pick].a0 - 0.5)) pick = i;
  const PeriodicSolution& sol = rows[pick].solution;
  const RadialProfile u = reconstruct(params, sol, 0.0);
  std::vector<double> radii;
  for (int i = 0; i < 20; ++i) radii.push_back(std::exp(-1.5 * sol.period + 3.0 * sol.period * i / 19.0));
  double res = 0, slope = -inf;
  for (const ProfileRow& row : profile_table(params, u, radii)) {
    res = std::max(res, row.residual);
    slope = std::max(slope, row.du);
  }
  s.below("reconstruction_residual", res, 1e-6);
  s.below("reconstruction_monotone", slope, 0.0, true, "max of du/dr");

  const RadialProfile eq = reconstruct(params, equilibrium_solution(params, spec), 0.0);
  double law = 0;
  for (const ProfileRow& row : profile_table(params, eq, radii)) {
    law = std::max(law, rel_diff(row.u, a_star * std::pow(row.r, -params.ef_exponent())));
    law = std::max(law, row.residual);
  }
  s.below("equilibrium_power_law", law, 1e-12);
}

nlohmann::ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

}  // namespace

std::string VerifyReport::to_json(const RunConfig& config) const {
  nlohmann::ordered_json j;
  j["n"] = config.n;
  j["m"] = config.m;
  j["c_mode"] = to_string(config.c_mode);
  j["seed"] = config.seed;
  j["tol_rel"] = config.tol_rel;
  j["tol_abs"] = config.tol_abs;
  j["tol_newton"] = config.tol_newton;
  auto& list = j["checks"] = nlohmann::ordered_json::array();
  for (const Check& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["value"] = number(c.value);
    e["relation"] = c.relation;
    e["threshold"] = number(c.threshold);
    e["asserted"] = c.asserted;
    e["pass"] = c.pass;
    if (!c.detail.empty()) e["detail"] = c.detail;
    list.push_back(e);
  }
  j["failed"] = failed;
  j["status"] = pass() ? "pass" : "fail";
  return j.dump(2) + "\n";
}

VerifyReport run_verification(const RunConfig& config, const VerifyOptions& options) {
  config.validate();
  Constants k = derive_constants(config.n, config.m, config.c_mode);
  if (options.perturb_k2 != 0.0) k.spec.K(1) += options.perturb_k2;
  std::mt19937_64 rng(config.seed);
  Suite s;
  constants_checks(s, k);
  power_law_checks(s, k, rng);
  if (config.m == 3) {
    homoclinic_checks(s, k);
    profile_checks(s, k);
    kernel_checks(s, k, options, config.seed);
    periodic_checks(s, config, k, options, rng);
  } else {
    profile_checks(s, k);
    kernel_checks(s, k, options, config.seed);
  }
  return s.report;
}

}  // namespace fowler6
