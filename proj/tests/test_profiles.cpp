#include <doctest.h>

#include <cmath>

#include "fowler6/profiles.hpp"
#include "fowler6/radial.hpp"
#include "fowler6/shooting.hpp"

using namespace fowler6;

namespace {

const Constants& k7() {
  static const Constants k = derive_constants(7, 3);
  return k;
}

const PeriodicSolution& sol05() {
  static const PeriodicSolution s = solve_periodic(k7().params, k7().spec, 0.5);
  return s;
}

double a_star() { return equilibrium_amplitude(k7().params, k7().spec); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// 8th-order central differences of f at x
double central(const std::function<double(double)>& f, double x, int order, double h) {
  static const double d2[] = {-205.0 / 72, 8.0 / 5, -1.0 / 5, 8.0 / 315, -1.0 / 560};
  static const double d4[] = {91.0 / 8, -122.0 / 15, 169.0 / 60, -2.0 / 5, 7.0 / 240};
  const double* w = order == 2 ? d2 : d4;
  double s = w[0] * f(x);
  for (int i = 1; i <= 4; ++i) s += w[i] * (f(x + i * h) + f(x - i * h));
  return s / std::pow(h, order);
}

Eigen::VectorXd ef_state(const RadialProfile& u, double t) { return ef_transform(u).state(t, 6); }

}  // namespace

TEST_CASE("the bubble in Emden-Fowler variables") {
  const EfProfile v = ef_transform(spherical(7, 3, 1.0));
  for (double t : {0.0, 1.0, -1.0, 2.0, -2.0}) {
    // (2 e^t / (1 + e^2t))^(1/2) = cosh(t)^(-1/2)
    const double oracle = std::sqrt(2 * std::exp(t) / (1 + std::exp(2 * t)));
    CHECK(rel(v(t), oracle) < 1e-12);
    CHECK(rel(v(t), 1 / std::sqrt(std::cosh(t))) < 1e-12);
  }
}

TEST_CASE("the homoclinic profile is the bubble of radius e^T") {
  for (double T : {0.0, 0.7, -1.2}) {
    const RadialProfile h = homoclinic_profile(7, 3, T), s = spherical(7, 3, std::exp(T));
    for (double r : {0.1, 0.5, 1.0, 3.0}) {
      CHECK(rel(h(r), s(r)) < 1e-13);
      CHECK(rel(h.derivative(r, 3), s.derivative(r, 3)) < 1e-11);
    }
  }
}

TEST_CASE("transform round trip on closed kinds") {
  const std::vector<RadialProfile> kinds = {spherical(7, 3, 1.3), homoclinic_profile(7, 3, 0.4),
                                            constant_profile(7, 3, 0.8), power_profile(7, 3, -1.7),
                                            spherical(10, 3, 0.6)};
  for (const RadialProfile& u : kinds) {
    const RadialProfile back = ef_inverse(ef_transform(u));
    for (double r : {0.2, 0.9, 1.0, 2.5, 7.0}) {
      CHECK(rel(back(r), u(r)) < 1e-12);
      CHECK(rel(back.derivative(r, 2), u.derivative(r, 2)) < 1e-10);
    }
  }
}

TEST_CASE("the constant kind at a* is the equilibrium") {
  const EfProfile v = ef_transform(constant_profile(7, 3, a_star()));
  for (double t : {-3.0, 0.0, 4.0}) {
    const Eigen::VectorXd s = v.state(t, 6);
    CHECK(rel(s(0), a_star()) < 1e-14);
    for (int k = 1; k < 6; ++k) CHECK(std::abs(s(k)) < 1e-12);
  }
}

TEST_CASE("homoclinic jet against finite differences") {
  const Eigen::VectorXd j = homoclinic_jet(k7().params, 0.0);
  auto f = [](double t) { return std::pow(std::cosh(t), -0.5); };
  CHECK(j(0) == 1.0);
  CHECK(j(1) == 0.0);
  CHECK(j(3) == 0.0);
  CHECK(j(5) == 0.0);
  CHECK(j(2) == doctest::Approx(central(f, 0.0, 2, 0.05)).epsilon(1e-9));
  CHECK(j(4) == doctest::Approx(central(f, 0.0, 4, 0.05)).epsilon(1e-6));
  CHECK(j(2) == doctest::Approx(-0.5));
  for (double t : {0.7, -2.2}) {
    const Eigen::VectorXd jt = homoclinic_jet(k7().params, t);
    CHECK(jt(2) == doctest::Approx(central(f, t, 2, 0.05)).epsilon(1e-9));
    // closed form agrees with the jet of the radial profile
    const Eigen::VectorXd e = homoclinic_ef(7, 3, 0.0).state(t, 6);
    for (int k = 0; k < 6; ++k) CHECK(jt(k) == doctest::Approx(e(k)).epsilon(1e-12));
  }
  CHECK(homoclinic_jet(k7().params, 40.0).lpNorm<Eigen::Infinity>() < 1e-7);
  CHECK_THROWS_AS(homoclinic_jet(derive_constants(5, 2).params, 0.0), std::invalid_argument);
}

TEST_CASE("radial poly-Laplacian") {
  CHECK(std::abs(radial_polylaplacian(7, 3, power_profile(7, 3, 0.0), 1.3)) < 1e-12);
  for (double r : {0.5, 1.0, 2.0}) {
    const double q = -1.3;
    CHECK(radial_polylaplacian(7, 3, power_profile(7, 3, q), r) ==
          doctest::Approx(polyharmonic_power_law(7, 3, q) * std::pow(r, q - 6)).epsilon(1e-10));
  }
  const RadialProfile u = spherical(7, 3, 1.0);
  double first = 0;
  for (double r : {0.5, 1.0, 2.0}) {
    const double ratio = radial_polylaplacian(7, 3, u, r) / std::pow(u(r), 13);
    if (first == 0) first = ratio;
    CHECK(rel(ratio, first) < 1e-8);
    CHECK(rel(ratio, k7().params.c) < 1e-8);
  }
  CHECK_THROWS_AS(radial_polylaplacian(7, 3, u, 0.0), std::domain_error);
}

TEST_CASE("EF form of the first and second Laplacians") {
  // -Delta u = -r^(-a-2) (v'' + 4v' - alpha v) and Delta^2 u = r^(-a-4) (second form)
  const ProblemParams& params = k7().params;
  for (const RadialProfile& u : {spherical(7, 3, 1.0), spherical(7, 3, 2.5)}) {
    for (double r : {0.3, 1.0, 4.0}) {
      Jet<double> f = u.jet(r, 6);
      const Jet<double> lap = radial_laplacian(f, 7, r);
      const Jet<double> bilap = radial_laplacian(lap, 7, r);
      std::vector<State> one{{std::log(r), ef_state(u, std::log(r))}};
      const SuperharmonicityReport sh = superharmonicity_check(params, one);
      CHECK(lap.value() == doctest::Approx(std::pow(r, -2.5) * sh.max_first).epsilon(1e-11));
      CHECK(bilap.value() == doctest::Approx(std::pow(r, -4.5) * sh.min_second).epsilon(1e-10));
    }
  }
}

TEST_CASE("superharmonicity forms") {
  const ProblemParams& params = k7().params;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(6);
  y(0) = a_star();
  SuperharmonicityReport r = superharmonicity_check(params, {{0, y}});
  // printed form fails on the constant solution, corrected form holds
  CHECK(r.printed_first_max == doctest::Approx(0.75 * a_star()));
  CHECK(r.first_ok);
  CHECK(r.second_ok);
  CHECK(!r.nu_minus_real);
  CHECK(r.nu_minus_sq < 0);

  std::vector<State> h;
  for (int i = 0; i <= 600; ++i) {
    const double t = -6 + 12.0 * i / 600;
    h.push_back({t, homoclinic_jet(params, t)});
  }
  r = superharmonicity_check(params, h);
  CHECK(r.first_ok);
  CHECK(r.second_ok);

  r = superharmonicity_check(params, sol05().samples);
  CHECK(r.first_ok);
  CHECK(r.second_ok);
  CHECK(r.max_first < 0);
}

TEST_CASE("reconstruction at a0 = 0.5") {
  const ProblemParams& params = k7().params;
  const PeriodicSolution& s = sol05();
  const RadialProfile u = reconstruct(params, s, 0.0);
  std::vector<double> radii;
  for (int i = 0; i < 20; ++i) radii.push_back(std::exp(-1.5 * s.period + 3 * s.period * i / 19.0));
  for (const ProfileRow& row : profile_table(params, u, radii)) {
    CHECK(row.residual < 1e-6);
    CHECK(row.du < 0);
  }
  // u(r) = r^(-1/2) v(T - ln r)
  for (double r : {0.3, 1.0, 2.0}) CHECK(rel(u(r), std::pow(r, -0.5) * s.state_at(-std::log(r))(0)) < 1e-10);
}

TEST_CASE("reconstruction in the equilibrium limit is the power law") {
  const ProblemParams& params = k7().params;
  const RadialProfile u = reconstruct(params, equilibrium_solution(params, k7().spec), 1.7);
  for (const ProfileRow& row : profile_table(params, u, {0.01, 0.5, 1.0, 40.0})) {
    CHECK(rel(row.u, a_star() / std::sqrt(row.r)) < 1e-15);
    CHECK(row.residual < 1e-13);
  }
}

TEST_CASE("interpolation refuses when the density is insufficient") {
  InterpolationOptions o;
  o.max_points = 32;
  o.tolerance = 1e-14;
  CHECK_THROWS_WITH_AS(interpolate(sol05(), o), doctest::Contains("samples required"), std::runtime_error);
  InterpolationReport rep;
  interpolate(sol05(), {}, &rep);
  CHECK(rep.converged);
  CHECK(rep.midpoint_error < 1e-12);
}

TEST_CASE("tabulated profiles") {
  const RadialProfile exact = spherical(7, 3, 1.0);
  std::vector<double> r, u;
  for (int i = 0; i <= 400; ++i) {
    r.push_back(0.5 + 1.5 * i / 400);
    u.push_back(exact(r.back()));
  }
  const RadialProfile t = tabulated(7, 3, r, u);
  for (double x : {0.8, 1.0, 1.37}) {
    CHECK(rel(t(x), exact(x)) < 1e-12);
    CHECK(rel(t.derivative(x, 2), exact.derivative(x, 2)) < 1e-7);
    CHECK(t.error_estimate(x) < 1e-10);
  }
  CHECK_THROWS_AS(t(3.0), std::domain_error);
  CHECK_THROWS_AS(tabulated(7, 3, {1, 2}, {1}), std::invalid_argument);
}

TEST_CASE("transform round trip on a tabulated periodic orbit") {
  const ProblemParams& params = k7().params;
  const PeriodicSolution& s = sol05();
  const RadialProfile u = reconstruct(params, s, 0.0);
  std::vector<double> r, vals;
  for (int i = 0; i <= 2000; ++i) {
    r.push_back(std::exp(-2.0 + 4.0 * i / 2000));
    vals.push_back(u(r.back()));
  }
  const EfProfile v = ef_transform(tabulated(7, 3, r, vals));
  // EF time t = ln r sees v(-t) of the orbit
  for (double t : {-1.5, -0.3, 0.0, 0.8, 1.9}) CHECK(std::abs(v(t) - s.state_at(-t)(0)) < 1e-10);
}

TEST_CASE("Kelvin transform") {
  for (double mu : {0.5, 1.0, 3.0}) {
    const RadialProfile u = spherical(7, 3, mu);
    const RadialProfile k = kelvin_transform(7, u, mu);
    for (double r : {mu / 2, mu, 2 * mu}) CHECK(rel(k(r), u(r)) < 1e-12);
    const RadialProfile w = spherical(7, 3, 0.3);
    const RadialProfile ww = kelvin_transform(7, kelvin_transform(7, w, mu), mu);
    for (double r : {0.1, 1.0, 5.0}) {
      CHECK(rel(ww(r), w(r)) < 1e-12);
      CHECK(rel(ww.derivative(r, 2), w.derivative(r, 2)) < 1e-9);
    }
  }
  CHECK_THROWS_AS(kelvin_transform(7, spherical(7, 3, 1.0), 0.0), std::invalid_argument);
}

TEST_CASE("Kelvin transform reflects the phase") {
  const ProblemParams& params = k7().params;
  const PeriodicSolution& s = sol05();
  const double T = 0.4;
  for (double mu : {0.7, 1.9}) {
    const RadialProfile k = kelvin_transform(7, reconstruct(params, s, T), mu);
    const RadialProfile shifted = reconstruct(params, s, 2 * std::log(mu) - T);
    for (double r : {0.2, 1.0, 3.0}) CHECK(rel(k(r), shifted(r)) < 1e-10);
    // and it stays a solution
    for (const ProfileRow& row : profile_table(params, k, {0.5, 1.5})) CHECK(row.residual < 1e-6);
  }
}

TEST_CASE("kernel values") {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(7), y(7), z(7);
  const double mu = 1.2;
  y << 0.3, -2.0, 0.5, 1.0, 0.0, 0.7, -0.4;
  z << 1.1, 0.9, -0.8, 0.2, 0.5, 0.1, 1.5;
  CHECK(kernel_E(7, 3, x, y, z, mu) > 0);
  // boundary |z - x| = mu
  const Eigen::VectorXd zb = mu * z / z.norm();
  CHECK(std::abs(kernel_E(7, 3, x, y, zb, mu)) < 1e-12);
  // y on the inversion sphere also gives zero
  const Eigen::VectorXd ys = mu * y / y.norm();
  CHECK(std::abs(kernel_E(7, 3, x, ys, z, mu)) < 1e-12);
  // y inside the ball gives a negative value
  CHECK(kernel_E(7, 3, x, 0.3 * ys, z, mu) < 0);
  CHECK_THROWS_AS(kernel_E(7, 3, x, y, 0.5 * zb, mu), std::invalid_argument);
  CHECK_THROWS_AS(kernel_E(7, 3, x, z, z, mu), std::invalid_argument);
}

TEST_CASE("kernel sampler") {
  const KernelReport r = kernel_positivity_sample(7, 3, 10000, 42);
  CHECK(r.draws == 10000);
  CHECK(r.positive == r.draws);
  CHECK(r.min_E > 0);
  CHECK(r.max_boundary_abs < 1e-12);
  CHECK(r.max_y_sphere_abs < 1e-12);
  CHECK(r.min_interior_E < 0);
  const KernelReport again = kernel_positivity_sample(7, 3, 10000, 42);
  CHECK(again.min_E == r.min_E);
}

TEST_CASE("profile table columns") {
  const ProblemParams& params = k7().params;
  const RadialProfile u = spherical(7, 3, 1.0);
  const std::vector<ProfileRow> rows = profile_table(params, u, {1.0});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].u == doctest::Approx(1.0));
  CHECK(rows[0].du == doctest::Approx(u.derivative(1.0, 1)));
  CHECK(rows[0].neg_lap > 0);
  CHECK(rows[0].polylap == doctest::Approx(params.c).epsilon(1e-10));
  CHECK_THROWS_AS(profile_table(params, u, {0.0}), std::domain_error);
}
