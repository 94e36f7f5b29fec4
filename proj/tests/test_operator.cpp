#include <doctest.h>

#include <cmath>
#include <random>

#include "fowler6/operator.hpp"
#include "fowler6/profiles.hpp"

using namespace fowler6;

namespace {

// closed forms of the m = 3 coefficients
Rational K4_closed(std::int64_t n) { return Rational(3 * n * n - 12 * n + 44, 4); }
Rational K2_closed(std::int64_t n) { return Rational(3 * n * n * n * n - 24 * n * n * n + 72 * n * n - 96 * n + 304, 16); }
Rational K0_closed(std::int64_t n) {
  const std::int64_t q = (n - 6) * (n - 2) * (n + 2);
  return Rational(q * q, 64);
}

// (-Delta)^m r^q by repeating (-Delta) r^s = -s (s + n - 2) r^(s-2)
double one_step_rule(int n, int m, double q) {
  double C = 1, s = q;
  for (int k = 0; k < m; ++k) {
    C *= -s * (s + n - 2);
    s -= 2;
  }
  return C;
}

double bisect_root(const std::function<double(double)>& g, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((g(lo) < 0) == (g(mid) < 0)) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("n = 7 constants") {
  const Constants k = derive_constants(7, 3);
  CHECK(k.spec.mu(0) == 0.5);
  CHECK(k.spec.mu(1) == 2.5);
  CHECK(k.spec.mu(2) == 4.5);
  CHECK(k.spec.K_exact[0] == Rational(2025, 64));
  CHECK(k.spec.K_exact[1] == Rational(2131, 16));
  CHECK(k.spec.K_exact[2] == Rational(107, 4));
  CHECK(k.spec.K_exact[3] == Rational(1));
  CHECK(k.spec.K(2) == doctest::Approx(26.75).epsilon(1e-15));
  CHECK(k.spec.K(0) == doctest::Approx(31.640625).epsilon(1e-15));
  CHECK(k.params.p == Rational(13));
  CHECK(k.params.gamma == Rational(-1, 2));
  CHECK(k.params.ef_exponent() == 0.5);
}

TEST_CASE("lam = mu^2 and the symmetric-function identities") {
  for (int n = 7; n <= 30; ++n) {
    const OperatorSpec s = build_operator(n, 3);
    Rational sum(0), prod(1);
    for (int j = 0; j < 3; ++j) {
      CHECK(s.lam_exact[j] == s.mu_exact[j] * s.mu_exact[j]);
      sum += s.lam_exact[j];
      prod *= s.lam_exact[j];
    }
    CHECK(s.K_exact[2] == sum);
    CHECK(s.K_exact[0] == prod);
  }
}

TEST_CASE("m = 3 expansion matches the closed-form coefficients for n = 7..20") {
  for (int n = 7; n <= 20; ++n) {
    const OperatorSpec s = build_operator(n, 3);
    CHECK(s.K_exact[2] == K4_closed(n));
    CHECK(s.K_exact[1] == K2_closed(n));
    CHECK(s.K_exact[0] == K0_closed(n));
  }
}

TEST_CASE("lower orders") {
  const OperatorSpec s2 = build_operator(5, 2);
  CHECK(s2.K_exact[1] == Rational(13, 2));
  CHECK(s2.K_exact[0] == Rational(25, 16));
  for (int n = 5; n <= 12; ++n) {
    const OperatorSpec s = build_operator(n, 2);
    CHECK(s.K_exact[1] == Rational(n * (n - 4) + 8, 2));
    CHECK(s.K_exact[0] == Rational(n * n * (n - 4) * (n - 4), 16));
  }
  const OperatorSpec s1 = build_operator(3, 1);
  CHECK(s1.K_exact[0] == Rational(1, 4));
  for (int n = 3; n <= 12; ++n) CHECK(build_operator(n, 1).K_exact[0] == Rational((n - 2) * (n - 2), 4));
}

TEST_CASE("signed coefficients alternate") {
  const OperatorSpec s = build_operator(7, 3);
  const Eigen::VectorXd c = s.signed_coefficients();
  CHECK(c(0) == -31.640625);
  CHECK(c(1) == 133.1875);
  CHECK(c(2) == -26.75);
  CHECK(c(3) == 1.0);
}

TEST_CASE("n <= 2m is rejected") {
  CHECK_THROWS_WITH_AS(derive_constants(6, 3), "n must exceed 2m", std::invalid_argument);
  CHECK_THROWS_AS(derive_constants(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_operator(2, 1), std::invalid_argument);
}

TEST_CASE("indicial roots are +-mu with a positive discriminant") {
  for (int m = 1; m <= 3; ++m) {
    for (int n = 2 * m + 1; n <= 30; ++n) {
      const OperatorSpec s = build_operator(n, m);
      const IndicialPolynomial ip = indicial_polynomial(s);
      const Eigen::VectorXcd r = ip.poly.roots();
      REQUIRE(r.size() == 2 * m);
      std::vector<double> re;
      for (Eigen::Index i = 0; i < r.size(); ++i) {
        CHECK(std::abs(r(i).imag()) < 1e-12);
        re.push_back(r(i).real());
      }
      std::sort(re.begin(), re.end());
      for (int j = 0; j < m; ++j) {
        CHECK(re[m + j] == doctest::Approx(s.mu(j)).epsilon(1e-12));
        CHECK(re[m - 1 - j] == doctest::Approx(-s.mu(j)).epsilon(1e-12));
      }
      CHECK(ip.discriminant > 0);
    }
  }
}

TEST_CASE("indicial polynomial evaluates to zero at the rates") {
  const IndicialPolynomial ip = indicial_polynomial(build_operator(8, 3));
  for (double x : {1.0, 3.0, 5.0, -1.0, -3.0, -5.0}) CHECK(std::abs(ip.poly.evaluate(x)) < 1e-9);
}

TEST_CASE("power law coefficients") {
  CHECK(polyharmonic_power_law(7, 1, 2.0) == doctest::Approx(-14.0));
  CHECK(polyharmonic_power_law(7, 3, 0.0) == 0.0);
  const double q = 1.0;
  CHECK(polyharmonic_power_law(7, 3, q) ==
        doctest::Approx(-(q * (q - 2) * (q - 4)) * ((q + 5) * (q + 3) * (q + 1))));
}

TEST_CASE("power law agrees with the one-step rule and with nested radial differentiation") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> qd(-5.0, 5.0);
  for (auto [n, m] : {std::pair{7, 3}, std::pair{9, 3}, std::pair{5, 2}, std::pair{3, 1}}) {
    for (int i = 0; i < 20; ++i) {
      const double q = qd(rng);
      const double C = polyharmonic_power_law(n, m, q);
      CHECK(C == doctest::Approx(one_step_rule(n, m, q)).epsilon(1e-12));
      for (double r : {0.5, 1.0, 2.0}) {
        const double direct = radial_polylaplacian(n, m, power_profile(n, m, q), r);
        const double expected = C * std::pow(r, q - 2 * m);
        CHECK(std::abs(direct - expected) <= 1e-8 * std::max(std::abs(expected), std::pow(r, q - 2 * m)));
      }
    }
  }
}

TEST_CASE("coupling audit") {
  const CouplingAudit a = audit_coupling_constant(7, 3);
  REQUIRE(a.paper_c.has_value());
  CHECK(*a.paper_c == 10395.0 / 64.0);
  const double gamma_oracle = std::pow(2.0, 6) * std::pow(std::tgamma(13.0 / 4) / std::tgamma(1.0 / 4), 2);
  CHECK(a.gamma_c == doctest::Approx(gamma_oracle).epsilon(1e-14));
  CHECK(a.gamma_c == doctest::Approx(2025.0 / 64.0).epsilon(1e-14));
  CHECK(a.audited_c == doctest::Approx(162.421875).epsilon(1e-12));
  CHECK(a.consistent);
  CHECK(!a.discrepancies.empty());
  for (int n : {7, 10, 13}) {
    const CouplingAudit b = audit_coupling_constant(n, 3);
    CHECK(b.spread < 1e-8);
    CHECK(b.samples.size() == 3);
    // the introduction's constant is the bubble constant
    CHECK(*b.paper_c == doctest::Approx(b.audited_c).epsilon(1e-10));
  }
}

TEST_CASE("coupling modes") {
  CHECK(parse_coupling_mode("audited") == CouplingMode::audited);
  CHECK(parse_coupling_mode("paper-section1") == CouplingMode::paper_section1);
  CHECK(parse_coupling_mode("paper-gamma") == CouplingMode::paper_gamma);
  CHECK_THROWS_AS(parse_coupling_mode("other"), std::invalid_argument);
  const Constants g = derive_constants(7, 3, CouplingMode::paper_gamma);
  CHECK(g.params.c == doctest::Approx(31.640625).epsilon(1e-14));
  CHECK(g.params.c_mode == CouplingMode::paper_gamma);
}

TEST_CASE("equilibrium amplitude") {
  const Constants k = derive_constants(7, 3);
  const double a = equilibrium_amplitude(k.params, k.spec);
  const double p = k.params.p_real(), c = k.params.c, K0 = k.spec.K0();
  const double oracle = bisect_root([&](double x) { return c * std::pow(x, p) - K0 * x; }, 0.1, 2.0);
  CHECK(a == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(a == doctest::Approx(0.87256).epsilon(1e-5));
  CHECK(std::abs(equilibrium_defect(k.params, k.spec, a)) < 1e-14 * K0 * a);

  // c = K0 puts the equilibrium at 1
  ProblemParams q = k.params;
  q.c = K0;
  CHECK(equilibrium_amplitude(q, k.spec) == doctest::Approx(1.0).epsilon(1e-15));

  // the closed form without the division by c is a different number
  CHECK(std::abs(printed_equilibrium_amplitude(k.spec) - a) > 0.1);
}

TEST_CASE("energy potential coefficient ties F' to f") {
  const Constants k = derive_constants(7, 3);
  CHECK(k.params.c_hat() == doctest::Approx(k.params.c / 14.0));
  CHECK(k.params.energy_exponent() == 14.0);
}
