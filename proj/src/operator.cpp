#include "fowler6/operator.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fowler6/radial.hpp"

namespace fowler6 {

namespace {

double as_double(const Rational& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

void require_valid(int n, int m) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (n <= 2 * m) throw std::invalid_argument("n must exceed 2m");
}

}  // namespace

std::string to_string(CouplingMode mode) {
  switch (mode) {
    case CouplingMode::audited: return "audited";
    case CouplingMode::paper_section1: return "paper-section1";
    case CouplingMode::paper_gamma: return "paper-gamma";
  }
  return "audited";
}

CouplingMode parse_coupling_mode(const std::string& text) {
  if (text == "audited") return CouplingMode::audited;
  if (text == "paper-section1") return CouplingMode::paper_section1;
  if (text == "paper-gamma") return CouplingMode::paper_gamma;
  throw std::invalid_argument("unknown c-mode '" + text + "'");
}

double ProblemParams::p_real() const { return as_double(p); }
double ProblemParams::ef_exponent() const { return -as_double(gamma); }
double ProblemParams::c_hat() const { return c * (n - 2.0 * m) / (2.0 * n); }
double ProblemParams::energy_exponent() const { return 2.0 * n / (n - 2.0 * m); }

Eigen::VectorXd OperatorSpec::signed_coefficients() const {
  Eigen::VectorXd s(m + 1);
  for (int j = 0; j <= m; ++j) s(j) = ((m - j) % 2 == 0 ? 1.0 : -1.0) * K(j);
  return s;
}

// Coefficients (ascending in d^2) of prod_j (x - lam_j); leading entry 1.
std::vector<Rational> expand_factors(const std::vector<Rational>& lam) {
  std::vector<Rational> poly{Rational(1)};
  for (const Rational& l : lam) {
    std::vector<Rational> next(poly.size() + 1, Rational(0));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= l * poly[i];
    }
    poly = std::move(next);
  }
  return poly;
}

OperatorSpec build_operator(int n, int m) {
  require_valid(n, m);
  OperatorSpec s;
  s.n = n;
  s.m = m;
  for (int j = 1; j <= m; ++j) {
    const Rational mu(n - 2 * m + 4 * j - 4, 2);
    s.mu_exact.push_back(mu);
    s.lam_exact.push_back(mu * mu);
  }
  const std::vector<Rational> signed_poly = expand_factors(s.lam_exact);
  s.K_exact.resize(m + 1);
  for (int j = 0; j <= m; ++j) s.K_exact[j] = ((m - j) % 2 == 0) ? signed_poly[j] : -signed_poly[j];
  s.mu.resize(m);
  s.lam.resize(m);
  s.K.resize(m + 1);
  for (int j = 0; j < m; ++j) {
    s.mu(j) = as_double(s.mu_exact[j]);
    s.lam(j) = as_double(s.lam_exact[j]);
  }
  for (int j = 0; j <= m; ++j) s.K(j) = as_double(s.K_exact[j]);
  return s;
}

Constants derive_constants(int n, int m, CouplingMode mode) {
  require_valid(n, m);
  Constants out;
  out.spec = build_operator(n, m);
  ProblemParams& p = out.params;
  p.n = n;
  p.m = m;
  p.p = Rational(n + 2 * m, n - 2 * m);
  p.gamma = Rational(2 * m - n, 2);
  p.c_mode = mode;
  p.c = coupling_for_mode(n, m, mode);
  return out;
}

double Polynomial::evaluate(double x) const {
  double r = 0;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) r = r * x + coeffs(i);
  return r;
}

Eigen::VectorXcd Polynomial::roots() const {
  const int deg = static_cast<int>(coeffs.size()) - 1;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -coeffs(i) / coeffs(deg);
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  Eigen::VectorXcd r = es.eigenvalues();
  std::sort(r.data(), r.data() + r.size(),
            [](const std::complex<double>& a, const std::complex<double>& b) { return a.real() < b.real(); });
  // a few Newton polishing steps on the original polynomial
  for (int k = 0; k < r.size(); ++k) {
    std::complex<double> z = r(k);
    for (int it = 0; it < 3; ++it) {
      std::complex<double> f = 0, df = 0;
      for (int i = deg; i >= 0; --i) {
        df = df * z + f;
        f = f * z + coeffs(i);
      }
      if (std::abs(df) == 0.0) break;
      z -= f / df;
    }
    r(k) = z;
  }
  return r;
}

IndicialPolynomial indicial_polynomial(const OperatorSpec& spec) {
  IndicialPolynomial ip;
  const int m = spec.m;
  const std::vector<Rational> in_square = expand_factors(spec.lam_exact);
  ip.poly.exact.assign(2 * m + 1, Rational(0));
  for (int j = 0; j <= m; ++j) ip.poly.exact[2 * j] = in_square[j];
  ip.poly.coeffs.resize(2 * m + 1);
  for (int i = 0; i <= 2 * m; ++i) ip.poly.coeffs(i) = as_double(ip.poly.exact[i]);
  using boost::multiprecision::cpp_rational;
  std::vector<cpp_rational> r;
  for (const Rational& mu : spec.mu_exact) {
    const cpp_rational q(mu.numerator(), mu.denominator());
    r.push_back(q);
    r.push_back(-q);
  }
  cpp_rational disc(1);
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i + 1; j < r.size(); ++j) disc *= (r[i] - r[j]) * (r[i] - r[j]);
  ip.discriminant = disc;
  return ip;
}

double polyharmonic_power_law(int n, int m, double q) {
  double c = 1.0;
  double s = q;
  for (int k = 0; k < m; ++k) {
    c *= -s * (s + n - 2);
    s -= 2.0;
  }
  return c;
}

std::optional<double> paper_section1_constant(int n, int m) {
  if (m != 3) return std::nullopt;
  const double nn = n;
  return nn * (nn - 6) * (nn * nn * nn * nn - 20 * nn * nn + 64) / 64.0;
}

double paper_gamma_constant(int n, int m) {
  const double N = 2.0 * m;
  const double g1 = std::tgamma((n + N) / 4.0), g2 = std::tgamma((n - N) / 4.0);
  return std::pow(2.0, N) * g1 * g1 / (g2 * g2);
}

CouplingAudit audit_coupling_constant(int n, int m) {
  require_valid(n, m);
  CouplingAudit a;
  a.n = n;
  a.m = m;
  a.paper_c = paper_section1_constant(n, m);
  a.gamma_c = paper_gamma_constant(n, m);
  a.radii = {0.5, 1.0, 2.0};
  for (double r : a.radii) a.samples.push_back(bubble_ratio<double>(n, m, r));
  const auto [lo, hi] = std::minmax_element(a.samples.begin(), a.samples.end());
  double mean = 0;
  for (double v : a.samples) mean += v;
  mean /= static_cast<double>(a.samples.size());
  a.spread = (*hi - *lo) / std::abs(mean);
  a.consistent = a.spread < 1e-8 && mean > 0;
  a.audited_c = a.samples[1];

  auto rel = [](double x, double y) { return std::abs(x - y) / std::abs(y); };
  std::ostringstream os;
  os.precision(17);
  if (a.paper_c) {
    if (rel(*a.paper_c, a.audited_c) > 1e-10) {
      os << "introduction constant " << *a.paper_c << " differs from the bubble constant " << a.audited_c;
      a.discrepancies.push_back(os.str());
      os.str("");
    }
  } else {
    a.discrepancies.push_back("introduction closed form is stated for m = 3 only");
  }
  if (rel(a.gamma_c, a.audited_c) > 1e-10) {
    os << "Gamma-formula constant " << a.gamma_c << " differs from the bubble constant " << a.audited_c;
    const OperatorSpec spec = build_operator(n, m);
    if (rel(a.gamma_c, spec.K0()) < 1e-12) os << " (it equals K0 = " << spec.K0() << ")";
    a.discrepancies.push_back(os.str());
    os.str("");
  }
  if (!a.consistent) a.discrepancies.push_back("bubble ratio is not constant across sample radii");
  return a;
}

double coupling_for_mode(int n, int m, CouplingMode mode) {
  switch (mode) {
    case CouplingMode::audited: return audit_coupling_constant(n, m).audited_c;
    case CouplingMode::paper_section1: {
      const auto c = paper_section1_constant(n, m);
      if (!c) throw std::invalid_argument("paper-section1 constant is defined for m = 3 only");
      return *c;
    }
    case CouplingMode::paper_gamma: return paper_gamma_constant(n, m);
  }
  return 0;
}

double equilibrium_amplitude(const ProblemParams& params, const OperatorSpec& spec) {
  return std::pow(spec.K0() / params.c, 1.0 / params.pm1());
}

double equilibrium_defect(const ProblemParams& params, const OperatorSpec& spec, double a) {
  return params.c * std::pow(a, params.p_real()) - spec.K0() * a;
}

double printed_equilibrium_amplitude(const OperatorSpec& spec) {
  return std::pow(spec.K0(), (spec.n - 2.0 * spec.m) / (4.0 * spec.m));
}

}  // namespace fowler6
