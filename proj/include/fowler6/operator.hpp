#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fowler6 {

using Rational = boost::rational<std::int64_t>;

enum class CouplingMode { audited, paper_section1, paper_gamma };

std::string to_string(CouplingMode mode);
CouplingMode parse_coupling_mode(const std::string& text);

struct ProblemParams {
  int n = 7;
  int m = 3;
  Rational p;      // (n + 2m) / (n - 2m)
  Rational gamma;  // (2m - n) / 2
  double c = 0;
  CouplingMode c_mode = CouplingMode::audited;

  double p_real() const;
  double pm1() const { return p_real() - 1.0; }
  // EF exponent (n - 2m)/2 = -gamma
  double ef_exponent() const;
  // potential coefficient with F'(v) = c |v|^(p-1) v
  double c_hat() const;
  // exponent of F, 2n/(n - 2m)
  double energy_exponent() const;
};

// Cylindrical operator P = prod_j (d^2 - lam_j) = d^(2m) + sum_{j<m} (-1)^(m-j) K_(2j) d^(2j).
// K(j) stores the magnitude K_(2j); K(m) = 1.
struct OperatorSpec {
  int n = 7;
  int m = 3;
  std::vector<Rational> mu_exact, lam_exact, K_exact;
  Eigen::VectorXd mu, lam, K;

  // signed coefficients of d^(2j), j = 0..m (last entry 1)
  Eigen::VectorXd signed_coefficients() const;
  double K0() const { return K(0); }
};

struct Constants {
  ProblemParams params;
  OperatorSpec spec;
};

struct CouplingAudit {
  int n = 0, m = 0;
  std::optional<double> paper_c;  // closed form of the introduction, m = 3 only
  double gamma_c = 0;             // 2^(2m) Gamma((n+2m)/4)^2 / Gamma((n-2m)/4)^2
  double audited_c = 0;           // bubble residual constant
  std::vector<double> radii;
  std::vector<double> samples;  // ratio at each radius
  double spread = 0;            // relative spread of samples
  bool consistent = false;      // spread < 1e-8
  std::vector<std::string> discrepancies;
};

// Polynomial in x with ascending coefficients.
struct Polynomial {
  std::vector<Rational> exact;
  Eigen::VectorXd coeffs;
  Eigen::VectorXcd roots() const;
  double evaluate(double x) const;
};

struct IndicialPolynomial {
  Polynomial poly;  // in lambda, degree 2m
  boost::multiprecision::cpp_rational discriminant;
};

// throws std::invalid_argument when n <= 2m or m < 1
Constants derive_constants(int n, int m = 3, CouplingMode mode = CouplingMode::audited);
OperatorSpec build_operator(int n, int m);
std::vector<Rational> expand_factors(const std::vector<Rational>& lam);

IndicialPolynomial indicial_polynomial(const OperatorSpec& spec);

// C(q) with (-Delta)^m |x|^q = C(q) |x|^(q - 2m)
double polyharmonic_power_law(int n, int m, double q);

CouplingAudit audit_coupling_constant(int n, int m);
std::optional<double> paper_section1_constant(int n, int m);
double paper_gamma_constant(int n, int m);
double coupling_for_mode(int n, int m, CouplingMode mode);

double equilibrium_amplitude(const ProblemParams& params, const OperatorSpec& spec);
// g(a) = c a^p - K0 a
double equilibrium_defect(const ProblemParams& params, const OperatorSpec& spec, double a);
// the closed form a* = K0^((n-6)/12) as printed, for the report
double printed_equilibrium_amplitude(const OperatorSpec& spec);

}  // namespace fowler6
