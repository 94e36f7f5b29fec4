#include "fowler6/profiles.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "fowler6/radial.hpp"

namespace fowler6 {

std::string to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::spherical: return "spherical";
    case ProfileKind::homoclinic_ef: return "homoclinic-EF";
    case ProfileKind::constant: return "constant";
    case ProfileKind::reconstructed: return "reconstructed";
    case ProfileKind::tabulated: return "tabulated";
    case ProfileKind::power: return "power";
    case ProfileKind::ef_image: return "ef-image";
    case ProfileKind::kelvin: return "kelvin";
  }
  return "spherical";
}

namespace {

using J = Jet<double>;

double ef_exp(int n, int m) { return (n - 2.0 * m) / 2.0; }

void require_radius(double r) {
  if (!(r > 0)) throw std::domain_error("radial profiles are evaluated at r > 0 only");
}

}  // namespace

Eigen::VectorXd EfProfile::state(double t, int dim) const {
  const J j = jet(t, dim - 1);
  Eigen::VectorXd s(dim);
  for (int k = 0; k < dim; ++k) s(k) = j.derivative(k);
  return s;
}

RadialProfile spherical(int n, int m, double mu) {
  RadialProfile p;
  p.kind = ProfileKind::spherical;
  p.n = n;
  p.m = m;
  p.mu = mu;
  p.jet = [n, m, mu](double r0, int order) {
    require_radius(r0);
    return spherical_jet<double>(n, m, mu, r0, order);
  };
  return p;
}

RadialProfile homoclinic_profile(int n, int m, double T) {
  RadialProfile p;
  p.kind = ProfileKind::homoclinic_ef;
  p.n = n;
  p.m = m;
  p.T = T;
  const double a = ef_exp(n, m);
  p.a = a;
  p.jet = [a, T](double r0, int order) {
    require_radius(r0);
    const J r = J::variable(r0, order);
    const J t = log(r) - T;
    return pow(r, -a) * pow(cosh(t), -a);
  };
  return p;
}

RadialProfile constant_profile(int n, int m, double a) {
  RadialProfile p;
  p.kind = ProfileKind::constant;
  p.n = n;
  p.m = m;
  p.a = a;
  const double e = ef_exp(n, m);
  p.jet = [a, e](double r0, int order) {
    require_radius(r0);
    return pow(J::variable(r0, order), -e) * a;
  };
  return p;
}

RadialProfile power_profile(int n, int m, double q) {
  RadialProfile p;
  p.kind = ProfileKind::power;
  p.n = n;
  p.m = m;
  p.q = q;
  p.jet = [q](double r0, int order) {
    require_radius(r0);
    return power_jet<double>(q, r0, order);
  };
  return p;
}

RadialProfile tabulated(int n, int m, const std::vector<double>& r, const std::vector<double>& u, int half_width) {
  if (r.size() != u.size() || r.size() < 4) throw std::invalid_argument("tabulated profile needs matching samples");
  if (!std::is_sorted(r.begin(), r.end())) throw std::invalid_argument("tabulated radii must be ascending");
  RadialProfile p;
  p.kind = ProfileKind::tabulated;
  p.n = n;
  p.m = m;
  p.r_min = r.front();
  p.r_max = r.back();
  auto rs = std::make_shared<const std::vector<double>>(r);
  auto us = std::make_shared<const std::vector<double>>(u);
  auto fit = [rs, us](double r0, int order, int w) {
    const std::vector<double>& R = *rs;
    const int N = static_cast<int>(R.size());
    const int width = std::min(2 * w, N);
    const int near = static_cast<int>(std::lower_bound(R.begin(), R.end(), r0) - R.begin());
    int lo = std::clamp(near - width / 2, 0, N - width);
    const double scale = R[lo + width - 1] - R[lo];
    Eigen::MatrixXd V(width, width);
    Eigen::VectorXd b(width);
    for (int i = 0; i < width; ++i) {
      const double x = (R[lo + i] - r0) / scale;
      double pw = 1;
      for (int k = 0; k < width; ++k) {
        V(i, k) = pw;
        pw *= x;
      }
      b(i) = (*us)[lo + i];
    }
    const Eigen::VectorXd c = V.colPivHouseholderQr().solve(b);
    J::Coeffs out = J::Coeffs::Zero(order + 1);
    double s = 1;
    for (int k = 0; k <= order && k < width; ++k) {
      out(k) = c(k) / s;
      s *= scale;
    }
    return J(out);
  };
  p.jet = [fit, half_width, lo = r.front(), hi = r.back()](double r0, int order) {
    if (r0 < lo || r0 > hi) throw std::domain_error("radius outside the tabulated range");
    return fit(r0, order, half_width);
  };
  p.error_estimate = [fit, half_width](double r0) {
    return std::abs(fit(r0, 0, half_width).value() - fit(r0, 0, half_width - 1).value());
  };
  return p;
}

EfProfile ef_transform(const RadialProfile& u) {
  EfProfile v;
  v.n = u.n;
  v.m = u.m;
  v.t_min = u.r_min > 0 ? std::log(u.r_min) : -std::numeric_limits<double>::infinity();
  v.t_max = std::log(u.r_max);
  const double a = ef_exp(u.n, u.m);
  const JetEvaluator uj = u.jet;
  v.jet = [uj, a](double t0, int order) {
    const J t = J::variable(t0, order);
    const J r = exp(t);
    const J outer = uj(r.value(), order);
    return exp(t * a) * compose(outer.c, r);
  };
  return v;
}

RadialProfile ef_inverse(const EfProfile& v) {
  RadialProfile u;
  u.kind = ProfileKind::ef_image;
  u.n = v.n;
  u.m = v.m;
  u.r_min = std::exp(v.t_min);
  u.r_max = std::exp(v.t_max);
  const double a = ef_exp(v.n, v.m);
  const JetEvaluator vj = v.jet;
  u.jet = [vj, a](double r0, int order) {
    require_radius(r0);
    const J r = J::variable(r0, order);
    const J s = log(r);
    return pow(r, -a) * compose(vj(s.value(), order).c, s);
  };
  return u;
}

EfProfile homoclinic_ef(int n, int m, double T) {
  EfProfile v;
  v.n = n;
  v.m = m;
  const double a = ef_exp(n, m);
  v.jet = [a, T](double t0, int order) {
    // exact derivatives from the sech/tanh recurrence, as Taylor coefficients
    const Eigen::VectorXd d = homoclinic_derivatives<double>(a, t0 - T, order + 1);
    J::Coeffs c(order + 1);
    double f = 1;
    for (int k = 0; k <= order; ++k) {
      if (k > 0) f *= k;
      c(k) = d(k) / f;
    }
    return J(c);
  };
  return v;
}

Eigen::VectorXd homoclinic_jet(const ProblemParams& params, double t) {
  if (params.m != 3) throw std::invalid_argument("the homoclinic jet is defined for m = 3");
  return homoclinic_derivatives<double>(params.ef_exponent(), t, 6);
}

double radial_polylaplacian(int n, int m, const RadialProfile& u, double r) {
  require_radius(r);
  return neg_polylaplacian(u.jet(r, 2 * m), n, m, r).value();
}

RadialProfile reconstruct(const ProblemParams& params, const PeriodicSolution& sol, double T,
                          std::shared_ptr<const PeriodicInterpolant> interp) {
  RadialProfile p;
  p.kind = ProfileKind::reconstructed;
  p.n = params.n;
  p.m = params.m;
  p.T = T;
  p.a = sol.a0;
  const double a = params.ef_exponent();
  if (sol.equilibrium) {
    const double v = sol.a0;
    p.jet = [a, v](double r0, int order) {
      require_radius(r0);
      return pow(J::variable(r0, order), -a) * v;
    };
    return p;
  }
  if (!interp) interp = interpolate(sol);
  p.jet = [interp, a, T](double r0, int order) {
    require_radius(r0);
    const J r = J::variable(r0, order);
    const J s = J::constant(T, order) - log(r);
    return pow(r, -a) * compose(J::Coeffs(interp->taylor(s.value(), order).array()), s);
  };
  return p;
}

std::vector<ProfileRow> profile_table(const ProblemParams& params, const RadialProfile& u,
                                      const std::vector<double>& radii) {
  std::vector<ProfileRow> rows;
  const int m = params.m, n = params.n;
  const double p = params.p_real();
  for (double r : radii) {
    require_radius(r);
    ProfileRow row;
    row.r = r;
    J f = u.jet(r, 2 * m);
    row.u = f.value();
    row.du = f.c(1);
    for (int k = 1; k <= m; ++k) {
      f = -radial_laplacian(f, n, r);
      if (k == 1) row.neg_lap = f.value();
      if (k == 2) row.bilap = f.value();
    }
    row.polylap = f.value();
    const double rhs = params.c * std::pow(std::abs(row.u), p - 1.0) * row.u;
    row.residual = std::abs(row.polylap - rhs) / std::abs(rhs);
    rows.push_back(row);
  }
  return rows;
}

RadialProfile kelvin_transform(int n, const RadialProfile& u, double mu) {
  if (!(mu > 0)) throw std::invalid_argument("Kelvin radius must be positive");
  RadialProfile p;
  p.kind = ProfileKind::kelvin;
  p.n = n;
  p.m = u.m;
  p.mu = mu;
  p.r_min = std::isfinite(u.r_max) ? mu * mu / u.r_max : 0.0;
  p.r_max = u.r_min > 0 ? mu * mu / u.r_min : std::numeric_limits<double>::infinity();
  const JetEvaluator uj = u.jet;
  const double e = n - 2.0 * u.m;
  p.jet = [uj, mu, e](double r0, int order) {
    require_radius(r0);
    const J r = J::variable(r0, order);
    const J inner = J::constant(mu * mu, order) / r;
    const J outer = uj(inner.value(), order);
    return pow(J::constant(mu, order) / r, e) * compose(outer.c, inner);
  };
  return p;
}

double kernel_E(int n, int m, const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& z,
                double mu) {
  if (!(mu > 0)) throw std::invalid_argument("mu must be positive");
  const double dz = (z - x).norm();
  if (dz < mu * (1.0 - 1e-15)) throw std::invalid_argument("kernel requires |z - x| >= mu");
  if ((y - z).norm() == 0.0) throw std::invalid_argument("kernel requires y != z");
  const double e = 2.0 * m - n;
  const Eigen::VectorXd Iz = x + (mu * mu / (dz * dz)) * (z - x);
  return std::pow((z - y).norm(), e) - std::pow(dz / mu, e) * std::pow((Iz - y).norm(), e);
}

KernelReport kernel_positivity_sample(int n, int m, std::size_t draws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto direction = [&]() {
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) d(i) = gauss(rng);
    return Eigen::VectorXd(d / d.norm());
  };
  auto point = [&]() {
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) p(i) = 2.0 * unit(rng) - 1.0;
    return p;
  };
  KernelReport rep;
  rep.min_E = std::numeric_limits<double>::infinity();
  rep.min_interior_E = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < draws; ++k) {
    const Eigen::VectorXd x = point();
    const double mu = 0.5 + 1.5 * unit(rng);
    const Eigen::VectorXd z = x + mu * (1.0 + 3.0 * (1.0 - unit(rng))) * direction();
    Eigen::VectorXd y = x + mu * (1.0 + 3.0 * (1.0 - unit(rng))) * direction();
    if ((y - z).norm() < 1e-6 * mu) y = x + 2.0 * (y - x);
    const double E = kernel_E(n, m, x, y, z, mu);
    ++rep.draws;
    if (E > 0) ++rep.positive;
    rep.min_E = std::min(rep.min_E, E);

    const Eigen::VectorXd zb = x + mu * direction();
    Eigen::VectorXd yb = x + mu * (1.0 + 3.0 * unit(rng)) * direction();
    if ((yb - zb).norm() < 1e-3 * mu) yb = x + 3.0 * mu * direction();
    rep.max_boundary_abs = std::max(rep.max_boundary_abs, std::abs(kernel_E(n, m, x, yb, zb, mu)));

    const Eigen::VectorXd ys = x + mu * direction();
    if ((ys - z).norm() > 1e-3 * mu)
      rep.max_y_sphere_abs = std::max(rep.max_y_sphere_abs, std::abs(kernel_E(n, m, x, ys, z, mu)));

    const Eigen::VectorXd yi = x + mu * (0.1 + 0.8 * unit(rng)) * direction();
    rep.min_interior_E = std::min(rep.min_interior_E, -kernel_E(n, m, x, yi, z, mu));
  }
  rep.min_interior_E = -rep.min_interior_E;  // largest E over interior draws
  return rep;
}

SuperharmonicityReport superharmonicity_check(const ProblemParams& params, const std::vector<State>& samples) {
  SuperharmonicityReport r;
  const double n = params.n, a = params.ef_exponent();
  const double B1 = n - 2.0 - 2.0 * a, alpha = a * (n - 2.0 - a);
  const double B2 = n - 6.0 - 2.0 * a, beta = (a + 2.0) * (n - 4.0 - a);
  const double D = 2 * n * n * n * n - 24 * n * n * n + 88 * n * n - 96 * n + 16;
  r.nu_plus_sq = 5.0 + std::sqrt(D);
  r.nu_minus_sq = 5.0 - std::sqrt(D);
  r.nu_minus_real = r.nu_minus_sq >= 0;
  const double nu_sum = r.nu_minus_real ? std::sqrt(r.nu_plus_sq) + std::sqrt(r.nu_minus_sq)
                                        : std::numeric_limits<double>::quiet_NaN();
  const double nu_prod = r.nu_minus_real ? std::sqrt(r.nu_plus_sq * r.nu_minus_sq)
                                         : std::numeric_limits<double>::quiet_NaN();
  r.max_first = -std::numeric_limits<double>::infinity();
  r.min_second = std::numeric_limits<double>::infinity();
  r.printed_first_max = -std::numeric_limits<double>::infinity();
  r.printed_second_min = std::numeric_limits<double>::infinity();
  r.printed_factored_min = std::numeric_limits<double>::infinity();
  for (const State& s : samples) {
    if (s.y.size() < 5) throw std::invalid_argument("superharmonicity check needs derivatives to order 4");
    const double v = s.y(0), v1 = s.y(1), v2 = s.y(2), v3 = s.y(3), v4 = s.y(4);
    const double w = v2 + B1 * v1 - alpha * v;
    const double w1 = v3 + B1 * v2 - alpha * v1;
    const double w2 = v4 + B1 * v3 - alpha * v2;
    const double second = w2 + B2 * w1 - beta * w;
    r.max_first = std::max(r.max_first, w);
    r.min_second = std::min(r.min_second, second);
    r.printed_first_max = std::max(r.printed_first_max, v2 + (n - 5) * v1 + (n - 6) * (n - 4) / 4 * v);
    r.printed_second_min =
        std::min(r.printed_second_min, v4 + 2 * (n - 3) * v3 - (3 * n * n - 18 * n + 22) * v2 +
                                           (n * n * n - 9 * n * n + 22 * n - 12) * v1 +
                                           (n - 6) * (n - 4) * (n - 2) / 16 * v);
    r.printed_factored_min = std::min(r.printed_factored_min, v4 - nu_sum * v2 + nu_prod * v);
    ++r.samples;
  }
  r.first_ok = r.samples > 0 && r.max_first < 0;
  r.second_ok = r.samples > 0 && r.min_second > 0;
  return r;
}

}  // namespace fowler6
