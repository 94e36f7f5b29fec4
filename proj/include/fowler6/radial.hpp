#pragma once

#include <boost/rational.hpp>
#include <cstdint>

#include "fowler6/jet.hpp"

namespace fowler6 {

template <typename S>
S to_scalar(const boost::rational<std::int64_t>& q) {
  return S(static_cast<double>(q.numerator())) / S(static_cast<double>(q.denominator()));
}

// Radial Laplacian f'' + (n-1)/r f' applied to a Taylor jet about r0.
// The result has order two less than the input.
template <typename S>
Jet<S> radial_laplacian(const Jet<S>& f, int n, const S& r0) {
  const Jet<S> d1 = differentiate(f);
  const Jet<S> d2 = differentiate(d1);
  const Jet<S> r = Jet<S>::variable(r0, d1.order());
  return d2 + (d1 / r) * S(n - 1);
}

// (-Delta)^m on a radial jet
template <typename S>
Jet<S> neg_polylaplacian(Jet<S> f, int n, int m, const S& r0) {
  for (int k = 0; k < m; ++k) f = -radial_laplacian(f, n, r0);
  return f;
}

// U(r) = (2 mu / (mu^2 + r^2))^((n - 2m)/2) as a jet about r0
template <typename S>
Jet<S> spherical_jet(int n, int m, const S& mu, const S& r0, int order) {
  const Jet<S> r = Jet<S>::variable(r0, order);
  const Jet<S> base = Jet<S>::constant(S(2) * mu, order) / (r * r + mu * mu);
  return pow(base, S(n - 2 * m) / S(2));
}

// r^q as a jet about r0
template <typename S>
Jet<S> power_jet(const S& q, const S& r0, int order) {
  return pow(Jet<S>::variable(r0, order), q);
}

// (-Delta)^m U / U^p for the standard bubble (mu = 1) at radius r0
template <typename S>
S bubble_ratio(int n, int m, const S& r0) {
  using std::pow;
  const Jet<S> u = spherical_jet<S>(n, m, S(1), r0, 2 * m);
  const Jet<S> lhs = neg_polylaplacian(u, n, m, r0);
  const S p = S(n + 2 * m) / S(n - 2 * m);
  return lhs.value() / pow(u.value(), p);
}

}  // namespace fowler6
