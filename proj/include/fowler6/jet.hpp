#pragma once

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>

namespace fowler6 {

// Truncated Taylor series f(x0 + h) = sum_k c[k] h^k, k = 0..order.
template <typename Scalar>
struct Jet {
  using Coeffs = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  Coeffs c;

  Jet() = default;
  explicit Jet(Coeffs coeffs) : c(std::move(coeffs)) {}

  static Jet constant(const Scalar& a, int order) {
    Coeffs k = Coeffs::Zero(order + 1);
    k(0) = a;
    return Jet(k);
  }
  static Jet variable(const Scalar& x0, int order) {
    Coeffs k = Coeffs::Zero(order + 1);
    k(0) = x0;
    if (order >= 1) k(1) = Scalar(1);
    return Jet(k);
  }

  int order() const { return static_cast<int>(c.size()) - 1; }
  const Scalar& value() const { return c(0); }

  // k-th derivative at x0
  Scalar derivative(int k) const {
    Scalar f(1);
    for (int i = 2; i <= k; ++i) f *= Scalar(i);
    return c(k) * f;
  }

  Jet truncated(int order) const { return Jet(Coeffs(c.head(order + 1))); }
};

template <typename S>
inline int common_order(const Jet<S>& a, const Jet<S>& b) {
  return std::min(a.order(), b.order());
}

template <typename S>
Jet<S> operator+(const Jet<S>& a, const Jet<S>& b) {
  const int n = common_order(a, b);
  return Jet<S>(typename Jet<S>::Coeffs(a.c.head(n + 1) + b.c.head(n + 1)));
}
template <typename S>
Jet<S> operator-(const Jet<S>& a, const Jet<S>& b) {
  const int n = common_order(a, b);
  return Jet<S>(typename Jet<S>::Coeffs(a.c.head(n + 1) - b.c.head(n + 1)));
}
template <typename S>
Jet<S> operator-(const Jet<S>& a) {
  return Jet<S>(typename Jet<S>::Coeffs(-a.c));
}
template <typename S>
Jet<S> operator+(const Jet<S>& a, const S& s) {
  Jet<S> r = a;
  r.c(0) += s;
  return r;
}
template <typename S>
Jet<S> operator-(const Jet<S>& a, const S& s) {
  Jet<S> r = a;
  r.c(0) -= s;
  return r;
}
template <typename S>
Jet<S> operator*(const Jet<S>& a, const S& s) {
  return Jet<S>(typename Jet<S>::Coeffs(a.c * s));
}
template <typename S>
Jet<S> operator*(const S& s, const Jet<S>& a) {
  return a * s;
}

template <typename S>
Jet<S> operator*(const Jet<S>& a, const Jet<S>& b) {
  const int n = common_order(a, b);
  typename Jet<S>::Coeffs r = Jet<S>::Coeffs::Zero(n + 1);
  for (int k = 0; k <= n; ++k)
    for (int j = 0; j <= k; ++j) r(k) += a.c(j) * b.c(k - j);
  return Jet<S>(r);
}

template <typename S>
Jet<S> operator/(const Jet<S>& a, const Jet<S>& b) {
  const int n = common_order(a, b);
  if (b.c(0) == S(0)) throw std::domain_error("jet division by zero");
  typename Jet<S>::Coeffs q = Jet<S>::Coeffs::Zero(n + 1);
  for (int k = 0; k <= n; ++k) {
    S s = a.c(k);
    for (int j = 1; j <= k; ++j) s -= b.c(j) * q(k - j);
    q(k) = s / b.c(0);
  }
  return Jet<S>(q);
}

template <typename S>
Jet<S> exp(const Jet<S>& a) {
  using std::exp;
  const int n = a.order();
  typename Jet<S>::Coeffs e = Jet<S>::Coeffs::Zero(n + 1);
  e(0) = exp(a.c(0));
  for (int k = 1; k <= n; ++k) {
    S s(0);
    for (int j = 1; j <= k; ++j) s += S(j) * a.c(j) * e(k - j);
    e(k) = s / S(k);
  }
  return Jet<S>(e);
}

template <typename S>
Jet<S> log(const Jet<S>& a) {
  using std::log;
  const int n = a.order();
  if (!(a.c(0) > S(0))) throw std::domain_error("jet log of non-positive value");
  typename Jet<S>::Coeffs l = Jet<S>::Coeffs::Zero(n + 1);
  l(0) = log(a.c(0));
  for (int k = 1; k <= n; ++k) {
    S s(0);
    for (int j = 1; j < k; ++j) s += S(j) * l(j) * a.c(k - j);
    l(k) = (a.c(k) - s / S(k)) / a.c(0);
  }
  return Jet<S>(l);
}

// a^alpha for a(x0) > 0
template <typename S>
Jet<S> pow(const Jet<S>& a, const S& alpha) {
  using std::pow;
  const int n = a.order();
  if (!(a.c(0) > S(0))) throw std::domain_error("jet pow of non-positive value");
  typename Jet<S>::Coeffs p = Jet<S>::Coeffs::Zero(n + 1);
  p(0) = pow(a.c(0), alpha);
  for (int k = 1; k <= n; ++k) {
    S s(0);
    for (int j = 1; j <= k; ++j) s += ((alpha + S(1)) * S(j) - S(k)) * a.c(j) * p(k - j);
    p(k) = s / (S(k) * a.c(0));
  }
  return Jet<S>(p);
}

template <typename S>
Jet<S> cosh(const Jet<S>& a) {
  return (exp(a) + exp(-a)) * S(0.5);
}

// d/dx, order drops by one
template <typename S>
Jet<S> differentiate(const Jet<S>& a) {
  const int n = a.order();
  if (n < 1) throw std::domain_error("cannot differentiate an order-0 jet");
  typename Jet<S>::Coeffs d(n);
  for (int k = 0; k < n; ++k) d(k) = S(k + 1) * a.c(k + 1);
  return Jet<S>(d);
}

// outer given by Taylor coefficients at inner(x0); result is outer(inner(x0 + h))
template <typename S>
Jet<S> compose(const typename Jet<S>::Coeffs& outer, const Jet<S>& inner) {
  const int n = std::min<int>(inner.order(), static_cast<int>(outer.size()) - 1);
  Jet<S> d = inner.truncated(n);
  d.c(0) = S(0);
  Jet<S> r = Jet<S>::constant(outer(n), n);
  for (int k = n - 1; k >= 0; --k) r = r * d + outer(k);
  return r;
}

}  // namespace fowler6
