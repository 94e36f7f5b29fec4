#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>

#include "fowler6/dop853_tableau.hpp"

namespace fowler6 {

// 7th-order continuous extension over one accepted step [t0, t0 + h].
template <typename S>
struct DenseSegment {
  using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
  S t0{0}, h{0};
  Eigen::Matrix<S, Eigen::Dynamic, 8> rc;

  S t1() const { return t0 + h; }

  Vec at(const S& t) const {
    const S s = (t - t0) / h, s1 = S(1) - s;
    return rc.col(0) +
           s * (rc.col(1) +
                s1 * (rc.col(2) +
                      s * (rc.col(3) +
                           s1 * (rc.col(4) + s * (rc.col(5) + s1 * (rc.col(6) + s * rc.col(7)))))));
  }
};

// Explicit Dormand-Prince 8(5,3) stepper for an autonomous field F with
// void F::operator()(const Vec& y, Vec& dy) const.
template <typename S, typename F>
class Dop853 {
 public:
  using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

  Dop853(const F& field, int dim, S rtol, S atol)
      : f_(field), n_(dim), rtol_(rtol), atol_(atol), T_(Dop853Tableau<S>::get()) {
    for (Vec* v : {&y, &ynew_, &w_, &k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &k8_, &k9_, &k10_})
      v->setZero(n_);
  }

  S t{0};
  Vec y;
  long evaluations = 0;

  void start(const S& t0, const Vec& y0) {
    t = t0;
    y = y0;
    eval(y, k1_);
  }

  // derivative at the current point
  const Vec& slope() const { return k1_; }

  S initial_step(const S& hmax) {
    using std::sqrt;
    using std::pow;
    using std::abs;
    S dnf(0), dny(0), der2(0);
    for (int i = 0; i < n_; ++i) {
      const S sk = atol_ + rtol_ * abs(y(i));
      dnf += (k1_(i) / sk) * (k1_(i) / sk);
      dny += (y(i) / sk) * (y(i) / sk);
    }
    S h = (dnf <= S(1e-10) || dny <= S(1e-10)) ? S(1e-6) : sqrt(dny / dnf) * S(0.01);
    h = std::min(h, hmax);
    w_ = y + h * k1_;
    eval(w_, k2_);
    for (int i = 0; i < n_; ++i) {
      const S sq = (k2_(i) - k1_(i)) / (atol_ + rtol_ * abs(y(i)));
      der2 += sq * sq;
    }
    der2 = sqrt(der2) / h;
    const S der12 = std::max(abs(der2), sqrt(dnf));
    const S h1 = der12 <= S(1e-15) ? std::max(S(1e-6), abs(h) * S(1e-3)) : S(pow(S(0.01) / der12, S(0.125)));
    return std::min(S(100) * abs(h), std::min(h1, hmax));
  }

  // Computes a trial step of size h; returns the scaled error norm (<= 1 accepts).
  S attempt(const S& h) {
    using std::abs;
    using std::sqrt;
    const auto& T = T_;
    h_ = h;
    w_ = y + h * T.a21 * k1_;
    eval(w_, k2_);
    w_ = y + h * (T.a31 * k1_ + T.a32 * k2_);
    eval(w_, k3_);
    w_ = y + h * (T.a41 * k1_ + T.a43 * k3_);
    eval(w_, k4_);
    w_ = y + h * (T.a51 * k1_ + T.a53 * k3_ + T.a54 * k4_);
    eval(w_, k5_);
    w_ = y + h * (T.a61 * k1_ + T.a64 * k4_ + T.a65 * k5_);
    eval(w_, k6_);
    w_ = y + h * (T.a71 * k1_ + T.a74 * k4_ + T.a75 * k5_ + T.a76 * k6_);
    eval(w_, k7_);
    w_ = y + h * (T.a81 * k1_ + T.a84 * k4_ + T.a85 * k5_ + T.a86 * k6_ + T.a87 * k7_);
    eval(w_, k8_);
    w_ = y + h * (T.a91 * k1_ + T.a94 * k4_ + T.a95 * k5_ + T.a96 * k6_ + T.a97 * k7_ + T.a98 * k8_);
    eval(w_, k9_);
    w_ = y + h * (T.a101 * k1_ + T.a104 * k4_ + T.a105 * k5_ + T.a106 * k6_ + T.a107 * k7_ +
                  T.a108 * k8_ + T.a109 * k9_);
    eval(w_, k10_);
    w_ = y + h * (T.a111 * k1_ + T.a114 * k4_ + T.a115 * k5_ + T.a116 * k6_ + T.a117 * k7_ +
                  T.a118 * k8_ + T.a119 * k9_ + T.a1110 * k10_);
    eval(w_, k2_);
    w_ = y + h * (T.a121 * k1_ + T.a124 * k4_ + T.a125 * k5_ + T.a126 * k6_ + T.a127 * k7_ +
                  T.a128 * k8_ + T.a129 * k9_ + T.a1210 * k10_ + T.a1211 * k2_);
    eval(w_, k3_);
    k4_ = T.b1 * k1_ + T.b6 * k6_ + T.b7 * k7_ + T.b8 * k8_ + T.b9 * k9_ + T.b10 * k10_ + T.b11 * k2_ +
          T.b12 * k3_;
    ynew_ = y + h * k4_;

    S err(0), err2(0);
    for (int i = 0; i < n_; ++i) {
      const S sk = S(1) / (atol_ + rtol_ * std::max(abs(y(i)), abs(ynew_(i))));
      S sq = (k4_(i) - T.bhh1 * k1_(i) - T.bhh2 * k9_(i) - T.bhh3 * k3_(i)) * sk;
      err2 += sq * sq;
      sq = (T.er1 * k1_(i) + T.er6 * k6_(i) + T.er7 * k7_(i) + T.er8 * k8_(i) + T.er9 * k9_(i) +
            T.er10 * k10_(i) + T.er11 * k2_(i) + T.er12 * k3_(i)) *
           sk;
      err += sq * sq;
    }
    S deno = err + S(0.01) * err2;
    if (deno <= S(0)) deno = S(1);
    return abs(h) * err * sqrt(S(1) / (deno * S(n_)));
  }

  const Vec& trial_state() const { return ynew_; }

  // Accepts the trial step. When dense is non-null the continuous extension
  // over the step is written to it.
  void accept(DenseSegment<S>* dense) {
    eval(ynew_, k4_);
    if (dense) build_dense(*dense);
    k1_ = k4_;
    y = ynew_;
    t += h_;
  }

 private:
  void eval(const Vec& x, Vec& dx) {
    f_(x, dx);
    ++evaluations;
  }

  // Follows the reference dense-output construction; k4 holds f(ynew) here.
  void build_dense(DenseSegment<S>& d) {
    const auto& T = T_;
    const S h = h_;
    d.t0 = t;
    d.h = h;
    d.rc.resize(n_, 8);
    d.rc.col(0) = y;
    const Vec ydiff = ynew_ - y;
    d.rc.col(1) = ydiff;
    const Vec bspl = h * k1_ - ydiff;
    d.rc.col(2) = bspl;
    d.rc.col(3) = ydiff - h * k4_ - bspl;
    d.rc.col(4) = T.d41 * k1_ + T.d46 * k6_ + T.d47 * k7_ + T.d48 * k8_ + T.d49 * k9_ + T.d410 * k10_ +
                  T.d411 * k2_ + T.d412 * k3_;
    d.rc.col(5) = T.d51 * k1_ + T.d56 * k6_ + T.d57 * k7_ + T.d58 * k8_ + T.d59 * k9_ + T.d510 * k10_ +
                  T.d511 * k2_ + T.d512 * k3_;
    d.rc.col(6) = T.d61 * k1_ + T.d66 * k6_ + T.d67 * k7_ + T.d68 * k8_ + T.d69 * k9_ + T.d610 * k10_ +
                  T.d611 * k2_ + T.d612 * k3_;
    d.rc.col(7) = T.d71 * k1_ + T.d76 * k6_ + T.d77 * k7_ + T.d78 * k8_ + T.d79 * k9_ + T.d710 * k10_ +
                  T.d711 * k2_ + T.d712 * k3_;

    Vec k14(n_), k15(n_), k16(n_);
    w_ = y + h * (T.a141 * k1_ + T.a147 * k7_ + T.a148 * k8_ + T.a149 * k9_ + T.a1410 * k10_ +
                  T.a1411 * k2_ + T.a1412 * k3_ + T.a1413 * k4_);
    eval(w_, k14);
    w_ = y + h * (T.a151 * k1_ + T.a156 * k6_ + T.a157 * k7_ + T.a158 * k8_ + T.a1511 * k2_ +
                  T.a1512 * k3_ + T.a1513 * k4_ + T.a1514 * k14);
    eval(w_, k15);
    w_ = y + h * (T.a161 * k1_ + T.a166 * k6_ + T.a167 * k7_ + T.a168 * k8_ + T.a169 * k9_ +
                  T.a1613 * k4_ + T.a1614 * k14 + T.a1615 * k15);
    eval(w_, k16);

    d.rc.col(4) = h * (d.rc.col(4) + T.d413 * k4_ + T.d414 * k14 + T.d415 * k15 + T.d416 * k16);
    d.rc.col(5) = h * (d.rc.col(5) + T.d513 * k4_ + T.d514 * k14 + T.d515 * k15 + T.d516 * k16);
    d.rc.col(6) = h * (d.rc.col(6) + T.d613 * k4_ + T.d614 * k14 + T.d615 * k15 + T.d616 * k16);
    d.rc.col(7) = h * (d.rc.col(7) + T.d713 * k4_ + T.d714 * k14 + T.d715 * k15 + T.d716 * k16);
  }

  const F& f_;
  int n_;
  S rtol_, atol_;
  const Dop853Tableau<S>& T_;
  S h_{0};
  Vec ynew_, w_, k1_, k2_, k3_, k4_, k5_, k6_, k7_, k8_, k9_, k10_;
};

}  // namespace fowler6
