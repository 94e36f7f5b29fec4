#pragma once

namespace fowler6 {

// Integrates the t = 0 jet of v0 = cosh(t)^(-(n-6)/2) to t_end in quad
// precision (m = 3) and compares with the closed form.
struct HomoclinicPropagation {
  int n = 7;
  double t_end = 10;
  double v_closed = 0, v_numeric = 0;
  double relative_error = 0;  // |v - v0| / |v0| at t_end
  double state_error = 0;     // max over slots of |y_k - v0^(k)| / max_k |v0^(k)|
  long steps = 0;
  bool ok = false;
};

HomoclinicPropagation homoclinic_propagation(int n, double t_end = 10.0, double rtol = 1e-28);

}  // namespace fowler6
