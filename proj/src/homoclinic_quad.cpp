#include "fowler6/homoclinic_quad.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>

#include "fowler6/integrator.hpp"
#include "fowler6/profiles.hpp"

namespace fowler6 {

HomoclinicPropagation homoclinic_propagation(int n, double t_end, double rtol) {
  using Q = boost::multiprecision::float128;
  using QVec = Eigen::Matrix<Q, Eigen::Dynamic, 1>;
  const Constants k = derive_constants(n, 3);
  const Q a = Q(n - 6) / 2;
  const Q c = bubble_ratio<Q>(n, 3, Q(1));
  const VectorField<Q> field = make_exact_field<Q>(k.spec, k.params, c);
  const QVec y0 = homoclinic_derivatives<Q>(a, Q(0), 6);
  const Propagation<Q> run = propagate<Q>(field, y0, Q(t_end), Q(rtol), Q(rtol) * Q(1e-3));
  const QVec exact = homoclinic_derivatives<Q>(a, Q(t_end), 6);

  HomoclinicPropagation out;
  out.n = n;
  out.t_end = t_end;
  out.steps = run.steps;
  out.v_closed = static_cast<double>(exact(0));
  out.v_numeric = static_cast<double>(run.y(0));
  out.relative_error = static_cast<double>(abs(run.y(0) - exact(0)) / abs(exact(0)));
  Q scale(0), worst(0);
  for (int i = 0; i < 6; ++i) scale = std::max(scale, Q(abs(exact(i))));
  for (int i = 0; i < 6; ++i) worst = std::max(worst, Q(abs(run.y(i) - exact(i))));
  out.state_error = static_cast<double>(worst / scale);
  out.ok = run.ok && run.t == Q(t_end);
  return out;
}

}  // namespace fowler6
