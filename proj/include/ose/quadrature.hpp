#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <stdexcept>

namespace ose {

//! Default number of nodes for integrals over [0,1] (composite Simpson).
inline constexpr Eigen::Index kQuadratureNodes = 4097;

//! Uniform grid of `nodes` points on [0,1]; `nodes` must be odd and >= 3.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> unit_grid(Eigen::Index nodes)
{
  if (nodes < 3 || nodes % 2 == 0) {
    throw std::invalid_argument("unit_grid: node count must be odd and >= 3");
  }
  return Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::LinSpaced(
    nodes, Scalar(0), Scalar(1));
}

//! Composite Simpson weights for a uniform grid with `nodes` points on [0,1].
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> simpson_weights(Eigen::Index nodes)
{
  if (nodes < 3 || nodes % 2 == 0) {
    throw std::invalid_argument(
      "simpson_weights: node count must be odd and >= 3");
  }
  const Scalar h = Scalar(1) / Scalar(nodes - 1);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w(nodes);
  for (Eigen::Index i = 0; i < nodes; ++i) {
    w[i] = (i % 2 == 1) ? Scalar(4) : Scalar(2);
  }
  w[0] = w[nodes - 1] = Scalar(1);
  return w * (h / Scalar(3));
}

//! Simpson integral of tabulated values on the uniform grid of [0,1].
template <typename Derived>
typename Derived::Scalar simpson(const Eigen::MatrixBase<Derived>& values)
{
  using Scalar = typename Derived::Scalar;
  return simpson_weights<Scalar>(values.size()).dot(values.derived());
}

//! Simpson integral of a callable over [0,1].
template <typename F>
double integrate_unit(F&& f, Eigen::Index nodes = kQuadratureNodes)
{
  const Eigen::VectorXd x = unit_grid(nodes);
  const Eigen::VectorXd w = simpson_weights(nodes);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < nodes; ++i) {
    acc += w[i] * f(x[i]);
  }
  return acc;
}

//! Three-point Simpson rule on [a,b].
template <typename F>
double simpson_cell(F&& f, double a, double b)
{
  return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
}

} // namespace ose
