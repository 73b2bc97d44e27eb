#pragma once

#include "ose/basis.hpp"
#include "ose/quadrature.hpp"

#include <Eigen/Core>

#include <functional>
#include <memory>
#include <string>

namespace ose {

using RealFunction = std::function<double(double)>;

// Pointwise definitions on [0,1]. The density versions are normalized to
// integrate to one over [0,1]; all throw std::domain_error outside [0,1].
double density_f1(double x);
double density_f2(double x);
double regression_f1(double x);
double regression_f2(double x);

// Unnormalized density shapes (no domain check).
double density_f1_shape(double x);
double density_f2_shape(double x);

enum class DensityId
{
  F1Mix,
  F2Poly,
  Uniform,
  Custom
};

enum class RegressionId
{
  Doppler,
  SinStep,
  Custom
};

//! A density supported on [0,1], normalized by Simpson quadrature.
class DensityTarget
{
public:
  //! Normalizes `shape` over [0,1]; `shape` must be nonnegative.
  DensityTarget(DensityId id, std::string name, RealFunction shape);

  static DensityTarget f1();
  static DensityTarget f2();
  static DensityTarget uniform();
  static DensityTarget custom(std::string name, RealFunction shape);

  double operator()(double x) const;
  double shape(double x) const { return shape_(x); }
  //! C such that C * shape integrates to one.
  double normalizer() const { return normalizer_; }
  DensityId id() const { return id_; }
  const std::string& name() const { return name_; }

private:
  DensityId id_;
  std::string name_;
  RealFunction shape_;
  double normalizer_;
};

//! A regression function on [0,1] together with its noise level.
class RegressionTarget
{
public:
  RegressionTarget(RegressionId id, std::string name, RealFunction f,
                   double noise_sigma);

  static RegressionTarget doppler(double noise_sigma = 0.5);
  static RegressionTarget sin_step(double noise_sigma = 0.5);
  static RegressionTarget custom(std::string name, RealFunction f,
                                 double noise_sigma);

  double operator()(double x) const;
  double noise_sigma() const { return noise_sigma_; }
  RegressionId id() const { return id_; }
  const std::string& name() const { return name_; }

private:
  RegressionId id_;
  std::string name_;
  RealFunction f_;
  double noise_sigma_;
};

//! Distribution on [0,1] with density, CDF and quantile function.
//!
//! The CDF is tabulated on kQuadratureNodes knots by cell-wise Simpson
//! integration; the quantile locates the knot cell by binary search and
//! refines by bisection.
class MarginalLaw
{
public:
  explicit MarginalLaw(DensityTarget density);

  static MarginalLaw uniform();

  double cdf(double x) const;
  double quantile(double u) const;
  const DensityTarget& density() const { return density_; }
  bool is_uniform() const { return identity_; }

private:
  double partial(Index cell, double x) const;

  DensityTarget density_;
  bool identity_ = false;
  Eigen::VectorXd knots_;
  Eigen::VectorXd cumulative_;
};

//! Convenience: the MarginalLaw of a density target.
MarginalLaw make_law(const DensityTarget& d);

//! theta_j = int_0^1 f phi_j for j = 0..m by Simpson quadrature.
template <typename F>
Eigen::VectorXd true_coefficients(F&& f, Index m,
                                  Index nodes = kQuadratureNodes)
{
  const Eigen::VectorXd x = unit_grid(nodes);
  const Eigen::VectorXd w = simpson_weights(nodes);
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(m + 1);
  Eigen::VectorXd row(m + 1);
  for (Index i = 0; i < nodes; ++i) {
    trig_basis_row(x[i], row);
    theta.noalias() += (w[i] * f(x[i])) * row;
  }
  return theta;
}

//! int_0^1 f^2 by Simpson quadrature.
template <typename F>
double squared_norm(F&& f, Index nodes = kQuadratureNodes)
{
  return integrate_unit([&](double x) { const double v = f(x); return v * v; },
                        nodes);
}

} // namespace ose
