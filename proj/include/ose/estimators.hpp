#pragma once

#include "ose/basis.hpp"
#include "ose/dependence.hpp"
#include "ose/quadrature.hpp"

#include <Eigen/Core>

namespace ose {

//! Grid size for integrated squared errors and pointwise bands.
inline constexpr Index kEvalGridNodes = 1025;

//! Empirical coefficients of a sample up to dimension m_max.
//!
//! Density mode fixes theta_hat[0] = 1 (known constant term). The table also
//! keeps per-index sums of psi_j(Z_i) and psi_j(Z_i)^2, which is all the
//! leave-one-out cross-validation criterion needs.
struct CoefficientTable
{
  Model model = Model::Density;
  Index m_max = 0;
  Index n = 0;
  Eigen::VectorXd theta_hat;
  Eigen::VectorXd psi_sum;
  Eigen::VectorXd psi_sq_sum;
  //! n^{-1} sum Y_i^2 for regression samples, 1 for density samples.
  double sigma_y_sq = 1.0;

  //! First estimated index: 1 in density mode, 0 in regression mode.
  Index first_estimated() const { return model == Model::Density ? 1 : 0; }
};

//! theta_hat_j = n^{-1} sum psi_j(Z_i), j = 0..m_max. Throws
//! std::invalid_argument for an empty sample and std::domain_error when
//! m_max exceeds the basis.
CoefficientTable empirical_coefficients(const Sample& sample, Index m_max,
                                        const TrigBasis& basis = {});

//! ||f_hat_m - f_hat_k||^2 = sum_{j=m+1}^{k} theta_hat_j^2.
double l2_gap(const CoefficientTable& table, Index m, Index k);

//! The n^{-1} sum Y_i^2 plug-in for sigma_Y^2.
double sigma_y_sq_hat(const Sample& sample);

//! A truncated series sum_{j<=m} c_j phi_j.
struct SeriesEstimate
{
  Eigen::VectorXd coefficients;

  Index dimension() const { return coefficients.size() - 1; }
  double operator()(double x) const;
};

//! Dimension-m prefix of a table (coefficients 0..m).
SeriesEstimate series_estimate(const CoefficientTable& table, Index m);

//! Simpson quadrature of (est - truth)^2 on `nodes` points.
template <typename F>
double ise(const SeriesEstimate& est, F&& truth, Index nodes = kEvalGridNodes)
{
  return integrate_unit(
    [&](double x) {
      const double d = est(x) - truth(x);
      return d * d;
    },
    nodes);
}

//! Basis functions tabulated on a uniform Simpson grid, for evaluating many
//! nested estimates at once.
class GridEvaluator
{
public:
  GridEvaluator(Index max_dim, Index nodes = kEvalGridNodes);

  const Eigen::VectorXd& nodes() const { return x_; }
  const Eigen::VectorXd& weights() const { return w_; }
  Index max_dim() const { return basis_.cols() - 1; }

  //! Values of sum_j c_j phi_j on the grid.
  Eigen::VectorXd evaluate(const Eigen::Ref<const Eigen::VectorXd>& coeffs) const;

  //! Tabulates a callable on the grid.
  template <typename F>
  Eigen::VectorXd tabulate(F&& f) const
  {
    return x_.unaryExpr([&](double t) { return static_cast<double>(f(t)); });
  }

  //! ISE of the nested estimates of dimension 1..M against tabulated truth;
  //! entry m-1 holds dimension m.
  Eigen::VectorXd ise_by_dimension(const CoefficientTable& table,
                                   const Eigen::Ref<const Eigen::VectorXd>& truth,
                                   Index M) const;

  double integrate(const Eigen::Ref<const Eigen::VectorXd>& values) const
  {
    return w_.dot(values);
  }

private:
  Eigen::VectorXd x_;
  Eigen::VectorXd w_;
  Eigen::MatrixXd basis_;
};

} // namespace ose
