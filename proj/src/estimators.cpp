#include "ose/estimators.hpp"

#include <algorithm>
#include <stdexcept>

namespace ose {

CoefficientTable empirical_coefficients(const Sample& sample, Index m_max,
                                        const TrigBasis& basis)
{
  const Index n = sample.size();
  if (n == 0) {
    throw std::invalid_argument("empirical_coefficients: empty sample");
  }
  basis.check_index(m_max);
  const bool regression = sample.model == Model::Regression;
  if (regression && sample.y.size() != n) {
    throw std::invalid_argument("empirical_coefficients: response size mismatch");
  }

  CoefficientTable t;
  t.model = sample.model;
  t.m_max = m_max;
  t.n = n;
  t.psi_sum = Eigen::VectorXd::Zero(m_max + 1);
  t.psi_sq_sum = Eigen::VectorXd::Zero(m_max + 1);

  Eigen::VectorXd row(m_max + 1);
  for (Index i = 0; i < n; ++i) {
    trig_basis_row(sample.x[i], row);
    if (regression) {
      row *= sample.y[i];
    }
    t.psi_sum += row;
    t.psi_sq_sum += row.cwiseAbs2();
  }
  t.theta_hat = t.psi_sum / static_cast<double>(n);
  if (regression) {
    t.sigma_y_sq = sample.y.squaredNorm() / static_cast<double>(n);
  } else {
    t.theta_hat[0] = 1.0;
  }
  return t;
}

double l2_gap(const CoefficientTable& table, Index m, Index k)
{
  if (m > k) {
    throw std::invalid_argument("l2_gap: requires m <= k");
  }
  if (m < 0 || k > table.m_max) {
    throw std::invalid_argument("l2_gap: index outside the table");
  }
  return table.theta_hat.segment(m + 1, k - m).squaredNorm();
}

double sigma_y_sq_hat(const Sample& sample)
{
  if (sample.model != Model::Regression) {
    throw std::invalid_argument("sigma_y_sq_hat: not a regression sample");
  }
  if (sample.y.size() == 0) {
    throw std::invalid_argument("sigma_y_sq_hat: empty sample");
  }
  return sample.y.squaredNorm() / static_cast<double>(sample.y.size());
}

double SeriesEstimate::operator()(double x) const
{
  Eigen::VectorXd row(coefficients.size());
  trig_basis_row(x, row);
  return coefficients.dot(row);
}

SeriesEstimate series_estimate(const CoefficientTable& table, Index m)
{
  if (m < 0 || m > table.m_max) {
    throw std::invalid_argument("series_estimate: dimension outside the table");
  }
  return { table.theta_hat.head(m + 1) };
}

GridEvaluator::GridEvaluator(Index max_dim, Index nodes)
  : x_(unit_grid(nodes))
  , w_(simpson_weights(nodes))
  , basis_(TrigBasis{ std::max<Index>(max_dim, 1024) }.design(x_, max_dim))
{
}

Eigen::VectorXd GridEvaluator::evaluate(
  const Eigen::Ref<const Eigen::VectorXd>& coeffs) const
{
  if (coeffs.size() > basis_.cols()) {
    throw std::invalid_argument("GridEvaluator: too many coefficients");
  }
  return basis_.leftCols(coeffs.size()) * coeffs;
}

Eigen::VectorXd GridEvaluator::ise_by_dimension(
  const CoefficientTable& table, const Eigen::Ref<const Eigen::VectorXd>& truth,
  Index M) const
{
  if (M < 1 || M > table.m_max || M > max_dim()) {
    throw std::invalid_argument("ise_by_dimension: invalid maximal dimension");
  }
  Eigen::VectorXd residual = table.theta_hat[0] * basis_.col(0) - truth;
  Eigen::VectorXd out(M);
  for (Index m = 1; m <= M; ++m) {
    residual.noalias() += table.theta_hat[m] * basis_.col(m);
    out[m - 1] = w_.dot(residual.cwiseAbs2());
  }
  return out;
}

} // namespace ose
