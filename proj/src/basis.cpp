#include "ose/basis.hpp"

#include <algorithm>
#include <limits>

namespace ose {

double TrigBasis::operator()(Index j, double x) const
{
  check_index(j);
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("TrigBasis: x outside [0,1]");
  }
  return trig_basis(j, x);
}

Eigen::VectorXd TrigBasis::row(double x, Index m) const
{
  check_index(m);
  Eigen::VectorXd out(m + 1);
  trig_basis_row(x, out);
  return out;
}

Eigen::MatrixXd TrigBasis::design(const Eigen::Ref<const Eigen::VectorXd>& x,
                                  Index m) const
{
  check_index(m);
  Eigen::MatrixXd out(x.size(), m + 1);
  Eigen::VectorXd buf(m + 1);
  for (Index i = 0; i < x.size(); ++i) {
    trig_basis_row(x[i], buf);
    out.row(i) = buf.transpose();
  }
  return out;
}

namespace {

struct WeightVisitor
{
  Index j;

  double operator()(const PolynomialWeights& w) const
  {
    return std::pow(static_cast<double>(j), -2.0 * w.p);
  }
  double operator()(const ExponentialWeights& w) const
  {
    return std::exp(-std::pow(static_cast<double>(j), 2.0 * w.p));
  }
  double operator()(const CustomWeights& w) const
  {
    if (w.values.empty()) {
      throw std::invalid_argument("CustomWeights: empty value list");
    }
    const auto pos = std::min<std::size_t>(static_cast<std::size_t>(j - 1),
                                           w.values.size() - 1);
    return w.values[pos];
  }
};

} // namespace

double weight(const WeightSequence& seq, Index j)
{
  if (j < 1) {
    throw std::domain_error("weight: index must be >= 1");
  }
  return std::visit(WeightVisitor{ j }, seq);
}

bool is_valid_weight_sequence(const WeightSequence& seq, Index upto)
{
  double prev = std::numeric_limits<double>::infinity();
  for (Index j = 1; j <= upto; ++j) {
    const double g = weight(seq, j);
    if (!(g > 0.0) || g > prev) {
      return false;
    }
    prev = g;
  }
  return true;
}

RateResult optimal_dimension(const WeightSequence& seq, Index n)
{
  if (n < 1) {
    throw std::invalid_argument("optimal_dimension: n must be >= 1");
  }
  RateResult out;
  out.per_m_values.resize(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  out.r_star = std::numeric_limits<double>::infinity();
  for (Index m = 1; m <= n; ++m) {
    const double v = std::max(weight(seq, m), static_cast<double>(m) * inv_n);
    out.per_m_values[m - 1] = v;
    // strict comparison keeps the smallest minimizer
    if (v < out.r_star) {
      out.r_star = v;
      out.m_star = m;
    }
  }
  return out;
}

} // namespace ose
