#include "ose/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ose {

PenaltyConfig PenaltyConfig::theorem(PenaltyScheme scheme, double zeta_sq)
{
  switch (scheme) {
  case PenaltyScheme::DensityIid:
    return { scheme, 36.0 * zeta_sq, false };
  case PenaltyScheme::RegressionIid:
    return { scheme, 144.0 * zeta_sq, true };
  case PenaltyScheme::DensityDep:
    return { scheme, 288.0 * zeta_sq, false };
  case PenaltyScheme::RegressionDep:
    return { scheme, 1152.0 * zeta_sq, true };
  case PenaltyScheme::Custom:
    break;
  }
  throw std::invalid_argument("PenaltyConfig::theorem: no preset for Custom");
}

PenaltyConfig PenaltyConfig::custom(double constant, bool uses_sigma_hat)
{
  return { PenaltyScheme::Custom, constant, uses_sigma_hat };
}

PenaltyConfig PenaltyConfig::calibrated(Model model, double constant)
{
  return custom(constant, model == Model::Regression);
}

double penalty(const PenaltyConfig& cfg, Index m, Index n,
               std::optional<double> sigma_sq)
{
  if (m < 1 || n < 1) {
    throw std::invalid_argument("penalty: requires m >= 1 and n >= 1");
  }
  double value = cfg.constant * static_cast<double>(m) / static_cast<double>(n);
  if (cfg.uses_sigma_hat) {
    if (!sigma_sq) {
      throw std::invalid_argument("penalty: sigma_hat^2 required by this scheme");
    }
    value *= *sigma_sq;
  }
  return value;
}

Eigen::VectorXd penalties(const PenaltyConfig& cfg, Index M, Index n,
                          std::optional<double> sigma_sq)
{
  Eigen::VectorXd out(M);
  for (Index m = 1; m <= M; ++m) {
    out[m - 1] = penalty(cfg, m, n, sigma_sq);
  }
  return out;
}

std::string to_string(Selector s)
{
  switch (s) {
  case Selector::GL:
    return "gl";
  case Selector::MS:
    return "ms";
  case Selector::CV:
    return "cv";
  case Selector::Oracle:
    return "oracle";
  }
  return "?";
}

Selector parse_selector(const std::string& s)
{
  if (s == "gl") {
    return Selector::GL;
  }
  if (s == "ms") {
    return Selector::MS;
  }
  if (s == "cv") {
    return Selector::CV;
  }
  if (s == "oracle") {
    return Selector::Oracle;
  }
  throw std::invalid_argument("unknown selector '" + s + "'");
}

Index smallest_argmin(const Eigen::Ref<const Eigen::VectorXd>& values)
{
  if (values.size() == 0) {
    throw std::invalid_argument("smallest_argmin: empty sequence");
  }
  Index best = 0;
  for (Index m = 1; m < values.size(); ++m) {
    if (values[m] < values[best]) {
      best = m;
    }
  }
  return best + 1;
}

namespace {

void check_dimension(const CoefficientTable& table, Index M)
{
  if (M < 1 || M > table.m_max) {
    throw std::invalid_argument("selection: maximal dimension outside the table");
  }
}

} // namespace

Eigen::VectorXd gl_contrast(const CoefficientTable& table,
                            const Eigen::Ref<const Eigen::VectorXd>& pens)
{
  const Index M = pens.size();
  check_dimension(table, M);
  Eigen::VectorXd xi(M);
  for (Index m = 1; m <= M; ++m) {
    double gap = 0.0;
    double best = -pens[m - 1];
    for (Index k = m + 1; k <= M; ++k) {
      gap += table.theta_hat[k] * table.theta_hat[k];
      best = std::max(best, gap - pens[k - 1]);
    }
    xi[m - 1] = best;
  }
  return xi;
}

SelectionResult select_gl(const CoefficientTable& table,
                          const Eigen::Ref<const Eigen::VectorXd>& pens)
{
  SelectionResult r;
  r.selector = Selector::GL;
  r.penalty = pens;
  r.criterion = gl_contrast(table, pens) + pens;
  r.m_selected = smallest_argmin(r.criterion);
  return r;
}

SelectionResult select_gl(const CoefficientTable& table, const PenaltyConfig& cfg,
                          Index M)
{
  const auto sigma = cfg.uses_sigma_hat ? std::optional<double>(table.sigma_y_sq)
                                        : std::nullopt;
  return select_gl(table, penalties(cfg, M, table.n, sigma));
}

SelectionResult select_ms(const CoefficientTable& table, double c, Index M,
                          double sigma_sq)
{
  check_dimension(table, M);
  if (!(c > 0.0)) {
    throw std::invalid_argument("select_ms: constant must be positive");
  }
  SelectionResult r;
  r.selector = Selector::MS;
  r.penalty.resize(M);
  r.criterion.resize(M);
  double norm_sq = 0.0;
  const double scale = c * sigma_sq / static_cast<double>(table.n);
  for (Index m = 1; m <= M; ++m) {
    norm_sq += table.theta_hat[m] * table.theta_hat[m];
    r.penalty[m - 1] = scale * static_cast<double>(m);
    r.criterion[m - 1] = -norm_sq + r.penalty[m - 1];
  }
  r.m_selected = smallest_argmin(r.criterion);
  return r;
}

Eigen::VectorXd cv_criteria(const CoefficientTable& table, Index M)
{
  check_dimension(table, M);
  if (table.n < 2) {
    throw std::invalid_argument("cv: requires at least two observations");
  }
  const double n = static_cast<double>(table.n);
  const double scale = 2.0 / (n * (n - 1.0));
  Eigen::VectorXd out(M);
  double fit = 0.0;
  double cross = 0.0;
  const Index j0 = table.first_estimated();
  for (Index j = j0; j <= M; ++j) {
    fit += table.theta_hat[j] * table.theta_hat[j];
    // sum_i sum_{k != i} psi_j(Z_k) psi_j(Z_i)
    cross += table.psi_sum[j] * table.psi_sum[j] - table.psi_sq_sum[j];
    if (j >= 1) {
      out[j - 1] = fit - scale * cross;
    }
  }
  return out;
}

double cv_criterion(const Sample& sample, Index m)
{
  if (m < 1) {
    throw std::invalid_argument("cv_criterion: m must be >= 1");
  }
  return cv_criteria(empirical_coefficients(sample, m), m)[m - 1];
}

SelectionResult select_cv(const CoefficientTable& table, Index M)
{
  SelectionResult r;
  r.selector = Selector::CV;
  r.criterion = cv_criteria(table, M);
  r.penalty = Eigen::VectorXd::Zero(M);
  r.m_selected = smallest_argmin(r.criterion);
  return r;
}

SelectionResult select_cv(const Sample& sample, Index M)
{
  return select_cv(empirical_coefficients(sample, M), M);
}

SelectionResult select_oracle(const CoefficientTable& table,
                              const GridEvaluator& grid,
                              const Eigen::Ref<const Eigen::VectorXd>& truth,
                              Index M)
{
  SelectionResult r;
  r.selector = Selector::Oracle;
  r.criterion = grid.ise_by_dimension(table, truth, M);
  r.penalty = Eigen::VectorXd::Zero(M);
  r.m_selected = smallest_argmin(r.criterion);
  return r;
}

AuditRecord lemma1_audit(const CoefficientTable& table,
                         const Eigen::Ref<const Eigen::VectorXd>& pens,
                         const Eigen::Ref<const Eigen::VectorXd>& truth,
                         Index m, double truth_sq_norm)
{
  const Index M = pens.size();
  check_dimension(table, M);
  if (m < 1 || m > M) {
    throw std::invalid_argument("lemma1_audit: m outside 1..M");
  }
  if (truth.size() <= M) {
    throw std::invalid_argument("lemma1_audit: truth must extend beyond M");
  }
  for (Index k = 0; k < M; ++k) {
    if (pens[k] < 0.0 || (k > 0 && pens[k] < pens[k - 1])) {
      throw std::invalid_argument(
        "lemma1_audit: penalties must be nonnegative and non-decreasing");
    }
  }
  const Index J = truth.size() - 1;
  const Index j0 = table.first_estimated();

  // loss[k] = ||f_hat_k - f_k||^2, tail[k] = sum_{k<j<=J} theta_j^2
  Eigen::VectorXd loss(M + 1);
  double acc = 0.0;
  for (Index k = 0; k <= M; ++k) {
    if (k >= j0) {
      const double d = table.theta_hat[k] - truth[k];
      acc += d * d;
    }
    loss[k] = acc;
  }
  Eigen::VectorXd tail(M + 1);
  double t = 0.0;
  for (Index j = J; j > M; --j) {
    t += truth[j] * truth[j];
  }
  for (Index k = M; k >= 0; --k) {
    tail[k] = t;
    t += truth[k] * truth[k];
  }

  AuditRecord rec;
  rec.m = m;
  rec.m_selected = select_gl(table, pens).m_selected;
  rec.lhs = loss[rec.m_selected] + tail[rec.m_selected];
  rec.bias_sq = tail[m];
  double var = 0.0;
  for (Index k = m; k <= M; ++k) {
    var = std::max(var, loss[k] - pens[k - 1] / 6.0);
  }
  rec.variance_term = var;
  rec.rhs = 85.0 * std::max(rec.bias_sq, pens[m - 1]) + 42.0 * var;
  if (truth_sq_norm >= 0.0) {
    rec.tail_error = std::max(0.0, truth_sq_norm - truth.squaredNorm());
  }
  const double slack = 1e-12 * std::max(1.0, rec.rhs);
  rec.pass = rec.lhs <= rec.rhs + slack;
  return rec;
}

} // namespace ose
