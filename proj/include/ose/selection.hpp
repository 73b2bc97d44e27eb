#pragma once

#include "ose/estimators.hpp"

#include <Eigen/Core>

#include <optional>
#include <string>

namespace ose {

enum class PenaltyScheme
{
  DensityIid,
  RegressionIid,
  DensityDep,
  RegressionDep,
  Custom
};

//! pen(m) = constant * m / n, times sigma_hat_Y^2 when `uses_sigma_hat`.
struct PenaltyConfig
{
  PenaltyScheme scheme = PenaltyScheme::Custom;
  double constant = 1.0;
  bool uses_sigma_hat = false;

  //! Constants with guaranteed adaptivity: 36, 144, 288 and 1152 times
  //! zeta^2; the regression ones scale with sigma_hat_Y^2.
  static PenaltyConfig theorem(PenaltyScheme scheme, double zeta_sq = kTrigZetaSq);
  static PenaltyConfig custom(double constant, bool uses_sigma_hat);
  //! A calibrated constant with the sigma convention of the model.
  static PenaltyConfig calibrated(Model model, double constant);
};

//! Throws std::invalid_argument if sigma_sq is required but missing, or if
//! m < 1 or n < 1.
double penalty(const PenaltyConfig& cfg, Index m, Index n,
               std::optional<double> sigma_sq = std::nullopt);

//! pen(1), ..., pen(M) (entry m-1 holds pen(m)).
Eigen::VectorXd penalties(const PenaltyConfig& cfg, Index M, Index n,
                          std::optional<double> sigma_sq = std::nullopt);

enum class Selector
{
  GL,
  MS,
  CV,
  Oracle
};

std::string to_string(Selector s);
Selector parse_selector(const std::string& s);

struct SelectionResult
{
  Selector selector = Selector::GL;
  Index m_selected = 0;
  //! Per-dimension penalty (zero where the selector has none), entry m-1.
  Eigen::VectorXd penalty;
  //! Per-dimension criterion value, entry m-1.
  Eigen::VectorXd criterion;
};

//! Smallest index minimizing `values`, reported 1-based.
Index smallest_argmin(const Eigen::Ref<const Eigen::VectorXd>& values);

//! Contrast Xi_m = max_{m<=k<=M} { ||f_hat_m - f_hat_k||^2 - pen(k) } for
//! m = 1..M, M = pens.size().
Eigen::VectorXd gl_contrast(const CoefficientTable& table,
                            const Eigen::Ref<const Eigen::VectorXd>& pens);

//! Smallest minimizer of Xi_m + pen(m) over 1..pens.size().
SelectionResult select_gl(const CoefficientTable& table,
                          const Eigen::Ref<const Eigen::VectorXd>& pens);

//! Builds the penalties from `cfg` (using the table's sigma_hat_Y^2 when the
//! config asks for it) and selects over 1..M.
SelectionResult select_gl(const CoefficientTable& table, const PenaltyConfig& cfg,
                          Index M);

//! Smallest minimizer of -sum_{1<=j<=m} theta_hat_j^2 + c m sigma_sq / n.
SelectionResult select_ms(const CoefficientTable& table, double c, Index M,
                          double sigma_sq);

//! CV(m) for m = 1..M from the table's running sums; requires n >= 2.
Eigen::VectorXd cv_criteria(const CoefficientTable& table, Index M);
double cv_criterion(const Sample& sample, Index m);
SelectionResult select_cv(const CoefficientTable& table, Index M);
SelectionResult select_cv(const Sample& sample, Index M);

//! Smallest minimizer of the ISE against tabulated truth.
SelectionResult select_oracle(const CoefficientTable& table,
                              const GridEvaluator& grid,
                              const Eigen::Ref<const Eigen::VectorXd>& truth,
                              Index M);

//! Outcome of checking the oracle inequality
//!   ||f_hat_mt - f||^2 <= 85 max(bias_m^2, pen_m)
//!                         + 42 max_{m<=k<=M} (||f_hat_k - f_k||^2 - pen_k/6)_+
//! for the contrast-selected dimension mt.
struct AuditRecord
{
  Index m = 0;
  Index m_selected = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double bias_sq = 0.0;
  double variance_term = 0.0;
  //! Mass of f^2 beyond the truncated truth coefficients, when known.
  double tail_error = 0.0;
  bool pass = false;
};

//! `truth` holds the true coefficients theta_0..theta_J (J >= M, typically
//! 400); bias and loss are truncated at J. Throws std::invalid_argument when
//! pens are negative or decreasing.
AuditRecord lemma1_audit(const CoefficientTable& table,
                         const Eigen::Ref<const Eigen::VectorXd>& pens,
                         const Eigen::Ref<const Eigen::VectorXd>& truth,
                         Index m, double truth_sq_norm = -1.0);

} // namespace ose
