#pragma once

#include "ose/dependence.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ose {

struct CheckResult
{
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

//! Sizes and thresholds of the theory-check suite. Defaults are the full
//! acceptance sizes.
struct CheckOptions
{
  std::uint64_t seed = 20240501;
  unsigned workers = 1;
  Index ks_draws = 100000;
  double ks_threshold = 0.006;
  Index case3_marginal_draws = 1000000;
  double case3_marginal_threshold = 0.005;
  Index variance_reps = 2000;
  Index variance_n = 500;
  Index audit_reps = 1000;
  Index audit_n = 500;
  Index audit_fuzz_cases = 10000;
  //! Constant c of the audit penalties c m / n (default 36 zeta^2).
  double audit_pen_constant = 72.0;
  Index oracle_rate_reps = 200;
};

//! Kolmogorov-Smirnov distance between the empirical CDF of `draws` and `cdf`.
double ks_statistic(Eigen::VectorXd draws, const std::function<double(double)>& cdf);

//! Lag-1 sample autocorrelation.
double lag1_autocorrelation(const Eigen::Ref<const Eigen::VectorXd>& v);

//! Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

CheckResult check_orthonormality(Index max_index = 30, double tol = 1e-8);
CheckResult check_sup_norm(Index max_m = 100, Index grid = 10000);
CheckResult check_variance_bound(const CheckOptions& opt);
CheckResult check_rate_slope(double p, double tol = 0.02);
CheckResult check_oracle_rate(const CheckOptions& opt);
CheckResult check_lemma1_simulation(const CheckOptions& opt);
CheckResult check_lemma1_fuzz(const CheckOptions& opt);
//! KS distance of generated draws to the marginal for one (case, marginal).
CheckResult check_generator_ks(DependenceCase c, const std::string& marginal,
                               const CheckOptions& opt);
CheckResult check_case3_marginal(const CheckOptions& opt);
CheckResult check_case3_residual(Index n = 10000, std::uint64_t seed = 1);

//! The whole suite, in a fixed order.
std::vector<CheckResult> run_theory_checks(const CheckOptions& opt);

} // namespace ose
