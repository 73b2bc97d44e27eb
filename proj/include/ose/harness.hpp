#pragma once

#include "ose/dependence.hpp"
#include "ose/estimators.hpp"
#include "ose/selection.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ose {

//! Default penalty constants for the simulation selectors, found by
//! `calibrate` on the calibration seed stream (see README).
inline constexpr double kDefaultDensityConstant = 4.0;
inline constexpr double kDefaultRegressionConstant = 2.0;

//! Largest dimension used when ExperimentConfig::max_dim is left at 0.
inline constexpr Index kDefaultMaxDim = 100;

struct ExperimentConfig
{
  Model model = Model::Density;
  std::string target = "f1";
  DependenceCase dependence = DependenceCase::Iid;
  Index n = 1000;
  Index reps = 501;
  std::vector<Selector> selectors{ Selector::Oracle, Selector::GL, Selector::MS,
                                   Selector::CV };
  //! GL penalty; the constant multiplies m/n (and sigma_hat^2 when set).
  PenaltyConfig gl_penalty = PenaltyConfig::calibrated(Model::Density,
                                                       kDefaultDensityConstant);
  //! MS constant c in c m sigma_hat^2 / n (sigma_hat^2 = 1 for densities).
  double ms_constant = kDefaultDensityConstant;
  //! 0 selects min(n, kDefaultMaxDim).
  Index max_dim = 0;
  std::uint64_t seed = 1;
  Index grid_nodes = kEvalGridNodes;
  unsigned workers = 1;
  double noise_sigma = 0.5;

  Index resolved_max_dim() const;
  //! Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

//! Uses the model's default constants for both GL and MS.
ExperimentConfig default_config(Model model, const std::string& target,
                                DependenceCase dependence, Index n = 1000);

struct SelectorOutcome
{
  Selector selector = Selector::GL;
  Index m_selected = 0;
  double ise = 0.0;
};

struct ReplicationRecord
{
  std::uint64_t rep_index = 0;
  //! sigma_hat_Y^2 for regression, 1 for densities.
  double sigma_y_sq = 1.0;
  std::vector<SelectorOutcome> outcomes;
  //! GL estimate on the evaluation grid, kept only for bands.
  Eigen::VectorXd gl_on_grid;

  const SelectorOutcome& outcome(Selector s) const;
};

struct SummaryRow
{
  Model model = Model::Density;
  std::string target;
  DependenceCase dependence = DependenceCase::Iid;
  Index n = 0;
  Selector selector = Selector::Oracle;
  std::optional<double> c_pen;
  Index reps = 0;
  double mean_ise = 0.0;
  double std_ise = 0.0;
  double mean_m = 0.0;
};

struct ExperimentResult
{
  std::vector<SummaryRow> summary;
  std::vector<ReplicationRecord> records;

  const SummaryRow& row(Selector s) const;
};

struct BandTable
{
  Eigen::VectorXd x;
  Eigen::VectorXd truth;
  Eigen::VectorXd median;
  Eigen::VectorXd p05;
  Eigen::VectorXd p95;
};

struct CalibrationResult
{
  std::vector<double> c_grid;
  //! Pooled mean ISE for each grid value.
  std::vector<double> gl_mean_ise;
  std::vector<double> ms_mean_ise;
  double c_gl = 0.0;
  double c_ms = 0.0;
  bool gl_quasi_convex = true;
  bool ms_quasi_convex = true;
};

//! A configuration with its target, law and truth tabulated once, shared by
//! all replications.
class Experiment
{
public:
  explicit Experiment(ExperimentConfig cfg);

  const ExperimentConfig& config() const { return cfg_; }
  const GridEvaluator& grid() const { return grid_; }
  const Eigen::VectorXd& truth_on_grid() const { return truth_; }

  Sample sample(std::uint64_t rep_index,
                StreamTag tag = StreamTag::Evaluation) const;
  CoefficientTable table(const Sample& s) const;
  ReplicationRecord replicate(std::uint64_t rep_index,
                              StreamTag tag = StreamTag::Evaluation,
                              bool keep_gl_grid = false) const;

private:
  ExperimentConfig cfg_;
  std::optional<MarginalLaw> law_;
  std::optional<RegressionTarget> regression_;
  GridEvaluator grid_;
  Eigen::VectorXd truth_;
};

//! Runs `body(i)` for i in [0, count) on up to `workers` threads.
//! Exceptions thrown by `body` are rethrown after all workers stop.
void parallel_for(Index count, unsigned workers,
                  const std::function<void(Index)>& body);

ReplicationRecord run_replication(const ExperimentConfig& cfg,
                                  std::uint64_t rep_index);
ExperimentResult run_experiment(const ExperimentConfig& cfg);

//! Mean and standard deviation (n - 1 denominator, 0 for a single value).
std::pair<double, double> mean_std(const std::vector<double>& v);

//! Linear-interpolation percentile (q in [0,1]) of unsorted values.
double percentile(std::vector<double> v, double q);

BandTable compute_bands(const ExperimentConfig& cfg);

//! Grid search of the GL and MS constants minimizing the mean ISE pooled
//! over `cfgs`, on the calibration seed stream.
CalibrationResult calibrate_constant(const std::vector<ExperimentConfig>& cfgs,
                                     const std::vector<double>& c_grid,
                                     Index calib_reps);
CalibrationResult calibrate_constant(const ExperimentConfig& cfg,
                                     const std::vector<double>& c_grid,
                                     Index calib_reps);

//! Powers of two from 0.5 to 64.
std::vector<double> default_c_grid();

// CSV output: '.' radix, 10 significant digits, header row.
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows);
void write_raw_csv(std::ostream& os, const std::vector<ReplicationRecord>& records);
void write_bands_csv(std::ostream& os, const BandTable& bands);
void write_calibration_csv(std::ostream& os, const CalibrationResult& cal);

} // namespace ose
