#include "ose/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <locale>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace ose {

Index ExperimentConfig::resolved_max_dim() const
{
  return max_dim > 0 ? max_dim : std::min<Index>(n, kDefaultMaxDim);
}

void ExperimentConfig::validate() const
{
  if (reps < 1) {
    throw std::invalid_argument("reps must be >= 1");
  }
  if (n < 2) {
    throw std::invalid_argument("n must be >= 2");
  }
  const Index M = resolved_max_dim();
  if (M < 1 || M > n || M > TrigBasis{}.max_index) {
    throw std::invalid_argument("max_dim must lie in 1..min(n, basis size)");
  }
  if (grid_nodes < 3 || grid_nodes % 2 == 0) {
    throw std::invalid_argument("grid size must be odd and >= 3");
  }
  if (selectors.empty()) {
    throw std::invalid_argument("no selectors requested");
  }
  if (!(ms_constant > 0.0) || !(gl_penalty.constant >= 0.0)) {
    throw std::invalid_argument("penalty constants must be positive");
  }
  if (model == Model::Density) {
    if (target != "f1" && target != "f2" && target != "uniform") {
      throw std::invalid_argument("unknown density target '" + target + "'");
    }
  } else if (target != "f1" && target != "f2") {
    throw std::invalid_argument("unknown regression target '" + target + "'");
  }
}

ExperimentConfig default_config(Model model, const std::string& target,
                                DependenceCase dependence, Index n)
{
  ExperimentConfig cfg;
  cfg.model = model;
  cfg.target = target;
  cfg.dependence = dependence;
  cfg.n = n;
  const double c = model == Model::Density ? kDefaultDensityConstant
                                           : kDefaultRegressionConstant;
  cfg.gl_penalty = PenaltyConfig::calibrated(model, c);
  cfg.ms_constant = c;
  return cfg;
}

const SelectorOutcome& ReplicationRecord::outcome(Selector s) const
{
  for (const auto& o : outcomes) {
    if (o.selector == s) {
      return o;
    }
  }
  throw std::out_of_range("ReplicationRecord: selector not run");
}

const SummaryRow& ExperimentResult::row(Selector s) const
{
  for (const auto& r : summary) {
    if (r.selector == s) {
      return r;
    }
  }
  throw std::out_of_range("ExperimentResult: selector not run");
}

// ---------------------------------------------------------------------------

namespace {

DensityTarget density_by_name(const std::string& name)
{
  if (name == "f1") {
    return DensityTarget::f1();
  }
  if (name == "f2") {
    return DensityTarget::f2();
  }
  if (name == "uniform") {
    return DensityTarget::uniform();
  }
  throw std::invalid_argument("unknown density target '" + name + "'");
}

RegressionTarget regression_by_name(const std::string& name, double sigma)
{
  if (name == "f1") {
    return RegressionTarget::doppler(sigma);
  }
  if (name == "f2") {
    return RegressionTarget::sin_step(sigma);
  }
  throw std::invalid_argument("unknown regression target '" + name + "'");
}

ExperimentConfig validated(ExperimentConfig cfg)
{
  cfg.validate();
  return cfg;
}

} // namespace

Experiment::Experiment(ExperimentConfig cfg)
  : cfg_(validated(std::move(cfg)))
  , grid_(cfg_.resolved_max_dim(), cfg_.grid_nodes)
{
  if (cfg_.model == Model::Density) {
    law_.emplace(density_by_name(cfg_.target));
    const auto& d = law_->density();
    truth_ = grid_.tabulate([&d](double x) { return d(x); });
  } else {
    regression_.emplace(regression_by_name(cfg_.target, cfg_.noise_sigma));
    const auto& f = *regression_;
    truth_ = grid_.tabulate([&f](double x) { return f(x); });
  }
}

Sample Experiment::sample(std::uint64_t rep_index, StreamTag tag) const
{
  if (cfg_.model == Model::Density) {
    return gen_density_sample(cfg_.n, cfg_.dependence, *law_, cfg_.seed,
                              rep_index, tag);
  }
  return gen_regression_sample(cfg_.n, cfg_.dependence, *regression_,
                               cfg_.seed, rep_index, tag);
}

CoefficientTable Experiment::table(const Sample& s) const
{
  return empirical_coefficients(s, cfg_.resolved_max_dim());
}

ReplicationRecord Experiment::replicate(std::uint64_t rep_index, StreamTag tag,
                                        bool keep_gl_grid) const
{
  const Index M = cfg_.resolved_max_dim();
  const CoefficientTable t = table(sample(rep_index, tag));
  const Eigen::VectorXd ise_path = grid_.ise_by_dimension(t, truth_, M);

  ReplicationRecord rec;
  rec.rep_index = rep_index;
  rec.sigma_y_sq = t.sigma_y_sq;
  for (const Selector s : cfg_.selectors) {
    Index m = 0;
    switch (s) {
    case Selector::GL:
      m = select_gl(t, cfg_.gl_penalty, M).m_selected;
      break;
    case Selector::MS:
      m = select_ms(t, cfg_.ms_constant, M, t.sigma_y_sq).m_selected;
      break;
    case Selector::CV:
      m = select_cv(t, M).m_selected;
      break;
    case Selector::Oracle:
      m = smallest_argmin(ise_path);
      break;
    }
    rec.outcomes.push_back({ s, m, ise_path[m - 1] });
  }
  if (keep_gl_grid) {
    const Index m = select_gl(t, cfg_.gl_penalty, M).m_selected;
    rec.gl_on_grid = grid_.evaluate(t.theta_hat.head(m + 1));
  }
  return rec;
}

// ---------------------------------------------------------------------------

void parallel_for(Index count, unsigned workers,
                  const std::function<void(Index)>& body)
{
  workers = std::max(1u, workers);
  if (workers == 1 || count <= 1) {
    for (Index i = 0; i < count; ++i) {
      body(i);
    }
    return;
  }
  std::atomic<Index> next{ 0 };
  std::atomic<bool> failed{ false };
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const Index i = next.fetch_add(1);
      if (i >= count || failed.load()) {
        return;
      }
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  const auto spawn = std::min<Index>(workers, count);
  pool.reserve(static_cast<std::size_t>(spawn));
  for (Index w = 0; w < spawn; ++w) {
    pool.emplace_back(work);
  }
  for (auto& th : pool) {
    th.join();
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

ReplicationRecord run_replication(const ExperimentConfig& cfg,
                                  std::uint64_t rep_index)
{
  return Experiment(cfg).replicate(rep_index);
}

std::pair<double, double> mean_std(const std::vector<double>& v)
{
  if (v.empty()) {
    throw std::invalid_argument("mean_std: empty input");
  }
  double mean = 0.0;
  for (const double x : v) {
    mean += x;
  }
  mean /= static_cast<double>(v.size());
  if (v.size() == 1) {
    return { mean, 0.0 };
  }
  double ss = 0.0;
  for (const double x : v) {
    ss += (x - mean) * (x - mean);
  }
  return { mean, std::sqrt(ss / static_cast<double>(v.size() - 1)) };
}

namespace {

std::vector<ReplicationRecord> run_all(const Experiment& exp, StreamTag tag,
                                       bool keep_grid)
{
  const auto& cfg = exp.config();
  std::vector<ReplicationRecord> records(static_cast<std::size_t>(cfg.reps));
  parallel_for(cfg.reps, cfg.workers, [&](Index i) {
    records[static_cast<std::size_t>(i)] =
      exp.replicate(static_cast<std::uint64_t>(i), tag, keep_grid);
  });
  return records;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg)
{
  const Experiment exp(cfg);
  ExperimentResult out;
  out.records = run_all(exp, StreamTag::Evaluation, false);

  // records are indexed by rep, so the reduction order is fixed
  for (const Selector s : cfg.selectors) {
    std::vector<double> ise;
    double m_sum = 0.0;
    for (const auto& r : out.records) {
      const auto& o = r.outcome(s);
      ise.push_back(o.ise);
      m_sum += static_cast<double>(o.m_selected);
    }
    const auto [mean, sd] = mean_std(ise);
    SummaryRow row;
    row.model = cfg.model;
    row.target = cfg.target;
    row.dependence = cfg.dependence;
    row.n = cfg.n;
    row.selector = s;
    if (s == Selector::GL) {
      row.c_pen = cfg.gl_penalty.constant;
    } else if (s == Selector::MS) {
      row.c_pen = cfg.ms_constant;
    }
    row.reps = cfg.reps;
    row.mean_ise = mean;
    row.std_ise = sd;
    row.mean_m = m_sum / static_cast<double>(cfg.reps);
    out.summary.push_back(row);
  }
  return out;
}

double percentile(std::vector<double> v, double q)
{
  if (v.empty()) {
    throw std::invalid_argument("percentile: empty input");
  }
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

BandTable compute_bands(const ExperimentConfig& cfg)
{
  if (cfg.reps < 20) {
    throw std::invalid_argument("compute_bands: requires at least 20 replications");
  }
  const Experiment exp(cfg);
  const auto records = run_all(exp, StreamTag::Evaluation, true);

  BandTable b;
  b.x = exp.grid().nodes();
  b.truth = exp.truth_on_grid();
  const Index G = b.x.size();
  b.median.resize(G);
  b.p05.resize(G);
  b.p95.resize(G);
  std::vector<double> column(records.size());
  for (Index g = 0; g < G; ++g) {
    for (std::size_t r = 0; r < records.size(); ++r) {
      column[r] = records[r].gl_on_grid[g];
    }
    b.p05[g] = percentile(column, 0.05);
    b.median[g] = percentile(column, 0.5);
    b.p95[g] = percentile(column, 0.95);
  }
  return b;
}

// ---------------------------------------------------------------------------

std::vector<double> default_c_grid()
{
  return { 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0 };
}

namespace {

bool quasi_convex(const std::vector<double>& v)
{
  // non-increasing then non-decreasing
  std::size_t i = 1;
  while (i < v.size() && v[i] <= v[i - 1]) {
    ++i;
  }
  while (i < v.size() && v[i] >= v[i - 1]) {
    ++i;
  }
  return i >= v.size();
}

} // namespace

CalibrationResult calibrate_constant(const std::vector<ExperimentConfig>& cfgs,
                                     const std::vector<double>& c_grid,
                                     Index calib_reps)
{
  if (c_grid.empty()) {
    throw std::invalid_argument("calibrate_constant: empty grid");
  }
  if (!std::is_sorted(c_grid.begin(), c_grid.end()) ||
      std::adjacent_find(c_grid.begin(), c_grid.end()) != c_grid.end()) {
    throw std::invalid_argument("calibrate_constant: grid must be increasing");
  }
  if (cfgs.empty() || calib_reps < 1) {
    throw std::invalid_argument("calibrate_constant: nothing to calibrate");
  }
  const std::size_t K = c_grid.size();
  CalibrationResult out;
  out.c_grid = c_grid;
  out.gl_mean_ise.assign(K, 0.0);
  out.ms_mean_ise.assign(K, 0.0);

  for (const auto& cfg : cfgs) {
    const Experiment exp(cfg);
    const Index M = cfg.resolved_max_dim();
    // per replication: ISE of GL and MS at every grid constant
    std::vector<std::vector<double>> gl(static_cast<std::size_t>(calib_reps)),
      ms(static_cast<std::size_t>(calib_reps));
    parallel_for(calib_reps, cfg.workers, [&](Index i) {
      const auto s = exp.sample(static_cast<std::uint64_t>(i), StreamTag::Calibration);
      const CoefficientTable t = exp.table(s);
      const Eigen::VectorXd path = exp.grid().ise_by_dimension(t, exp.truth_on_grid(), M);
      auto& g = gl[static_cast<std::size_t>(i)];
      auto& m = ms[static_cast<std::size_t>(i)];
      for (const double c : c_grid) {
        const auto pen = PenaltyConfig::calibrated(cfg.model, c);
        g.push_back(path[select_gl(t, pen, M).m_selected - 1]);
        m.push_back(path[select_ms(t, c, M, t.sigma_y_sq).m_selected - 1]);
      }
    });
    const double w = 1.0 / (static_cast<double>(calib_reps) *
                            static_cast<double>(cfgs.size()));
    for (Index i = 0; i < calib_reps; ++i) {
      for (std::size_t k = 0; k < K; ++k) {
        out.gl_mean_ise[k] += w * gl[static_cast<std::size_t>(i)][k];
        out.ms_mean_ise[k] += w * ms[static_cast<std::size_t>(i)][k];
      }
    }
  }
  const auto best = [&](const std::vector<double>& v) {
    return c_grid[static_cast<std::size_t>(
      std::min_element(v.begin(), v.end()) - v.begin())];
  };
  out.c_gl = best(out.gl_mean_ise);
  out.c_ms = best(out.ms_mean_ise);
  out.gl_quasi_convex = quasi_convex(out.gl_mean_ise);
  out.ms_quasi_convex = quasi_convex(out.ms_mean_ise);
  return out;
}

CalibrationResult calibrate_constant(const ExperimentConfig& cfg,
                                     const std::vector<double>& c_grid,
                                     Index calib_reps)
{
  return calibrate_constant(std::vector<ExperimentConfig>{ cfg }, c_grid,
                            calib_reps);
}

// ---------------------------------------------------------------------------

namespace {

struct CsvFormat
{
  explicit CsvFormat(std::ostream& os)
    : os_(os)
    , locale_(os.imbue(std::locale::classic()))
    , precision_(os.precision(10))
    , flags_(os.flags())
  {
    os.unsetf(std::ios::floatfield);
  }
  ~CsvFormat()
  {
    os_.imbue(locale_);
    os_.precision(precision_);
    os_.flags(flags_);
  }
  CsvFormat(const CsvFormat&) = delete;
  CsvFormat& operator=(const CsvFormat&) = delete;

private:
  std::ostream& os_;
  std::locale locale_;
  std::streamsize precision_;
  std::ios::fmtflags flags_;
};

} // namespace

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows)
{
  const CsvFormat fmt(os);
  os << "model,target,case,n,selector,c_pen,reps,mean_ise,std_ise,mean_m\n";
  for (const auto& r : rows) {
    os << to_string(r.model) << ',' << r.target << ',' << to_string(r.dependence)
       << ',' << r.n << ',' << to_string(r.selector) << ',';
    if (r.c_pen) {
      os << *r.c_pen;
    }
    os << ',' << r.reps << ',' << r.mean_ise << ',' << r.std_ise << ','
       << r.mean_m << '\n';
  }
}

void write_raw_csv(std::ostream& os, const std::vector<ReplicationRecord>& records)
{
  const CsvFormat fmt(os);
  os << "rep_index,selector,m_selected,ise,sigma_y_hat\n";
  for (const auto& r : records) {
    for (const auto& o : r.outcomes) {
      os << r.rep_index << ',' << to_string(o.selector) << ',' << o.m_selected
         << ',' << o.ise << ',' << r.sigma_y_sq << '\n';
    }
  }
}

void write_bands_csv(std::ostream& os, const BandTable& b)
{
  const CsvFormat fmt(os);
  os << "x,truth,median,p05,p95\n";
  for (Index g = 0; g < b.x.size(); ++g) {
    os << b.x[g] << ',' << b.truth[g] << ',' << b.median[g] << ',' << b.p05[g]
       << ',' << b.p95[g] << '\n';
  }
}

void write_calibration_csv(std::ostream& os, const CalibrationResult& cal)
{
  const CsvFormat fmt(os);
  os << "c,gl_mean_ise,ms_mean_ise\n";
  for (std::size_t k = 0; k < cal.c_grid.size(); ++k) {
    os << cal.c_grid[k] << ',' << cal.gl_mean_ise[k] << ',' << cal.ms_mean_ise[k]
       << '\n';
  }
}

} // namespace ose
