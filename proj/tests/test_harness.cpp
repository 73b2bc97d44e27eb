#include "ose/harness.hpp"

#include <doctest.h>

#include <sstream>
#include <string>

using namespace ose;

namespace {

ExperimentConfig small_config(Model model, const std::string& target,
                              DependenceCase c, Index reps)
{
  ExperimentConfig cfg = default_config(model, target, c, 300);
  cfg.reps = reps;
  cfg.max_dim = 40;
  cfg.seed = 42;
  return cfg;
}

Index count_lines(const std::string& s)
{
  return static_cast<Index>(std::count(s.begin(), s.end(), '\n'));
}

} // namespace

TEST_SUITE("harness")
{
  TEST_CASE("mean and standard deviation")
  {
    const auto [m1, s1] = mean_std({ 0.5 });
    CHECK(m1 == 0.5);
    CHECK(s1 == 0.0);
    const auto [m2, s2] = mean_std({ 1.0, 2.0, 3.0 });
    CHECK(m2 == doctest::Approx(2.0));
    CHECK(s2 == doctest::Approx(1.0));
    CHECK(percentile({ 3.0, 1.0, 2.0 }, 0.5) == doctest::Approx(2.0));
    CHECK(percentile({ 0.0, 10.0 }, 0.05) == doctest::Approx(0.5));
  }

  TEST_CASE("a single replication reports zero spread")
  {
    const auto r = run_experiment(small_config(Model::Density, "f1", DependenceCase::Iid, 1));
    for (const auto& row : r.summary) {
      CHECK(row.reps == 1);
      CHECK(row.std_ise == 0.0);
    }
  }

  TEST_CASE("oracle is never beaten within a replication")
  {
    for (const Model model : { Model::Density, Model::Regression }) {
      for (const auto c : { DependenceCase::Iid, DependenceCase::Logistic,
                            DependenceCase::BernoulliAR }) {
        const auto r = run_experiment(small_config(model, "f2", c, 20));
        for (const auto& rec : r.records) {
          const double best = rec.outcome(Selector::Oracle).ise;
          for (const auto& o : rec.outcomes) {
            CHECK(best <= o.ise + 1e-15);
            CHECK(o.m_selected >= 1);
            CHECK(o.m_selected <= 40);
          }
          // with equal constants the two penalized rules agree
          CHECK(rec.outcome(Selector::GL).m_selected == rec.outcome(Selector::MS).m_selected);
        }
        CHECK(r.row(Selector::Oracle).mean_ise <= r.row(Selector::GL).mean_ise);
      }
    }
  }

  TEST_CASE("results do not depend on the worker count")
  {
    auto cfg = small_config(Model::Regression, "f1", DependenceCase::Logistic, 12);
    cfg.workers = 1;
    const auto a = run_experiment(cfg);
    cfg.workers = 4;
    const auto b = run_experiment(cfg);
    std::ostringstream ra, rb;
    write_raw_csv(ra, a.records);
    write_raw_csv(rb, b.records);
    CHECK(ra.str() == rb.str());
    CHECK(a.row(Selector::CV).mean_ise == b.row(Selector::CV).mean_ise);
  }

  TEST_CASE("parallel_for visits every index once and forwards exceptions")
  {
    std::vector<int> hits(100, 0);
    parallel_for(100, 3, [&](Index i) { ++hits[static_cast<std::size_t>(i)]; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK_THROWS_AS(parallel_for(10, 2,
                                 [](Index i) {
                                   if (i == 7) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
  }

  TEST_CASE("percentile bands")
  {
    auto cfg = small_config(Model::Density, "f1", DependenceCase::Iid, 100);
    cfg.n = 1000;
    const BandTable b = compute_bands(cfg);
    REQUIRE(b.x.size() == cfg.grid_nodes);
    Index covered = 0;
    for (Index i = 0; i < b.x.size(); ++i) {
      CHECK(b.p05[i] <= b.median[i]);
      CHECK(b.median[i] <= b.p95[i]);
      if (b.p05[i] <= b.truth[i] && b.truth[i] <= b.p95[i]) ++covered;
    }
    CHECK(static_cast<double>(covered) >= 0.8 * static_cast<double>(b.x.size()));

    cfg.reps = 10;
    CHECK_THROWS_AS(compute_bands(cfg), std::invalid_argument);
  }

  TEST_CASE("calibration")
  {
    const auto cfg = small_config(Model::Density, "f2", DependenceCase::Iid, 5);
    const auto single = calibrate_constant(cfg, { 3.0 }, 10);
    CHECK(single.c_gl == 3.0);
    CHECK(single.c_ms == 3.0);
    const auto grid = calibrate_constant(cfg, default_c_grid(), 20);
    REQUIRE(grid.gl_mean_ise.size() == 8);
    const auto it = std::min_element(grid.gl_mean_ise.begin(), grid.gl_mean_ise.end());
    CHECK(grid.c_gl == grid.c_grid[static_cast<std::size_t>(it - grid.gl_mean_ise.begin())]);
    CHECK_THROWS_AS(calibrate_constant(cfg, { 2.0, 1.0 }, 10), std::invalid_argument);
  }

  TEST_CASE("CSV outputs")
  {
    const auto r = run_experiment(small_config(Model::Density, "f1", DependenceCase::Iid, 3));
    std::ostringstream summary, raw, cal;
    write_summary_csv(summary, r.summary);
    write_raw_csv(raw, r.records);
    CHECK(summary.str().rfind("model,target,case,n,selector,c_pen,reps,mean_ise,std_ise,mean_m\n", 0) == 0);
    CHECK(count_lines(summary.str()) == 1 + 4);
    CHECK(raw.str().rfind("rep_index,selector,m_selected,ise,sigma_y_hat\n", 0) == 0);
    CHECK(count_lines(raw.str()) == 1 + 3 * 4);
    CHECK(summary.str().find("density,f1,1,300,cv,,3,") != std::string::npos);

    CalibrationResult c;
    c.c_grid = { 1.0, 2.0 };
    c.gl_mean_ise = { 0.5, 0.25 };
    c.ms_mean_ise = { 0.5, 0.25 };
    write_calibration_csv(cal, c);
    CHECK(cal.str() == "c,gl_mean_ise,ms_mean_ise\n1,0.5,0.5\n2,0.25,0.25\n");
  }

  TEST_CASE("configuration validation")
  {
    auto cfg = small_config(Model::Density, "f1", DependenceCase::Iid, 3);
    CHECK_NOTHROW(cfg.validate());
    cfg.n = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config(Model::Density, "nope", DependenceCase::Iid, 3);
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config(Model::Density, "f1", DependenceCase::Iid, 3);
    cfg.max_dim = 0;
    CHECK(cfg.resolved_max_dim() == std::min<Index>(300, kDefaultMaxDim));
  }
}
