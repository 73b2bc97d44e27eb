#include "cli_config.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

using namespace ose;

TEST_SUITE("cli")
{
  TEST_CASE("INI files map to section.key settings; flags override them")
  {
    const std::string path = "ose_test_config.ini";
    {
      std::ofstream f(path);
      f << "[experiment]\nmodel = regression\ntarget = f2\ncase = 3\nn = 250\n"
           "reps = 7\nselectors = gl, cv\n[penalty]\nc_gl = 2.5\n"
           "[calibration]\nc_grid = 1,2,4\n";
    }
    cli::Settings s = cli::read_config_file(path);
    std::remove(path.c_str());
    CHECK(s.at("experiment.model") == "regression");
    cli::merge(s, { { "experiment.n", "400" } });

    const ExperimentConfig cfg = cli::experiment_from(s);
    CHECK(cfg.model == Model::Regression);
    CHECK(cfg.target == "f2");
    CHECK(cfg.dependence == DependenceCase::BernoulliAR);
    CHECK(cfg.n == 400);
    CHECK(cfg.reps == 7);
    REQUIRE(cfg.selectors.size() == 2);
    CHECK(cfg.selectors[1] == Selector::CV);
    CHECK(cfg.gl_penalty.constant == 2.5);
    CHECK(cfg.gl_penalty.uses_sigma_hat);
    CHECK(cli::c_grid_from(s) == std::vector<double>{ 1.0, 2.0, 4.0 });
  }

  TEST_CASE("missing or malformed values are rejected")
  {
    CHECK_THROWS_AS(cli::experiment_from({ { "experiment.model", "density" } }),
                    std::invalid_argument);
    CHECK_THROWS_AS(cli::experiment_from({ { "experiment.target", "f1" },
                                           { "experiment.n", "ten" } }),
                    std::invalid_argument);
    CHECK_THROWS_AS(cli::read_config_file("/nonexistent/ose.ini"), std::runtime_error);
  }

  TEST_CASE("list splitting")
  {
    CHECK(cli::split_list("a, b,,c") == std::vector<std::string>{ "a", "b", "c" });
    CHECK(cli::split_list("").empty());
  }
}
