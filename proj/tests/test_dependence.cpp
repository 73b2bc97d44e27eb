#include "ose/checks.hpp"
#include "ose/dependence.hpp"
#include "ose/quadrature.hpp"

#include <boost/math/distributions/normal.hpp>
#include <doctest.h>

#include <sstream>

using namespace ose;

namespace {

Eigen::VectorXd normal_scores(const Eigen::VectorXd& u)
{
  const boost::math::normal n01;
  return u.unaryExpr([&](double v) {
    return boost::math::quantile(n01, std::clamp(v, 1e-12, 1.0 - 1e-12));
  });
}

} // namespace

TEST_SUITE("dependence")
{
  TEST_CASE("case 1 with uniform marginal returns the raw uniforms")
  {
    Engine a = make_engine(5, 0);
    Engine b = make_engine(5, 0);
    const Eigen::VectorXd z = gen_case1(100, MarginalLaw::uniform(), a);
    for (Index i = 0; i < 100; ++i) {
      CHECK(z[i] == uniform01(b));
    }
  }

  TEST_CASE("fixed seed is bit-identical; distinct reps differ")
  {
    const MarginalLaw law(DensityTarget::f1());
    for (const auto c : { DependenceCase::Iid, DependenceCase::Logistic,
                          DependenceCase::BernoulliAR }) {
      const Sample a = gen_density_sample(500, c, law, 7, 3);
      const Sample b = gen_density_sample(500, c, law, 7, 3);
      const Sample d = gen_density_sample(500, c, law, 7, 4);
      CHECK(a.x == b.x);
      CHECK(a.x != d.x);
      CHECK(a.x.minCoeff() >= 0.0);
      CHECK(a.x.maxCoeff() <= 1.0);
    }
    CHECK(stream_seed(7, 3, StreamTag::Evaluation) != stream_seed(7, 3, StreamTag::Calibration));
  }

  TEST_CASE("logistic chain closed-form iteration")
  {
    const Eigen::VectorXd y = logistic_chain(0.5, 3);
    CHECK(y[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(y[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(y[2]) < 1e-15);
    CHECK(arcsine_cdf(1.0) == 1.0);
    CHECK(arcsine_cdf(0.0) == 0.0);
    for (const double u : { 0.1, 0.4, 0.77 }) {
      CHECK(arcsine_cdf(arcsine_quantile(u)) == doctest::Approx(u).epsilon(1e-13));
    }
  }

  TEST_CASE("arcsine law is invariant for the logistic map")
  {
    Engine rng = make_engine(11, 0);
    const Eigen::VectorXd y = logistic_chain(uniform01(rng), 100000);
    const Eigen::VectorXd u = y.unaryExpr([](double v) { return arcsine_cdf(v); });
    CHECK(ks_statistic(u, [](double x) { return x; }) < 0.006);
  }

  TEST_CASE("Bernoulli AR chain: degenerate innovations")
  {
    const Index K = kBernoulliArTruncation;
    const Eigen::VectorXd zeros = Eigen::VectorXd::Zero(10 + 2 * K);
    CHECK(bernoulli_ar_chain(zeros).cwiseAbs().maxCoeff() == 0.0);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(10 + 2 * K);
    const double expected = 25.0 / 63.0 * (1.0 + 2.0 * (1.0 - std::ldexp(1.0, -40)));
    const Eigen::VectorXd y = bernoulli_ar_chain(ones);
    for (Index i = 0; i < y.size(); ++i) {
      CHECK(y[i] == doctest::Approx(expected).epsilon(1e-15));
      CHECK(std::abs(y[i] - 25.0 / 21.0) < std::ldexp(1.0, -38));
    }
    CHECK_THROWS_AS(bernoulli_ar_chain(Eigen::VectorXd::Zero(2 * K - 1)), std::invalid_argument);
  }

  TEST_CASE("Bernoulli AR chain satisfies the recursion")
  {
    CHECK(check_case3_residual(5000, 3).pass);
  }

  TEST_CASE("case 3 marginal G")
  {
    CHECK(marginal_G_case3(0.0) == 0.0);
    CHECK(marginal_G_case3(25.0 / 21.0) == 1.0);
    CHECK(marginal_G_case3(25.0 / 63.0) == doctest::Approx(0.25));
    CHECK(marginal_G_case3(-1.0) == 0.0);
    CHECK(marginal_G_case3(2.0) == 1.0);
    CHECK(triangular_cdf(1.0) == 0.5);
    // G is a CDF: it is the Simpson-integrable antiderivative of a density
    CHECK(marginal_G_case3(0.5 * 25.0 / 21.0) == doctest::Approx(0.5));
  }

  TEST_CASE("marginals of all cases match the target CDF (KS, 1e5 draws)")
  {
    CheckOptions opt;
    for (const auto c : { DependenceCase::Iid, DependenceCase::Logistic,
                          DependenceCase::BernoulliAR }) {
      for (const char* m : { "uniform", "f1", "f2" }) {
        const auto r = check_generator_ks(c, m, opt);
        INFO(r.name, " D = ", r.value);
        CHECK(r.pass);
      }
    }
  }

  TEST_CASE("cases 2 and 3 are serially dependent")
  {
    const Index n = 100000;
    const double se = 1.0 / std::sqrt(static_cast<double>(n));
    Engine r3 = make_engine(21, 0);
    const Eigen::VectorXd z3 = normal_scores(uniform_scores(DependenceCase::BernoulliAR, n, r3));
    CHECK(std::abs(lag1_autocorrelation(z3)) > 5.0 * se);

    // The lag-1 correlation of the normal scores vanishes for case 2 (the
    // induced map on U is symmetric about 1/2); squared scores expose it.
    Engine r2 = make_engine(21, 1);
    const Eigen::VectorXd z2 = normal_scores(uniform_scores(DependenceCase::Logistic, n, r2));
    CHECK(std::abs(lag1_autocorrelation(z2.cwiseAbs2())) > 5.0 * se);

    Engine r1 = make_engine(21, 2);
    const Eigen::VectorXd z1 = normal_scores(uniform_scores(DependenceCase::Iid, n, r1));
    CHECK(std::abs(lag1_autocorrelation(z1)) < 5.0 * se);
  }

  TEST_CASE("regression samples")
  {
    const auto zero = RegressionTarget::custom("zero", [](double) { return 0.0; }, 0.0);
    const Sample s = gen_regression_sample(50, DependenceCase::Logistic, zero, 1, 0);
    CHECK(s.y.cwiseAbs().maxCoeff() == 0.0);
    CHECK(s.model == Model::Regression);

    const auto f1 = RegressionTarget::doppler();
    const Sample a = gen_regression_sample(1000, DependenceCase::BernoulliAR, f1, 9, 2);
    const Sample b = gen_regression_sample(1000, DependenceCase::BernoulliAR, f1, 9, 2);
    CHECK(a.y == b.y);
    CHECK(a.x == b.x);

    // E Y^2 = sigma^2 + ||f||^2
    const Sample big = gen_regression_sample(100000, DependenceCase::Iid, f1, 3, 0);
    const Eigen::ArrayXd y2 = big.y.array().square();
    const double mean = y2.mean();
    const double se = std::sqrt((y2 - mean).square().sum() / (y2.size() - 1.0) / y2.size());
    const double expected = 0.25 + integrate_unit([](double x) {
      return regression_f1(x) * regression_f1(x);
    });
    CHECK(std::abs(mean - expected) < 3.0 * se);
  }

  TEST_CASE("sample dump uses 17 significant digits")
  {
    Sample s;
    s.x = Eigen::VectorXd::Constant(2, 1.0 / 3.0);
    std::ostringstream os;
    write_sample(os, s);
    CHECK(os.str() == "0.33333333333333331\n0.33333333333333331\n");
  }

  TEST_CASE("parsing")
  {
    CHECK(parse_case("2") == DependenceCase::Logistic);
    CHECK_THROWS_AS(parse_case("4"), std::invalid_argument);
    CHECK(parse_model("regression") == Model::Regression);
    CHECK_THROWS_AS(parse_model("x"), std::invalid_argument);
  }
}
