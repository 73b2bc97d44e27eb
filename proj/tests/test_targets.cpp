#include "oracles.hpp"

#include "ose/targets.hpp"

#include <doctest.h>

using namespace ose;

namespace {

// Reference values from closed-form Gaussian CDFs / antiderivatives.
constexpr double kF1Normalizer = 1.8181826236494;
constexpr double kF2Normalizer = 21.4833147735479;
constexpr double kF1CdfAt037 = 0.0528001399864706;
// int_0^1 f1_reg(x) sqrt(2) cos(2 pi x) dx and int_0^1 f1_reg^2 (adaptive
// quadrature, 1e-14 absolute tolerance).
constexpr double kDopplerTheta1 = 0.0689600051097317;
constexpr double kDopplerNormSq = 0.0870688239343376;

} // namespace

TEST_SUITE("targets")
{
  TEST_CASE("density f1: pointwise value and normalizer")
  {
    const double shape = 0.3 * oracle::gaussian_pdf(0.5, 0.5, 0.1) +
                         0.25 * oracle::gaussian_pdf(0.5, 0.7, 0.06);
    CHECK(density_f1_shape(0.5) == doctest::Approx(shape).epsilon(1e-14));
    CHECK(density_f1_shape(0.5) == doctest::Approx(1.20325300368884).epsilon(1e-12));
    const auto t = DensityTarget::f1();
    CHECK(t.normalizer() == doctest::Approx(kF1Normalizer).epsilon(1e-9));
    CHECK(density_f1(0.5) == doctest::Approx(kF1Normalizer * shape).epsilon(1e-9));
    CHECK_THROWS_AS(density_f1(-0.1), std::domain_error);
  }

  TEST_CASE("density f2: values, symmetry, normalizer")
  {
    CHECK(density_f2_shape(0.5) == doctest::Approx(0.125));
    CHECK(density_f2_shape(0.7) == doctest::Approx(std::pow(8.0, -1.5)));
    CHECK(density_f2_shape(0.7) == doctest::Approx(0.0441942).epsilon(1e-6));
    for (const double t : { 0.01, 0.1, 0.33, 0.5 }) {
      CHECK(density_f2(0.5 + t) == doctest::Approx(density_f2(0.5 - t)).epsilon(1e-14));
    }
    CHECK(DensityTarget::f2().normalizer() == doctest::Approx(kF2Normalizer).epsilon(1e-8));
  }

  TEST_CASE("densities integrate to one and are nonnegative")
  {
    for (const auto& d : { DensityTarget::f1(), DensityTarget::f2(), DensityTarget::uniform() }) {
      CHECK(integrate_unit([&](double x) { return d(x); }) == doctest::Approx(1.0).epsilon(1e-6));
      for (int g = 0; g < 10000; ++g) {
        CHECK(d(g / 9999.0) >= 0.0);
      }
    }
  }

  TEST_CASE("regression targets")
  {
    CHECK(regression_f1(0.0) == 0.0);
    CHECK(regression_f2(0.5) == 1.0);
    CHECK(regression_f2(0.25) == doctest::Approx(std::sin(1.0)));
    CHECK(regression_f2(0.25) == doctest::Approx(0.841471).epsilon(1e-6));
    CHECK(regression_f2(0.2500001) == 1.0);
    CHECK_THROWS_AS(regression_f1(1.01), std::domain_error);
    const auto r = RegressionTarget::doppler();
    CHECK(r.noise_sigma() == 0.5);
    CHECK(squared_norm([&](double x) { return r(x); }) ==
          doctest::Approx(kDopplerNormSq).epsilon(1e-8));
  }

  TEST_CASE("cdf and quantile")
  {
    const MarginalLaw uni = MarginalLaw::uniform();
    for (const double u : { 0.0, 0.123, 0.5, 0.999 }) {
      CHECK(uni.quantile(u) == u);
    }
    const MarginalLaw l1(DensityTarget::f1());
    CHECK(l1.cdf(0.0) == 0.0);
    CHECK(l1.cdf(1.0) == 1.0);
    CHECK(l1.cdf(0.37) == doctest::Approx(kF1CdfAt037).epsilon(1e-7));
    CHECK(std::abs(l1.quantile(l1.cdf(0.37)) - 0.37) < 1e-6);

    const MarginalLaw l2(DensityTarget::f2());
    CHECK(std::abs(l2.quantile(0.5) - 0.5) < 1e-9);
  }

  TEST_CASE("quantile inverts cdf on a 99-point interior grid")
  {
    for (const auto& law : { MarginalLaw(DensityTarget::f1()), MarginalLaw(DensityTarget::f2()),
                             MarginalLaw::uniform() }) {
      double prev = -1.0;
      for (int i = 1; i <= 99; ++i) {
        const double x = i / 100.0;
        const double c = law.cdf(x);
        CHECK(c >= prev);
        prev = c;
        // where the density is tiny the inverse is ill-conditioned
        const double dens = law.is_uniform() ? 1.0 : (law.cdf(x + 1e-4) - law.cdf(x - 1e-4)) / 2e-4;
        CHECK(std::abs(law.quantile(c) - x) * dens < 1e-8);
        CHECK(std::abs(law.cdf(law.quantile(x)) - x) < 1e-9);
      }
    }
  }

  TEST_CASE("true coefficients")
  {
    const Eigen::VectorXd uni = true_coefficients([](double) { return 1.0; }, 20);
    CHECK(uni[0] == doctest::Approx(1.0));
    CHECK(uni.tail(20).cwiseAbs().maxCoeff() < 1e-12);

    const Eigen::VectorXd self = true_coefficients([](double x) { return oracle::phi(1, x); }, 10);
    CHECK(self[1] == doctest::Approx(1.0).epsilon(1e-8));
    Eigen::VectorXd rest = self;
    rest[1] = 0.0;
    CHECK(rest.cwiseAbs().maxCoeff() < 1e-8);

    const auto doppler = [](double x) { return regression_f1(x); };
    const double coarse = true_coefficients(doppler, 1, 4097)[1];
    const double fine = true_coefficients(doppler, 1, 16385)[1];
    // the endpoint square-root singularity limits Simpson to O(h^1.5)
    CHECK(coarse == doctest::Approx(kDopplerTheta1).epsilon(1e-5));
    CHECK(fine == doctest::Approx(kDopplerTheta1).epsilon(2e-6));
    CHECK(std::abs(fine - kDopplerTheta1) < std::abs(coarse - kDopplerTheta1));
    // independent route
    const double romberg = oracle::romberg2(
      [](double x) { return regression_f1(x) * oracle::phi(1, x); }, 20000);
    CHECK(romberg == doctest::Approx(kDopplerTheta1).epsilon(1e-5));
  }

  TEST_CASE("Parseval at truncation")
  {
    const std::vector<std::function<double(double)>> fs{
      [](double x) { return density_f1(x); }, [](double x) { return density_f2(x); },
      [](double x) { return regression_f1(x); }, [](double x) { return regression_f2(x); }
    };
    for (const auto& f : fs) {
      const double norm = squared_norm(f);
      const Eigen::VectorXd theta = true_coefficients(f, 200);
      double partial = 0.0;
      double prev_gap = std::numeric_limits<double>::infinity();
      for (Index m = 0; m <= 200; ++m) {
        partial += theta[m] * theta[m];
        const double gap = norm - partial;
        CHECK(gap >= -1e-10);
        CHECK(gap <= prev_gap + 1e-15);
        prev_gap = gap;
      }
    }
  }
}
