#include "ose/targets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ose {

namespace {

void check_unit(double x, const char* who)
{
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(who) + ": x outside [0,1]");
  }
}

double normal_pdf(double x, double mu, double sd)
{
  const double z = (x - mu) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

const DensityTarget& f1_target()
{
  static const DensityTarget t = DensityTarget::f1();
  return t;
}

const DensityTarget& f2_target()
{
  static const DensityTarget t = DensityTarget::f2();
  return t;
}

} // namespace

double density_f1_shape(double x)
{
  return 0.3 * normal_pdf(x, 0.5, 0.1) + 0.25 * normal_pdf(x, 0.7, 0.06);
}

double density_f2_shape(double x)
{
  return std::pow(4.0 * (1.0 + std::abs(5.0 * (x - 0.5))), -1.5);
}

double density_f1(double x)
{
  return f1_target()(x);
}

double density_f2(double x)
{
  return f2_target()(x);
}

double regression_f1(double x)
{
  check_unit(x, "regression_f1");
  return std::sqrt(x * (1.0 - x)) *
         std::sin(2.6 * std::numbers::pi / (x + 0.3));
}

double regression_f2(double x)
{
  check_unit(x, "regression_f2");
  // [0, 1/4] is closed on the right
  return x <= 0.25 ? std::sin(4.0 * x) : 1.0;
}

// ---------------------------------------------------------------------------

DensityTarget::DensityTarget(DensityId id, std::string name, RealFunction shape)
  : id_(id)
  , name_(std::move(name))
  , shape_(std::move(shape))
{
  const double mass = integrate_unit(shape_);
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw std::invalid_argument("DensityTarget: shape has no positive mass");
  }
  normalizer_ = 1.0 / mass;
}

DensityTarget DensityTarget::f1()
{
  return { DensityId::F1Mix, "f1", density_f1_shape };
}

DensityTarget DensityTarget::f2()
{
  return { DensityId::F2Poly, "f2", density_f2_shape };
}

DensityTarget DensityTarget::uniform()
{
  return { DensityId::Uniform, "uniform", [](double) { return 1.0; } };
}

DensityTarget DensityTarget::custom(std::string name, RealFunction shape)
{
  return { DensityId::Custom, std::move(name), std::move(shape) };
}

double DensityTarget::operator()(double x) const
{
  check_unit(x, "DensityTarget");
  return normalizer_ * shape_(x);
}

// ---------------------------------------------------------------------------

RegressionTarget::RegressionTarget(RegressionId id, std::string name,
                                   RealFunction f, double noise_sigma)
  : id_(id)
  , name_(std::move(name))
  , f_(std::move(f))
  , noise_sigma_(noise_sigma)
{
  if (!(noise_sigma >= 0.0)) {
    throw std::invalid_argument("RegressionTarget: negative noise level");
  }
}

RegressionTarget RegressionTarget::doppler(double noise_sigma)
{
  return { RegressionId::Doppler, "f1", regression_f1, noise_sigma };
}

RegressionTarget RegressionTarget::sin_step(double noise_sigma)
{
  return { RegressionId::SinStep, "f2", regression_f2, noise_sigma };
}

RegressionTarget RegressionTarget::custom(std::string name, RealFunction f,
                                          double noise_sigma)
{
  return { RegressionId::Custom, std::move(name), std::move(f), noise_sigma };
}

double RegressionTarget::operator()(double x) const
{
  check_unit(x, "RegressionTarget");
  return f_(x);
}

// ---------------------------------------------------------------------------

MarginalLaw::MarginalLaw(DensityTarget density)
  : density_(std::move(density))
  , identity_(density_.id() == DensityId::Uniform)
{
  if (identity_) {
    return;
  }
  knots_ = unit_grid(kQuadratureNodes);
  cumulative_.resize(kQuadratureNodes);
  cumulative_[0] = 0.0;
  const auto& d = density_;
  const auto f = [&d](double t) { return d.shape(t); };
  for (Index k = 1; k < knots_.size(); ++k) {
    cumulative_[k] = cumulative_[k - 1] + simpson_cell(f, knots_[k - 1], knots_[k]);
  }
}

MarginalLaw MarginalLaw::uniform()
{
  return MarginalLaw(DensityTarget::uniform());
}

MarginalLaw make_law(const DensityTarget& d)
{
  return MarginalLaw(d);
}

double MarginalLaw::partial(Index cell, double x) const
{
  const auto& d = density_;
  return cumulative_[cell] +
         simpson_cell([&d](double t) { return d.shape(t); }, knots_[cell], x);
}

double MarginalLaw::cdf(double x) const
{
  if (x <= 0.0) {
    return 0.0;
  }
  if (x >= 1.0) {
    return 1.0;
  }
  if (identity_) {
    return x;
  }
  const Index cells = knots_.size() - 1;
  const Index cell =
    std::min<Index>(static_cast<Index>(x * static_cast<double>(cells)), cells - 1);
  return partial(cell, x) / cumulative_[cells];
}

double MarginalLaw::quantile(double u) const
{
  if (u <= 0.0) {
    return 0.0;
  }
  if (u >= 1.0) {
    return 1.0;
  }
  if (identity_) {
    return u;
  }
  const Index cells = knots_.size() - 1;
  const double target = u * cumulative_[cells];
  const auto* begin = cumulative_.data();
  const auto* end = begin + cumulative_.size();
  // first knot with cumulative > target; the cell is the one before it
  const auto it = std::upper_bound(begin, end, target);
  Index cell = std::clamp<Index>(static_cast<Index>(it - begin) - 1, 0, cells - 1);

  double lo = knots_[cell];
  double hi = knots_[cell + 1];
  const double tol = 1e-9 * cumulative_[cells];
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double v = partial(cell, mid);
    if (std::abs(v - target) <= tol) {
      return mid;
    }
    if (v < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace ose
