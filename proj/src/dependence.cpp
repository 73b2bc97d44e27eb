#include "ose/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace ose {

DependenceCase parse_case(const std::string& s)
{
  if (s == "1" || s == "iid" || s == "case1") {
    return DependenceCase::Iid;
  }
  if (s == "2" || s == "logistic" || s == "case2") {
    return DependenceCase::Logistic;
  }
  if (s == "3" || s == "bernoulli" || s == "case3") {
    return DependenceCase::BernoulliAR;
  }
  throw std::invalid_argument("unknown dependence case '" + s + "'");
}

std::string to_string(DependenceCase c)
{
  return std::to_string(static_cast<int>(c));
}

Model parse_model(const std::string& s)
{
  if (s == "density") {
    return Model::Density;
  }
  if (s == "regression") {
    return Model::Regression;
  }
  throw std::invalid_argument("unknown model '" + s + "'");
}

std::string to_string(Model m)
{
  return m == Model::Density ? "density" : "regression";
}

double arcsine_cdf(double y)
{
  y = std::clamp(y, 0.0, 1.0);
  return 2.0 / std::numbers::pi * std::asin(std::sqrt(y));
}

double arcsine_quantile(double u)
{
  const double s = std::sin(std::numbers::pi * u / 2.0);
  return s * s;
}

double triangular_cdf(double s)
{
  if (s <= 0.0) {
    return 0.0;
  }
  if (s <= 1.0) {
    return 0.5 * s * s;
  }
  if (s < 2.0) {
    const double t = 2.0 - s;
    return 1.0 - 0.5 * t * t;
  }
  return 1.0;
}

double marginal_G_case3(double y)
{
  // Y = (25/63)(zeta + W), W = sum of two independent dyadic uniforms
  const double s = 63.0 * y / 25.0;
  return 0.5 * triangular_cdf(s) + 0.5 * triangular_cdf(s - 1.0);
}

Eigen::VectorXd logistic_chain(double u1, Index n)
{
  Eigen::VectorXd y(n);
  if (n == 0) {
    return y;
  }
  y[0] = arcsine_quantile(u1);
  for (Index i = 1; i < n; ++i) {
    y[i] = logistic_map(y[i - 1]);
  }
  return y;
}

Eigen::VectorXd bernoulli_ar_chain(const Eigen::Ref<const Eigen::VectorXd>& zeta,
                                   Index truncation)
{
  const Index n = zeta.size() - 2 * truncation;
  if (n < 0) {
    throw std::invalid_argument("bernoulli_ar_chain: too few innovations");
  }
  Eigen::VectorXd kernel(2 * truncation + 1);
  for (Index k = -truncation; k <= truncation; ++k) {
    kernel[k + truncation] = std::ldexp(1.0, -static_cast<int>(std::abs(k)));
  }
  Eigen::VectorXd y(n);
  for (Index i = 0; i < n; ++i) {
    y[i] = (25.0 / 63.0) * kernel.dot(zeta.segment(i, kernel.size()));
  }
  return y;
}

Eigen::VectorXd uniform_scores(DependenceCase c, Index n, Engine& rng)
{
  if (n < 1) {
    throw std::invalid_argument("uniform_scores: n must be >= 1");
  }
  Eigen::VectorXd u(n);
  switch (c) {
  case DependenceCase::Iid:
    for (Index i = 0; i < n; ++i) {
      u[i] = uniform01(rng);
    }
    break;
  case DependenceCase::Logistic: {
    const Eigen::VectorXd y = logistic_chain(uniform01(rng), n);
    u = y.unaryExpr([](double v) { return arcsine_cdf(v); });
    break;
  }
  case DependenceCase::BernoulliAR: {
    Eigen::VectorXd zeta(n + 2 * kBernoulliArTruncation);
    for (Index i = 0; i < zeta.size(); ++i) {
      zeta[i] = static_cast<double>(rng() >> 63);
    }
    const Eigen::VectorXd y = bernoulli_ar_chain(zeta);
    u = y.unaryExpr([](double v) { return marginal_G_case3(v); });
    break;
  }
  }
  return u;
}

namespace {

Eigen::VectorXd apply_quantile(const Eigen::VectorXd& u, const MarginalLaw& law)
{
  if (law.is_uniform()) {
    return u;
  }
  return u.unaryExpr([&law](double v) { return law.quantile(v); });
}

} // namespace

Eigen::VectorXd gen_case1(Index n, const MarginalLaw& law, Engine& rng)
{
  return apply_quantile(uniform_scores(DependenceCase::Iid, n, rng), law);
}

Eigen::VectorXd gen_case2(Index n, const MarginalLaw& law, Engine& rng)
{
  return apply_quantile(uniform_scores(DependenceCase::Logistic, n, rng), law);
}

Eigen::VectorXd gen_case3(Index n, const MarginalLaw& law, Engine& rng)
{
  return apply_quantile(uniform_scores(DependenceCase::BernoulliAR, n, rng), law);
}

Eigen::VectorXd generate(DependenceCase c, Index n, const MarginalLaw& law,
                         Engine& rng)
{
  return apply_quantile(uniform_scores(c, n, rng), law);
}

Sample gen_density_sample(Index n, DependenceCase c, const MarginalLaw& law,
                          std::uint64_t seed, std::uint64_t rep_index,
                          StreamTag tag)
{
  Engine rng = make_engine(seed, rep_index, tag);
  Sample s;
  s.model = Model::Density;
  s.x = generate(c, n, law, rng);
  s.dependence = c;
  s.seed = seed;
  s.rep_index = rep_index;
  return s;
}

Sample gen_regression_sample(Index n, DependenceCase c,
                             const RegressionTarget& f, Engine& rng)
{
  Sample s;
  s.model = Model::Regression;
  s.dependence = c;
  s.x = uniform_scores(c, n, rng);
  s.y.resize(n);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (Index i = 0; i < n; ++i) {
    s.y[i] = f(s.x[i]) + f.noise_sigma() * noise(rng);
  }
  return s;
}

Sample gen_regression_sample(Index n, DependenceCase c,
                             const RegressionTarget& f, std::uint64_t seed,
                             std::uint64_t rep_index, StreamTag tag)
{
  Engine rng = make_engine(seed, rep_index, tag);
  Sample s = gen_regression_sample(n, c, f, rng);
  s.seed = seed;
  s.rep_index = rep_index;
  return s;
}

void write_sample(std::ostream& os, const Sample& s)
{
  const auto old = os.precision(17);
  for (Index i = 0; i < s.size(); ++i) {
    if (s.model == Model::Regression) {
      os << s.y[i] << ' ' << s.x[i] << '\n';
    } else {
      os << s.x[i] << '\n';
    }
  }
  os.precision(old);
}

} // namespace ose
