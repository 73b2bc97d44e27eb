#pragma once

#include "ose/random.hpp"
#include "ose/targets.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace ose {

//! Weak-dependence regimes sharing one marginal law.
enum class DependenceCase
{
  Iid = 1,            //!< F^{-1}(U_i), U_i iid uniform
  Logistic = 2,       //!< logistic-map chain with arcsine invariant law
  BernoulliAR = 3     //!< stationary bilateral Bernoulli autoregression
};

DependenceCase parse_case(const std::string& s);
std::string to_string(DependenceCase c);

enum class Model
{
  Density,
  Regression
};

Model parse_model(const std::string& s);
std::string to_string(Model m);

//! Identically distributed observations. Density: `x` holds the draws and
//! `y` is empty. Regression: `x` holds the design points U_i and `y` the
//! responses Y_i.
struct Sample
{
  Model model = Model::Density;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  DependenceCase dependence = DependenceCase::Iid;
  std::uint64_t seed = 0;
  std::uint64_t rep_index = 0;

  Index size() const { return x.size(); }
};

//! Truncation of the two-sided moving average realizing the Case 3 chain.
inline constexpr Index kBernoulliArTruncation = 40;

//! Arcsine CDF G(y) = (2/pi) asin(sqrt(y)), the invariant law of 4y(1-y).
double arcsine_cdf(double y);
//! Inverse of arcsine_cdf: sin^2(pi u / 2).
double arcsine_quantile(double u);
//! The logistic map T(y) = 4y(1-y).
inline double logistic_map(double y) { return 4.0 * y * (1.0 - y); }

//! CDF of the sum of two independent U[0,1] variables (clamped).
double triangular_cdf(double s);
//! Marginal CDF of the Case 3 chain on [0, 25/21] (clamped outside).
double marginal_G_case3(double y);

//! Logistic-map chain Y_1 = G^{-1}(u1), Y_i = T(Y_{i-1}).
Eigen::VectorXd logistic_chain(double u1, Index n);

//! Case 3 chain from innovations zeta_{1-K}, ..., zeta_{n+K}
//! (size n + 2K): Y_i = (25/63) sum_{|k|<=K} 2^{-|k|} zeta_{i+k}.
Eigen::VectorXd bernoulli_ar_chain(const Eigen::Ref<const Eigen::VectorXd>& zeta,
                                   Index truncation = kBernoulliArTruncation);

//! Dependent uniform scores U_i (uniform marginal) for the chosen case.
Eigen::VectorXd uniform_scores(DependenceCase c, Index n, Engine& rng);

//! Case generators: z_i = quantile(U_i) with U_i from the case's chain.
Eigen::VectorXd gen_case1(Index n, const MarginalLaw& law, Engine& rng);
Eigen::VectorXd gen_case2(Index n, const MarginalLaw& law, Engine& rng);
Eigen::VectorXd gen_case3(Index n, const MarginalLaw& law, Engine& rng);
Eigen::VectorXd generate(DependenceCase c, Index n, const MarginalLaw& law,
                         Engine& rng);

//! Density sample drawn from the (seed, rep_index) stream.
Sample gen_density_sample(Index n, DependenceCase c, const MarginalLaw& law,
                          std::uint64_t seed, std::uint64_t rep_index,
                          StreamTag tag = StreamTag::Evaluation);

//! Regression sample Y_i = f(U_i) + sigma eps_i with uniform-marginal design
//! from the chosen case and iid standard normal eps independent of U.
Sample gen_regression_sample(Index n, DependenceCase c,
                             const RegressionTarget& f, Engine& rng);
Sample gen_regression_sample(Index n, DependenceCase c,
                             const RegressionTarget& f, std::uint64_t seed,
                             std::uint64_t rep_index,
                             StreamTag tag = StreamTag::Evaluation);

//! One draw per line with 17 significant digits; regression samples write
//! "y u" pairs.
void write_sample(std::ostream& os, const Sample& s);

} // namespace ose
