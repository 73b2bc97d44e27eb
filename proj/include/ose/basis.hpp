#pragma once

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <variant>
#include <vector>

namespace ose {

using Index = Eigen::Index;

//! Sup-norm constant of the trigonometric system: sup_x sum_{j<=m} phi_j(x)^2
//! <= kTrigZetaSq * m for every m.
inline constexpr double kTrigZetaSq = 2.0;

//! Trigonometric orthonormal system on [0,1].
//!
//! Index 0 is the constant 1, index 2k-1 is sqrt(2) cos(2 pi k x) and index
//! 2k is sqrt(2) sin(2 pi k x). In density mode (`constant_fixed`) the
//! coefficient of the constant is known to be 1 and is not estimated.
struct TrigBasis
{
  Index max_index = 1024;
  bool constant_fixed = false;

  void check_index(Index j) const
  {
    if (j < 0 || j > max_index) {
      throw std::domain_error("TrigBasis: index out of range");
    }
  }

  //! phi_j(x). Throws std::domain_error for j outside [0, max_index] or x
  //! outside [0,1].
  double operator()(Index j, double x) const;

  //! All of phi_0(x), ..., phi_m(x).
  Eigen::VectorXd row(double x, Index m) const;

  //! Matrix of phi_j(x_i), one row per point, columns 0..m.
  Eigen::MatrixXd design(const Eigen::Ref<const Eigen::VectorXd>& x,
                         Index m) const;
};

//! phi_j(x) by direct evaluation.
template <typename Scalar>
Scalar trig_basis(Index j, Scalar x)
{
  using std::cos;
  using std::sin;
  if (j == 0) {
    return Scalar(1);
  }
  const Index k = (j + 1) / 2;
  const Scalar arg = Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(k) * x;
  const Scalar s2 = std::numbers::sqrt2_v<Scalar>;
  return (j % 2 == 1) ? s2 * cos(arg) : s2 * sin(arg);
}

//! Writes phi_0(x)..phi_{out.size()-1}(x) into `out` using the angle-addition
//! recurrence; one sin/cos pair per call.
template <typename Scalar, typename Derived>
void trig_basis_row(Scalar x, Eigen::DenseBase<Derived>& out)
{
  using std::cos;
  using std::sin;
  const Index len = out.size();
  if (len == 0) {
    return;
  }
  out[0] = Scalar(1);
  const Scalar s2 = std::numbers::sqrt2_v<Scalar>;
  const Scalar angle = Scalar(2) * std::numbers::pi_v<Scalar> * x;
  const Scalar c1 = cos(angle);
  const Scalar s1 = sin(angle);
  Scalar ck = c1;
  Scalar sk = s1;
  for (Index j = 1; j < len; j += 2) {
    out[j] = s2 * ck;
    if (j + 1 < len) {
      out[j + 1] = s2 * sk;
    }
    const Scalar cn = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = cn;
  }
}

// ---------------------------------------------------------------------------
// Smoothness weights and the minimax rate.
// ---------------------------------------------------------------------------

//! gamma_j = j^(-2p), p > 0.
struct PolynomialWeights
{
  double p;
};

//! gamma_j = exp(-j^(2p)), p > 0.
struct ExponentialWeights
{
  double p;
};

//! Explicit gamma_1, gamma_2, ...; beyond the list the last value repeats.
struct CustomWeights
{
  std::vector<double> values;
};

using WeightSequence =
  std::variant<PolynomialWeights, ExponentialWeights, CustomWeights>;

//! gamma_j for j >= 1. Throws std::domain_error for j < 1.
double weight(const WeightSequence& seq, Index j);

//! Checks positivity and monotonicity of gamma_1..gamma_upto.
bool is_valid_weight_sequence(const WeightSequence& seq, Index upto);

struct RateResult
{
  Index m_star = 0;
  double r_star = 0.0;
  //! max(gamma_m, m/n) for m = 1..n (entry m-1).
  Eigen::VectorXd per_m_values;
};

//! Scans m = 1..n and returns the smallest minimizer of max(gamma_m, m/n).
RateResult optimal_dimension(const WeightSequence& seq, Index n);

} // namespace ose
