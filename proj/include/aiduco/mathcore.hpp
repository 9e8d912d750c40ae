#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace aiduco {

using Vec3 = Eigen::Matrix<double, 3, 1>;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec12 = Eigen::Matrix<double, 12, 1>;
using Mat3 = Eigen::Matrix<double, 3, 3>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat12 = Eigen::Matrix<double, 12, 12>;
using Mat6x12 = Eigen::Matrix<double, 6, 12>;

/// Skew-symmetric cross-product matrix: skew(a) * b == a x b.
Mat3 skew(const Vec3& a);

/// ad([nu; omega]) = [[J(omega), 0], [J(nu), J(omega)]].
Mat6 ad_operator(const Vec6& v);

namespace detail {

// Largest ||A dt / 2^k||_1 admitted into the series kernel.
inline constexpr double kExpmScaledNorm = 0.5;

}  // namespace detail

/// Matrix exponential e^(A dt) by scaling and squaring around a Taylor
/// kernel. The input is scaled until its 1-norm is at most 0.5, where 20
/// series terms are well below double precision.
template <typename Derived>
typename Derived::PlainObject expm(const Eigen::MatrixBase<Derived>& a, double dt) {
  using Plain = typename Derived::PlainObject;
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("expm: matrix must be square");
  }
  if (!(dt >= 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("expm: dt must be finite and non-negative");
  }
  const Eigen::Index n = a.rows();
  Plain x = a * dt;
  if (!x.allFinite()) {
    throw std::invalid_argument("expm: non-finite input");
  }
  // Induced 1-norm: maximum absolute column sum.
  const double norm = n == 0 ? 0.0 : x.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > detail::kExpmScaledNorm) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / detail::kExpmScaledNorm)));
    x /= std::ldexp(1.0, squarings);
  }

  Plain result = Plain::Identity(n, n);
  Plain term = Plain::Identity(n, n);
  for (int k = 1; k <= 20; ++k) {
    term = (term * x) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() <= 1e-18 * result.cwiseAbs().maxCoeff()) {
      break;
    }
  }
  for (int s = 0; s < squarings; ++s) {
    result = (result * result).eval();
  }
  return result;
}

struct SymEigResult {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column i pairs with values(i)
};

/// Cyclic Jacobi eigensolver for a real symmetric matrix. The input is
/// symmetrized as (S + S^T) / 2 before iterating.
SymEigResult sym_eig(const Eigen::Ref<const Eigen::MatrixXd>& s);

struct SvdResult {
  Eigen::VectorXd singular_values;  // descending
  Eigen::MatrixXd v;                // right singular vectors, matching order
};

/// Thin SVD (singular values and right singular vectors) by one-sided
/// Jacobi rotations on the columns of A. Suited to tall matrices with a
/// handful of columns such as stacked observability or regressor blocks.
SvdResult jacobi_svd(const Eigen::Ref<const Eigen::MatrixXd>& a);

/// Number of singular values strictly greater than tol_rel * sigma_max.
int numerical_rank(const Eigen::Ref<const Eigen::MatrixXd>& a, double tol_rel = 1e-8);

}  // namespace aiduco
