/**
 * @file linalg.hpp
 * @brief Floating-point factorizations: rank, least squares, inverse.
 *
 * Thin wrappers over Eigen dense decompositions.  Numerical rank counts
 * singular values at or above an absolute threshold eps, so the convention
 * is scale-consistent: rank(c*A, c*eps) == rank(A, eps).
 */
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include <viss/polynomial.hpp>

namespace viss {

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Singular values in descending order (empty for an empty matrix).
template <class Scalar>
Eigen::VectorXd singular_values(const Mat<Scalar>& A) {
  if (A.rows() == 0 || A.cols() == 0) return Eigen::VectorXd();
  Eigen::JacobiSVD<Mat<Scalar>> svd(A);
  return svd.singularValues();
}

/// Number of singular values >= eps (absolute threshold).
template <class Scalar>
int numerical_rank(const Mat<Scalar>& A, double eps) {
  const Eigen::VectorXd sv = singular_values<Scalar>(A);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] >= eps) ++r;
  }
  return r;
}

/// k-th largest singular value (1-based); 0 when the matrix has fewer than k
/// singular values.
template <class Scalar>
double sigma_k(const Mat<Scalar>& A, int k) {
  if (k <= 0) return std::numeric_limits<double>::infinity();
  const Eigen::VectorXd sv = singular_values<Scalar>(A);
  if (k > sv.size()) return 0.0;
  return sv[k - 1];
}

/// Smallest singular value of a (nonempty) matrix.
template <class Scalar>
double sigma_min(const Mat<Scalar>& A) {
  const Eigen::VectorXd sv = singular_values<Scalar>(A);
  if (sv.size() == 0) return 0.0;
  return sv[sv.size() - 1];
}

/// Minimum-norm least-squares solution of A x ~= b via SVD.
template <class Scalar>
Vec<Scalar> least_squares(const Mat<Scalar>& A, const Vec<Scalar>& b) {
  if (A.cols() == 0) return Vec<Scalar>(0);
  Eigen::JacobiSVD<Mat<Scalar>> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.solve(b);
}

/// Approximate inverse via LU with partial pivoting.  Returns an empty
/// optional (rather than throwing or returning garbage) when a pivot is
/// exactly zero or the inverse contains non-finite entries.
template <class Scalar>
std::optional<Mat<Scalar>> approximate_inverse(const Mat<Scalar>& A) {
  if (A.rows() != A.cols() || A.rows() == 0) return std::nullopt;
  Eigen::PartialPivLU<Mat<Scalar>> lu(A);
  const auto& packed = lu.matrixLU();
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    if (packed(i, i) == Scalar(0)) return std::nullopt;
  }
  Mat<Scalar> inv = lu.inverse();
  if (!inv.allFinite()) return std::nullopt;
  return inv;
}

/// Solve a square linear system by partial-pivoted LU (Newton steps).
template <class Scalar>
std::optional<Vec<Scalar>> solve_square(const Mat<Scalar>& A, const Vec<Scalar>& b) {
  if (A.rows() != A.cols() || A.rows() != b.size()) return std::nullopt;
  Eigen::PartialPivLU<Mat<Scalar>> lu(A);
  const auto& packed = lu.matrixLU();
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    if (packed(i, i) == Scalar(0)) return std::nullopt;
  }
  Vec<Scalar> x = lu.solve(b);
  if (!x.allFinite()) return std::nullopt;
  return x;
}

/// Evaluate a polynomial system into an Eigen vector.
template <class Scalar>
Vec<Scalar> eval_system(const PolySystem<Scalar>& sys, const Vec<Scalar>& pt) {
  std::vector<Scalar> p(pt.data(), pt.data() + pt.size());
  Vec<Scalar> out(static_cast<Eigen::Index>(sys.size()));
  for (std::size_t i = 0; i < sys.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = sys.polys[i].template evaluate<Scalar>(p);
  }
  return out;
}

/// Evaluate the full Jacobian (all rows, all variables) at a point.
template <class Scalar>
Mat<Scalar> eval_jacobian(const PolySystem<Scalar>& sys, const Vec<Scalar>& pt) {
  std::vector<Scalar> p(pt.data(), pt.data() + pt.size());
  Mat<Scalar> J(static_cast<Eigen::Index>(sys.size()),
                static_cast<Eigen::Index>(sys.nvars));
  for (std::size_t i = 0; i < sys.size(); ++i) {
    for (int j = 0; j < sys.nvars; ++j) {
      J(static_cast<Eigen::Index>(i), j) =
          sys.polys[i].differentiate(j).template evaluate<Scalar>(p);
    }
  }
  return J;
}

template <class Scalar>
double inf_norm(const Vec<Scalar>& v) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    m = std::max(m, static_cast<double>(std::abs(v[i])));
  return m;
}

}  // namespace viss
