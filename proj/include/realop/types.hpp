#pragma once

#include <Eigen/Dense>

namespace realop {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matd = Mat<double>;
using Vecd = Vec<double>;
using Index = Eigen::Index;

/// Numerical thresholds threaded explicitly through every operation that has
/// to make a tolerance-sensitive decision. There is no global state: callers
/// own the values and pass them down.
struct Tolerances {
  /// Operator-norm threshold under which two matrices count as equal.
  double eq_tol = 1e-9;
  /// Width used when clustering eigenvalues into spectral blocks.
  double eig_cluster_tol = 1e-7;
  /// Relative singular-value cutoff for rank and nullspace decisions.
  double rank_tol = 1e-10;

  bool valid() const {
    return eq_tol > 0.0 && eig_cluster_tol > 0.0 && rank_tol > 0.0;
  }
};

}  // namespace realop
