#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "realop/errors.hpp"
#include "realop/types.hpp"

namespace realop {

/// Operator norm (largest singular value). Zero-sized matrices have norm 0.
template <typename Derived>
typename Derived::RealScalar operator_norm(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat<Scalar>> dec(m.derived());
  return dec.singularValues()(0);
}

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* who) {
  if (a.rows() != a.cols())
    throw NonSquare(std::string(who) + ": matrix must be square");
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& a, const char* who) {
  if (!a.allFinite())
    throw NonFinite(std::string(who) + ": matrix has non-finite entries");
}

template <typename Derived>
void require_symmetric(const Eigen::MatrixBase<Derived>& a, const Tolerances& tol,
                       const char* who) {
  using Scalar = typename Derived::Scalar;
  require_square(a, who);
  const Scalar scale = std::max<Scalar>(1, operator_norm(a));
  if (operator_norm(a - a.transpose()) > tol.eq_tol * scale)
    throw NotSymmetric(std::string(who) + ": matrix is not symmetric");
}

template <typename Scalar>
Mat<Scalar> commutator(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  return a * b - b * a;
}

template <typename Derived>
Mat<typename Derived::Scalar> symmetric_part(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  return (a + a.transpose()) / Scalar(2);
}

template <typename Derived>
Mat<typename Derived::Scalar> antisymmetric_part(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  return (a - a.transpose()) / Scalar(2);
}

template <typename Scalar>
struct SymEig {
  Vec<Scalar> values;   ///< ascending
  Mat<Scalar> vectors;  ///< orthogonal; column i pairs with values(i)
};

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps over all off-diagonal pivots in row order, each sweep applying a
/// Givens rotation that zeroes the pivot, until the off-diagonal mass falls
/// below machine precision relative to the input. Eigenvalues come back
/// ascending with the eigenvector columns permuted to match.
template <typename Derived>
SymEig<typename Derived::Scalar> sym_eig(const Eigen::MatrixBase<Derived>& a_in,
                                         const Tolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  require_finite(a_in, "sym_eig");
  require_symmetric(a_in, tol, "sym_eig");

  const Index n = a_in.rows();
  Mat<Scalar> d = symmetric_part(a_in);
  Mat<Scalar> v = Mat<Scalar>::Identity(n, n);
  const Scalar stop = std::numeric_limits<Scalar>::epsilon() *
                      std::max<Scalar>(Scalar(1), d.norm());

  for (int sweep = 0; sweep < 64; ++sweep) {
    Scalar off = 0;
    for (Index p = 0; p < n - 1; ++p)
      for (Index q = p + 1; q < n; ++q) off += d(p, q) * d(p, q);
    off = std::sqrt(Scalar(2) * off);
    if (off <= stop) break;

    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Scalar apq = d(p, q);
        if (std::abs(apq) <= stop / Scalar(n)) continue;
        const Scalar tau = (d(q, q) - d(p, p)) / (Scalar(2) * apq);
        const Scalar t = (tau >= 0 ? Scalar(1) : Scalar(-1)) /
                         (std::abs(tau) + std::sqrt(Scalar(1) + tau * tau));
        const Scalar c = Scalar(1) / std::sqrt(Scalar(1) + t * t);
        const Scalar s = t * c;
        for (Index k = 0; k < n; ++k) {
          const Scalar dpk = d(p, k), dqk = d(q, k);
          d(p, k) = c * dpk - s * dqk;
          d(q, k) = s * dpk + c * dqk;
        }
        for (Index k = 0; k < n; ++k) {
          const Scalar dkp = d(k, p), dkq = d(k, q);
          d(k, p) = c * dkp - s * dkq;
          d(k, q) = s * dkp + c * dkq;
        }
        for (Index k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index(0));
  std::stable_sort(perm.begin(), perm.end(),
                   [&](Index i, Index j) { return d(i, i) < d(j, j); });

  SymEig<Scalar> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index i = 0; i < n; ++i) {
    const Index p = perm[static_cast<std::size_t>(i)];
    out.values(i) = d(p, p);
    out.vectors.col(i) = v.col(p);
  }
  return out;
}

template <typename Scalar>
struct Svd {
  Mat<Scalar> u;       ///< left singular vectors, full
  Vec<Scalar> sigma;   ///< descending, non-negative
  Mat<Scalar> v;       ///< right singular vectors, full
};

template <typename Derived>
Svd<typename Derived::Scalar> svd(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  require_finite(a, "svd");
  Eigen::JacobiSVD<Mat<Scalar>> dec(a.derived(),
                                    Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

/// Number of singular values above the relative cutoff rank_tol * sigma_max.
template <typename Scalar>
Index rank_from_singular_values(const Vec<Scalar>& sigma, const Tolerances& tol) {
  if (sigma.size() == 0) return 0;
  const Scalar cut = tol.rank_tol * sigma(0);
  Index r = 0;
  for (Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > cut) ++r;
  return r;
}

/// Orthonormal basis of the kernel, returned as columns. The kernel dimension
/// is the number of singular values at or below rank_tol * sigma_max.
template <typename Derived>
Mat<typename Derived::Scalar> nullspace(const Eigen::MatrixBase<Derived>& a,
                                        const Tolerances& tol = {}) {
  auto dec = svd(a);
  const Index r = rank_from_singular_values(dec.sigma, tol);
  return dec.v.rightCols(a.cols() - r);
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& a, const Tolerances& tol = {}) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat<Scalar>> dec(a.derived());
  Vec<Scalar> sigma = dec.singularValues();
  return rank_from_singular_values(sigma, tol);
}

/// Matrix exponential (scaling and squaring with Pade approximants).
template <typename Derived>
Mat<typename Derived::Scalar> expm(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  require_finite(a, "expm");
  require_square(a, "expm");
  Mat<Scalar> m = a;
  return m.exp();
}

/// Principal matrix logarithm, defined only near the identity.
///
/// Requires ||u - I|| < 1 in operator norm so the principal branch is
/// unambiguous; anything farther away raises TooFarFromIdentity.
template <typename Derived>
Mat<typename Derived::Scalar> logm_near_identity(const Eigen::MatrixBase<Derived>& u,
                                                 const Tolerances& tol = {}) {
  (void)tol;
  using Scalar = typename Derived::Scalar;
  require_finite(u, "logm_near_identity");
  require_square(u, "logm_near_identity");
  const Index n = u.rows();
  Mat<Scalar> m = u;
  const Scalar dist = operator_norm(Mat<Scalar>(m - Mat<Scalar>::Identity(n, n)));
  if (!(dist < Scalar(1)))
    throw TooFarFromIdentity("logm_near_identity: ||u - I|| = " +
                             std::to_string(static_cast<double>(dist)) +
                             " is not < 1");
  return m.log();
}

}  // namespace realop
