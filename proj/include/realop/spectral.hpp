#pragma once

#include <array>
#include <functional>
#include <vector>

#include "realop/types.hpp"

namespace realop {

/// One spectral block: a clustered eigenvalue with its orthogonal projector.
struct PvmBlock {
  double eigenvalue = 0;  ///< mean of the clustered eigenvalues
  Index multiplicity = 0;
  Matd projector;
};

/// Projection-valued measure of a symmetric matrix: finitely many blocks,
/// ascending in eigenvalue, whose projectors sum to the identity.
struct Pvm {
  std::vector<PvmBlock> blocks;
  Index dimension = 0;
};

/// Spectral decomposition with eigenvalues clustered at eig_cluster_tol:
/// consecutive eigenvalues closer than the tolerance share a block.
Pvm pvm_of(const Matd& a, const Tolerances& tol = {});

/// Functional calculus sum f(lambda) P over the blocks. The function must be
/// finite at every block eigenvalue, else FunctionUndefinedAtEigenvalue.
Matd apply_function(const Pvm& p, const std::function<double(double)>& f);
Matd apply_function(const Matd& a, const std::function<double(double)>& f,
                    const Tolerances& tol = {});

/// Whether a symmetric matrix is positive semidefinite up to tolerance:
/// smallest eigenvalue >= -eq_tol * max(1, ||a||).
bool is_positive(const Matd& a, const Tolerances& tol = {});

/// Unique positive square root of a positive semidefinite matrix. Raises
/// NotPositive when the smallest eigenvalue is below the tolerance floor;
/// slightly negative eigenvalues inside it are clamped to zero.
Matd sqrt_psd(const Matd& a, const Tolerances& tol = {});

/// a = u p with p = sqrt(a^T a) positive and u a partial isometry carrying
/// Ran(p) onto Ran(a), extended by zero on Ker(p). Shares its kernel with a.
struct PolarDecomposition {
  Matd u;
  Matd p;
  Index kernel_dim = 0;
};

PolarDecomposition polar(const Matd& a, const Tolerances& tol = {});

/// Generator recovered from a one-parameter orthogonal group at a single
/// sample step: antisymmetric part of log(group(h)) / h, plus the norm of
/// the discarded symmetric part as a drift diagnostic.
struct StoneResult {
  Matd generator;
  double symmetric_residual = 0;
  double sample_step = 0;
};

/// Raises NotUnitaryAtSample if group(h) is not orthogonal within eq_tol,
/// TooFarFromIdentity if the sample leaves the domain of the logarithm.
StoneResult stone_generator(const std::function<Matd(double)>& group, double h,
                            const Tolerances& tol = {});

/// Residuals of [b, -] across everything derived from a: the generator, the
/// group it generates at a few times, and both polar factors.
struct CommutationReport {
  double generator_residual = 0;
  std::array<double, 3> group_times{0.3, 1.0, 2.0};
  std::array<double, 3> group_residuals{};
  double unitary_residual = 0;
  double positive_residual = 0;
  bool commutes_with_generator = false;
  bool propagated = false;
};

CommutationReport commutation_propagation_check(const Matd& a, const Matd& b,
                                                const Tolerances& tol = {});

}  // namespace realop
