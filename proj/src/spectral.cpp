#include "realop/spectral.hpp"

#include <cmath>
#include <string>

#include "realop/errors.hpp"
#include "realop/linalg.hpp"

namespace realop {

Pvm pvm_of(const Matd& a, const Tolerances& tol) {
  SymEig<double> eig = sym_eig(a, tol);
  const Index n = a.rows();

  Pvm out;
  out.dimension = n;
  Index start = 0;
  while (start < n) {
    Index end = start + 1;
    while (end < n && eig.values(end) - eig.values(end - 1) <= tol.eig_cluster_tol)
      ++end;
    PvmBlock block;
    block.multiplicity = end - start;
    block.eigenvalue = eig.values.segment(start, end - start).mean();
    auto cols = eig.vectors.middleCols(start, end - start);
    block.projector = cols * cols.transpose();
    out.blocks.push_back(std::move(block));
    start = end;
  }
  return out;
}

Matd apply_function(const Pvm& p, const std::function<double(double)>& f) {
  Matd out = Matd::Zero(p.dimension, p.dimension);
  for (const PvmBlock& block : p.blocks) {
    const double value = f(block.eigenvalue);
    if (!std::isfinite(value))
      throw FunctionUndefinedAtEigenvalue(
          "apply_function: function is not finite at eigenvalue " +
          std::to_string(block.eigenvalue));
    out += value * block.projector;
  }
  return out;
}

Matd apply_function(const Matd& a, const std::function<double(double)>& f,
                    const Tolerances& tol) {
  return apply_function(pvm_of(a, tol), f);
}

bool is_positive(const Matd& a, const Tolerances& tol) {
  SymEig<double> eig = sym_eig(a, tol);
  if (eig.values.size() == 0) return true;
  const double scale = std::max(1.0, operator_norm(a));
  return eig.values(0) >= -tol.eq_tol * scale;
}

Matd sqrt_psd(const Matd& a, const Tolerances& tol) {
  SymEig<double> eig = sym_eig(a, tol);
  const double scale = std::max(1.0, operator_norm(a));
  if (eig.values.size() > 0 && eig.values(0) < -tol.eq_tol * scale)
    throw NotPositive("sqrt_psd: smallest eigenvalue " +
                      std::to_string(eig.values(0)) + " is negative");
  Vecd roots = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * roots.asDiagonal() * eig.vectors.transpose();
}

PolarDecomposition polar(const Matd& a, const Tolerances& tol) {
  require_square(a, "polar");
  require_finite(a, "polar");
  Svd<double> dec = svd(a);
  const Index n = a.rows();
  const Index r = rank_from_singular_values(dec.sigma, tol);

  PolarDecomposition out;
  out.p = dec.v * dec.sigma.asDiagonal() * dec.v.transpose();
  out.p = symmetric_part(out.p);
  out.u = dec.u.leftCols(r) * dec.v.leftCols(r).transpose();
  out.kernel_dim = n - r;
  return out;
}

StoneResult stone_generator(const std::function<Matd(double)>& group, double h,
                            const Tolerances& tol) {
  if (!(h > 0))
    throw InputError("stone_generator: sample step must be positive");
  Matd u = group(h);
  require_square(u, "stone_generator");
  require_finite(u, "stone_generator");
  const Index n = u.rows();
  const double ortho =
      operator_norm(Matd(u.transpose() * u - Matd::Identity(n, n)));
  if (ortho > tol.eq_tol)
    throw NotUnitaryAtSample("stone_generator: group(" + std::to_string(h) +
                             ") fails orthogonality by " + std::to_string(ortho));
  Matd log_u = logm_near_identity(u, tol);
  Matd scaled = log_u / h;

  StoneResult out;
  out.generator = antisymmetric_part(scaled);
  out.symmetric_residual = operator_norm(symmetric_part(scaled));
  out.sample_step = h;
  return out;
}

CommutationReport commutation_propagation_check(const Matd& a, const Matd& b,
                                                const Tolerances& tol) {
  require_square(a, "commutation_propagation_check");
  require_square(b, "commutation_propagation_check");
  if (a.rows() != b.rows())
    throw DimensionMismatch("commutation_propagation_check: sizes differ");
  require_finite(a, "commutation_propagation_check");
  require_finite(b, "commutation_propagation_check");

  CommutationReport rep;
  const double na = operator_norm(a);
  const double nb = operator_norm(b);
  rep.generator_residual = operator_norm(commutator(b, a));
  rep.commutes_with_generator =
      rep.generator_residual <= tol.eq_tol * std::max(1.0, na * nb);

  bool derived_ok = true;
  for (std::size_t i = 0; i < rep.group_times.size(); ++i) {
    Matd ut = expm(Matd(rep.group_times[i] * a));
    rep.group_residuals[i] = operator_norm(commutator(b, ut));
    derived_ok = derived_ok &&
                 rep.group_residuals[i] <=
                     100 * tol.eq_tol * std::max(1.0, nb * operator_norm(ut));
  }

  PolarDecomposition pd = polar(a, tol);
  rep.unitary_residual = operator_norm(commutator(b, pd.u));
  rep.positive_residual = operator_norm(commutator(b, pd.p));
  derived_ok = derived_ok &&
               rep.unitary_residual <= 100 * tol.eq_tol * std::max(1.0, nb) &&
               rep.positive_residual <= 100 * tol.eq_tol * std::max(1.0, nb * na);

  rep.propagated = rep.commutes_with_generator && derived_ok;
  return rep;
}

}  // namespace realop
