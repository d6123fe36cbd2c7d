#include "realop/lattice.hpp"

#include <cmath>
#include <utility>

#include "realop/errors.hpp"
#include "realop/linalg.hpp"
#include "realop/spectral.hpp"

namespace realop {

Projector make_projector(Matd p, const Tolerances& tol) {
  require_square(p, "make_projector");
  require_finite(p, "make_projector");
  if (operator_norm(Matd(p - p.transpose())) > tol.eq_tol)
    throw NotProjector("make_projector: matrix is not symmetric");
  if (operator_norm(Matd(p * p - p)) > tol.eq_tol)
    throw NotProjector("make_projector: matrix is not idempotent");
  return {std::move(p)};
}

Projector zero_projector(Index n) { return {Matd::Zero(n, n)}; }

Projector identity_projector(Index n) { return {Matd::Identity(n, n)}; }

Projector orthocomplement(const Projector& a) {
  return {Matd::Identity(a.dimension(), a.dimension()) - a.p};
}

Index projector_rank(const Projector& a) {
  return static_cast<Index>(std::llround(a.p.trace()));
}

bool is_atom(const Projector& a) { return projector_rank(a) == 1; }

namespace {

void check_same_dim(const Projector& a, const Projector& b, const char* who) {
  if (a.dimension() != b.dimension())
    throw DimensionMismatch(std::string(who) + ": projectors have different sizes");
}

}  // namespace

Projector meet(const Projector& a, const Projector& b, const Tolerances& tol) {
  check_same_dim(a, b, "meet");
  const Index n = a.dimension();
  Pvm spec = pvm_of(Matd(a.p + b.p), tol);
  Matd out = Matd::Zero(n, n);
  for (const PvmBlock& block : spec.blocks)
    if (block.eigenvalue >= 2.0 - tol.eig_cluster_tol) out += block.projector;
  return {std::move(out)};
}

Projector join(const Projector& a, const Projector& b, const Tolerances& tol) {
  check_same_dim(a, b, "join");
  return orthocomplement(meet(orthocomplement(a), orthocomplement(b), tol));
}

bool leq(const Projector& a, const Projector& b, const Tolerances& tol) {
  check_same_dim(a, b, "leq");
  return operator_norm(Matd(b.p * a.p - a.p)) <= tol.eq_tol;
}

bool commutes(const Projector& a, const Projector& b, const Tolerances& tol) {
  check_same_dim(a, b, "commutes");
  return operator_norm(commutator(a.p, b.p)) <= tol.eq_tol;
}

double check_orthomodularity(const Projector& a, const Projector& b,
                             const Tolerances& tol) {
  check_same_dim(a, b, "check_orthomodularity");
  if (!leq(a, b, tol))
    throw PrerequisiteOrderFails(
        "check_orthomodularity: the first projector is not below the second");
  Projector rebuilt = join(a, meet(orthocomplement(a), b, tol), tol);
  return operator_norm(Matd(b.p - rebuilt.p));
}

}  // namespace realop
