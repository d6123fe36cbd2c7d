#pragma once

#include "realop/types.hpp"

namespace realop {

/// Orthogonal projector: symmetric and idempotent. The set of these, ordered
/// by range inclusion, is the event lattice the rest of the library works in.
struct Projector {
  Matd p;

  Index dimension() const { return p.rows(); }
};

/// Validating constructor: square, finite, symmetric, idempotent within
/// eq_tol. Anything else raises NotProjector.
Projector make_projector(Matd p, const Tolerances& tol = {});

Projector zero_projector(Index n);
Projector identity_projector(Index n);
Projector orthocomplement(const Projector& a);

/// Projector rank, read off the trace.
Index projector_rank(const Projector& a);

/// A projector is an atom when nothing sits strictly between it and zero,
/// i.e. its range is a line.
bool is_atom(const Projector& a);

/// Greatest lower bound: projector onto Ran(a) intersect Ran(b), computed as
/// the eigenspace of a + b at eigenvalue 2.
Projector meet(const Projector& a, const Projector& b, const Tolerances& tol = {});

/// Least upper bound, by De Morgan from the meet of the complements.
Projector join(const Projector& a, const Projector& b, const Tolerances& tol = {});

/// Order by range inclusion: a <= b iff b a = a within eq_tol.
bool leq(const Projector& a, const Projector& b, const Tolerances& tol = {});

bool commutes(const Projector& a, const Projector& b, const Tolerances& tol = {});

/// Orthomodular law residual || b - (a v (a' ^ b)) || for a <= b. Raises
/// PrerequisiteOrderFails when the order premise does not hold.
double check_orthomodularity(const Projector& a, const Projector& b,
                             const Tolerances& tol = {});

}  // namespace realop
