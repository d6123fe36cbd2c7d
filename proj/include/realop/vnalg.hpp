#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "realop/lattice.hpp"
#include "realop/structures.hpp"
#include "realop/types.hpp"

namespace realop {

/// Span of finitely many operators, held as a Frobenius-orthonormal basis.
/// When the generating set is closed under transposition this is a unital
/// *-algebra and the double-commutant machinery below applies to it.
struct OperatorAlgebra {
  Index n = 0;              ///< ambient dimension
  std::vector<Matd> basis;  ///< orthonormal under tr(X^T Y)

  Index dim() const { return static_cast<Index>(basis.size()); }
};

/// Smallest unital algebra containing the generators and their transposes:
/// seeds the span with I, g and g^T, then closes under products. The span
/// dimension is capped by n^2, which bounds the iteration.
OperatorAlgebra generate_algebra(const std::vector<Matd>& gens,
                                 const Tolerances& tol = {});

/// Commutant {x : xg = gx for all g}, computed as the joint nullspace of the
/// maps x -> gx - xg and certified by direct commutator residuals. The empty
/// set has all of M_n as its commutant.
OperatorAlgebra commutant(const std::vector<Matd>& gens, Index n,
                          const Tolerances& tol = {});
OperatorAlgebra commutant(const OperatorAlgebra& alg, const Tolerances& tol = {});

/// Irreducible = the symmetric part of the commutant is spanned by I alone.
bool is_irreducible(const OperatorAlgebra& alg, const Tolerances& tol = {});
bool is_irreducible(const std::vector<Matd>& gens, Index n,
                    const Tolerances& tol = {});

enum class CommutantKind { RealReal, RealComplex, RealQuaternionic };

/// Commutant of an irreducible algebra: real scalars only, scalars plus one
/// complex structure, or the span of I and a full quaternionic triple.
struct CommutantClassification {
  CommutantKind kind = CommutantKind::RealReal;
  std::optional<ComplexStructure> j;  ///< complex and quaternionic kinds
  std::optional<ComplexStructure> k;  ///< quaternionic kind only
  Index commutant_dim = 0;
};

/// Raises NotIrreducible when the symmetric commutant is larger than the
/// scalars, UnexpectedCommutantDim when the anti-symmetric part has a
/// dimension other than 0, 1 or 3.
CommutantClassification classify(const OperatorAlgebra& alg,
                                 const Tolerances& tol = {});
CommutantClassification classify(const std::vector<Matd>& gens, Index n,
                                 const Tolerances& tol = {});

/// Projectors found inside the algebra by a sampled sweep: 0 and I, the
/// spectral projectors of every symmetric basis element, and of a few random
/// symmetric combinations drawn deterministically from the seed.
std::vector<Projector> projector_sublattice(const OperatorAlgebra& alg,
                                            const Tolerances& tol = {},
                                            std::uint64_t seed = 0);

/// Compares the double commutant of the projector sublattice with the
/// algebra itself. For a strict gap the report carries anti-symmetric
/// witnesses w in the algebra, outside the lattice double commutant, with
/// -w^2 a projector.
struct LatticeGapReport {
  Index lattice_double_commutant_dim = 0;
  Index algebra_dim = 0;
  std::vector<Matd> witnesses;
};

LatticeGapReport lattice_double_commutant_gap(const OperatorAlgebra& alg,
                                              const Tolerances& tol = {},
                                              std::uint64_t seed = 0);

/// Complex-linear irreducibility: the symmetric part of the commutant taken
/// inside the j-commuting operators is spanned by I alone. Every algebra
/// element must commute with j, else NotComplexLinear.
bool is_irreducible_complex(const OperatorAlgebra& alg, const ComplexStructure& j,
                            const Tolerances& tol = {});

/// Frobenius norm of x minus its projection onto the span of the basis.
/// The basis is assumed orthonormal under tr(X^T Y).
double span_residual(const Matd& x, const std::vector<Matd>& basis);

/// Largest principal angle between two spans of matrices, viewed as
/// subspaces of the n^2-dimensional coefficient space. Spans of different
/// dimension are reported as fully apart (pi/2).
double span_angle(const std::vector<Matd>& a, const std::vector<Matd>& b);

}  // namespace realop
