#pragma once

#include <map>
#include <string>
#include <vector>

#include "realop/complexification.hpp"
#include "realop/structures.hpp"
#include "realop/types.hpp"

namespace realop {

/// The ten generator labels in canonical order: time translation p0, space
/// translations p1..p3, rotations l1..l3, boosts k1..k3.
const std::vector<std::string>& poincare_labels();

/// One coefficient * label term on the right-hand side of a bracket.
struct BracketTerm {
  std::string label;
  double coefficient = 0;
};

/// Expansion of [a, b] in the basis; empty when the pair commutes. The table
/// is verified antisymmetric and Jacobi-consistent once at startup.
std::vector<BracketTerm> poincare_bracket(const std::string& a,
                                          const std::string& b);

/// A set of generators keyed by label. Partial sets are allowed; every
/// supplied matrix is anti-symmetric (the one-parameter groups it generates
/// are orthogonal). c rescales the time translation into the Hamiltonian.
struct PoincareRep {
  std::map<std::string, Matd> gens;
  double c = 1.0;

  Index dimension() const {
    return gens.empty() ? 0 : gens.begin()->second.rows();
  }
};

/// Validating constructor: known labels only, all generators square, finite,
/// anti-symmetric within eq_tol and of one common size, c positive.
PoincareRep make_poincare_rep(std::map<std::string, Matd> gens, double c = 1.0,
                              const Tolerances& tol = {});

/// Residual of one bracket relation. Skipped when the pair or some label on
/// its right-hand side has no supplied generator.
struct RelationCheck {
  std::string first;
  std::string second;
  double residual = 0;
  bool skipped = true;
};

struct RelationReport {
  std::vector<RelationCheck> relations;
  double max_residual = 0;
  double threshold = 0;
  bool pass = false;
  /// All supplied generators vanish: the relations hold vacuously.
  bool trivial = false;
};

/// Checks every pair of labels against the structure constants. The report
/// passes when the largest residual is at most rel_tol times the largest
/// generator norm.
RelationReport check_relations(const PoincareRep& rep, double rel_tol = 1e-8,
                               const Tolerances& tol = {});

/// The invariant -P0^2 + sum Pk^2, with its scalar reading when it is a
/// multiple of the identity within eq_tol.
struct SquaredMass {
  Matd matrix;
  bool scalar = false;
  double value = 0;
  bool positive = false;
};

SquaredMass squared_mass(const PoincareRep& rep, const Tolerances& tol = {});

enum class UniquenessVerdict {
  UniqueUpToSign,
  NotUnique,
  Inconclusive,
};

/// Output of the extraction pipeline: the complex structure j and positive
/// factor h splitting the Hamiltonian c*P0 = j h, the commutator norms of j
/// against every supplied generator, the observables -j * gen, and whether j
/// is the only invariant structure the commutant admits.
struct EmergentStructure {
  ComplexStructure j;
  Matd h;
  std::map<std::string, double> commutation_residuals;
  std::map<std::string, Matd> observables;
  UniquenessVerdict uniqueness_verdict = UniquenessVerdict::Inconclusive;
};

/// Polar-decomposes the Hamiltonian c*P0 into j h. Requires p0 supplied, the
/// squared mass positive and P0 injective; the orthogonal polar factor of an
/// injective anti-symmetric map is then a complex structure.
EmergentStructure extract_complex_structure(const PoincareRep& rep,
                                            const Tolerances& tol = {});

/// Searches the commutant of the generators for complex structures, by polar
/// projection of its anti-symmetric elements. UniqueUpToSign when the search
/// finds exactly {j, -j}; NotUnique when it turns up others; Inconclusive
/// when it finds none (or the rep is trivial and the commutant everything).
UniquenessVerdict uniqueness_scan(const PoincareRep& rep,
                                  const ComplexStructure& j,
                                  const Tolerances& tol = {});

/// Residual of conjugating P0 by the boost exp(z K_axis) against
/// cosh(z) P0 - sinh(z) P_axis. Zero whenever the boost relations close.
double boost_conjugation_check(const PoincareRep& rep, int axis, double z,
                               const Tolerances& tol = {});

struct FourMomentum {
  double e = 0;
  double p1 = 0;
  double p2 = 0;
  double p3 = 0;
};

/// Translation-only model: each momentum contributes a 2x2 block q * J0 to
/// every P_mu, so the abelian relations hold exactly and P0 is injective.
/// Energies must be positive.
PoincareRep build_translation_rep(const std::vector<FourMomentum>& momenta);

struct DecomplexifiedRep {
  PoincareRep rep;
  ComplexStructure hidden;
};

/// Doubles anti-hermitian complex generators into real form. The returned
/// generators all commute with the emitted structure (multiplication by i in
/// the doubled coordinates), and anti-hermiticity becomes anti-symmetry.
DecomplexifiedRep decomplexify_complex_rep(
    const std::map<std::string, ComplexifiedOperator>& gens, double c = 1.0,
    const Tolerances& tol = {});

}  // namespace realop
