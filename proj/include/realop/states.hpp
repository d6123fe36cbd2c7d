#pragma once

#include <functional>
#include <vector>

#include "realop/lattice.hpp"
#include "realop/structures.hpp"
#include "realop/types.hpp"

namespace realop {

/// Symmetric, positive, unit-trace operator. One of these pins down a
/// probability measure on the projector lattice and conversely.
struct DensityOperator {
  Matd t;

  Index dimension() const { return t.rows(); }
};

/// Validating constructor. Positivity and unit trace are enforced within
/// eq_tol; violations raise NotAState.
DensityOperator make_density(Matd t, const Tolerances& tol = {});

/// Probability measure on projectors. Carried either by a density operator
/// in closed form or by a recorded table over a probe family.
struct StateMeasure {
  std::function<double(const Projector&)> eval;

  double operator()(const Projector& p) const { return eval(p); }
};

/// Probability assigned to an event: trace(t p), clamped to [0, 1] when it
/// lands within eq_tol of the interval.
double measure_from_density(const DensityOperator& t, const Projector& p,
                            const Tolerances& tol = {});

/// Closed-form measure of a density operator.
StateMeasure measure_of(DensityOperator t, Tolerances tol = {});

/// Measure backed by a finite table. Evaluation matches the argument against
/// the recorded probes; an unrecorded projector raises UnknownProbe. The
/// table is checked on construction: values must sit in [0, 1] up to noise,
/// the identity (when present) must carry value 1, and values must add over
/// recorded orthogonal splits.
StateMeasure tabulated_measure(std::vector<Projector> probes,
                               std::vector<double> values,
                               const Tolerances& tol = {});

/// Probe family that determines a density: the coordinate lines e_i e_i^T
/// followed, for each i < j, by the projectors onto (e_i + e_j)/sqrt(2) and
/// (e_i - e_j)/sqrt(2).
std::vector<Projector> polarization_frame(Index n);

/// Reconstructs the density operator of a measure from its values on the
/// polarization frame: diagonal entries are read off directly, off-diagonal
/// ones by polarization. Requires n >= 3; the two-dimensional lattice does
/// not determine its states this way. Raises NotAState when the probe values
/// are not additive across the frame or the reconstruction fails the density
/// invariants or the round trip.
DensityOperator density_from_measure(const StateMeasure& probe, Index n,
                                     const Tolerances& tol = {});

/// State after observing the event p: t -> p t p / trace(p t p). Conditioning
/// on an event of probability below eq_tol raises ZeroProbabilityConditioning.
DensityOperator luders_update(const DensityOperator& t, const Projector& p,
                              const Tolerances& tol = {});

/// Trace of a symmetric PSD operator, taken in the plain real sense.
double trace_in_structure(const Matd& a, const Tolerances& tol = {});

/// Trace taken over the complex space carried by j. For a commuting with j
/// this is half the real trace; the value is cross-checked against an
/// explicit sum of hermitian products over an adapted basis.
double trace_in_structure(const Matd& a, const ComplexStructure& j,
                          const Tolerances& tol = {});

/// Trace over the quaternionic space carried by the pair: a quarter of the
/// real trace, cross-checked the same way.
double trace_in_structure(const Matd& a, const QuaternionicPair& q,
                          const Tolerances& tol = {});

enum class SymmetryType {
  Commutes,
  Anticommutes,
  Neither,
};

/// How an orthogonal map sits relative to a complex structure. Commuting and
/// anticommuting maps are the ones that act on the complex space (linearly
/// resp. conjugate-linearly); anything else does not transport the structure.
SymmetryType symmetry_type(const Matd& u, const ComplexStructure& j,
                           const Tolerances& tol = {});

}  // namespace realop
