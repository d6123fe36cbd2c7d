#include "realop/states.hpp"

#include <cmath>
#include <utility>

#include "realop/errors.hpp"
#include "realop/linalg.hpp"
#include "realop/spectral.hpp"

namespace realop {

namespace {

// Orthonormal family whose orbits {b, Jb} tile the space. Candidates are the
// coordinate vectors; each one is projected off the span collected so far,
// which is J-invariant, so the orbit of the residual stays orthonormal.
std::vector<Vecd> adapted_basis(const ComplexStructure& s) {
  const Index n = s.dimension();
  Matd q(n, n);
  Index cols = 0;
  std::vector<Vecd> base;
  for (Index e = 0; e < n && cols < n; ++e) {
    Vecd r = Vecd::Unit(n, e);
    for (int pass = 0; pass < 2; ++pass)
      r -= q.leftCols(cols) * (q.leftCols(cols).transpose() * r);
    if (r.norm() < 1e-6) continue;
    r.normalize();
    q.col(cols) = r;
    q.col(cols + 1) = s.j * r;
    cols += 2;
    base.push_back(std::move(r));
  }
  return base;
}

// Same with orbits {b, Jb, Kb, JKb}.
std::vector<Vecd> adapted_basis(const QuaternionicPair& p) {
  const Index n = p.dimension();
  const Matd jk = p.jk();
  Matd q(n, n);
  Index cols = 0;
  std::vector<Vecd> base;
  for (Index e = 0; e < n && cols < n; ++e) {
    Vecd r = Vecd::Unit(n, e);
    for (int pass = 0; pass < 2; ++pass)
      r -= q.leftCols(cols) * (q.leftCols(cols).transpose() * r);
    if (r.norm() < 1e-6) continue;
    r.normalize();
    q.col(cols) = r;
    q.col(cols + 1) = p.j.j * r;
    q.col(cols + 2) = p.k.j * r;
    q.col(cols + 3) = jk * r;
    cols += 4;
    base.push_back(std::move(r));
  }
  return base;
}

void require_psd_observable(const Matd& a, const Tolerances& tol) {
  require_finite(a, "trace_in_structure");
  require_symmetric(a, tol, "trace_in_structure");
  if (!is_positive(a, tol)) throw NotPositive("operator is not positive");
}

}  // namespace

DensityOperator make_density(Matd t, const Tolerances& tol) {
  require_finite(t, "make_density");
  require_symmetric(t, tol, "make_density");
  if (!is_positive(t, tol)) throw NotAState("density operator is not positive");
  if (std::abs(t.trace() - 1.0) > tol.eq_tol)
    throw NotAState("density operator does not have unit trace");
  return {std::move(t)};
}

double measure_from_density(const DensityOperator& t, const Projector& p,
                            const Tolerances& tol) {
  if (t.dimension() != p.dimension())
    throw DimensionMismatch("density and projector sizes differ");
  double value = (t.t * p.p).trace();
  if (value < 0.0 && value >= -tol.eq_tol) value = 0.0;
  if (value > 1.0 && value <= 1.0 + tol.eq_tol) value = 1.0;
  return value;
}

StateMeasure measure_of(DensityOperator t, Tolerances tol) {
  return {[t = std::move(t), tol](const Projector& p) {
    return measure_from_density(t, p, tol);
  }};
}

StateMeasure tabulated_measure(std::vector<Projector> probes,
                               std::vector<double> values,
                               const Tolerances& tol) {
  if (probes.size() != values.size())
    throw DimensionMismatch("probe and value counts differ");
  const double slack = 10 * tol.eq_tol;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (probes[i].dimension() != probes.front().dimension())
      throw DimensionMismatch("probes live on different spaces");
    if (values[i] < -slack || values[i] > 1.0 + slack)
      throw NotAState("recorded value outside [0, 1]");
    const Index n = probes[i].dimension();
    if ((probes[i].p - Matd::Identity(n, n)).norm() <= slack &&
        std::abs(values[i] - 1.0) > slack)
      throw NotAState("recorded value at the identity is not 1");
  }
  // Additivity across every orthogonal split the table happens to record.
  for (std::size_t i = 0; i < probes.size(); ++i)
    for (std::size_t j = i + 1; j < probes.size(); ++j) {
      if ((probes[i].p * probes[j].p).norm() > 1e-6) continue;
      const Matd sum = probes[i].p + probes[j].p;
      for (std::size_t k = 0; k < probes.size(); ++k)
        if ((sum - probes[k].p).norm() <= 1e-6 &&
            std::abs(values[i] + values[j] - values[k]) > slack)
          throw NotAState("recorded values are not additive");
    }
  return {[probes = std::move(probes), values = std::move(values)](
              const Projector& p) {
    for (std::size_t i = 0; i < probes.size(); ++i)
      if (p.dimension() == probes[i].dimension() &&
          (p.p - probes[i].p).norm() <= 1e-6 * std::max(1.0, probes[i].p.norm()))
        return values[i];
    throw UnknownProbe("projector is not among the recorded probes");
  }};
}

std::vector<Projector> polarization_frame(Index n) {
  if (n < 1) throw DimensionTooSmall("frame needs a positive dimension");
  std::vector<Projector> frame;
  frame.reserve(static_cast<std::size_t>(n * n));
  for (Index i = 0; i < n; ++i) {
    Vecd e = Vecd::Unit(n, i);
    frame.push_back({e * e.transpose()});
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      Vecd plus = inv_sqrt2 * (Vecd::Unit(n, i) + Vecd::Unit(n, j));
      Vecd minus = inv_sqrt2 * (Vecd::Unit(n, i) - Vecd::Unit(n, j));
      frame.push_back({plus * plus.transpose()});
      frame.push_back({minus * minus.transpose()});
    }
  return frame;
}

DensityOperator density_from_measure(const StateMeasure& probe, Index n,
                                     const Tolerances& tol) {
  if (n < 3)
    throw DimensionTooSmall(
        "measures on a space of dimension below 3 do not determine a density");
  const std::vector<Projector> frame = polarization_frame(n);
  std::vector<double> vals;
  vals.reserve(frame.size());
  for (const Projector& p : frame) vals.push_back(probe(p));

  Matd t(n, n);
  for (Index i = 0; i < n; ++i) t(i, i) = vals[static_cast<std::size_t>(i)];
  std::size_t pos = static_cast<std::size_t>(n);
  const double slack = 10 * tol.eq_tol;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const double plus = vals[pos];
      const double minus = vals[pos + 1];
      pos += 2;
      if (std::abs(plus + minus - t(i, i) - t(j, j)) > slack)
        throw NotAState("probe values are not additive across the frame");
      const double tij = plus - (t(i, i) + t(j, j)) / 2;
      t(i, j) = tij;
      t(j, i) = tij;
    }

  DensityOperator d = make_density(std::move(t), tol);
  for (std::size_t k = 0; k < frame.size(); ++k)
    if (std::abs(measure_from_density(d, frame[k], tol) - vals[k]) > slack)
      throw NotAState("reconstructed density does not reproduce the probe");
  return d;
}

DensityOperator luders_update(const DensityOperator& t, const Projector& p,
                              const Tolerances& tol) {
  const double prob = measure_from_density(t, p, tol);
  if (prob <= tol.eq_tol)
    throw ZeroProbabilityConditioning(
        "cannot condition on an event of zero probability");
  Matd r = p.p * t.t * p.p;
  r /= r.trace();
  return make_density(std::move(r), tol);
}

double trace_in_structure(const Matd& a, const Tolerances& tol) {
  require_psd_observable(a, tol);
  return a.trace();
}

double trace_in_structure(const Matd& a, const ComplexStructure& j,
                          const Tolerances& tol) {
  require_psd_observable(a, tol);
  if (a.rows() != j.dimension())
    throw DimensionMismatch("operator and structure sizes differ");
  if (!is_complex_linear(a, j, tol))
    throw NotCommutingWithStructure("operator does not commute with j");
  const double value = a.trace() / 2;
  double explicit_sum = 0;
  for (const Vecd& b : adapted_basis(j))
    explicit_sum += hermitian_product(b, a * b, j).real();
  if (std::abs(explicit_sum - value) >
      100 * tol.eq_tol * std::max(1.0, std::abs(value)))
    throw NotCommutingWithStructure(
        "structured trace disagrees with its basis-explicit form");
  return value;
}

double trace_in_structure(const Matd& a, const QuaternionicPair& q,
                          const Tolerances& tol) {
  require_psd_observable(a, tol);
  if (a.rows() != q.dimension())
    throw DimensionMismatch("operator and structure sizes differ");
  if (!is_quaternionic_linear(a, q, tol))
    throw NotCommutingWithStructure("operator does not commute with the pair");
  const double value = a.trace() / 4;
  double explicit_sum = 0;
  for (const Vecd& b : adapted_basis(q))
    explicit_sum += quaternionic_product(b, a * b, q).r;
  if (std::abs(explicit_sum - value) >
      100 * tol.eq_tol * std::max(1.0, std::abs(value)))
    throw NotCommutingWithStructure(
        "structured trace disagrees with its basis-explicit form");
  return value;
}

SymmetryType symmetry_type(const Matd& u, const ComplexStructure& j,
                           const Tolerances& tol) {
  require_finite(u, "symmetry_type");
  require_square(u, "symmetry_type");
  if (u.rows() != j.dimension())
    throw DimensionMismatch("map and structure sizes differ");
  const Index n = u.rows();
  if ((u.transpose() * u - Matd::Identity(n, n)).norm() >
      tol.eq_tol * std::max(1.0, u.squaredNorm()))
    throw NotUnitary("map is not orthogonal");
  const double scale = tol.eq_tol * std::max(1.0, u.norm() * j.j.norm());
  if ((u * j.j - j.j * u).norm() <= scale) return SymmetryType::Commutes;
  if ((u * j.j + j.j * u).norm() <= scale) return SymmetryType::Anticommutes;
  return SymmetryType::Neither;
}

}  // namespace realop
