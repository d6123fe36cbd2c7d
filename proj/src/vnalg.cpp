#include "realop/vnalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "realop/errors.hpp"
#include "realop/linalg.hpp"
#include "realop/spectral.hpp"

namespace realop {

namespace {

double frob_inner(const Matd& a, const Matd& b) {
  return a.cwiseProduct(b).sum();
}

// Gram-Schmidt with a re-orthogonalization pass. Inputs are normalized first
// so the drop threshold acts on directions, not magnitudes.
std::vector<Matd> orthonormalize(const std::vector<Matd>& input,
                                 double drop_tol = 1e-8) {
  std::vector<Matd> out;
  for (const Matd& x : input) {
    const double nx = x.norm();
    if (nx <= 1e-14) continue;
    Matd r = x / nx;
    for (int pass = 0; pass < 2; ++pass)
      for (const Matd& b : out) r -= frob_inner(b, r) * b;
    const double nr = r.norm();
    if (nr > drop_tol) out.push_back(Matd(r / nr));
  }
  return out;
}

Matd mat_of(const Vecd& v, Index n) {
  return Eigen::Map<const Matd>(v.data(), n, n);
}

Vecd vec_of(const Matd& m) {
  return Eigen::Map<const Vecd>(m.data(), m.size());
}

// Orthonormal basis of the span of a matrix family in one stable shot, via
// column-pivoted QR on the stacked coefficient vectors. Unlike sequential
// Gram-Schmidt this does not amplify roundoff on nearly dependent inputs.
std::vector<Matd> qr_span(const std::vector<Matd>& raw, Index n,
                          double drop_tol = 1e-8) {
  if (raw.empty()) return {};
  const Index vn = n * n;
  Matd stacked(vn, static_cast<Index>(raw.size()));
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double nx = raw[i].norm();
    stacked.col(static_cast<Index>(i)) =
        nx > 1e-14 ? Vecd(vec_of(raw[i]) / nx) : Vecd(Vecd::Zero(vn));
  }
  Eigen::ColPivHouseholderQR<Matd> qr(stacked);
  const auto& rdiag = qr.matrixR();
  const Index maxr = std::min(vn, stacked.cols());
  const double top = std::abs(rdiag(0, 0));
  Index r = 0;
  while (r < maxr && std::abs(rdiag(r, r)) > drop_tol * std::max(1.0, top)) ++r;
  Matd q = qr.householderQ() * Matd::Identity(vn, r);
  std::vector<Matd> out;
  out.reserve(static_cast<std::size_t>(r));
  for (Index i = 0; i < r; ++i) out.push_back(mat_of(q.col(i), n));
  return out;
}

// Deterministic uniform in [-1, 1) built from raw generator bits, so the
// sampled sweeps reproduce bit-for-bit across standard libraries.
double uniform_pm1(std::mt19937_64& rng) {
  return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

bool commutes_with_all(const Matd& x, const std::vector<Matd>& gens,
                       const Tolerances& tol) {
  for (const Matd& g : gens) {
    const double eta = 10.0 * tol.rank_tol * std::max(1.0, g.norm() * x.norm());
    if (commutator(g, x).norm() > eta) return false;
  }
  return true;
}

std::vector<Matd> matrix_units(Index n) {
  std::vector<Matd> out;
  out.reserve(static_cast<std::size_t>(n * n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      Matd e = Matd::Zero(n, n);
      e(i, j) = 1.0;
      out.push_back(std::move(e));
    }
  return out;
}

// Quadratic form sum_g ||gX - Xg||_F^2 as a dense matrix on coefficient
// space, assembled from Kronecker blocks.
Matd commutation_form(const std::vector<Matd>& gens, Index n) {
  const Index vn = n * n;
  Matd big = Matd::Zero(vn, vn);
  const Matd eye = Matd::Identity(n, n);
  for (const Matd& g : gens) {
    const Matd gt = g.transpose();
    big += Eigen::kroneckerProduct(eye, Matd(gt * g));
    big += Eigen::kroneckerProduct(Matd(g * gt), eye);
    big -= Eigen::kroneckerProduct(gt, gt);
    big -= Eigen::kroneckerProduct(g, g);
  }
  return symmetric_part(big);
}

std::vector<Matd> accept_in_order(const Matd& columns,
                                  const std::vector<Matd>& gens, Index n,
                                  const Tolerances& tol) {
  std::vector<Matd> out;
  for (Index i = 0; i < columns.cols(); ++i) {
    Matd cand = mat_of(columns.col(i), n);
    if (!commutes_with_all(cand, gens, tol)) break;
    out.push_back(std::move(cand));
  }
  return out;
}

std::vector<Matd> nullspace_dense(const Matd& big, const std::vector<Matd>& gens,
                                  Index n, const Tolerances& tol) {
  Eigen::SelfAdjointEigenSolver<Matd> es(big);
  return accept_in_order(es.eigenvectors(), gens, n, tol);
}

// Shift-and-invert block iteration for large coefficient spaces: the kernel
// eigenvalues sit many orders below the first nonzero one, so a handful of
// solves against big + shift*I separates them cleanly.
std::vector<Matd> nullspace_iterative(const Matd& big, const std::vector<Matd>& gens,
                                      Index n, const Tolerances& tol) {
  const Index vn = big.rows();
  const double shift = 1e-12 * std::max(1.0, big.diagonal().maxCoeff());
  Eigen::LLT<Matd> llt(Matd(big + shift * Matd::Identity(vn, vn)));
  if (llt.info() != Eigen::Success) return {};

  std::mt19937_64 rng(0x5eed5eedULL);
  Index block = std::min<Index>(8, vn);
  while (true) {
    Matd x(vn, block);
    for (Index i = 0; i < vn; ++i)
      for (Index c = 0; c < block; ++c) x(i, c) = uniform_pm1(rng);
    for (int iter = 0; iter < 5; ++iter) {
      x = llt.solve(x);
      Eigen::HouseholderQR<Matd> qr(x);
      x = qr.householderQ() * Matd::Identity(vn, block);
    }
    Eigen::SelfAdjointEigenSolver<Matd> small(
        Matd(symmetric_part(Matd(x.transpose() * (big * x)))));
    x = x * small.eigenvectors();

    std::vector<Matd> found = accept_in_order(x, gens, n, tol);
    if (static_cast<Index>(found.size()) < block || block == vn) return found;
    block = std::min(vn, block * 2);
  }
}

std::vector<Matd> commutant_span(const std::vector<Matd>& gens, Index n,
                                 const Tolerances& tol) {
  double gmax = 0;
  for (const Matd& g : gens) gmax = std::max(gmax, g.norm());
  std::vector<Matd> active;
  for (const Matd& g : gens)
    if (g.norm() > 1e-14 * std::max(1.0, gmax)) active.push_back(g);
  if (active.empty()) return matrix_units(n);

  const Matd big = commutation_form(active, n);
  std::vector<Matd> found = (n * n <= 400)
                                ? nullspace_dense(big, active, n, tol)
                                : nullspace_iterative(big, active, n, tol);
  if (found.empty() && n * n > 400) found = nullspace_dense(big, active, n, tol);
  return found;
}

void pin_sign(Matd& m, const Tolerances& tol) {
  const double cut = std::sqrt(tol.eq_tol);
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > cut) {
        if (m(i, j) < 0) m = -m;
        return;
      }
}

// Scales an anti-symmetric direction into a complex structure, provided its
// square is a negative scalar; the sign is pinned by the first entry that is
// clearly nonzero in row order.
ComplexStructure structure_from_direction(const Matd& a, const Tolerances& tol) {
  const Index n = a.rows();
  const Matd sq = a * a;
  const double c = sq.trace() / static_cast<double>(n);
  const double dev =
      operator_norm(Matd(sq - c * Matd::Identity(n, n)));
  if (!(c < 0) || dev > 100 * tol.eq_tol * std::max(1.0, operator_norm(sq)))
    throw UnexpectedCommutantDim(
        "classify: commutant direction does not square to a negative scalar");
  Matd j = a / std::sqrt(-c);
  pin_sign(j, tol);
  return {std::move(j)};
}

void validate_generators(const std::vector<Matd>& gens, Index n, const char* who) {
  for (const Matd& g : gens) {
    require_square(g, who);
    require_finite(g, who);
    if (g.rows() != n)
      throw DimensionMismatch(std::string(who) +
                              ": generator size does not match the ambient dimension");
  }
}

}  // namespace

OperatorAlgebra generate_algebra(const std::vector<Matd>& gens,
                                 const Tolerances& tol) {
  (void)tol;
  if (gens.empty())
    throw InputError("generate_algebra: at least one generator required");
  const Index n = gens[0].rows();
  validate_generators(gens, n, "generate_algebra");

  std::vector<Matd> raw;
  raw.push_back(Matd::Identity(n, n));
  for (const Matd& g : gens) {
    raw.push_back(g);
    raw.push_back(g.transpose());
  }
  std::vector<Matd> basis = qr_span(raw, n);

  const Index cap = n * n;
  while (static_cast<Index>(basis.size()) < cap) {
    bool grew = false;
    const std::size_t snapshot = basis.size();
    for (std::size_t i = 0; i < snapshot; ++i) {
      for (std::size_t j = 0; j < snapshot; ++j) {
        Matd p = basis[i] * basis[j];
        if (span_residual(p, basis) > 1e-8 * std::max(1.0, p.norm())) {
          raw.push_back(std::move(p));
          grew = true;
        }
      }
    }
    if (!grew) break;
    std::vector<Matd> refined = qr_span(raw, n);
    if (refined.size() <= basis.size()) break;
    basis = std::move(refined);
  }
  return {n, std::move(basis)};
}

OperatorAlgebra commutant(const std::vector<Matd>& gens, Index n,
                          const Tolerances& tol) {
  if (n <= 0) throw InputError("commutant: ambient dimension must be positive");
  validate_generators(gens, n, "commutant");
  return {n, commutant_span(gens, n, tol)};
}

OperatorAlgebra commutant(const OperatorAlgebra& alg, const Tolerances& tol) {
  return commutant(alg.basis, alg.n, tol);
}

bool is_irreducible(const OperatorAlgebra& alg, const Tolerances& tol) {
  OperatorAlgebra c = commutant(alg, tol);
  std::vector<Matd> sym;
  for (const Matd& b : c.basis) sym.push_back(symmetric_part(b));
  return static_cast<Index>(orthonormalize(sym).size()) == 1;
}

bool is_irreducible(const std::vector<Matd>& gens, Index n, const Tolerances& tol) {
  return is_irreducible(generate_algebra(gens, tol), tol);
}

CommutantClassification classify(const OperatorAlgebra& alg, const Tolerances& tol) {
  OperatorAlgebra c = commutant(alg, tol);
  std::vector<Matd> sym, anti;
  for (const Matd& b : c.basis) {
    sym.push_back(symmetric_part(b));
    anti.push_back(antisymmetric_part(b));
  }
  std::vector<Matd> sym_basis = orthonormalize(sym);
  std::vector<Matd> anti_basis = orthonormalize(anti);

  if (sym_basis.size() != 1)
    throw NotIrreducible("classify: symmetric commutant has dimension " +
                         std::to_string(sym_basis.size()) +
                         ", the algebra acts reducibly");
  const Index m = static_cast<Index>(anti_basis.size());
  if (c.dim() != 1 + m)
    throw UnexpectedCommutantDim(
        "classify: commutant does not split into scalars plus structures");

  CommutantClassification out;
  out.commutant_dim = c.dim();
  const double nrm = std::sqrt(static_cast<double>(alg.n));

  if (m == 0) {
    out.kind = CommutantKind::RealReal;
  } else if (m == 1) {
    out.kind = CommutantKind::RealComplex;
    out.j = structure_from_direction(anti_basis[0], tol);
    if (span_residual(out.j->j, alg.basis) > 100 * tol.eq_tol * nrm)
      throw UnexpectedCommutantDim(
          "classify: complex structure is missing from the algebra");
  } else if (m == 3) {
    out.kind = CommutantKind::RealQuaternionic;
    // anti_basis is orthonormal under the plain trace pairing, which for this
    // span coincides with orthogonality under tr(X^T Y)/n; the first two
    // directions give anticommuting units and their product is the third.
    out.j = structure_from_direction(anti_basis[0], tol);
    out.k = structure_from_direction(anti_basis[1], tol);
    make_quaternionic_pair(*out.j, *out.k, tol);
    const Matd third = out.j->j * out.k->j;
    for (const Matd& unit : {out.j->j, out.k->j, third})
      if (span_residual(unit, alg.basis) <= 100 * tol.eq_tol * nrm)
        throw UnexpectedCommutantDim(
            "classify: quaternionic unit unexpectedly inside the algebra");
  } else {
    throw UnexpectedCommutantDim(
        "classify: anti-symmetric commutant has dimension " + std::to_string(m) +
        ", expected 0, 1 or 3");
  }
  return out;
}

CommutantClassification classify(const std::vector<Matd>& gens, Index n,
                                 const Tolerances& tol) {
  (void)n;
  return classify(generate_algebra(gens, tol), tol);
}

std::vector<Projector> projector_sublattice(const OperatorAlgebra& alg,
                                            const Tolerances& tol,
                                            std::uint64_t seed) {
  const Index n = alg.n;
  std::vector<Projector> out;
  out.push_back(zero_projector(n));
  out.push_back(identity_projector(n));

  std::vector<Matd> sym;
  for (const Matd& b : alg.basis) {
    Matd s = symmetric_part(b);
    if (s.norm() > 1e-12) sym.push_back(std::move(s));
  }
  if (sym.empty()) return out;

  std::vector<Matd> targets = sym;
  std::mt19937_64 rng(seed);
  for (int extra = 0; extra < 8; ++extra) {
    Matd combo = Matd::Zero(n, n);
    for (const Matd& s : sym) combo += uniform_pm1(rng) * s;
    targets.push_back(std::move(combo));
  }

  auto known = [&out, &tol](const Matd& p) {
    for (const Projector& q : out)
      if (operator_norm(Matd(p - q.p)) <= 100 * tol.eq_tol) return true;
    return false;
  };

  for (const Matd& t : targets) {
    if (t.norm() <= 1e-12) continue;
    Pvm spec = pvm_of(t, tol);
    for (const PvmBlock& block : spec.blocks) {
      const Matd& p = block.projector;
      if (span_residual(p, alg.basis) > 100 * tol.eq_tol * std::max(1.0, p.norm()))
        continue;
      if (!known(p)) out.push_back({p});
    }
  }
  return out;
}

LatticeGapReport lattice_double_commutant_gap(const OperatorAlgebra& alg,
                                              const Tolerances& tol,
                                              std::uint64_t seed) {
  std::vector<Projector> lat = projector_sublattice(alg, tol, seed);
  std::vector<Matd> lat_mats;
  lat_mats.reserve(lat.size());
  for (const Projector& p : lat) lat_mats.push_back(p.p);

  OperatorAlgebra first = commutant(lat_mats, alg.n, tol);
  OperatorAlgebra second = commutant(first, tol);

  LatticeGapReport rep;
  rep.lattice_double_commutant_dim = second.dim();
  rep.algebra_dim = alg.dim();

  for (const Matd& b : alg.basis) {
    Matd r = antisymmetric_part(b);
    for (int pass = 0; pass < 2; ++pass)
      for (const Matd& d : second.basis) r -= frob_inner(d, r) * d;
    if (r.norm() <= 1e-8) continue;
    Matd dir = r / r.norm();

    // -dir^2 must be a non-negative scalar gamma on its support; then
    // dir / sqrt(gamma) restricts to a complex structure on that support.
    Pvm spec = pvm_of(Matd(dir.transpose() * dir), tol);
    if (spec.blocks.empty() || spec.blocks.size() > 2) continue;
    const double gamma = spec.blocks.back().eigenvalue;
    if (gamma <= tol.eq_tol) continue;
    if (spec.blocks.size() == 2 &&
        spec.blocks.front().eigenvalue > 100 * tol.eq_tol)
      continue;
    Matd w = dir / std::sqrt(gamma);
    Matd proj = -(w * w);
    if (operator_norm(Matd(proj * proj - proj)) > 100 * tol.eq_tol) continue;
    if (span_residual(w, alg.basis) > 100 * tol.eq_tol * std::max(1.0, w.norm()))
      continue;
    pin_sign(w, tol);

    bool dup = false;
    for (const Matd& prev : rep.witnesses)
      if (std::min(operator_norm(Matd(prev - w)), operator_norm(Matd(prev + w))) <=
          1e-6)
        dup = true;
    if (!dup) rep.witnesses.push_back(std::move(w));
  }
  return rep;
}

bool is_irreducible_complex(const OperatorAlgebra& alg, const ComplexStructure& j,
                            const Tolerances& tol) {
  if (alg.n != j.dimension())
    throw DimensionMismatch(
        "is_irreducible_complex: structure size does not match the algebra");
  for (const Matd& b : alg.basis)
    if (!is_complex_linear(b, j, tol))
      throw NotComplexLinear(
          "is_irreducible_complex: algebra element does not commute with the structure");

  std::vector<Matd> gens = alg.basis;
  gens.push_back(j.j);
  OperatorAlgebra c = commutant(gens, alg.n, tol);
  std::vector<Matd> sym;
  for (const Matd& b : c.basis) sym.push_back(symmetric_part(b));
  return static_cast<Index>(orthonormalize(sym).size()) == 1;
}

double span_residual(const Matd& x, const std::vector<Matd>& basis) {
  Matd r = x;
  for (int pass = 0; pass < 2; ++pass)
    for (const Matd& b : basis) r -= frob_inner(b, r) * b;
  return r.norm();
}

double span_angle(const std::vector<Matd>& a, const std::vector<Matd>& b) {
  if (a.empty() && b.empty()) return 0.0;
  const double right_angle = std::acos(-1.0) / 2;
  if (a.empty() || b.empty()) return right_angle;
  const Index n = a.front().rows();
  std::vector<Matd> qa = qr_span(a, n);
  std::vector<Matd> qb = qr_span(b, n);
  if (qa.size() != qb.size()) return right_angle;
  if (qa.empty()) return 0.0;

  // Sine-based form: asin of the part of qb sticking out of span(qa).
  // The cosine form acos(sigma_min) cannot resolve angles below ~1e-8.
  const Index vn = n * n;
  Matd res(vn, static_cast<Index>(qb.size()));
  for (std::size_t j = 0; j < qb.size(); ++j) {
    Matd r = qb[j];
    for (std::size_t i = 0; i < qa.size(); ++i)
      r -= frob_inner(qa[i], qb[j]) * qa[i];
    res.col(static_cast<Index>(j)) = vec_of(r);
  }
  return std::asin(std::clamp(operator_norm(res), 0.0, 1.0));
}

}  // namespace realop
