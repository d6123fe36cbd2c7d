#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "realop/complexification.hpp"
#include "realop/errors.hpp"
#include "realop/lattice.hpp"
#include "realop/linalg.hpp"
#include "realop/poincare.hpp"
#include "realop/spectral.hpp"
#include "realop/states.hpp"
#include "realop/structures.hpp"
#include "realop/types.hpp"
#include "realop/vnalg.hpp"

using namespace realop;

namespace {

double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double pm1(std::mt19937_64& rng) { return 2.0 * unit(rng) - 1.0; }

Matd random_matrix(Index n, std::mt19937_64& rng) {
  Matd m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = pm1(rng);
  return m;
}

Matd random_antisymmetric(Index n, std::mt19937_64& rng) {
  return antisymmetric_part(random_matrix(n, rng));
}

Matd random_orthogonal(Index n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matd> qr(random_matrix(n, rng));
  return qr.householderQ() * Matd::Identity(n, n);
}

Matd j_block(Index n) {
  Matd j = Matd::Zero(n, n);
  for (Index i = 0; i + 1 < n; i += 2) {
    j(i, i + 1) = -1;
    j(i + 1, i) = 1;
  }
  return j;
}

Matd left_mult_i() { return j_block(4); }

Matd left_mult_j() {
  Matd k = Matd::Zero(4, 4);
  k(0, 2) = -1;
  k(1, 3) = 1;
  k(2, 0) = 1;
  k(3, 1) = -1;
  return k;
}

std::vector<Matd> so3_generators() {
  Matd lx = Matd::Zero(3, 3), ly = Matd::Zero(3, 3), lz = Matd::Zero(3, 3);
  lx(1, 2) = -1;
  lx(2, 1) = 1;
  ly(0, 2) = 1;
  ly(2, 0) = -1;
  lz(0, 1) = -1;
  lz(1, 0) = 1;
  return {lx, ly, lz};
}

/// Orthonormal basis of the numerical kernel, as columns. Empty kernel gives
/// an n x 0 matrix.
Matd kernel_basis(const Matd& a, double rank_tol) {
  Eigen::JacobiSVD<Matd> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = rank_tol * std::max(1.0, s.size() ? s(0) : 0.0);
  Index rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  return svd.matrixV().rightCols(s.size() - rank);
}

Matd range_basis(const Matd& a, double rank_tol) {
  Eigen::JacobiSVD<Matd> svd(a, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  const double cut = rank_tol * std::max(1.0, s.size() ? s(0) : 0.0);
  Index rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  return svd.matrixU().leftCols(rank);
}

/// Operator-norm distance of the orthogonal projectors onto two column spans.
double subspace_gap(const Matd& qa, const Matd& qb) {
  return operator_norm(Matd(qa * qa.transpose() - qb * qb.transpose()));
}

bool close(double x, double y, double tol) { return std::abs(x - y) <= tol; }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------

bool criterion_trichotomy(std::string& why) {
  struct Case {
    const char* label;
    std::vector<Matd> gens;
    Index n;
    CommutantKind kind;
    Index dim;
  };
  const std::vector<Case> cases = {
      {"rotations", so3_generators(), 3, CommutantKind::RealReal, 1},
      {"planar", {j_block(2)}, 2, CommutantKind::RealComplex, 2},
      {"quaternionic",
       {left_mult_i(), left_mult_j(), left_mult_i() * left_mult_j()},
       4,
       CommutantKind::RealQuaternionic,
       4},
  };
  for (const Case& c : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const CommutantClassification cls = classify(c.gens, c.n);
    const double dt = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    if (dt >= 1.0) {
      why = std::string(c.label) + " classification took " + fmt(dt) + " s";
      return false;
    }
    if (cls.kind != c.kind || cls.commutant_dim != c.dim) {
      why = std::string(c.label) + " misclassified";
      return false;
    }
    const Matd id = Matd::Identity(c.n, c.n);
    if (cls.j && operator_norm(Matd(cls.j->j * cls.j->j + id)) > 1e-9) {
      why = std::string(c.label) + " structure does not square to -I";
      return false;
    }
    if (c.kind == CommutantKind::RealQuaternionic) {
      if (!cls.j || !cls.k) {
        why = "quaternionic pair missing";
        return false;
      }
      const Matd anti = cls.j->j * cls.k->j + cls.k->j * cls.j->j;
      if (operator_norm(anti) > 1e-9) {
        why = "extracted pair does not anticommute";
        return false;
      }
    }
  }
  return true;
}

bool criterion_lattice_gap(std::string& why) {
  Matd j = Matd::Zero(3, 3);
  j.topLeftCorner(2, 2) = j_block(2);
  const OperatorAlgebra alg = generate_algebra({j});
  if (alg.dim() != 3) {
    why = "algebra span has dimension " + std::to_string(alg.dim());
    return false;
  }
  const LatticeGapReport gap = lattice_double_commutant_gap(alg);
  if (gap.lattice_double_commutant_dim != 2 || gap.algebra_dim != 3) {
    why = "dims (" + std::to_string(gap.lattice_double_commutant_dim) + ", " +
          std::to_string(gap.algebra_dim) + ") instead of (2, 3)";
    return false;
  }
  double best = 1e300;
  for (const Matd& w : gap.witnesses)
    best = std::min({best, operator_norm(Matd(w - j)), operator_norm(Matd(w + j))});
  if (best > 1e-9) {
    why = "no witness within " + fmt(best) + " of the missing rotation";
    return false;
  }
  return true;
}

ComplexifiedOperator times_i(const Eigen::MatrixXcd& h) {
  const Eigen::MatrixXcd ih = std::complex<double>(0, 1) * h;
  return make_complexified(ih.real(), ih.imag());
}

Eigen::MatrixXcd random_hermitian(Index n, std::mt19937_64& rng) {
  Eigen::MatrixXcd m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      m(i, j) = std::complex<double>(pm1(rng), pm1(rng));
  return (m + m.adjoint()) / 2;
}

Eigen::MatrixXcd random_positive_spectrum(Index n, std::mt19937_64& rng) {
  Eigen::MatrixXcd g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      g(i, j) = std::complex<double>(pm1(rng), pm1(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  const Eigen::MatrixXcd q =
      qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  Eigen::VectorXcd lam(n);
  for (Index i = 0; i < n; ++i) lam(i) = 0.1 + 9.9 * unit(rng);
  const Eigen::MatrixXcd h = q * lam.asDiagonal() * q.adjoint();
  return (h + h.adjoint()) / 2;
}

bool criterion_hidden_structure(std::string& why) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(0xacce55ed);
  std::vector<Index> half_dims = {20, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 2,
                                  3,  4, 5, 6, 7, 8, 9, 10, 11, 12, 3, 5};
  int unique_checked = 0;
  for (std::size_t model = 0; model < half_dims.size(); ++model) {
    const Index n = half_dims[model];
    std::map<std::string, ComplexifiedOperator> gens;
    gens.emplace("p0", times_i(random_positive_spectrum(n, rng)));
    const bool two_generator = model % 2 == 0;
    if (two_generator) gens.emplace("l1", times_i(random_hermitian(n, rng)));

    const DecomplexifiedRep dec = decomplexify_complex_rep(gens);
    const EmergentStructure es = extract_complex_structure(dec.rep);

    const double direct =
        (es.j.j - dec.hidden.j).cwiseAbs().maxCoeff();
    const double flipped =
        (es.j.j + dec.hidden.j).cwiseAbs().maxCoeff();
    if (std::min(direct, flipped) > 1e-9) {
      why = "model " + std::to_string(model) + " recovers the structure to " +
            fmt(std::min(direct, flipped));
      return false;
    }

    for (const auto& [label, gen] : dec.rep.gens)
      for (const double t : {0.5, 1.3}) {
        const Matd u = (t * gen).exp();
        const double res =
            operator_norm(Matd(u * es.j.j * u.transpose() - es.j.j));
        if (res > 1e-8) {
          why = "model " + std::to_string(model) + " moves the structure by " +
                fmt(res) + " under " + label;
          return false;
        }
      }

    std::vector<Matd> real_gens;
    for (const auto& [label, gen] : dec.rep.gens) real_gens.push_back(gen);
    const OperatorAlgebra com = commutant(real_gens, 2 * n);
    if (com.dim() == 2) {
      ++unique_checked;
      if (es.uniqueness_verdict != UniquenessVerdict::UniqueUpToSign) {
        why = "model " + std::to_string(model) +
              " is irreducible but not deemed unique";
        return false;
      }
    }
  }
  if (unique_checked < 8) {
    why = "only " + std::to_string(unique_checked) + " irreducible models";
    return false;
  }
  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (dt >= 10.0) {
    why = "sweep took " + fmt(dt) + " s";
    return false;
  }
  return true;
}

bool criterion_mass(std::string& why) {
  std::mt19937_64 rng(0x1234abcd);
  const double m = 1.3;
  std::vector<FourMomentum> momenta;
  for (int i = 0; i < 5; ++i) {
    FourMomentum q;
    q.p1 = 2 * pm1(rng);
    q.p2 = 2 * pm1(rng);
    q.p3 = 2 * pm1(rng);
    q.e = std::sqrt(m * m + q.p1 * q.p1 + q.p2 * q.p2 + q.p3 * q.p3);
    momenta.push_back(q);
  }
  const PoincareRep rep = build_translation_rep(momenta);
  const SquaredMass sm = squared_mass(rep);
  if (!sm.scalar || !close(sm.value, m * m, 1e-10)) {
    why = "squared mass " + fmt(sm.value) + " instead of " + fmt(m * m);
    return false;
  }

  const Index dim = rep.dimension();
  const Matd h = rep.c * rep.gens.at("p0");
  for (int trial = 0; trial < 100; ++trial) {
    Vecd v(dim);
    for (Index i = 0; i < dim; ++i) v(i) = pm1(rng);
    const double hv = (h * v).norm();
    for (const char* label : {"p1", "p2", "p3"}) {
      const double pv = rep.c * (rep.gens.at(label) * v).norm();
      if (hv + 1e-12 * std::max(1.0, pv) < pv) {
        why = "energy bound fails: " + fmt(hv) + " < " + fmt(pv);
        return false;
      }
    }
  }

  Matd singular = Matd::Zero(4, 4);
  singular.topLeftCorner(2, 2) = j_block(2);
  const PoincareRep stuck = make_poincare_rep({{"p0", singular}});
  try {
    extract_complex_structure(stuck);
    why = "singular time translation was not rejected";
    return false;
  } catch (const TimeTranslationNotInjective&) {
  }
  return true;
}

/// Orthonormal leaders of a basis adapted to the structure: the span grows by
/// the whole orbit of each accepted leader.
std::vector<Vecd> adapted_leaders(const std::vector<Matd>& orbit_maps, Index n) {
  std::vector<Vecd> span;
  std::vector<Vecd> leaders;
  auto project_off = [&](Vecd v) {
    for (int pass = 0; pass < 2; ++pass)
      for (const Vecd& b : span) v -= b.dot(v) * b;
    return v;
  };
  for (Index cand = 0; cand < n; ++cand) {
    Vecd v = project_off(Vecd::Unit(n, cand));
    if (v.norm() < 1e-6) continue;
    v.normalize();
    leaders.push_back(v);
    span.push_back(v);
    for (const Matd& map : orbit_maps) {
      Vecd w = project_off(Vecd(map * v));
      w.normalize();
      span.push_back(w);
    }
  }
  return leaders;
}

bool criterion_trace_factors(std::string& why) {
  std::mt19937_64 rng(0x7ace5);
  for (int trial = 0; trial < 5; ++trial) {
    const Index n = 6;
    const Matd q = random_orthogonal(n, rng);
    const ComplexStructure j =
        make_complex_structure(q * j_block(n) * q.transpose());
    const Matd x = random_matrix(n, rng);
    const Matd commuting = (x - j.j * x * j.j) / 2;
    const Matd a = commuting.transpose() * commuting;

    const double value = trace_in_structure(a, j);
    double explicit_sum = 0;
    for (const Vecd& b : adapted_leaders({j.j}, n))
      explicit_sum += hermitian_product(b, a * b, j).real();
    if (!close(value, explicit_sum, 1e-10) ||
        !close(value, a.trace() / 2, 1e-10)) {
      why = "complex factor off: " + fmt(value) + " vs " + fmt(explicit_sum);
      return false;
    }
  }
  for (int trial = 0; trial < 5; ++trial) {
    const Index n = 8;
    Matd j8 = Matd::Zero(n, n);
    Matd k8 = Matd::Zero(n, n);
    j8.topLeftCorner(4, 4) = left_mult_i();
    j8.bottomRightCorner(4, 4) = left_mult_i();
    k8.topLeftCorner(4, 4) = left_mult_j();
    k8.bottomRightCorner(4, 4) = left_mult_j();
    const Matd q = random_orthogonal(n, rng);
    const QuaternionicPair pair = make_quaternionic_pair(
        make_complex_structure(q * j8 * q.transpose()),
        make_complex_structure(q * k8 * q.transpose()));
    const Matd& ju = pair.j.j;
    const Matd& ku = pair.k.j;
    const Matd jk = pair.jk();
    const Matd x = random_matrix(n, rng);
    const Matd commuting =
        (x - ju * x * ju - ku * x * ku - jk * x * jk) / 4;
    const Matd a = commuting.transpose() * commuting;

    const double value = trace_in_structure(a, pair);
    double explicit_sum = 0;
    for (const Vecd& b : adapted_leaders({ju, ku, jk}, n))
      explicit_sum += quaternionic_product(b, a * b, pair).r;
    if (!close(value, explicit_sum, 1e-10) ||
        !close(value, a.trace() / 4, 1e-10)) {
      why = "quaternionic factor off: " + fmt(value) + " vs " +
            fmt(explicit_sum);
      return false;
    }
  }
  return true;
}

bool polar_clauses_hold(const Matd& a, std::string& why) {
  const Tolerances tol;
  const double scale = std::max(1.0, operator_norm(a));
  const PolarDecomposition pd = polar(a);
  const Matd& u = pd.u;
  const Matd& p = pd.p;
  if (operator_norm(Matd(a - u * p)) > 1e-8 * scale) {
    why = "factorization residual";
    return false;
  }
  if (operator_norm(Matd(p - p.transpose())) > 1e-8 * scale) {
    why = "positive factor not symmetric";
    return false;
  }
  Eigen::SelfAdjointEigenSolver<Matd> es(p);
  if (es.eigenvalues().minCoeff() < -1e-8 * scale) {
    why = "positive factor has a negative eigenvalue";
    return false;
  }
  if (operator_norm(Matd(p * u.transpose() * u * p - p * p)) >
      1e-8 * scale * scale) {
    why = "not isometric on the range of p";
    return false;
  }
  // Square root of a^T a evaluated without forming the product, which would
  // square the conditioning and drown the comparison near the kernel.
  Eigen::JacobiSVD<Matd> root_svd(a, Eigen::ComputeFullV);
  const Matd root = root_svd.matrixV() *
                    root_svd.singularValues().asDiagonal() *
                    root_svd.matrixV().transpose();
  if (operator_norm(Matd(p - root)) > 1e-8 * scale) {
    why = "positive factor differs from the square root";
    return false;
  }
  const Matd ker_p = kernel_basis(p, tol.rank_tol);
  const Matd ker_a = kernel_basis(a, tol.rank_tol);
  const Matd ker_u = kernel_basis(u, tol.rank_tol);
  if (ker_p.cols() != pd.kernel_dim || ker_a.cols() != pd.kernel_dim ||
      ker_u.cols() != pd.kernel_dim) {
    why = "kernel dimensions disagree";
    return false;
  }
  if (ker_p.cols() > 0 &&
      (operator_norm(Matd(u * ker_p)) > 1e-8 ||
       subspace_gap(ker_p, ker_a) > 1e-8 || subspace_gap(ker_p, ker_u) > 1e-8)) {
    why = "kernels differ";
    return false;
  }
  const Matd ran_u = range_basis(u, tol.rank_tol);
  const Matd ran_a = range_basis(a, tol.rank_tol);
  if (ran_u.cols() != ran_a.cols() || subspace_gap(ran_u, ran_a) > 1e-8) {
    why = "ranges differ";
    return false;
  }
  return true;
}

bool criterion_polar(std::string& why) {
  std::mt19937_64 rng(0xdecade);
  for (int trial = 0; trial < 50; ++trial) {
    const Index n = 2 + static_cast<Index>(trial % 7);
    Matd a = random_matrix(n, rng);
    if (trial % 3 == 1) {
      const Index r = std::max<Index>(1, n / 2);
      a = random_matrix(n, rng).leftCols(r) * random_matrix(n, rng).topRows(r);
    }
    std::string clause;
    if (!polar_clauses_hold(a, clause)) {
      why = "trial " + std::to_string(trial) + ": " + clause;
      return false;
    }
  }
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 2 + 2 * static_cast<Index>(trial % 4);
    Matd a = random_antisymmetric(n, rng);
    Eigen::JacobiSVD<Matd> svd(a);
    if (svd.singularValues().minCoeff() < 1e-3) {
      --trial;
      continue;
    }
    const PolarDecomposition pd = polar(a);
    const Matd id = Matd::Identity(n, n);
    if (operator_norm(Matd(pd.u.transpose() * pd.u - id)) > 1e-8) {
      why = "orthogonality fails on an injective anti-symmetric input";
      return false;
    }
    if (operator_norm(Matd(pd.u + pd.u.transpose())) > 1e-8) {
      why = "anti-symmetry fails on an injective anti-symmetric input";
      return false;
    }
  }
  return true;
}

bool criterion_stone(std::string& why) {
  std::mt19937_64 rng(0x570e);
  for (int trial = 0; trial < 8; ++trial) {
    const Index n = 2 + static_cast<Index>(trial % 5);
    Matd g = random_antisymmetric(n, rng);
    if (operator_norm(g) < 1e-3) continue;
    g *= (0.5 + 1.5 * unit(rng)) / operator_norm(g);
    const StoneResult res = stone_generator(
        [&](double t) { return Matd((t * g).exp()); }, 0.05);
    if (operator_norm(Matd(res.generator - g)) > 1e-8) {
      why = "generator recovery misses by " +
            fmt(operator_norm(Matd(res.generator - g)));
      return false;
    }
    if (operator_norm(Matd(res.generator + res.generator.transpose())) >
            1e-10 ||
        res.symmetric_residual > 1e-10) {
      why = "recovered generator is not anti-symmetric";
      return false;
    }
  }
  return true;
}

bool criterion_orthomodularity(std::string& why) {
  std::mt19937_64 rng(0x0dd);
  double worst = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const Index n = 3 + static_cast<Index>(trial % 6);
    const Matd q = random_orthogonal(n, rng);
    const Index rank_b = 1 + static_cast<Index>(rng() % static_cast<std::uint64_t>(n - 1));
    const Index rank_a = 1 + static_cast<Index>(rng() % static_cast<std::uint64_t>(rank_b));
    const Matd inside = q.leftCols(rank_b);
    const Matd mix = random_orthogonal(rank_b, rng).leftCols(rank_a);
    const Matd span_a = inside * mix;
    const Projector b = make_projector(inside * inside.transpose());
    const Projector a = make_projector(span_a * span_a.transpose());
    worst = std::max(worst, check_orthomodularity(a, b));
  }
  if (worst > 1e-8) {
    why = "worst residual " + fmt(worst);
    return false;
  }

  Matd px = Matd::Zero(2, 2), py = Matd::Zero(2, 2), pd = Matd::Constant(2, 2, 0.5);
  px(0, 0) = 1;
  py(1, 1) = 1;
  const Projector x = make_projector(px), y = make_projector(py),
                  d = make_projector(pd);
  const Matd lhs = meet(x, join(y, d)).p;
  const Matd rhs = join(meet(x, y), meet(x, d)).p;
  if (operator_norm(Matd(lhs - rhs)) <= 0.1) {
    why = "distributivity counterexample residual too small";
    return false;
  }
  return true;
}

bool criterion_state_roundtrip(std::string& why) {
  std::mt19937_64 rng(0x91ea50);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 3 + static_cast<Index>(trial % 5);
    const Matd x = random_matrix(n, rng);
    Matd raw = x * x.transpose() + 0.05 * Matd::Identity(n, n);
    raw /= raw.trace();
    const DensityOperator t = make_density(raw);
    const DensityOperator back =
        density_from_measure(measure_of(t), n);
    const double res = operator_norm(Matd(back.t - t.t));
    if (res > 1e-8) {
      why = "round trip residual " + fmt(res) + " at dimension " +
            std::to_string(n);
      return false;
    }
  }
  const DensityOperator half = make_density(Matd::Identity(2, 2) / 2);
  try {
    density_from_measure(measure_of(half), 2);
    why = "two-dimensional reconstruction was not rejected";
    return false;
  } catch (const DimensionTooSmall&) {
  }
  return true;
}

bool criterion_double_commutant(std::string& why) {
  std::mt19937_64 rng(0xdcdc);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + static_cast<Index>(trial % 5);
    std::vector<Matd> gens;
    const int base = 1 + trial % 2;
    for (int g = 0; g < base; ++g) {
      const Matd m = random_matrix(n, rng);
      gens.push_back(m);
      gens.push_back(m.transpose());
    }
    const OperatorAlgebra alg = generate_algebra(gens);
    const OperatorAlgebra bicom = commutant(commutant(alg));
    if (alg.dim() != bicom.dim()) {
      why = "dims " + std::to_string(alg.dim()) + " vs " +
            std::to_string(bicom.dim());
      return false;
    }
    const double angle = span_angle(alg.basis, bicom.basis);
    if (angle > 1e-8) {
      why = "span angle " + fmt(angle);
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  struct Row {
    const char* name;
    bool (*run)(std::string&);
  };
  const std::vector<Row> rows = {
      {"commutant trichotomy", criterion_trichotomy},
      {"lattice double-commutant gap", criterion_lattice_gap},
      {"hidden-structure recovery", criterion_hidden_structure},
      {"mass scalar and energy bound", criterion_mass},
      {"structured trace factors", criterion_trace_factors},
      {"polar decomposition clauses", criterion_polar},
      {"group generator recovery", criterion_stone},
      {"orthomodular law", criterion_orthomodularity},
      {"state reconstruction round trip", criterion_state_roundtrip},
      {"double commutant closure", criterion_double_commutant},
  };

  const auto start = std::chrono::steady_clock::now();
  int failures = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string why;
    bool ok = false;
    try {
      ok = rows[i].run(why);
    } catch (const std::exception& e) {
      why = std::string("unexpected error: ") + e.what();
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("criterion %2zu %-33s %s (%.3f s)%s%s\n", i + 1, rows[i].name,
                ok ? "PASS" : "FAIL", dt, why.empty() ? "" : ": ",
                why.c_str());
    if (!ok) ++failures;
  }
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  const bool in_budget = total < 60.0;
  std::printf("total %.3f s (budget 60 s) %s\n", total,
              in_budget ? "PASS" : "FAIL");
  if (!in_budget) ++failures;
  return failures == 0 ? 0 : 1;
}
