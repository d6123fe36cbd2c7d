#include "realop/poincare.hpp"

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "realop/errors.hpp"
#include "realop/linalg.hpp"
#include "realop/spectral.hpp"
#include "realop/vnalg.hpp"

namespace realop {

namespace {

constexpr int kLabels = 10;

int label_index(const std::string& label) {
  const std::vector<std::string>& all = poincare_labels();
  for (int i = 0; i < kLabels; ++i)
    if (all[static_cast<std::size_t>(i)] == label) return i;
  return -1;
}

double epsilon3(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  if ((i == 1 && j == 2 && k == 3) || (i == 2 && j == 3 && k == 1) ||
      (i == 3 && j == 1 && k == 2))
    return 1;
  return -1;
}

// [a, b] over label indices, as a coefficient vector in the basis. Index 0
// is p0, 1..3 the momenta, 4..6 the rotations, 7..9 the boosts.
std::array<double, kLabels> bracket_coeffs(int a, int b) {
  std::array<double, kLabels> out{};
  if (a == b) return out;
  if (a > b) {
    out = bracket_coeffs(b, a);
    for (double& c : out) c = -c;
    return out;
  }
  const auto family = [](int x) { return x == 0 ? 0 : (x <= 3 ? 1 : (x <= 6 ? 2 : 3)); };
  const int fa = family(a), fb = family(b);
  const int i = a - (fa == 1 ? 0 : fa == 2 ? 3 : 6);
  const int j = b - (fb == 1 ? 0 : fb == 2 ? 3 : 6);
  if (fa == 0 && fb == 3) {
    out[static_cast<std::size_t>(j)] = 1;  // [p0, ki] = pi
  } else if (fa == 1 && fb == 2) {
    for (int k = 1; k <= 3; ++k)  // [pi, lj] = -[lj, pi]
      out[static_cast<std::size_t>(k)] = -epsilon3(j, i, k);
  } else if (fa == 1 && fb == 3) {
    if (i == j) out[0] = 1;  // [pi, kj] = delta_ij p0
  } else if (fa == 2 && fb == 2) {
    for (int k = 1; k <= 3; ++k)
      out[static_cast<std::size_t>(3 + k)] = epsilon3(i, j, k);
  } else if (fa == 2 && fb == 3) {
    for (int k = 1; k <= 3; ++k)
      out[static_cast<std::size_t>(6 + k)] = epsilon3(i, j, k);
  } else if (fa == 3 && fb == 3) {
    for (int k = 1; k <= 3; ++k)
      out[static_cast<std::size_t>(3 + k)] = -epsilon3(i, j, k);
  }
  return out;
}

// Startup consistency pass over the table: antisymmetry by construction,
// Jacobi over all ordered triples.
bool verify_bracket_table() {
  for (int a = 0; a < kLabels; ++a)
    for (int b = 0; b < kLabels; ++b)
      for (int c = 0; c < kLabels; ++c) {
        std::array<double, kLabels> total{};
        const auto accumulate = [&total](int x, std::array<double, kLabels> yz) {
          for (int m = 0; m < kLabels; ++m) {
            if (yz[static_cast<std::size_t>(m)] == 0) continue;
            std::array<double, kLabels> inner = bracket_coeffs(x, m);
            for (int t = 0; t < kLabels; ++t)
              total[static_cast<std::size_t>(t)] +=
                  yz[static_cast<std::size_t>(m)] * inner[static_cast<std::size_t>(t)];
          }
        };
        accumulate(a, bracket_coeffs(b, c));
        accumulate(b, bracket_coeffs(c, a));
        accumulate(c, bracket_coeffs(a, b));
        for (double t : total)
          if (std::abs(t) > 1e-12)
            throw std::logic_error("bracket table violates the Jacobi identity");
      }
  return true;
}

const bool kTableChecked = verify_bracket_table();

Matd quarter_turn() {
  Matd j(2, 2);
  j << 0, -1, 1, 0;
  return j;
}

const Matd* find_gen(const PoincareRep& rep, const std::string& label) {
  auto it = rep.gens.find(label);
  return it == rep.gens.end() ? nullptr : &it->second;
}

const Matd& require_gen(const PoincareRep& rep, const std::string& label) {
  const Matd* g = find_gen(rep, label);
  if (!g) throw MissingGenerators("generator " + label + " is not supplied");
  return *g;
}

double max_gen_norm(const PoincareRep& rep) {
  double m = 0;
  for (const auto& [label, g] : rep.gens) m = std::max(m, g.norm());
  return m;
}

// Squared-mass matrix tolerating absent spatial momenta (treated as zero),
// for the extraction pipeline; the public operation insists on all four.
Matd mass_matrix(const PoincareRep& rep) {
  const Matd& p0 = require_gen(rep, "p0");
  Matd m = -(p0 * p0);
  for (const std::string& label : {"p1", "p2", "p3"})
    if (const Matd* pk = find_gen(rep, label)) m += *pk * *pk;
  return m;
}

}  // namespace

const std::vector<std::string>& poincare_labels() {
  static const std::vector<std::string> labels = {
      "p0", "p1", "p2", "p3", "l1", "l2", "l3", "k1", "k2", "k3"};
  return labels;
}

std::vector<BracketTerm> poincare_bracket(const std::string& a,
                                          const std::string& b) {
  const int ia = label_index(a), ib = label_index(b);
  if (ia < 0 || ib < 0)
    throw InputError("unknown generator label in bracket lookup");
  std::array<double, kLabels> coeffs = bracket_coeffs(ia, ib);
  std::vector<BracketTerm> out;
  for (int m = 0; m < kLabels; ++m)
    if (coeffs[static_cast<std::size_t>(m)] != 0)
      out.push_back({poincare_labels()[static_cast<std::size_t>(m)],
                     coeffs[static_cast<std::size_t>(m)]});
  return out;
}

PoincareRep make_poincare_rep(std::map<std::string, Matd> gens, double c,
                              const Tolerances& tol) {
  if (!(c > 0) || !std::isfinite(c))
    throw InputError("scale c must be positive and finite");
  Index n = -1;
  for (const auto& [label, g] : gens) {
    if (label_index(label) < 0)
      throw InputError("unknown generator label " + label);
    require_finite(g, "make_poincare_rep");
    require_square(g, "make_poincare_rep");
    if (n < 0) n = g.rows();
    if (g.rows() != n)
      throw DimensionMismatch("generators live on different spaces");
    if ((g + g.transpose()).norm() > tol.eq_tol * std::max(1.0, g.norm()))
      throw InputError("generator " + label + " is not anti-symmetric");
  }
  return {std::move(gens), c};
}

RelationReport check_relations(const PoincareRep& rep, double rel_tol,
                               const Tolerances& tol) {
  const Index n = rep.dimension();
  for (const auto& [label, g] : rep.gens) {
    if (label_index(label) < 0)
      throw InputError("unknown generator label " + label);
    if (g.rows() != n || g.cols() != n)
      throw DimensionMismatch("generators live on different spaces");
  }

  RelationReport report;
  const std::vector<std::string>& labels = poincare_labels();
  for (int a = 0; a < kLabels; ++a)
    for (int b = a + 1; b < kLabels; ++b) {
      RelationCheck check;
      check.first = labels[static_cast<std::size_t>(a)];
      check.second = labels[static_cast<std::size_t>(b)];
      const Matd* ga = find_gen(rep, check.first);
      const Matd* gb = find_gen(rep, check.second);
      bool have_all = ga && gb;
      const std::array<double, kLabels> coeffs = bracket_coeffs(a, b);
      Matd expected = Matd::Zero(n, n);
      for (int m = 0; m < kLabels && have_all; ++m) {
        if (coeffs[static_cast<std::size_t>(m)] == 0) continue;
        const Matd* gm = find_gen(rep, labels[static_cast<std::size_t>(m)]);
        if (!gm)
          have_all = false;
        else
          expected += coeffs[static_cast<std::size_t>(m)] * *gm;
      }
      if (have_all) {
        check.residual = (commutator(*ga, *gb) - expected).norm();
        check.skipped = false;
        report.max_residual = std::max(report.max_residual, check.residual);
      }
      report.relations.push_back(std::move(check));
    }

  const double scale = max_gen_norm(rep);
  report.threshold = rel_tol * scale;
  report.pass = report.max_residual <= report.threshold;
  report.trivial = scale <= tol.eq_tol;
  return report;
}

SquaredMass squared_mass(const PoincareRep& rep, const Tolerances& tol) {
  for (const std::string& label : {"p0", "p1", "p2", "p3"}) require_gen(rep, label);
  SquaredMass out;
  out.matrix = mass_matrix(rep);
  const Index n = out.matrix.rows();
  const double mu = out.matrix.trace() / static_cast<double>(n);
  if ((out.matrix - mu * Matd::Identity(n, n)).norm() <=
      tol.eq_tol * std::max(1.0, out.matrix.norm())) {
    out.scalar = true;
    out.value = mu;
  }
  out.positive = is_positive(out.matrix, tol);
  return out;
}

EmergentStructure extract_complex_structure(const PoincareRep& rep,
                                            const Tolerances& tol) {
  const Matd& p0 = require_gen(rep, "p0");
  if (!is_positive(mass_matrix(rep), tol))
    throw NegativeSquaredMass("squared-mass operator has negative part");

  const Matd hamiltonian = rep.c * p0;
  const Svd sv = svd(hamiltonian);
  const double smax = sv.sigma.size() ? sv.sigma(0) : 0.0;
  const double smin = sv.sigma.size() ? sv.sigma(sv.sigma.size() - 1) : 0.0;
  if (smin <= tol.rank_tol * std::max(1.0, smax))
    throw TimeTranslationNotInjective("time translation has a kernel");

  const PolarDecomposition pol = polar(hamiltonian, tol);
  EmergentStructure out;
  try {
    out.j = make_complex_structure(pol.u, tol);
  } catch (const Error& e) {
    throw PolarNotComplexStructure(e.what());
  }
  out.h = pol.p;
  for (const auto& [label, g] : rep.gens) {
    out.commutation_residuals[label] = commutator(out.j.j, g).norm();
    out.observables[label] = -out.j.j * g;
  }
  out.uniqueness_verdict = uniqueness_scan(rep, out.j, tol);
  return out;
}

UniquenessVerdict uniqueness_scan(const PoincareRep& rep,
                                  const ComplexStructure& j,
                                  const Tolerances& tol) {
  const Index n = rep.dimension();
  if (n != j.dimension())
    throw DimensionMismatch("structure does not match the representation");
  if (max_gen_norm(rep) <= tol.eq_tol) return UniquenessVerdict::Inconclusive;

  std::vector<Matd> gens;
  gens.reserve(rep.gens.size());
  for (const auto& [label, g] : rep.gens) gens.push_back(g);
  const OperatorAlgebra com = commutant(gens, n, tol);

  std::vector<Matd> anti;
  for (const Matd& b : com.basis) {
    Matd a = antisymmetric_part(b);
    if (a.norm() > 1e-10) anti.push_back(std::move(a));
  }

  std::vector<Matd> candidates = anti;
  std::mt19937_64 rng(0x5ca1ab1eULL);
  for (int draw = 0; draw < 8; ++draw) {
    Matd mix = Matd::Zero(n, n);
    for (const Matd& a : anti)
      mix += (2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0) * a;
    if (mix.norm() > 1e-10) candidates.push_back(std::move(mix));
  }

  std::vector<Matd> structures;
  for (const Matd& a : candidates) {
    const PolarDecomposition pol = polar(a, tol);
    if (pol.kernel_dim > 0) continue;
    Matd w;
    try {
      w = make_complex_structure(pol.u, tol).j;
    } catch (const Error&) {
      continue;
    }
    bool fresh = true;
    for (const Matd& seen : structures)
      if (std::min((w - seen).norm(), (w + seen).norm()) <=
          1e-6 * std::max(1.0, seen.norm())) {
        fresh = false;
        break;
      }
    if (fresh) structures.push_back(std::move(w));
  }

  if (structures.empty()) return UniquenessVerdict::Inconclusive;
  if (structures.size() > 1) return UniquenessVerdict::NotUnique;
  const double match =
      std::min((structures.front() - j.j).norm(), (structures.front() + j.j).norm());
  return match <= 10 * tol.eq_tol * std::max(1.0, j.j.norm())
             ? UniquenessVerdict::UniqueUpToSign
             : UniquenessVerdict::NotUnique;
}

double boost_conjugation_check(const PoincareRep& rep, int axis, double z,
                               const Tolerances& tol) {
  (void)tol;
  if (axis < 1 || axis > 3) throw InputError("boost axis must be 1, 2 or 3");
  const std::string suffix = std::to_string(axis);
  const Matd& k = require_gen(rep, "k" + suffix);
  const Matd& p0 = require_gen(rep, "p0");
  const Matd& pi = require_gen(rep, "p" + suffix);
  const Matd conjugated = expm(Matd(z * k)) * p0 * expm(Matd(-z * k));
  return (conjugated - (std::cosh(z) * p0 - std::sinh(z) * pi)).norm();
}

PoincareRep build_translation_rep(const std::vector<FourMomentum>& momenta) {
  if (momenta.empty())
    throw MissingGenerators("at least one momentum is needed");
  for (const FourMomentum& q : momenta)
    if (!(q.e > 0) || !std::isfinite(q.e))
      throw NonPositiveEnergy("every energy must be positive");

  const Index blocks = static_cast<Index>(momenta.size());
  const Matd j0 = quarter_turn();
  std::map<std::string, Matd> gens;
  const std::array<std::string, 4> labels = {"p0", "p1", "p2", "p3"};
  for (int mu = 0; mu < 4; ++mu) {
    Matd g = Matd::Zero(2 * blocks, 2 * blocks);
    for (Index b = 0; b < blocks; ++b) {
      const FourMomentum& q = momenta[static_cast<std::size_t>(b)];
      const double component = mu == 0 ? q.e : (mu == 1 ? q.p1 : (mu == 2 ? q.p2 : q.p3));
      g.block(2 * b, 2 * b, 2, 2) = component * j0;
    }
    gens[labels[static_cast<std::size_t>(mu)]] = std::move(g);
  }
  return make_poincare_rep(std::move(gens));
}

DecomplexifiedRep decomplexify_complex_rep(
    const std::map<std::string, ComplexifiedOperator>& gens, double c,
    const Tolerances& tol) {
  if (gens.empty())
    throw MissingGenerators("nothing to decomplexify");
  const Index n = gens.begin()->second.dimension();
  std::map<std::string, Matd> doubled;
  for (const auto& [label, z] : gens) {
    if (z.dimension() != n)
      throw DimensionMismatch("generators live on different spaces");
    if ((z.re + z.re.transpose()).norm() > tol.eq_tol * std::max(1.0, z.re.norm()) ||
        (z.im - z.im.transpose()).norm() > tol.eq_tol * std::max(1.0, z.im.norm()))
      throw NotAntiHermitian("generator " + label + " is not anti-hermitian");
    doubled[label] = z.block();
  }

  Matd hidden = Matd::Zero(2 * n, 2 * n);
  hidden.topRightCorner(n, n) = -Matd::Identity(n, n);
  hidden.bottomLeftCorner(n, n) = Matd::Identity(n, n);
  return {make_poincare_rep(std::move(doubled), c, tol),
          make_complex_structure(std::move(hidden), tol)};
}

}  // namespace realop
