#include <random>

#include "doctest.h"
#include "realop/complexification.hpp"
#include "realop/linalg.hpp"
#include "realop/spectral.hpp"
#include "realop/structures.hpp"

using namespace realop;

namespace {

Matd random_matrix(Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matd a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = dist(rng);
  return a;
}

Matd random_symmetric(Index n, std::mt19937_64& rng) {
  return symmetric_part(random_matrix(n, rng));
}

Matd random_antisymmetric(Index n, std::mt19937_64& rng) {
  return antisymmetric_part(random_matrix(n, rng));
}

}  // namespace

TEST_CASE("pvm of a diagonal matrix with a repeated eigenvalue") {
  Matd a = Matd::Zero(3, 3);
  a(0, 0) = 1;
  a(1, 1) = 1;
  a(2, 2) = 2;
  Pvm p = pvm_of(a);
  REQUIRE(p.blocks.size() == 2);
  CHECK(p.blocks[0].eigenvalue == doctest::Approx(1.0));
  CHECK(p.blocks[0].multiplicity == 2);
  CHECK(p.blocks[1].eigenvalue == doctest::Approx(2.0));
  Matd d = Matd::Zero(3, 3);
  d(0, 0) = 1;
  d(1, 1) = 1;
  CHECK(operator_norm(Matd(p.blocks[0].projector - d)) <= 1e-12);
}

TEST_CASE("pvm clusters eigenvalues below the clustering width") {
  Matd a = Matd::Zero(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 1.0 + 1e-9;
  a(2, 2) = 5.0;
  Tolerances tol;  // eig_cluster_tol = 1e-7
  Pvm p = pvm_of(a, tol);
  CHECK(p.blocks.size() == 2);

  tol.eig_cluster_tol = 1e-12;
  Pvm q = pvm_of(a, tol);
  CHECK(q.blocks.size() == 3);
}

TEST_CASE("pvm is a partition of unity into orthogonal projectors") {
  std::mt19937_64 rng(37);
  Tolerances tol;
  for (int trial = 0; trial < 10; ++trial) {
    Index n = 2 + static_cast<Index>(rng() % 8);
    Matd a = random_symmetric(n, rng);
    Pvm p = pvm_of(a, tol);
    Matd sum = Matd::Zero(n, n);
    Matd recon = Matd::Zero(n, n);
    for (const PvmBlock& b : p.blocks) {
      CHECK(operator_norm(Matd(b.projector * b.projector - b.projector)) <= 1e-10);
      CHECK(operator_norm(Matd(b.projector - b.projector.transpose())) <= 1e-12);
      sum += b.projector;
      recon += b.eigenvalue * b.projector;
    }
    CHECK(operator_norm(Matd(sum - Matd::Identity(n, n))) <= 1e-10);
    CHECK(operator_norm(Matd(recon - a)) <=
          10 * tol.eq_tol * std::max(1.0, operator_norm(a)));
  }
}

TEST_CASE("apply_function squares a diagonal matrix") {
  Matd a = Matd::Zero(2, 2);
  a(0, 0) = 2;
  a(1, 1) = 3;
  Matd sq = apply_function(a, [](double x) { return x * x; });
  CHECK(sq(0, 0) == doctest::Approx(4.0));
  CHECK(sq(1, 1) == doctest::Approx(9.0));
}

TEST_CASE("apply_function refuses poles on the spectrum") {
  Matd a = Matd::Zero(2, 2);
  a(0, 0) = 1;
  CHECK_THROWS_AS(apply_function(a, [](double x) { return 1.0 / x; }),
                  FunctionUndefinedAtEigenvalue);
}

TEST_CASE("sqrt_psd inverts squaring on positive matrices") {
  std::mt19937_64 rng(41);
  Tolerances tol;
  for (int trial = 0; trial < 8; ++trial) {
    Index n = 2 + static_cast<Index>(rng() % 6);
    Matd c = random_matrix(n, rng);
    Matd b = c * c.transpose();
    Matd r = sqrt_psd(b, tol);
    CHECK(is_positive(r, tol));
    CHECK(operator_norm(Matd(r * r - b)) <=
          100 * tol.eq_tol * std::max(1.0, operator_norm(b)));
    CHECK(operator_norm(Matd(r - r.transpose())) <= 1e-10);
  }
}

TEST_CASE("sqrt_psd rejects indefinite input") {
  Matd a = Matd::Zero(2, 2);
  a(0, 0) = 1;
  a(1, 1) = -1;
  CHECK_THROWS_AS(sqrt_psd(a), NotPositive);
}

TEST_CASE("is_positive tolerates eigenvalues at the noise floor") {
  Matd a = Matd::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = -1e-12;
  CHECK(is_positive(a));
  a(1, 1) = -1e-3;
  CHECK_FALSE(is_positive(a));
  CHECK_FALSE(is_positive(Matd(-Matd::Identity(3, 3))));
}

TEST_CASE("polar factors of a signed diagonal matrix") {
  Matd a = Matd::Zero(2, 2);
  a(0, 0) = 2;
  a(1, 1) = -3;
  PolarDecomposition pd = polar(a);
  CHECK(pd.kernel_dim == 0);
  Matd u_expect = Matd::Zero(2, 2);
  u_expect(0, 0) = 1;
  u_expect(1, 1) = -1;
  Matd p_expect = Matd::Zero(2, 2);
  p_expect(0, 0) = 2;
  p_expect(1, 1) = 3;
  CHECK(operator_norm(Matd(pd.u - u_expect)) <= 1e-12);
  CHECK(operator_norm(Matd(pd.p - p_expect)) <= 1e-12);
}

TEST_CASE("polar factors of the quarter turn") {
  ComplexStructure s = standard_complex_structure(2);
  PolarDecomposition pd = polar(s.j);
  CHECK(operator_norm(Matd(pd.u - s.j)) <= 1e-12);
  CHECK(operator_norm(Matd(pd.p - Matd::Identity(2, 2))) <= 1e-12);
}

TEST_CASE("polar of a singular matrix extends by zero on the kernel") {
  Matd a = Matd::Zero(2, 2);
  a(0, 0) = 5;
  PolarDecomposition pd = polar(a);
  CHECK(pd.kernel_dim == 1);
  CHECK(pd.u(0, 0) == doctest::Approx(1.0));
  CHECK((pd.u * Vecd::Unit(2, 1)).norm() <= 1e-14);
  CHECK(pd.p(0, 0) == doctest::Approx(5.0));
}

TEST_CASE("polar satisfies the decomposition clauses on random input") {
  std::mt19937_64 rng(43);
  Tolerances tol;
  for (int trial = 0; trial < 12; ++trial) {
    Index n = 2 + static_cast<Index>(rng() % 7);
    Matd a = random_matrix(n, rng);
    if (trial % 3 == 0 && n >= 2) a.col(n - 1) = a.col(0);  // kill the rank
    PolarDecomposition pd = polar(a, tol);
    const double scale = std::max(1.0, operator_norm(a));

    CHECK(operator_norm(Matd(a - pd.u * pd.p)) <= 1e-10 * scale);
    CHECK(is_positive(pd.p, tol));
    CHECK(operator_norm(Matd(pd.p - sqrt_psd(Matd(a.transpose() * a), tol))) <=
          1e-8 * scale);
    // partial isometry, isometric exactly on Ran(p)
    CHECK(operator_norm(Matd(pd.u * pd.u.transpose() * pd.u - pd.u)) <= 1e-10);
    CHECK(rank(pd.u, tol) == rank(a, tol));
    CHECK(rank(a, tol) + pd.kernel_dim == n);
    // shared kernels: u and a annihilate the same vectors
    Matd ker = nullspace(a, tol);
    if (ker.cols() > 0) CHECK(operator_norm(Matd(pd.u * ker)) <= 1e-9);
  }
}

TEST_CASE("polar of an injective anti-symmetric matrix yields a structure") {
  std::mt19937_64 rng(47);
  Tolerances tol;
  for (int trial = 0; trial < 8; ++trial) {
    Matd a = random_antisymmetric(6, rng);
    if (rank(a, tol) < 6) continue;  // generic input is injective
    PolarDecomposition pd = polar(a, tol);
    Matd eye = Matd::Identity(6, 6);
    CHECK(operator_norm(Matd(pd.u.transpose() * pd.u - eye)) <= 1e-10);
    CHECK(operator_norm(Matd(pd.u + pd.u.transpose())) <= 1e-10);
    CHECK(operator_norm(Matd(pd.u * pd.u + eye)) <= 1e-9);
  }
}

TEST_CASE("polar commutes with complexification") {
  std::mt19937_64 rng(53);
  Tolerances tol;
  Matd a = random_matrix(4, rng);
  a += 5.0 * Matd::Identity(4, 4);  // keep it injective
  PolarDecomposition real_pd = polar(a, tol);
  PolarDecomposition lifted_pd = polar(complexify(a).block(), tol);
  CHECK(operator_norm(Matd(lifted_pd.u - complexify(real_pd.u).block())) <= 1e-9);
  CHECK(operator_norm(Matd(lifted_pd.p - complexify(real_pd.p).block())) <= 1e-9);
}

TEST_CASE("stone_generator recovers the generator of a rotation group") {
  std::mt19937_64 rng(59);
  Tolerances tol;
  Matd a = random_antisymmetric(5, rng);
  auto group = [&a](double t) { return expm(Matd(t * a)); };
  StoneResult res = stone_generator(group, 0.1, tol);
  CHECK(operator_norm(Matd(res.generator - a)) <= 1e-8);
  CHECK(res.symmetric_residual <= 10 * tol.eq_tol);
  CHECK(operator_norm(Matd(res.generator + res.generator.transpose())) <= 1e-14);
}

TEST_CASE("stone_generator rejects non-orthogonal samples") {
  auto bad = [](double t) { return Matd((1.0 + t) * Matd::Identity(3, 3)); };
  CHECK_THROWS_AS(stone_generator(bad, 0.5), NotUnitaryAtSample);
}

TEST_CASE("stone_generator rejects samples far from the identity") {
  ComplexStructure s = standard_complex_structure(2);
  const double pi = std::acos(-1.0);
  auto group = [&](double t) { return expm(Matd(pi * t * s.j)); };
  CHECK_THROWS_AS(stone_generator(group, 1.0), TooFarFromIdentity);
}

TEST_CASE("commutation with a generator propagates to its group and factors") {
  std::mt19937_64 rng(61);
  Tolerances tol;
  Matd a = random_antisymmetric(6, rng);
  Matd b = a * a - 3.0 * a + Matd::Identity(6, 6);  // commutes by construction
  CommutationReport rep = commutation_propagation_check(a, b, tol);
  CHECK(rep.commutes_with_generator);
  CHECK(rep.propagated);
  for (double r : rep.group_residuals) CHECK(r <= 100 * tol.eq_tol);
  CHECK(rep.unitary_residual <= 100 * tol.eq_tol);
  CHECK(rep.positive_residual <= 100 * tol.eq_tol);

  Matd c = random_matrix(6, rng);
  CommutationReport rep2 = commutation_propagation_check(a, c, tol);
  CHECK_FALSE(rep2.commutes_with_generator);
}

TEST_CASE("polar parts of commuting anti-symmetric matrices commute") {
  ComplexStructure s2 = standard_complex_structure(2);
  Matd a = Matd::Zero(4, 4);
  a.topLeftCorner(2, 2) = 1.0 * s2.j;
  a.bottomRightCorner(2, 2) = 2.0 * s2.j;
  Matd b = Matd::Zero(4, 4);
  b.topLeftCorner(2, 2) = 3.0 * s2.j;
  b.bottomRightCorner(2, 2) = 5.0 * s2.j;
  REQUIRE(operator_norm(commutator(a, b)) <= 1e-14);

  PolarDecomposition pa = polar(a);
  PolarDecomposition pb = polar(b);
  CHECK(operator_norm(commutator(pa.u, pb.u)) <= 1e-12);
  CHECK(operator_norm(Matd(pa.u.transpose() * pb.u - pb.u * pa.u.transpose())) <=
        1e-12);
}
