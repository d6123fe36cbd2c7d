#pragma once

#include <complex>

#include "realop/types.hpp"

namespace realop {

/// Operator re + i*im acting on the external complexification of a real
/// space: pairs (x, y) read as x + iy. Stored as the two real blocks.
struct ComplexifiedOperator {
  Matd re;
  Matd im;

  Index dimension() const { return re.rows(); }

  /// Real action on R^{2n}, ordered (real part, imaginary part):
  /// [[re, -im], [im, re]].
  Matd block() const;

  /// Adjoint with respect to the induced hermitian product: (re^T, -im^T).
  ComplexifiedOperator adjoint() const;

  /// C B C with C the canonical conjugation: flips the sign of im.
  ComplexifiedOperator conjugated() const;
};

/// Validating constructor: blocks must be square, matching and finite.
ComplexifiedOperator make_complexified(Matd re, Matd im);

ComplexifiedOperator operator+(const ComplexifiedOperator& a, const ComplexifiedOperator& b);
ComplexifiedOperator operator-(const ComplexifiedOperator& a, const ComplexifiedOperator& b);
ComplexifiedOperator operator*(const ComplexifiedOperator& a, const ComplexifiedOperator& b);
ComplexifiedOperator operator*(std::complex<double> z, const ComplexifiedOperator& a);
ComplexifiedOperator operator*(double z, const ComplexifiedOperator& a);

/// Operator norm of the complex action (equals the norm of the real block).
double norm(const ComplexifiedOperator& a);

/// The same operator as an honest complex matrix re + i*im.
Eigen::MatrixXcd as_complex_matrix(const ComplexifiedOperator& a);

/// Canonical conjugation x + iy -> x - iy.
struct Conjugation {
  Index n = 0;

  /// Block action on R^{2n}: [[I, 0], [0, -I]].
  Matd block() const;
};

/// Lift of a real operator, a + i*0. Commutes with the conjugation.
ComplexifiedOperator complexify(const Matd& a);

/// Inverse of complexify on conjugation-commuting operators. The imaginary
/// block must vanish within eq_tol in operator norm, otherwise the operator
/// does not descend to the real space and ViolatesConjugation is raised.
Matd decomplexify(const ComplexifiedOperator& b, const Tolerances& tol = {});

/// Residual ||complexify(a)^* - complexify(a^T)||: how far the complex
/// adjoint drifts from the lifted real transpose. Zero in exact arithmetic.
double adjoint_correspondence_check(const Matd& a);

}  // namespace realop
