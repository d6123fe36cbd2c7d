#pragma once

#include <complex>

#include "realop/types.hpp"

namespace realop {

/// Orthogonal anti-symmetric J with J^2 = -I. Multiplication by J plays the
/// role of multiplication by i, turning the real space into a complex one
/// with half the dimension.
struct ComplexStructure {
  Matd j;

  Index dimension() const { return j.rows(); }
};

/// Validating constructor: square, finite, anti-symmetric, orthogonal and
/// squaring to -I, all within eq_tol.
ComplexStructure make_complex_structure(Matd j, const Tolerances& tol = {});

/// Block-diagonal standard structure on R^n, n even: n/2 copies of the
/// 2x2 rotation by a quarter turn. Odd n raises OddDimension.
ComplexStructure standard_complex_structure(Index n);

/// Hermitian product carried by the structure:
/// (x|y)_J = (x|y) - i (x|Jy), conjugate-linear in the first slot.
std::complex<double> hermitian_product(const Vecd& x, const Vecd& y,
                                       const ComplexStructure& s);

/// Whether a commutes with the structure, i.e. is complex-linear for it.
/// Threshold: ||aj - ja|| <= eq_tol * max(1, ||a||).
bool is_complex_linear(const Matd& a, const ComplexStructure& s,
                       const Tolerances& tol = {});

/// Pair of anticommuting complex structures; j, k and jk generate an action
/// of the quaternions. Only exists when the dimension is divisible by 4.
struct QuaternionicPair {
  ComplexStructure j;
  ComplexStructure k;

  Index dimension() const { return j.dimension(); }
  Matd jk() const { return j.j * k.j; }
};

/// Validating constructor: both structures valid, same size, anticommuting.
QuaternionicPair make_quaternionic_pair(ComplexStructure j, ComplexStructure k,
                                        const Tolerances& tol = {});

/// Coefficients of a quaternion q = r + i*i_ + j*j_ + k*k_ where the units
/// act as JK, J and K respectively.
struct Quaternion {
  double r = 0;
  double i = 0;
  double j = 0;
  double k = 0;
};

/// Quaternion-valued pairing ((x|y), -(x|JKy), -(x|Jy), -(x|Ky)).
Quaternion quaternionic_product(const Vecd& x, const Vecd& y,
                                const QuaternionicPair& q);

/// Whether a commutes with both structures of the pair.
bool is_quaternionic_linear(const Matd& a, const QuaternionicPair& q,
                            const Tolerances& tol = {});

/// A real vector read as an element of the complex space carried by a
/// structure. Owns copies of both; cheap at the sizes this library targets.
class ComplexVectorView {
 public:
  ComplexVectorView(Vecd x, ComplexStructure s);

  const Vecd& real_vector() const { return x_; }
  const ComplexStructure& structure() const { return s_; }

  /// Scalar action (a + ib) x = a x + b Jx.
  Vecd scaled(std::complex<double> z) const;

  /// Hermitian product against another view over the same structure.
  std::complex<double> inner(const ComplexVectorView& other) const;

 private:
  Vecd x_;
  ComplexStructure s_;
};

}  // namespace realop
