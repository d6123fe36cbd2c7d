#include "realop/structures.hpp"

#include <utility>

#include "realop/errors.hpp"
#include "realop/linalg.hpp"

namespace realop {

ComplexStructure make_complex_structure(Matd j, const Tolerances& tol) {
  require_square(j, "make_complex_structure");
  require_finite(j, "make_complex_structure");
  const Index n = j.rows();
  const Matd eye = Matd::Identity(n, n);
  if (operator_norm(Matd(j + j.transpose())) > tol.eq_tol)
    throw InputError("make_complex_structure: matrix is not anti-symmetric");
  if (operator_norm(Matd(j * j + eye)) > tol.eq_tol)
    throw InputError("make_complex_structure: matrix does not square to -I");
  if (operator_norm(Matd(j.transpose() * j - eye)) > tol.eq_tol)
    throw InputError("make_complex_structure: matrix is not orthogonal");
  return {std::move(j)};
}

ComplexStructure standard_complex_structure(Index n) {
  if (n <= 0 || n % 2 != 0)
    throw OddDimension("standard_complex_structure: dimension " +
                       std::to_string(n) + " is not even and positive");
  Matd j = Matd::Zero(n, n);
  for (Index b = 0; b < n / 2; ++b) {
    j(2 * b, 2 * b + 1) = -1.0;
    j(2 * b + 1, 2 * b) = 1.0;
  }
  return {std::move(j)};
}

std::complex<double> hermitian_product(const Vecd& x, const Vecd& y,
                                       const ComplexStructure& s) {
  if (x.size() != s.dimension() || y.size() != s.dimension())
    throw DimensionMismatch("hermitian_product: vector size does not match structure");
  return {x.dot(y), -x.dot(s.j * y)};
}

bool is_complex_linear(const Matd& a, const ComplexStructure& s,
                       const Tolerances& tol) {
  if (a.rows() != s.dimension() || a.cols() != s.dimension())
    throw DimensionMismatch("is_complex_linear: operator size does not match structure");
  require_finite(a, "is_complex_linear");
  const double scale = std::max(1.0, operator_norm(a));
  return operator_norm(commutator(a, s.j)) <= tol.eq_tol * scale;
}

QuaternionicPair make_quaternionic_pair(ComplexStructure j, ComplexStructure k,
                                        const Tolerances& tol) {
  make_complex_structure(j.j, tol);
  make_complex_structure(k.j, tol);
  if (j.dimension() != k.dimension())
    throw DimensionMismatch("make_quaternionic_pair: structures have different sizes");
  if (j.dimension() % 4 != 0)
    throw DimensionMismatch("make_quaternionic_pair: dimension must be divisible by 4");
  if (operator_norm(Matd(j.j * k.j + k.j * j.j)) > tol.eq_tol)
    throw InputError("make_quaternionic_pair: structures do not anticommute");
  return {std::move(j), std::move(k)};
}

Quaternion quaternionic_product(const Vecd& x, const Vecd& y,
                                const QuaternionicPair& q) {
  if (x.size() != q.dimension() || y.size() != q.dimension())
    throw DimensionMismatch("quaternionic_product: vector size does not match pair");
  return {x.dot(y), -x.dot(q.jk() * y), -x.dot(q.j.j * y), -x.dot(q.k.j * y)};
}

bool is_quaternionic_linear(const Matd& a, const QuaternionicPair& q,
                            const Tolerances& tol) {
  return is_complex_linear(a, q.j, tol) && is_complex_linear(a, q.k, tol);
}

ComplexVectorView::ComplexVectorView(Vecd x, ComplexStructure s)
    : x_(std::move(x)), s_(std::move(s)) {
  if (x_.size() != s_.dimension())
    throw DimensionMismatch("ComplexVectorView: vector size does not match structure");
}

Vecd ComplexVectorView::scaled(std::complex<double> z) const {
  return z.real() * x_ + z.imag() * (s_.j * x_);
}

std::complex<double> ComplexVectorView::inner(const ComplexVectorView& other) const {
  return hermitian_product(x_, other.x_, s_);
}

}  // namespace realop
