#include "realop/complexification.hpp"

#include <utility>

#include "realop/errors.hpp"
#include "realop/linalg.hpp"

namespace realop {

Matd ComplexifiedOperator::block() const {
  const Index n = re.rows();
  Matd b(2 * n, 2 * n);
  b.topLeftCorner(n, n) = re;
  b.topRightCorner(n, n) = -im;
  b.bottomLeftCorner(n, n) = im;
  b.bottomRightCorner(n, n) = re;
  return b;
}

ComplexifiedOperator ComplexifiedOperator::adjoint() const {
  return {re.transpose(), -im.transpose()};
}

ComplexifiedOperator ComplexifiedOperator::conjugated() const {
  return {re, -im};
}

ComplexifiedOperator make_complexified(Matd re, Matd im) {
  require_square(re, "make_complexified");
  require_square(im, "make_complexified");
  if (re.rows() != im.rows())
    throw DimensionMismatch("make_complexified: re and im have different sizes");
  require_finite(re, "make_complexified");
  require_finite(im, "make_complexified");
  return {std::move(re), std::move(im)};
}

namespace {

void check_same_dim(const ComplexifiedOperator& a, const ComplexifiedOperator& b,
                    const char* who) {
  if (a.dimension() != b.dimension())
    throw DimensionMismatch(std::string(who) + ": operands have different sizes");
}

}  // namespace

ComplexifiedOperator operator+(const ComplexifiedOperator& a, const ComplexifiedOperator& b) {
  check_same_dim(a, b, "operator+");
  return {a.re + b.re, a.im + b.im};
}

ComplexifiedOperator operator-(const ComplexifiedOperator& a, const ComplexifiedOperator& b) {
  check_same_dim(a, b, "operator-");
  return {a.re - b.re, a.im - b.im};
}

ComplexifiedOperator operator*(const ComplexifiedOperator& a, const ComplexifiedOperator& b) {
  check_same_dim(a, b, "operator*");
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexifiedOperator operator*(std::complex<double> z, const ComplexifiedOperator& a) {
  return {z.real() * a.re - z.imag() * a.im, z.real() * a.im + z.imag() * a.re};
}

ComplexifiedOperator operator*(double z, const ComplexifiedOperator& a) {
  return {z * a.re, z * a.im};
}

double norm(const ComplexifiedOperator& a) { return operator_norm(a.block()); }

Eigen::MatrixXcd as_complex_matrix(const ComplexifiedOperator& a) {
  return a.re.cast<std::complex<double>>() +
         std::complex<double>(0, 1) * a.im.cast<std::complex<double>>();
}

Matd Conjugation::block() const {
  Matd c = Matd::Identity(2 * n, 2 * n);
  c.bottomRightCorner(n, n) = -Matd::Identity(n, n);
  return c;
}

ComplexifiedOperator complexify(const Matd& a) {
  require_square(a, "complexify");
  require_finite(a, "complexify");
  return {a, Matd::Zero(a.rows(), a.cols())};
}

Matd decomplexify(const ComplexifiedOperator& b, const Tolerances& tol) {
  const double drift = operator_norm(b.im);
  if (drift > tol.eq_tol)
    throw ViolatesConjugation(
        "decomplexify: imaginary block has norm " + std::to_string(drift) +
        ", operator does not commute with the conjugation");
  return b.re;
}

double adjoint_correspondence_check(const Matd& a) {
  ComplexifiedOperator lifted = complexify(a);
  ComplexifiedOperator transposed = complexify(Matd(a.transpose()));
  return norm(lifted.adjoint() - transposed);
}

}  // namespace realop
