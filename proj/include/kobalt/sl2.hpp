#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "kobalt/errors.hpp"
#include "kobalt/types.hpp"

// The R-linear action of SL2(R) on C = R^2, shared by the torus and the
// polygon-surface modules.

namespace kobalt {

template <typename Scalar>
ComplexT<Scalar> apply_sl2(const Eigen::Matrix<Scalar, 2, 2>& a, ComplexT<Scalar> z) {
  return ComplexT<Scalar>(a(0, 0) * z.real() + a(0, 1) * z.imag(),
                          a(1, 0) * z.real() + a(1, 1) * z.imag());
}

template <typename Scalar>
void require_unimodular(const Eigen::Matrix<Scalar, 2, 2>& a, Scalar tol = Scalar(1e-12)) {
  if (std::abs(a.determinant() - Scalar(1)) > tol)
    throw InvalidInput("sl2_action: matrix must have determinant 1");
}

template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> diagonal_flow(Scalar t) {
  Eigen::Matrix<Scalar, 2, 2> a;
  a << std::exp(t), Scalar(0), Scalar(0), std::exp(-t);
  return a;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> rotation_flow(Scalar phi) {
  Eigen::Matrix<Scalar, 2, 2> a;
  a << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  return a;
}

}  // namespace kobalt
