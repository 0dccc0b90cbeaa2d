#pragma once

#include <Eigen/Dense>
#include <complex>

namespace kobalt {

template <typename Scalar>
using ComplexT = std::complex<Scalar>;

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<ComplexT<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using ComplexVector = Eigen::Matrix<ComplexT<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RealMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

/// Points with norm >= 1 - kInteriorMargin are rejected rather than clamped.
inline constexpr double kInteriorMargin = 1e-12;

}  // namespace kobalt
