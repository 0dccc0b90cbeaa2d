#pragma once

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "kobalt/errors.hpp"
#include "kobalt/types.hpp"

// Harish-Chandra matrix balls: the unit ball for the operator norm on a
// space of complex n x m matrices, carrying the Kobayashi metric with
// d(0, V) = artanh(||V||).  Three carriers are supported: the full matrix
// ball, the polydisk (diagonal matrices), and the complex ball (columns).

namespace kobalt {

enum class BallKind { FullMatrixBall, Polydisk, ComplexBall };

inline const char* to_string(BallKind k) {
  switch (k) {
    case BallKind::FullMatrixBall: return "full_matrix_ball";
    case BallKind::Polydisk: return "polydisk";
    case BallKind::ComplexBall: return "complex_ball";
  }
  return "?";
}

template <typename Scalar = double>
struct MatrixBallShape {
  Index rows = 1;
  Index cols = 1;
  BallKind kind = BallKind::FullMatrixBall;

  MatrixBallShape() = default;
  MatrixBallShape(Index r, Index c, BallKind k) : rows(r), cols(c), kind(k) {
    if (rows < 1 || cols < 1) throw InvalidInput("matrix ball shape: dimensions must be positive");
    if (kind == BallKind::Polydisk && rows != cols)
      throw InvalidInput("polydisk shape requires rows == cols");
    if (kind == BallKind::ComplexBall && cols != 1)
      throw InvalidInput("complex ball shape requires cols == 1");
  }

  bool conforms(const ComplexMatrix<Scalar>& m) const {
    if (m.rows() != rows || m.cols() != cols) return false;
    if (kind == BallKind::Polydisk) {
      for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
          if (i != j && m(i, j) != ComplexT<Scalar>(0)) return false;
    }
    return true;
  }

  void require_conforming(const ComplexMatrix<Scalar>& m) const {
    if (!conforms(m)) throw InvalidInput("matrix does not conform to the ball shape");
  }

  bool operator==(const MatrixBallShape& o) const {
    return rows == o.rows && cols == o.cols && kind == o.kind;
  }
};

/// Largest singular value of V, i.e. sup over unit vectors of |V xi|_2.
template <typename Derived>
typename Derived::RealScalar operator_norm(const Eigen::MatrixBase<Derived>& v) {
  if (!v.allFinite()) throw InvalidInput("operator_norm: non-finite entries");
  if (v.rows() == 0 || v.cols() == 0) return typename Derived::RealScalar(0);
  Eigen::JacobiSVD<typename Derived::PlainObject> svd(v.derived());
  return svd.singularValues()(0);
}

/// Kobayashi norm of a tangent vector at the center of the ball.  Coincides
/// with the operator norm; requires the matrix to conform to the shape.
template <typename Scalar>
Scalar kobayashi_norm(const MatrixBallShape<Scalar>& shape, const ComplexMatrix<Scalar>& v) {
  shape.require_conforming(v);
  return operator_norm(v);
}

template <typename Scalar = double>
struct MatrixBallPoint {
  MatrixBallShape<Scalar> shape;
  ComplexMatrix<Scalar> entries;

  MatrixBallPoint(const MatrixBallShape<Scalar>& s, ComplexMatrix<Scalar> m)
      : shape(s), entries(std::move(m)) {
    shape.require_conforming(entries);
    const Scalar n = operator_norm(entries);
    if (n >= Scalar(1) - Scalar(kInteriorMargin))
      throw BoundaryProximity("matrix ball point with operator norm " + std::to_string(double(n)));
  }

  static MatrixBallPoint origin(const MatrixBallShape<Scalar>& s) {
    return MatrixBallPoint(s, ComplexMatrix<Scalar>::Zero(s.rows, s.cols));
  }

  Scalar norm() const { return operator_norm(entries); }
};

/// d(0, V) = (1/2) log((1 + ||V||) / (1 - ||V||)) = artanh(||V||).
template <typename Scalar>
Scalar distance_from_origin_norm(Scalar norm) {
  if (!(norm >= Scalar(0))) throw InvalidInput("distance_from_origin: negative norm");
  if (norm >= Scalar(1) - Scalar(kInteriorMargin))
    throw BoundaryProximity("distance_from_origin: norm too close to 1");
  return std::atanh(norm);
}

template <typename Scalar>
Scalar distance_from_origin(const MatrixBallPoint<Scalar>& v) {
  return distance_from_origin_norm(v.norm());
}

/// Transvection A_p moving p to the center,
///   A_p(V) = (I - p p*)^{-1/2} (V - p) (I - p* V)^{-1} (I - p* p)^{1/2}.
/// A_p is a holomorphic automorphism of the ball with A_p(p) = 0, so
/// d(p, q) = artanh(||A_p(q)||).  The two Hermitian roots are cached.
template <typename Scalar = double>
class Transvection {
 public:
  explicit Transvection(const MatrixBallPoint<Scalar>& p) : shape_(p.shape), p_(p.entries) {
    using CMat = ComplexMatrix<Scalar>;
    const Index n = shape_.rows, m = shape_.cols;
    const CMat left = CMat::Identity(n, n) - p_ * p_.adjoint();
    const CMat right = CMat::Identity(m, m) - p_.adjoint() * p_;
    Eigen::SelfAdjointEigenSolver<CMat> esl(left);
    Eigen::SelfAdjointEigenSolver<CMat> esr(right);
    if (esl.info() != Eigen::Success || esr.info() != Eigen::Success)
      throw NumericalDegeneracy("transvection: eigensolve failed");
    if (esl.eigenvalues().minCoeff() <= Scalar(0) || esr.eigenvalues().minCoeff() <= Scalar(0))
      throw NumericalDegeneracy("transvection: normalization factor not positive definite");
    inv_sqrt_left_ = esl.operatorInverseSqrt();
    sqrt_right_ = esr.operatorSqrt();
  }

  const ComplexMatrix<Scalar>& base() const { return p_; }
  const MatrixBallShape<Scalar>& shape() const { return shape_; }

  ComplexMatrix<Scalar> apply(const ComplexMatrix<Scalar>& v) const {
    shape_.require_conforming(v);
    const Index m = shape_.cols;
    const ComplexMatrix<Scalar> denom =
        ComplexMatrix<Scalar>::Identity(m, m) - p_.adjoint() * v;
    Eigen::FullPivLU<ComplexMatrix<Scalar>> lu(denom);
    if (!lu.isInvertible())
      throw NumericalDegeneracy("transvection: I - p*V is singular");
    return inv_sqrt_left_ * (v - p_) * lu.inverse() * sqrt_right_;
  }

  MatrixBallPoint<Scalar> apply(const MatrixBallPoint<Scalar>& q) const {
    return MatrixBallPoint<Scalar>(shape_, apply(q.entries));
  }

 private:
  MatrixBallShape<Scalar> shape_;
  ComplexMatrix<Scalar> p_;
  ComplexMatrix<Scalar> inv_sqrt_left_;
  ComplexMatrix<Scalar> sqrt_right_;
};

template <typename Scalar>
Transvection<Scalar> transvection_to_origin(const MatrixBallPoint<Scalar>& p) {
  return Transvection<Scalar>(p);
}

/// Kobayashi distance between interior points, via the transvection that
/// carries p to the center.
template <typename Scalar>
Scalar kobayashi_distance(const MatrixBallPoint<Scalar>& p, const MatrixBallPoint<Scalar>& q) {
  if (!(p.shape == q.shape)) throw InvalidInput("kobayashi_distance: shape mismatch");
  const Transvection<Scalar> t(p);
  return distance_from_origin_norm(operator_norm(t.apply(q.entries)));
}

}  // namespace kobalt
