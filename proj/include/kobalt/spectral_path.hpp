#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kobalt/errors.hpp"
#include "kobalt/matrix_ball.hpp"
#include "kobalt/types.hpp"

// Real-analytic matrix paths V(t) = sum_k C_k t^k and the spectrum of
// V(t)* V(t) along them.  The Kobayashi distance from the center along the
// path is artanh(sqrt(lambda_1(t))) with lambda_1 the top eigenvalue.

namespace kobalt {

template <typename Scalar = double>
struct AnalyticMatrixPath {
  MatrixBallShape<Scalar> shape;
  std::vector<ComplexMatrix<Scalar>> coeffs;  // C_0 .. C_D
  Scalar domain_halfwidth = Scalar(0);

  AnalyticMatrixPath(const MatrixBallShape<Scalar>& s,
                     std::vector<ComplexMatrix<Scalar>> c, Scalar halfwidth)
      : shape(s), coeffs(std::move(c)), domain_halfwidth(halfwidth) {
    if (coeffs.empty()) throw InvalidInput("analytic path: empty coefficient list");
    if (!(domain_halfwidth > Scalar(0)))
      throw InvalidInput("analytic path: domain halfwidth must be positive");
    for (const auto& m : coeffs) {
      shape.require_conforming(m);
      if (!m.allFinite()) throw InvalidInput("analytic path: non-finite coefficient");
    }
    // Interior certificate on a sampled symmetric grid of the stated domain.
    constexpr int kProbes = 33;
    for (int i = 0; i < kProbes; ++i) {
      const Scalar t = domain_halfwidth * (Scalar(2 * i) / Scalar(kProbes - 1) - Scalar(1));
      const Scalar n = operator_norm(eval(t));
      if (n >= Scalar(1) - Scalar(kInteriorMargin))
        throw BoundaryProximity("analytic path leaves the ball inside its stated domain");
    }
  }

  Index dimension() const { return shape.rows < shape.cols ? shape.rows : shape.cols; }

  /// Horner evaluation of V(t).
  ComplexMatrix<Scalar> eval(Scalar t) const {
    ComplexMatrix<Scalar> v = coeffs.back();
    for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it)
      v = (*it) + t * v;
    return v;
  }

  bool inside_domain(Scalar t) const { return std::abs(t) <= domain_halfwidth; }
};

template <typename Scalar = double>
struct EigenPathSample {
  RealVector<Scalar> ts;
  /// Row i holds the eigenvalues of V(ts[i])* V(ts[i]), sorted descending.
  RealMatrix<Scalar> lambdas;
};

/// Spectrum of the positive matrix V(t)* V(t) over a grid.  The product is
/// Hermitian-symmetrized before the eigensolve so rounding cannot leak an
/// imaginary part; eigenvalues are clamped at zero.
template <typename Scalar>
EigenPathSample<Scalar> eigenvalue_path(const AnalyticMatrixPath<Scalar>& path,
                                        const RealVector<Scalar>& ts) {
  for (Index i = 0; i < ts.size(); ++i)
    if (!path.inside_domain(ts(i)))
      throw InvalidInput("eigenvalue_path: grid point outside the certified domain");

  const Index n = path.shape.cols;
  EigenPathSample<Scalar> out;
  out.ts = ts;
  out.lambdas.resize(ts.size(), n);
  for (Index i = 0; i < ts.size(); ++i) {
    const ComplexMatrix<Scalar> v = path.eval(ts(i));
    ComplexMatrix<Scalar> w = v.adjoint() * v;
    w = ((w + w.adjoint()) / Scalar(2)).eval();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix<Scalar>> es(w);
    if (es.info() != Eigen::Success)
      throw NumericalDegeneracy("eigenvalue_path: eigensolve failed");
    RealVector<Scalar> lam = es.eigenvalues().reverse();
    for (Index j = 0; j < n; ++j) lam(j) = std::max(lam(j), Scalar(0));
    out.lambdas.row(i) = lam.transpose();
  }
  return out;
}

/// d(t) = artanh(sqrt(lambda_1(t))) along the path.
template <typename Scalar>
RealVector<Scalar> distance_along_path(const AnalyticMatrixPath<Scalar>& path,
                                       const RealVector<Scalar>& ts) {
  const EigenPathSample<Scalar> sample = eigenvalue_path(path, ts);
  RealVector<Scalar> d(ts.size());
  for (Index i = 0; i < ts.size(); ++i)
    d(i) = distance_from_origin_norm(std::sqrt(sample.lambdas(i, 0)));
  return d;
}

}  // namespace kobalt
