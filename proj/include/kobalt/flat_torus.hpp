#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "kobalt/errors.hpp"
#include "kobalt/sl2.hpp"
#include "kobalt/types.hpp"

// Flat tori C / (Z + tau Z) as the one-dimensional Teichmueller model:
// quadratic differentials c dz^2, their measured foliations, intersection
// numbers, extremal length, the SL2(R) action, and Teichmueller geodesic
// and disk parametrizations.  Distances use d = (1/2) log K.

namespace kobalt {

template <typename Scalar = double>
struct FlatTorus {
  ComplexT<Scalar> tau{0, 1};

  FlatTorus() = default;
  explicit FlatTorus(ComplexT<Scalar> modulus) : tau(modulus) {
    if (!(tau.imag() > Scalar(0)))
      throw InvalidInput("flat torus: Im(tau) must be positive");
  }

  Scalar area() const { return tau.imag(); }
};

/// q = c dz^2 on its torus; total mass |c| Im(tau).
template <typename Scalar = double>
struct TorusQuadDiff {
  FlatTorus<Scalar> torus;
  ComplexT<Scalar> c{1, 0};

  TorusQuadDiff(const FlatTorus<Scalar>& t, ComplexT<Scalar> coeff) : torus(t), c(coeff) {
    if (c == ComplexT<Scalar>(0)) throw InvalidInput("quadratic differential: c must be nonzero");
  }

  Scalar mass() const { return std::abs(c) * torus.area(); }

  bool is_unit_mass(Scalar tol = Scalar(1e-12)) const { return std::abs(mass() - Scalar(1)) <= tol; }

  /// Same phase, rescaled to mass one.
  TorusQuadDiff unit() const { return TorusQuadDiff(torus, c / mass()); }
};

/// Primitive homology class of a simple closed curve, stored with gcd one
/// and canonical sign (p > 0, or p = 0 and q = 1).
struct CurveClass {
  long long p = 1;
  long long q = 0;

  CurveClass(long long p_, long long q_) : p(p_), q(q_) {
    if (p == 0 && q == 0) throw InvalidInput("curve class: (0, 0) is not a curve");
    const long long g = std::gcd(std::llabs(p), std::llabs(q));
    p /= g;
    q /= g;
    if (p < 0 || (p == 0 && q < 0)) {
      p = -p;
      q = -q;
    }
  }

  bool operator==(const CurveClass& o) const { return p == o.p && q == o.q; }

  template <typename Scalar>
  ComplexT<Scalar> holonomy(const FlatTorus<Scalar>& torus) const {
    return ComplexT<Scalar>(Scalar(p), Scalar(0)) + Scalar(q) * torus.tau;
  }
};

/// Linear measured foliation with transverse measure |Re(v dz)|, encoded by
/// the covector v up to sign.  The covector is read in the lattice
/// coordinate of whichever torus the foliation is paired with; use
/// transport_foliation to move between markings.
template <typename Scalar = double>
struct TorusFoliation {
  ComplexT<Scalar> covector{1, 0};

  explicit TorusFoliation(ComplexT<Scalar> v) : covector(v) {
    if (covector == ComplexT<Scalar>(0))
      throw InvalidInput("torus foliation: covector must be nonzero");
    canonicalize();
  }

  TorusFoliation scaled(Scalar factor) const {
    if (!(factor > Scalar(0))) throw InvalidInput("foliation scale must be positive");
    return TorusFoliation(factor * covector);
  }

 private:
  // v ~ -v; pick Re > 0, or Re = 0 and Im > 0.
  void canonicalize() {
    if (covector.real() < Scalar(0) ||
        (covector.real() == Scalar(0) && covector.imag() < Scalar(0)))
      covector = -covector;
  }
};

/// Vertical foliation of e^{i theta} q: covector e^{i theta/2} sqrt(c) with
/// the principal square root; theta = pi gives the horizontal foliation of q.
template <typename Scalar>
TorusFoliation<Scalar> vertical_foliation(const TorusQuadDiff<Scalar>& qd, Scalar theta = Scalar(0)) {
  const ComplexT<Scalar> root = std::sqrt(qd.c);
  return TorusFoliation<Scalar>(std::polar(Scalar(1), theta / Scalar(2)) * root);
}

/// i(F, gamma) = |Re(v . (p + q tau))|: transverse measure of the straight
/// representative.
template <typename Scalar>
Scalar intersection_foliation_curve(const TorusFoliation<Scalar>& f, const CurveClass& gamma,
                                    const FlatTorus<Scalar>& torus) {
  return std::abs((f.covector * gamma.holonomy(torus)).real());
}

/// i(F, G) = |Im(v conj(w))| * area for linear foliations on the same torus.
template <typename Scalar>
Scalar intersection_foliations(const TorusFoliation<Scalar>& f, const TorusFoliation<Scalar>& g,
                               const FlatTorus<Scalar>& torus) {
  return std::abs(std::imag(f.covector * std::conj(g.covector))) * torus.area();
}

/// Geometric intersection number of two curve classes, |p1 q2 - q1 p2|.
inline long long intersection_curves(const CurveClass& a, const CurveClass& b) {
  return std::llabs(a.p * b.q - a.q * b.p);
}

/// Extremal length of a curve class, |p + q tau|^2 / Im(tau): flat length
/// squared over area, the supremum being attained by the flat metric.
template <typename Scalar>
Scalar extremal_length(const CurveClass& gamma, const FlatTorus<Scalar>& torus) {
  return std::norm(gamma.holonomy(torus)) / torus.area();
}

/// Extremal length of a measured foliation: mass of the quadratic
/// differential v^2 dz^2 realizing it on this torus, |v|^2 Im(tau).
template <typename Scalar>
Scalar extremal_length_horocycle_level(const TorusFoliation<Scalar>& f,
                                       const FlatTorus<Scalar>& torus) {
  return std::norm(f.covector) * torus.area();
}

/// Periods of the transverse cocycle over the lattice basis (1, tau).
template <typename Scalar>
std::pair<Scalar, Scalar> foliation_periods(const TorusFoliation<Scalar>& f,
                                            const FlatTorus<Scalar>& torus) {
  return {f.covector.real(), (f.covector * torus.tau).real()};
}

/// Covector on `torus` with prescribed periods (alpha, beta).
template <typename Scalar>
TorusFoliation<Scalar> foliation_from_periods(const FlatTorus<Scalar>& torus, Scalar alpha,
                                              Scalar beta) {
  const Scalar y = torus.area();
  return TorusFoliation<Scalar>(
      ComplexT<Scalar>(alpha, (alpha * torus.tau.real() - beta) / y));
}

/// Re-expresses a foliation on another marked torus, preserving periods.
template <typename Scalar>
TorusFoliation<Scalar> transport_foliation(const TorusFoliation<Scalar>& f,
                                           const FlatTorus<Scalar>& from,
                                           const FlatTorus<Scalar>& to) {
  const auto [alpha, beta] = foliation_periods(f, from);
  return foliation_from_periods(to, alpha, beta);
}

/// Teichmueller distance (1/2) arccosh(1 + |t1 - t2|^2 / (2 y1 y2)).
template <typename Scalar>
Scalar torus_teich_distance(const FlatTorus<Scalar>& a, const FlatTorus<Scalar>& b) {
  const Scalar y1 = a.area(), y2 = b.area();
  const Scalar arg = Scalar(1) + std::norm(a.tau - b.tau) / (Scalar(2) * y1 * y2);
  return Scalar(0.5) * std::acosh(arg);
}

/// Extremal-length sup-ratio estimate of the distance over curve classes
/// with |p|, |q| <= max_coeff.  Cross-check oracle, not an API guarantee.
template <typename Scalar>
Scalar teich_distance_sup_ratio(const FlatTorus<Scalar>& a, const FlatTorus<Scalar>& b,
                                long long max_coeff = 60) {
  Scalar sup = Scalar(0);
  for (long long p = 0; p <= max_coeff; ++p) {
    for (long long q = -max_coeff; q <= max_coeff; ++q) {
      if (p == 0 && q <= 0) continue;
      if (p > 0 && q != 0 && std::gcd(p, std::llabs(q)) != 1) continue;
      if (p == 0 && q != 1) continue;
      if (p != 0 && q == 0 && p != 1) continue;
      const CurveClass gamma(p, q);
      const Scalar ratio = extremal_length(gamma, b) / extremal_length(gamma, a);
      if (ratio > sup) sup = ratio;
    }
  }
  return Scalar(0.5) * std::log(sup);
}

/// Acts on the flat structure of (X, q): the lattice sqrt(c) (Z + tau Z) is
/// mapped R-linearly and renormalized so its first vector is 1.  The mass
/// |c| Im(tau) is preserved.
template <typename Scalar>
TorusQuadDiff<Scalar> sl2_action(const Eigen::Matrix<Scalar, 2, 2>& a,
                                 const TorusQuadDiff<Scalar>& qd) {
  require_unimodular(a);
  const ComplexT<Scalar> root = std::sqrt(qd.c);
  const ComplexT<Scalar> e1 = apply_sl2(a, root);
  const ComplexT<Scalar> e2 = apply_sl2(a, root * qd.torus.tau);
  if (std::abs(e1) == Scalar(0)) throw NumericalDegeneracy("sl2_action: degenerate image lattice");
  return TorusQuadDiff<Scalar>(FlatTorus<Scalar>(e2 / e1), e1 * e1);
}

/// Lift of the Teichmueller geodesic through a unit-mass differential: at
/// time t the pair (e^t F(q), e^{-t} F(-q)) over the torus reached by the
/// diagonal flow.  The foliation covectors are carried in the coordinates of
/// the starting torus.
template <typename Scalar = double>
struct TeichGeodesicLift {
  TorusFoliation<Scalar> f_plus;
  TorusFoliation<Scalar> f_minus;
  Scalar t = Scalar(0);
  FlatTorus<Scalar> torus_at;
  TorusQuadDiff<Scalar> diff_at;
};

template <typename Scalar>
TeichGeodesicLift<Scalar> geodesic_lift(const TorusQuadDiff<Scalar>& qd, Scalar t) {
  if (!qd.is_unit_mass())
    throw InvalidInput("geodesic_lift: differential must have unit mass");
  const TorusQuadDiff<Scalar> moved = sl2_action(diagonal_flow(t), qd);
  return TeichGeodesicLift<Scalar>{
      vertical_foliation(qd, Scalar(0)).scaled(std::exp(t)),
      vertical_foliation(qd, std::numbers::pi_v<Scalar>).scaled(std::exp(-t)),
      t, moved.torus, moved};
}

/// Teichmueller disk through (X0, q0): the point gamma_C(z) for |z| < 1,
/// with gamma_C(e^{-i theta} tanh t) the torus reached by flowing
/// e^{i theta} q0 for time t.
template <typename Scalar>
FlatTorus<Scalar> disk_parametrization(const TorusQuadDiff<Scalar>& qd, ComplexT<Scalar> z) {
  const Scalar r = std::abs(z);
  if (r >= Scalar(1)) throw InvalidInput("disk_parametrization: |z| must be < 1");
  if (r == Scalar(0)) return qd.torus;
  const Scalar theta = -std::arg(z);
  const Scalar t = std::atanh(r);
  const TorusQuadDiff<Scalar> rotated(qd.torus, std::polar(Scalar(1), theta) * qd.c);
  return sl2_action(diagonal_flow(t), rotated).torus;
}

}  // namespace kobalt
