#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <utility>

#include "kobalt/errors.hpp"
#include "kobalt/types.hpp"

// Hyperbolic reflections of the Poincare disk (anti-holomorphic involutions),
// stored by the ideal endpoints of their fixed geodesics, together with the
// Klein-model chart in which geodesics are straight chords.  Distances use
// the curvature -4 normalization d(0, z) = artanh|z|.

namespace kobalt {

template <typename Scalar = double>
struct DiskPoint {
  ComplexT<Scalar> z{0, 0};

  DiskPoint() = default;
  explicit DiskPoint(ComplexT<Scalar> value) : z(value) {
    if (std::abs(z) >= Scalar(1) - Scalar(kInteriorMargin))
      throw BoundaryProximity("disk point too close to the unit circle");
  }
};

/// d(z, w) = artanh |(z - w) / (1 - conj(z) w)|.
template <typename Scalar>
Scalar disk_distance(const DiskPoint<Scalar>& a, const DiskPoint<Scalar>& b) {
  const ComplexT<Scalar> num = a.z - b.z;
  const ComplexT<Scalar> den = ComplexT<Scalar>(1) - std::conj(a.z) * b.z;
  const Scalar r = std::abs(num / den);
  return std::atanh(std::min(r, Scalar(1) - Scalar(kInteriorMargin)));
}

/// Hyperbolic reflection, determined by the unordered pair of ideal
/// endpoints of its fixed geodesic.  Canonical form sorts the endpoints by
/// argument, which makes equality of reflections decidable directly.
template <typename Scalar = double>
struct DiskReflection {
  ComplexT<Scalar> e1, e2;  // |e1| = |e2| = 1, arg(e1) <= arg(e2)

  DiskReflection(ComplexT<Scalar> a, ComplexT<Scalar> b) {
    const Scalar na = std::abs(a), nb = std::abs(b);
    if (!(na > Scalar(0.5)) || !(nb > Scalar(0.5)))
      throw InvalidInput("reflection endpoints must lie on the unit circle");
    a /= na;
    b /= nb;
    if (std::abs(a - b) < Scalar(1e-12))
      throw InvalidInput("reflection endpoints must be distinct");
    if (std::arg(a) <= std::arg(b)) {
      e1 = a;
      e2 = b;
    } else {
      e1 = b;
      e2 = a;
    }
  }

  bool is_diameter() const { return std::abs(e1 + e2) < Scalar(1e-12); }

  /// Center and radius of the inversion circle orthogonal to the unit
  /// circle through both endpoints.  Only valid when not a diameter.
  std::pair<ComplexT<Scalar>, Scalar> inversion_circle() const {
    // Re(conj(e1) c) = 1 and Re(conj(e2) c) = 1 pin the center c.
    const Scalar a1 = e1.real(), a2 = e1.imag();
    const Scalar b1 = e2.real(), b2 = e2.imag();
    const Scalar det = a1 * b2 - a2 * b1;
    const ComplexT<Scalar> c((b2 - a2) / det, (a1 - b1) / det);
    const Scalar r = std::sqrt(std::norm(c) - Scalar(1));
    return {c, r};
  }

  bool near(const DiskReflection& o, Scalar tol = Scalar(1e-9)) const {
    return std::abs(e1 - o.e1) < tol && std::abs(e2 - o.e2) < tol;
  }
};

/// Applies the reflection: inversion in the orthogonal circle through the
/// endpoints, or conjugation across a diameter.  Fixes the geodesic
/// pointwise and is an involutive isometry.
template <typename Scalar>
DiskPoint<Scalar> reflect(const DiskReflection<Scalar>& r, const DiskPoint<Scalar>& p) {
  if (r.is_diameter()) {
    const ComplexT<Scalar> dir = r.e1;  // unit direction of the diameter
    return DiskPoint<Scalar>(dir * dir * std::conj(p.z));
  }
  const auto [c, rad] = r.inversion_circle();
  return DiskPoint<Scalar>(c + rad * rad / std::conj(p.z - c));
}

/// Klein chart k = 2 z / (1 + |z|^2); geodesics become straight chords.
template <typename Scalar>
ComplexT<Scalar> to_klein(const DiskPoint<Scalar>& p) {
  return Scalar(2) * p.z / (Scalar(1) + std::norm(p.z));
}

/// Inverse chart z = k / (1 + sqrt(1 - |k|^2)); the + branch keeps |z| < 1.
template <typename Scalar>
DiskPoint<Scalar> from_klein(ComplexT<Scalar> k) {
  const Scalar k2 = std::norm(k);
  if (k2 >= Scalar(1)) throw BoundaryProximity("klein point outside the open disk");
  return DiskPoint<Scalar>(k / (Scalar(1) + std::sqrt(Scalar(1) - k2)));
}

namespace detail {

template <typename Scalar>
ComplexT<Scalar> mobius_to_center(ComplexT<Scalar> base, ComplexT<Scalar> u) {
  return (u - base) / (ComplexT<Scalar>(1) - std::conj(base) * u);
}

template <typename Scalar>
ComplexT<Scalar> mobius_from_center(ComplexT<Scalar> base, ComplexT<Scalar> u) {
  return (u + base) / (ComplexT<Scalar>(1) + std::conj(base) * u);
}

}  // namespace detail

/// The unique reflection with r(z) = w; its fixed geodesic is the hyperbolic
/// perpendicular bisector of [z, w].  Degenerate when z = w: on the diagonal
/// the leaf through (z, z) is not unique.
template <typename Scalar>
DiskReflection<Scalar> perpendicular_bisector(const DiskPoint<Scalar>& z,
                                              const DiskPoint<Scalar>& w) {
  if (disk_distance(z, w) < Scalar(1e-10))
    throw InvalidInput("perpendicular_bisector: points coincide");
  // Move z to the center; the bisector of [0, w'] crosses the radius toward
  // w' orthogonally at the hyperbolic midpoint.
  const ComplexT<Scalar> wp = detail::mobius_to_center(z.z, w.z);
  const Scalar r = std::abs(wp);
  const ComplexT<Scalar> dir = wp / r;
  const Scalar mid = std::tanh(std::atanh(r) / Scalar(2));
  // Endpoints of the orthogonal chord through the radial point at |m| in the
  // Klein chart: angle offset beta with cos(beta) = |k| = 2m/(1+m^2).
  const Scalar beta = std::acos(Scalar(2) * mid / (Scalar(1) + mid * mid));
  const ComplexT<Scalar> rot = std::polar(Scalar(1), beta);
  const ComplexT<Scalar> p1 = detail::mobius_from_center(z.z, dir * rot);
  const ComplexT<Scalar> p2 = detail::mobius_from_center(z.z, dir * std::conj(rot));
  return DiskReflection<Scalar>(p1, p2);
}

/// Membership of (z, w) in the leaf attached to r, i.e. whether w = r(z)
/// within tolerance.  Symmetric in z and w because r is an involution.
template <typename Scalar>
bool leaf_contains(const DiskReflection<Scalar>& r, const DiskPoint<Scalar>& z,
                   const DiskPoint<Scalar>& w, Scalar tol = Scalar(1e-10)) {
  return disk_distance(reflect(r, z), w) < tol;
}

/// Common point of the fixed geodesics of two distinct reflections, if the
/// geodesics cross.  Computed as the chord intersection in the Klein chart.
template <typename Scalar>
std::optional<DiskPoint<Scalar>> leaf_intersection(const DiskReflection<Scalar>& r,
                                                   const DiskReflection<Scalar>& s) {
  if (r.near(s)) throw InvalidInput("leaf_intersection: reflections coincide");
  const ComplexT<Scalar> a = r.e1, b = r.e2, c = s.e1, d = s.e2;
  // Solve a + t (b - a) = c + u (d - c) for t, u in (0, 1).
  const ComplexT<Scalar> ab = b - a, cd = d - c, ac = c - a;
  const Scalar det = ab.real() * (-cd.imag()) - (-cd.real()) * ab.imag();
  if (std::abs(det) < Scalar(1e-14)) return std::nullopt;  // parallel chords
  const Scalar t = (ac.real() * (-cd.imag()) + cd.real() * ac.imag()) / det;
  const Scalar u = (ab.real() * ac.imag() - ab.imag() * ac.real()) / det;
  const Scalar margin = Scalar(1e-12);
  if (t <= margin || t >= Scalar(1) - margin || u <= margin || u >= Scalar(1) - margin)
    return std::nullopt;
  return from_klein(a + t * ab);
}

}  // namespace kobalt
