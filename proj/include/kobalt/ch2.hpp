#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <utility>

#include "kobalt/errors.hpp"
#include "kobalt/types.hpp"

// The complex hyperbolic plane as the unit ball in C^2, normalized to
// constant holomorphic curvature -4 so that d(0, (z, 0)) = artanh|z|.
// Geodesic rays, Busemann parameters and their horocycle level sets, and the
// complete geodesic joining two ideal boundary points.

namespace kobalt {

template <typename Scalar = double>
struct Ch2Point {
  ComplexT<Scalar> z{0, 0};
  ComplexT<Scalar> w{0, 0};

  Ch2Point() = default;
  Ch2Point(ComplexT<Scalar> z_, ComplexT<Scalar> w_) : z(z_), w(w_) {
    if (euclidean_norm() >= Scalar(1) - Scalar(kInteriorMargin))
      throw BoundaryProximity("CH2 point too close to the unit sphere");
  }

  Scalar euclidean_norm_sq() const { return std::norm(z) + std::norm(w); }
  Scalar euclidean_norm() const { return std::sqrt(euclidean_norm_sq()); }
};

namespace detail {

template <typename Scalar>
using C2 = std::array<ComplexT<Scalar>, 2>;

template <typename Scalar>
ComplexT<Scalar> herm(const C2<Scalar>& a, const C2<Scalar>& b) {
  return a[0] * std::conj(b[0]) + a[1] * std::conj(b[1]);
}

template <typename Scalar>
Scalar norm_sq(const C2<Scalar>& a) {
  return std::norm(a[0]) + std::norm(a[1]);
}

/// Ball involution phi_a with phi_a(0) = a, phi_a(a) = 0, phi_a^2 = id.
/// Extends continuously to the closed ball.
template <typename Scalar>
C2<Scalar> ball_involution(const C2<Scalar>& a, const C2<Scalar>& x) {
  const Scalar a2 = norm_sq(a);
  if (a2 == Scalar(0)) return {-x[0], -x[1]};
  const ComplexT<Scalar> xa = herm(x, a);
  const ComplexT<Scalar> proj = xa / a2;           // P_a x = proj * a
  const Scalar s = std::sqrt(Scalar(1) - a2);      // s_a
  const ComplexT<Scalar> denom = ComplexT<Scalar>(1) - xa;
  C2<Scalar> out;
  for (int i = 0; i < 2; ++i) {
    const ComplexT<Scalar> p = proj * a[i];
    const ComplexT<Scalar> q = x[i] - p;
    out[i] = (a[i] - p - s * q) / denom;
  }
  return out;
}

}  // namespace detail

/// d(p, q) = artanh sqrt(1 - (1-|p|^2)(1-|q|^2) / |1 - <p,q>|^2).
/// Unitary- and transvection-invariant; reduces to artanh|z| from the center.
template <typename Scalar>
Scalar ch2_distance(const Ch2Point<Scalar>& p, const Ch2Point<Scalar>& q) {
  const ComplexT<Scalar> ip =
      p.z * std::conj(q.z) + p.w * std::conj(q.w);
  const Scalar a = Scalar(1) - p.euclidean_norm_sq();
  const Scalar b = Scalar(1) - q.euclidean_norm_sq();
  const ComplexT<Scalar> one_minus = ComplexT<Scalar>(1) - ip;
  const Scalar ratio = (a * b) / std::norm(one_minus);
  const Scalar tanh_sq = std::max(Scalar(0), Scalar(1) - ratio);
  return std::atanh(std::sqrt(std::min(tanh_sq, Scalar(1) - Scalar(kInteriorMargin))));
}

/// Unit-speed geodesic ray from `base` toward the ideal point
/// `boundary_point` on the unit sphere.  eval also accepts negative times,
/// which extend the ray to its complete geodesic.
template <typename Scalar = double>
struct Ch2GeodesicRay {
  Ch2Point<Scalar> base;
  detail::C2<Scalar> boundary_point;

  Ch2GeodesicRay(const Ch2Point<Scalar>& b, ComplexT<Scalar> xi_z, ComplexT<Scalar> xi_w)
      : base(b), boundary_point{xi_z, xi_w} {
    const Scalar n = std::sqrt(detail::norm_sq(boundary_point));
    if (!(n > Scalar(0.5)))
      throw InvalidInput("geodesic ray: boundary point must be near the unit sphere");
    boundary_point[0] /= n;
    boundary_point[1] /= n;
    const detail::C2<Scalar> b2{base.z, base.w};
    eta_ = detail::ball_involution(b2, boundary_point);
    const Scalar m = std::sqrt(detail::norm_sq(eta_));
    eta_[0] /= m;
    eta_[1] /= m;
  }

  Ch2Point<Scalar> eval(Scalar t) const {
    const Scalar r = std::tanh(t);
    const detail::C2<Scalar> b2{base.z, base.w};
    const detail::C2<Scalar> x{r * eta_[0], r * eta_[1]};
    const detail::C2<Scalar> y = detail::ball_involution(b2, x);
    return Ch2Point<Scalar>(y[0], y[1]);
  }

  /// Direction of the ray after moving the base to the center.
  const detail::C2<Scalar>& standard_direction() const { return eta_; }

 private:
  detail::C2<Scalar> eta_;
};

/// The two orthogonal coordinate-axis rays from the center,
/// gamma_1(t) = (tanh t, 0) and gamma_2(t) = (0, tanh t).
template <typename Scalar = double>
std::pair<Ch2GeodesicRay<Scalar>, Ch2GeodesicRay<Scalar>> standard_rays() {
  const Ch2Point<Scalar> origin;
  return {Ch2GeodesicRay<Scalar>(origin, ComplexT<Scalar>(1), ComplexT<Scalar>(0)),
          Ch2GeodesicRay<Scalar>(origin, ComplexT<Scalar>(0), ComplexT<Scalar>(1))};
}

/// Busemann parameter t_p of p along the ray: the unique time with
/// gamma_p(t_p) = p for the asymptotic geodesic through p, normalized so
/// that t_{gamma(t0)} = t0.  Closed form after moving the ray base to the
/// center: t_p = (1/2) log((1 - |x|^2) / |1 - <x, eta>|^2).
template <typename Scalar>
Scalar busemann_parameter(const Ch2GeodesicRay<Scalar>& ray, const Ch2Point<Scalar>& p) {
  const detail::C2<Scalar> b{ray.base.z, ray.base.w};
  const detail::C2<Scalar> x = detail::ball_involution(b, detail::C2<Scalar>{p.z, p.w});
  const ComplexT<Scalar> ip = detail::herm(x, ray.standard_direction());
  const Scalar num = Scalar(1) - detail::norm_sq(x);
  const Scalar den = std::norm(ComplexT<Scalar>(1) - ip);
  if (!(num > Scalar(0)) || !(den > Scalar(0)))
    throw BoundaryProximity("busemann_parameter: point effectively on the boundary");
  return Scalar(0.5) * std::log(num / den);
}

/// Limit definition t_p = lim_{t->inf} (t - d(p, gamma(t))), evaluated on a
/// short geometric ladder with Richardson extrapolation in e^{-2t}.  Serves
/// as the independent cross-check of the closed form.  Times beyond ~13 are
/// useless in double precision (tanh t rounds into the boundary guard), so
/// the ladder stops at t = 10.
template <typename Scalar>
Scalar busemann_parameter_limit(const Ch2GeodesicRay<Scalar>& ray, const Ch2Point<Scalar>& p,
                                Scalar agreement_tol = Scalar(1e-6)) {
  const std::array<Scalar, 4> times{Scalar(4), Scalar(6), Scalar(8), Scalar(10)};
  std::array<Scalar, 4> u{}, x{};
  for (int i = 0; i < 4; ++i) {
    u[i] = times[i] - ch2_distance(p, ray.eval(times[i]));
    x[i] = std::exp(Scalar(-2) * times[i]);
  }
  // Successive two-point extrapolations u = t_p + c x.
  std::array<Scalar, 3> est{};
  for (int i = 0; i < 3; ++i)
    est[i] = (u[i + 1] * x[i] - u[i] * x[i + 1]) / (x[i] - x[i + 1]);
  if (std::abs(est[2] - est[1]) > agreement_tol)
    throw ConvergenceFailure("busemann_parameter_limit: ladder did not settle");
  return est[2];
}

enum class BusemannMethod { ClosedForm, Limit };

template <typename Scalar>
Scalar busemann_parameter(const Ch2GeodesicRay<Scalar>& ray, const Ch2Point<Scalar>& p,
                          BusemannMethod method) {
  return method == BusemannMethod::ClosedForm ? busemann_parameter(ray, p)
                                              : busemann_parameter_limit(ray, p);
}

/// Horocycle level exp(t_p); the horocycle H(gamma, s) is its level set.
template <typename Scalar>
Scalar horocycle_level(const Ch2GeodesicRay<Scalar>& ray, const Ch2Point<Scalar>& p,
                       BusemannMethod method = BusemannMethod::ClosedForm) {
  return std::exp(busemann_parameter(ray, p, method));
}

template <typename Scalar = double>
struct Horocycle {
  Ch2GeodesicRay<Scalar> ray;
  Scalar level;  // s > 0

  Horocycle(const Ch2GeodesicRay<Scalar>& r, Scalar s) : ray(r), level(s) {
    if (!(level > Scalar(0))) throw InvalidInput("horocycle level must be positive");
  }
};

/// Complete unit-speed geodesic with prescribed ideal endpoints, built in
/// the Hermitian hyperboloid model: lifts E = (xi, 1) of the endpoints are
/// null vectors and X(u) = e^u alpha E+ + e^{-u} E- projects to the
/// geodesic.  With |alpha| = 1 the third lift coordinate has squared
/// modulus e^{2u} + e^{-2u} + 2 Re(alpha), so u = 0 is exactly the point
/// closest to the center of the ball.
template <typename Scalar = double>
class Ch2Geodesic {
 public:
  Ch2Geodesic(ComplexT<Scalar> neg_z, ComplexT<Scalar> neg_w,
              ComplexT<Scalar> pos_z, ComplexT<Scalar> pos_w)
      : neg_{neg_z, neg_w}, pos_{pos_z, pos_w} {
    normalize(neg_);
    normalize(pos_);
    // <<E+, E->> with the signature (+,+,-) form.
    const ComplexT<Scalar> h = detail::herm(pos_, neg_) - ComplexT<Scalar>(1);
    const Scalar mag = std::abs(h);
    if (!(mag > Scalar(1e-14)))
      throw InvalidInput("geodesic endpoints coincide");
    alpha_ = -std::conj(h) / mag;
  }

  Ch2Point<Scalar> eval(Scalar u) const {
    const Scalar ep = std::exp(u), em = std::exp(-u);
    const ComplexT<Scalar> x0 = ep * alpha_ * pos_[0] + em * neg_[0];
    const ComplexT<Scalar> x1 = ep * alpha_ * pos_[1] + em * neg_[1];
    const ComplexT<Scalar> x2 = ep * alpha_ + em;
    return Ch2Point<Scalar>(x0 / x2, x1 / x2);
  }

  const detail::C2<Scalar>& endpoint_neg() const { return neg_; }
  const detail::C2<Scalar>& endpoint_pos() const { return pos_; }

 private:
  static void normalize(detail::C2<Scalar>& xi) {
    const Scalar n = std::sqrt(detail::norm_sq(xi));
    if (!(n > Scalar(0.5))) throw InvalidInput("geodesic endpoint must be near the unit sphere");
    xi[0] /= n;
    xi[1] /= n;
  }

  detail::C2<Scalar> neg_, pos_;
  ComplexT<Scalar> alpha_;
};

/// The complete geodesic asymptotic to gamma_1 forward and gamma_2 backward;
/// ideal endpoints (1, 0) and (0, 1).  Closed form
/// delta(u) = ((1 + tanh u)/2, (1 - tanh u)/2).
template <typename Scalar = double>
Ch2Geodesic<Scalar> delta_geodesic() {
  return Ch2Geodesic<Scalar>(ComplexT<Scalar>(0), ComplexT<Scalar>(1),
                             ComplexT<Scalar>(1), ComplexT<Scalar>(0));
}

/// Root of exp(t_p(curve(u))) = level along a curve on which the Busemann
/// parameter is monotone.  Brackets by doubling from u = 0, then bisects to
/// 1e-12 in the parameter.  `curve` maps a real parameter to a Ch2Point.
template <typename Scalar, typename Curve>
std::pair<Ch2Point<Scalar>, Scalar> horocycle_hit(
    const Curve& curve, const Horocycle<Scalar>& horocycle,
    BusemannMethod method = BusemannMethod::ClosedForm) {
  const Scalar target = std::log(horocycle.level);
  const auto g = [&](Scalar u) {
    return busemann_parameter(horocycle.ray, curve(u), method) - target;
  };

  // Step caps at 13: curve points beyond that sit inside the boundary guard.
  Scalar a = Scalar(0), fa = g(a);
  if (fa == Scalar(0)) return {curve(a), a};
  Scalar b = a, fb = fa;
  bool bracketed = false;
  for (const Scalar step : {Scalar(1), Scalar(2), Scalar(4), Scalar(8), Scalar(13)}) {
    for (const Scalar sgn : {Scalar(1), Scalar(-1)}) {
      const Scalar u = sgn * step;
      const Scalar fu = g(u);
      if (fa * fu <= Scalar(0)) {
        b = u;
        fb = fu;
        bracketed = true;
        break;
      }
    }
    if (bracketed) break;
  }
  if (!bracketed)
    throw NoIntersection("horocycle_hit: level not crossed inside the search window");

  Scalar lo = std::min(a, b), hi = std::max(a, b);
  Scalar flo = (lo == a) ? fa : fb;
  for (int it = 0; it < 200 && hi - lo > Scalar(1e-12); ++it) {
    const Scalar mid = (lo + hi) / Scalar(2);
    const Scalar fm = g(mid);
    if (fm == Scalar(0)) {
      lo = hi = mid;
      break;
    }
    if (flo * fm < Scalar(0)) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  const Scalar root = (lo + hi) / Scalar(2);
  return {curve(root), root};
}

/// The unitary automorphism phi(z, w) = (e^{-i theta} z, w).
template <typename Scalar>
Ch2Point<Scalar> rotate_automorphism(Scalar theta, const Ch2Point<Scalar>& p) {
  const ComplexT<Scalar> phase = std::polar(Scalar(1), -theta);
  return Ch2Point<Scalar>(phase * p.z, p.w);
}

}  // namespace kobalt
