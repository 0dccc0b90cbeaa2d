#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "kobalt/flat_torus.hpp"
#include "kobalt/random.hpp"
#include "kobalt/reflections.hpp"

using namespace kobalt;
using Cd = std::complex<double>;
using D = DiskPoint<double>;
using R = DiskReflection<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

R random_reflection(Rng& rng) {
  for (;;) {
    const double a = rng.uniform(-kPi, kPi);
    const double b = rng.uniform(-kPi, kPi);
    const double gap = std::abs(a - b);
    if (gap > 1e-2 && std::abs(gap - 2 * kPi) > 1e-2)
      return R(std::polar(1.0, a), std::polar(1.0, b));
  }
}

D random_disk_point(Rng& rng, double radius = 0.95) {
  return D(rng.complex_in_disk(radius));
}

// Point on Fix(r) at arc fraction t in (0, 1).
Cd geodesic_point(const R& r, double t) {
  if (r.is_diameter()) return (r.e1 + t * (r.e2 - r.e1)) * 0.999;
  const auto [c, rad] = r.inversion_circle();
  const double a1 = std::arg(r.e1 - c), a2 = std::arg(r.e2 - c);
  double span = a2 - a1;
  if (span > kPi) span -= 2 * kPi;
  if (span < -kPi) span += 2 * kPi;
  return c + std::polar(rad, a1 + t * span);
}

}  // namespace

TEST_CASE("disk distance basics") {
  CHECK(disk_distance(D(Cd(0, 0)), D(Cd(0.5, 0))) ==
        doctest::Approx(std::atanh(0.5)).epsilon(1e-14));
  const D z(Cd(0.2, -0.4));
  CHECK(disk_distance(z, z) == 0.0);
}

TEST_CASE("reflection across the real axis is conjugation") {
  const R real_axis(Cd(1, 0), Cd(-1, 0));
  const D p(Cd(0.0, 0.3));
  const D image = reflect(real_axis, p);
  CHECK(std::abs(image.z - Cd(0.0, -0.3)) < 1e-14);
}

TEST_CASE("reflections fix their geodesics pointwise") {
  Rng rng(401);
  for (int trial = 0; trial < 100; ++trial) {
    const R r = random_reflection(rng);
    const double t = rng.uniform(0.1, 0.9);
    const D p(geodesic_point(r, t));
    CHECK(std::abs(reflect(r, p).z - p.z) < 1e-11);
  }
}

TEST_CASE("reflections are involutive isometries") {
  Rng rng(402);
  for (int trial = 0; trial < 10000; ++trial) {
    const R r = random_reflection(rng);
    const D z = random_disk_point(rng), w = random_disk_point(rng);
    CHECK(std::abs(reflect(r, reflect(r, z)).z - z.z) < 1e-12);
    CHECK(disk_distance(z, w) ==
          doctest::Approx(disk_distance(reflect(r, z), reflect(r, w))).epsilon(1e-12));
  }
}

TEST_CASE("perpendicular bisector: symmetric real pair gives the imaginary axis") {
  const R r = perpendicular_bisector(D(Cd(0.3, 0)), D(Cd(-0.3, 0)));
  // Canonical endpoints sorted by argument: -i then +i is (-pi/2, pi/2).
  CHECK(std::abs(r.e1 - Cd(0, -1)) < 1e-12);
  CHECK(std::abs(r.e2 - Cd(0, 1)) < 1e-12);
}

TEST_CASE("perpendicular bisector: fixed geodesic crosses the segment at its midpoint") {
  const D z(Cd(0, 0)), w(Cd(0.5, 0));
  const R r = perpendicular_bisector(z, w);
  // Hyperbolic midpoint of [0, 0.5] by distance bisection.
  double lo = 0.0, hi = 0.5;
  for (int it = 0; it < 80; ++it) {
    const double mid = (lo + hi) / 2;
    if (disk_distance(z, D(Cd(mid, 0))) < disk_distance(w, D(Cd(mid, 0))))
      lo = mid;
    else
      hi = mid;
  }
  const Cd midpoint(lo, 0.0);
  // The midpoint lies on Fix(r): reflect fixes it.
  CHECK(std::abs(reflect(r, D(midpoint)).z - midpoint) < 1e-10);
}

TEST_CASE("perpendicular bisector: equidistance along the fixed geodesic") {
  Rng rng(403);
  for (int trial = 0; trial < 50; ++trial) {
    const D z = random_disk_point(rng, 0.9);
    D w = random_disk_point(rng, 0.9);
    if (disk_distance(z, w) < 1e-3) continue;
    const R r = perpendicular_bisector(z, w);
    CHECK(std::abs(reflect(r, z).z - w.z) < 1e-11);
    for (int k = 1; k <= 20; ++k) {
      const D x(geodesic_point(r, k / 21.0));
      CHECK(disk_distance(z, x) == doctest::Approx(disk_distance(w, x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("perpendicular bisector rejects coincident points") {
  const D z(Cd(0.1, 0.2));
  CHECK_THROWS_AS(perpendicular_bisector(z, z), InvalidInput);
}

TEST_CASE("leaf membership and the flip identity") {
  Rng rng(404);
  for (int trial = 0; trial < 10000; ++trial) {
    const R r = random_reflection(rng);
    const D z = random_disk_point(rng);
    const D w = random_disk_point(rng);
    CHECK(leaf_contains(r, z, reflect(r, z)));
    CHECK(leaf_contains(r, z, w) == leaf_contains(r, w, z));
  }
}

TEST_CASE("diagonal membership happens exactly on the fixed geodesic") {
  Rng rng(405);
  for (int trial = 0; trial < 200; ++trial) {
    const R r = random_reflection(rng);
    const D on(geodesic_point(r, rng.uniform(0.2, 0.8)));
    CHECK(leaf_contains(r, on, on, 1e-8));
    const D z = random_disk_point(rng);
    if (disk_distance(z, reflect(r, z)) > 1e-4) CHECK(!leaf_contains(r, z, z));
  }
}

TEST_CASE("leaf intersection: crossing, disjoint, and coincident cases") {
  const R real_axis(Cd(1, 0), Cd(-1, 0));
  const R imag_axis(Cd(0, 1), Cd(0, -1));
  const auto crossing = leaf_intersection(real_axis, imag_axis);
  REQUIRE(crossing.has_value());
  CHECK(std::abs(crossing->z) < 1e-12);

  // Nested endpoints never cross in the interior.
  const R near_boundary(std::polar(1.0, 0.1), std::polar(1.0, 0.5));
  CHECK(!leaf_intersection(real_axis, near_boundary).has_value());

  CHECK_THROWS_AS(leaf_intersection(real_axis, real_axis), InvalidInput);
}

TEST_CASE("leaf intersection points lie on both fixed geodesics") {
  Rng rng(406);
  int found = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const R r = random_reflection(rng);
    const R s = random_reflection(rng);
    if (r.near(s)) continue;
    const auto z0 = leaf_intersection(r, s);
    if (!z0) continue;
    ++found;
    CHECK(std::abs(reflect(r, *z0).z - z0->z) < 1e-9);
    CHECK(std::abs(reflect(s, *z0).z - z0->z) < 1e-9);
    CHECK(leaf_contains(r, *z0, *z0, 1e-8));
    CHECK(leaf_contains(s, *z0, *z0, 1e-8));
  }
  CHECK(found > 20);
}

TEST_CASE("distinct leaves share no off-diagonal point") {
  Rng rng(407);
  for (int trial = 0; trial < 2000; ++trial) {
    const R r = random_reflection(rng);
    const R s = random_reflection(rng);
    if (r.near(s)) continue;
    const D z = random_disk_point(rng);
    const Cd rz = reflect(r, z).z, sz = reflect(s, z).z;
    if (std::abs(rz - sz) < 1e-10) {
      // Only possible on both fixed geodesics at once.
      CHECK(std::abs(rz - z.z) < 1e-6);
    }
  }
}

TEST_CASE("klein chart: round trip and the 0.5 -> 0.8 example") {
  CHECK(std::abs(to_klein(D(Cd(0, 0)))) == 0.0);
  CHECK(to_klein(D(Cd(0.5, 0))).real() == doctest::Approx(0.8).epsilon(1e-15));
  Rng rng(408);
  for (int trial = 0; trial < 1000; ++trial) {
    const D z = random_disk_point(rng);
    const D back = from_klein(to_klein(z));
    CHECK(std::abs(back.z - z.z) < 1e-12);
  }
}

TEST_CASE("geodesics map to straight chords in the klein chart") {
  Rng rng(409);
  for (int trial = 0; trial < 100; ++trial) {
    const R r = random_reflection(rng);
    const Cd a = r.e1, b = r.e2;
    const Cd chord = b - a;
    for (int k = 1; k < 50; ++k) {
      const Cd pt = geodesic_point(r, k / 50.0);
      const Cd kp = to_klein(D(pt));
      const Cd diff = kp - a;
      const double dist =
          std::abs(diff.real() * chord.imag() - diff.imag() * chord.real()) / std::abs(chord);
      CHECK(dist < 1e-10);
    }
  }
}

TEST_CASE("disk distance agrees with the torus distance through a Cayley map") {
  Rng rng(410);
  const auto cayley = [](Cd z) { return Cd(0, 1) * (Cd(1, 0) + z) / (Cd(1, 0) - z); };
  for (int trial = 0; trial < 500; ++trial) {
    const D z = random_disk_point(rng, 0.9), w = random_disk_point(rng, 0.9);
    const FlatTorus<double> tz(cayley(z.z)), tw(cayley(w.z));
    CHECK(disk_distance(z, w) == doctest::Approx(torus_teich_distance(tz, tw)).epsilon(1e-10));
  }
}
