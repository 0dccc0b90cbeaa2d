#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include "kobalt/flat_torus.hpp"
#include "kobalt/polygon_surface.hpp"
#include "kobalt/random.hpp"

using namespace kobalt;
using Cd = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

PolygonSurface square_torus() {
  return PolygonSurface(
      {{Cd(0, 0), Cd(1, 0), Cd(1, 1), Cd(0, 1)}},
      {Gluing{{0, 0}, {0, 2}, +1}, Gluing{{0, 1}, {0, 3}, +1}});
}

// Three unit squares at (0,0), (1,0), (0,1); genus two with a single cone
// point of angle 6 pi.
PolygonSurface l_shaped_surface() {
  const std::vector<std::vector<Cd>> polys = {
      {Cd(0, 0), Cd(1, 0), Cd(1, 1), Cd(0, 1)},
      {Cd(1, 0), Cd(2, 0), Cd(2, 1), Cd(1, 1)},
      {Cd(0, 1), Cd(1, 1), Cd(1, 2), Cd(0, 2)},
  };
  const std::vector<Gluing> gluings = {
      {{0, 0}, {2, 2}, +1},  // bottom of S0 <-> top of S2
      {{1, 0}, {1, 2}, +1},  // bottom of S1 <-> top of S1
      {{0, 2}, {2, 0}, +1},  // top of S0 <-> bottom of S2 (shared seam)
      {{0, 3}, {1, 1}, +1},  // left of S0 <-> right of S1
      {{2, 3}, {2, 1}, +1},  // left of S2 <-> right of S2
      {{0, 1}, {1, 3}, +1},  // right of S0 <-> left of S1 (shared seam)
  };
  return PolygonSurface(polys, gluings);
}

std::vector<Cd> sorted_holonomies(const SaddleConnectionSet& set) {
  auto hs = set.holonomies();
  std::sort(hs.begin(), hs.end(), [](Cd a, Cd b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return std::arg(a) < std::arg(b);
  });
  return hs;
}

}  // namespace

TEST_CASE("surface validation catches malformed input") {
  // Clockwise polygon.
  CHECK_THROWS_AS(PolygonSurface({{Cd(0, 0), Cd(0, 1), Cd(1, 1), Cd(1, 0)}},
                                 {Gluing{{0, 0}, {0, 2}, +1}, Gluing{{0, 1}, {0, 3}, +1}}),
                  InvalidInput);
  // Unglued edge.
  CHECK_THROWS_AS(PolygonSurface({{Cd(0, 0), Cd(1, 0), Cd(1, 1), Cd(0, 1)}},
                                 {Gluing{{0, 0}, {0, 2}, +1}}),
                  InvalidInput);
  // Translation gluing with non-negated vectors.
  CHECK_THROWS_AS(PolygonSurface({{Cd(0, 0), Cd(1, 0), Cd(1, 1), Cd(0, 1)}},
                                 {Gluing{{0, 0}, {0, 1}, +1}, Gluing{{0, 2}, {0, 3}, +1}}),
                  InvalidInput);
  // Non-convex polygon.
  CHECK_THROWS_AS(
      PolygonSurface({{Cd(0, 0), Cd(2, 0), Cd(2, 2), Cd(1, 0.5), Cd(0, 2)}}, {}),
      InvalidInput);
}

TEST_CASE("square torus: one cone point of angle 2 pi") {
  const auto surface = square_torus();
  CHECK(surface.cone_point_count() == 1);
  CHECK(surface.cone_angle(0) == doctest::Approx(2 * kPi).epsilon(1e-12));
}

TEST_CASE("L-shaped surface: one cone point of angle 6 pi") {
  const auto surface = l_shaped_surface();
  CHECK(surface.cone_point_count() == 1);
  CHECK(surface.cone_angle(0) == doctest::Approx(6 * kPi).epsilon(1e-12));
}

TEST_CASE("square torus saddle connections match the visible-lattice oracle") {
  const auto surface = square_torus();
  for (const double cap : {1.0, 2.5, 4.0}) {
    const auto set = saddle_connections(surface, cap);
    CHECK(set.complete);
    const auto oracle = square_torus_lattice_oracle(cap);
    const auto actual = sorted_holonomies(set);
    REQUIRE(actual.size() == oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i)
      CHECK(std::abs(actual[i] - oracle[i]) < 1e-12);
  }
}

TEST_CASE("square torus at cap 2.5 contains the expected 16 vectors") {
  const auto set = saddle_connections(square_torus(), 2.5);
  CHECK(set.connections.size() == 16);
  const auto has = [&](Cd v) {
    for (const auto& c : set.connections)
      if (std::abs(c.holonomy - v) < 1e-12) return true;
    return false;
  };
  for (const Cd v : {Cd(1, 0), Cd(-1, 0), Cd(0, 1), Cd(1, 1), Cd(1, -1), Cd(2, 1), Cd(1, 2),
                     Cd(-2, -1), Cd(2, -1)})
    CHECK(has(v));
  // Imprimitive vectors pass through an interior cone point.
  CHECK(!has(Cd(2, 0)));
  CHECK(!has(Cd(0, 2)));
}

TEST_CASE("cap below the shortest edge leaves nothing on these surfaces") {
  CHECK(saddle_connections(square_torus(), 0.5).connections.empty());
  CHECK(saddle_connections(l_shaped_surface(), 0.5).connections.empty());
}

TEST_CASE("L-shaped surface: four unit connections after deduplication") {
  const auto set = saddle_connections(l_shaped_surface(), 1.0);
  CHECK(set.complete);
  REQUIRE(set.connections.size() == 4);
  const auto hs = sorted_holonomies(set);
  // (vector, start, end) keyed deduplication leaves one entry per
  // direction: -1, -i, +i, +1 in (length, angle) order is by angle.
  CHECK(std::abs(hs[0] - Cd(-1, 0)) < 1e-12);
  CHECK(std::abs(hs[1] - Cd(0, -1)) < 1e-12);
  CHECK(std::abs(hs[2] - Cd(0, 1)) < 1e-12);
  CHECK(std::abs(hs[3] - Cd(1, 0)) < 1e-12);
}

TEST_CASE("L-shaped surface: diagonals of length sqrt(2) appear beyond the edges") {
  const auto set = saddle_connections(l_shaped_surface(), 1.5);
  CHECK(set.complete);
  int diagonals = 0;
  for (const auto& c : set.connections)
    if (std::abs(std::abs(c.holonomy) - std::sqrt(2.0)) < 1e-12) ++diagonals;
  CHECK(diagonals > 0);
  // All four axis directions still present.
  CHECK(set.connections.size() >= 8);
}

TEST_CASE("enumeration is equivariant under rotation") {
  const auto surface = square_torus();
  Rng rng(601);
  for (int trial = 0; trial < 5; ++trial) {
    const double phi = rng.uniform(0.1, 1.4);
    const auto rotated_surface = sl2_action(rotation_flow(phi), surface);
    const auto base = sorted_holonomies(saddle_connections(surface, 2.5));
    auto rotated = saddle_connections(rotated_surface, 2.5).holonomies();
    // Undo the rotation and compare as sets.
    for (auto& v : rotated) v *= std::polar(1.0, -phi);
    std::sort(rotated.begin(), rotated.end(), [](Cd a, Cd b) {
      if (std::abs(std::abs(a) - std::abs(b)) > 1e-10) return std::abs(a) < std::abs(b);
      return std::arg(a) < std::arg(b);
    });
    REQUIRE(rotated.size() == base.size());
    for (std::size_t i = 0; i < base.size(); ++i)
      CHECK(std::abs(rotated[i] - base[i]) < 1e-10);
  }
}

TEST_CASE("lengths are preserved under the full sl2 action") {
  const auto surface = l_shaped_surface();
  const auto moved = sl2_action(rotation_flow(0.35), surface);
  const auto base = saddle_connections(surface, 2.0);
  const auto after = saddle_connections(moved, 2.0);
  REQUIRE(base.connections.size() == after.connections.size());
  for (std::size_t i = 0; i < base.connections.size(); ++i)
    CHECK(std::abs(std::abs(base.connections[i].holonomy) -
                   std::abs(after.connections[i].holonomy)) < 1e-10);
}

TEST_CASE("a tiny node budget flags the result incomplete") {
  const auto set = saddle_connections(square_torus(), 6.0, 3);
  CHECK(!set.complete);
}

TEST_CASE("intersection sum: single holonomies and sweeps") {
  CHECK(intersection_sum(std::vector<Cd>{Cd(1, 0)}, 0.0) == doctest::Approx(1.0));
  CHECK(intersection_sum(std::vector<Cd>{Cd(1, 0)}, kPi) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(intersection_sum(std::vector<Cd>{}, 0.0), InvalidInput);

  // Chain {1+i, 1-i} against the closed form, and against a midpoint-rule
  // transverse-measure integral along each segment.
  const std::vector<Cd> chain{Cd(1, 1), Cd(1, -1)};
  for (int k = 0; k < 32; ++k) {
    const double theta = 2 * kPi * k / 32;
    const double closed = std::sqrt(2.0) * (std::abs(std::cos(theta / 2 + kPi / 4)) +
                                            std::abs(std::cos(theta / 2 - kPi / 4)));
    const double total = intersection_sum(chain, theta);
    CHECK(total == doctest::Approx(closed).epsilon(1e-12));

    double integral = 0.0;
    const Cd phase = std::polar(1.0, theta / 2);
    for (const Cd v : chain) {
      const int steps = 256;
      double acc = 0.0;
      for (int i = 0; i < steps; ++i) acc += std::abs((phase * v).real()) / steps;
      integral += acc;
    }
    CHECK(total == doctest::Approx(integral).epsilon(1e-12));
  }
}

TEST_CASE("half-translation gluings build a pillowcase") {
  // Unit square with the bottom and top edges split at their midpoints and
  // folded onto themselves, sides glued by translation: a sphere with four
  // cone points of angle pi.
  const PolygonSurface pillow(
      {{Cd(0, 0), Cd(0.5, 0), Cd(1, 0), Cd(1, 1), Cd(0.5, 1), Cd(0, 1)}},
      {Gluing{{0, 0}, {0, 1}, -1}, Gluing{{0, 3}, {0, 4}, -1}, Gluing{{0, 2}, {0, 5}, +1}});
  CHECK(pillow.cone_point_count() == 4);
  for (int c = 0; c < 4; ++c) CHECK(pillow.cone_angle(c) == doctest::Approx(kPi).epsilon(1e-12));

  const auto set = saddle_connections(pillow, 1.0);
  CHECK(set.complete);
  CHECK(!set.connections.empty());
  double shortest = 1e300;
  for (const auto& c : set.connections) {
    CHECK(std::abs(c.holonomy) <= 1.0 + 1e-12);
    shortest = std::min(shortest, std::abs(c.holonomy));
  }
  // Fold midpoints sit half a side apart.
  CHECK(shortest == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("an edge cannot be glued to itself") {
  CHECK_THROWS_AS(PolygonSurface({{Cd(0, 0), Cd(1, 0), Cd(1, 1), Cd(0, 1)}},
                                 {Gluing{{0, 0}, {0, 0}, -1}, Gluing{{0, 1}, {0, 3}, +1},
                                  Gluing{{0, 2}, {0, 2}, -1}}),
                  InvalidInput);
}
