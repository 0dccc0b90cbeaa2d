#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <deque>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "kobalt/errors.hpp"
#include "kobalt/sl2.hpp"
#include "kobalt/types.hpp"

// Polygonal translation and half-translation surfaces and their saddle
// connections.  Polygons are convex and counterclockwise; edges are glued in
// pairs by z -> z + c (sign +1) or z -> -z + c (sign -1).  Every vertex
// class counts as a cone point, marked points included.
//
// Saddle connections are enumerated by developing the surface around each
// cone point.  A breadth-first corridor search carries, per developed
// polygon copy, the wedge of directions that reach the copy through the
// chain of crossed edges; a vertex strictly inside the wedge is the far end
// of a saddle connection, and a direction on the wedge boundary passes
// through an intermediate cone point and is discarded.

namespace kobalt {

using Cd = std::complex<double>;

struct EdgeRef {
  int poly = -1;
  int edge = -1;
  bool operator==(const EdgeRef& o) const { return poly == o.poly && edge == o.edge; }
};

struct Gluing {
  EdgeRef a;
  EdgeRef b;
  int sign = +1;  // +1: translation, -1: half-translation
};

class PolygonSurface {
 public:
  PolygonSurface(std::vector<std::vector<Cd>> polygons, std::vector<Gluing> gluings)
      : polygons_(std::move(polygons)), gluings_(std::move(gluings)) {
    validate_polygons();
    build_edge_table();
    build_vertex_classes();
    validate_cone_angles();
  }

  const std::vector<std::vector<Cd>>& polygons() const { return polygons_; }
  const std::vector<Gluing>& gluings() const { return gluings_; }

  int vertex_count(int poly) const { return static_cast<int>(polygons_[poly].size()); }

  Cd vertex(int poly, int k) const { return polygons_[poly][k]; }

  Cd edge_vector(int poly, int e) const {
    const auto& vs = polygons_[poly];
    return vs[(e + 1) % vs.size()] - vs[e];
  }

  int vertex_class(int poly, int k) const { return vertex_class_[vertex_index(poly, k)]; }

  int cone_point_count() const { return class_count_; }

  /// Total angle around a cone class; a multiple of pi by construction.
  double cone_angle(int cls) const { return cone_angles_[cls]; }

  /// Gluing partner of an edge: (neighbor edge, sign, offset) so the map
  /// taking neighbor-local coordinates onto this polygon's coordinates is
  /// z -> sign * z + offset.
  struct Crossing {
    EdgeRef neighbor;
    int sign;
    Cd offset;
  };
  const Crossing& crossing(int poly, int e) const { return crossings_[edge_index(poly, e)]; }

  double shortest_edge() const { return shortest_edge_; }

 private:
  int vertex_index(int poly, int k) const { return vertex_offsets_[poly] + k; }
  int edge_index(int poly, int e) const { return vertex_offsets_[poly] + e; }

  void validate_polygons() {
    if (polygons_.empty()) throw InvalidInput("polygon surface: no polygons");
    int total = 0;
    vertex_offsets_.clear();
    shortest_edge_ = std::numeric_limits<double>::infinity();
    for (const auto& vs : polygons_) {
      vertex_offsets_.push_back(total);
      total += static_cast<int>(vs.size());
      if (vs.size() < 3) throw InvalidInput("polygon surface: polygon with fewer than 3 vertices");
      const int n = static_cast<int>(vs.size());
      double area2 = 0.0;
      for (int i = 0; i < n; ++i) {
        const Cd a = vs[i], b = vs[(i + 1) % n];
        area2 += a.real() * b.imag() - a.imag() * b.real();
        const double len = std::abs(b - a);
        if (len < 1e-12) throw InvalidInput("polygon surface: degenerate edge");
        shortest_edge_ = std::min(shortest_edge_, len);
      }
      if (area2 <= 0.0) throw InvalidInput("polygon surface: polygons must be counterclockwise");
      for (int i = 0; i < n; ++i) {
        const Cd u = vs[(i + 1) % n] - vs[i];
        const Cd v = vs[(i + 2) % n] - vs[(i + 1) % n];
        const double cross = u.real() * v.imag() - u.imag() * v.real();
        if (cross < -1e-12 * std::abs(u) * std::abs(v))
          throw InvalidInput("polygon surface: polygons must be convex");
      }
    }
    total_vertices_ = total;
  }

  void build_edge_table() {
    crossings_.assign(total_vertices_, Crossing{});
    std::vector<bool> glued(total_vertices_, false);
    for (const auto& g : gluings_) {
      check_edge_ref(g.a);
      check_edge_ref(g.b);
      if (g.sign != 1 && g.sign != -1)
        throw InvalidInput("polygon surface: gluing sign must be +1 or -1");
      if (g.a == g.b)
        throw InvalidInput(
            "polygon surface: edge glued to itself; split the edge at its midpoint");
      const Cd va = edge_vector(g.a.poly, g.a.edge);
      const Cd vb = edge_vector(g.b.poly, g.b.edge);
      const double scale = std::abs(va);
      // Counterclockwise sides glue with opposite traversal: a translation
      // needs negated edge vectors, a half-translation equal ones.
      if (g.sign == +1 && std::abs(va + vb) > 1e-9 * scale)
        throw InvalidInput("polygon surface: translation gluing needs negated edge vectors");
      if (g.sign == -1 && std::abs(va - vb) > 1e-9 * scale)
        throw InvalidInput("polygon surface: half-translation gluing needs equal edge vectors");
      for (const bool swap : {false, true}) {
        const EdgeRef from = swap ? g.b : g.a;
        const EdgeRef to = swap ? g.a : g.b;
        const int ia = edge_index(from.poly, from.edge);
        if (glued[ia]) throw InvalidInput("polygon surface: edge glued twice");
        glued[ia] = true;
        // Map to-local onto from-local: sends the start of `to` to the end
        // of `from` and vice versa.
        const Cd a_start = vertex(from.poly, from.edge);
        const Cd a_end = a_start + edge_vector(from.poly, from.edge);
        const Cd b_start = vertex(to.poly, to.edge);
        Cd offset;
        if (g.sign == +1) {
          offset = a_end - b_start;  // z + offset maps b_start to a_end
        } else {
          offset = a_end + b_start;  // -z + offset maps b_start to a_end
        }
        crossings_[ia] = Crossing{to, g.sign, offset};
      }
    }
    for (int i = 0; i < total_vertices_; ++i)
      if (!glued[i]) throw InvalidInput("polygon surface: unglued edge");
  }

  void build_vertex_classes() {
    std::vector<int> parent(total_vertices_);
    for (int i = 0; i < total_vertices_; ++i) parent[i] = i;
    const auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    const auto unite = [&](int x, int y) { parent[find(x)] = find(y); };

    // The gluing of edge e of P to edge f of Q identifies start(f) with
    // end(e) and end(f) with start(e).
    for (int p = 0; p < static_cast<int>(polygons_.size()); ++p) {
      const int n = vertex_count(p);
      for (int e = 0; e < n; ++e) {
        const Crossing& c = crossings_[edge_index(p, e)];
        const int q = c.neighbor.poly, f = c.neighbor.edge;
        const int nf = vertex_count(q);
        unite(vertex_index(q, f), vertex_index(p, (e + 1) % n));          // start(f) ~ end(e)
        unite(vertex_index(q, (f + 1) % nf), vertex_index(p, e));         // end(f) ~ start(e)
      }
    }
    vertex_class_.assign(total_vertices_, -1);
    class_count_ = 0;
    for (int i = 0; i < total_vertices_; ++i) {
      const int root = find(i);
      if (vertex_class_[root] < 0) vertex_class_[root] = class_count_++;
      vertex_class_[i] = vertex_class_[root];
    }
  }

  void validate_cone_angles() {
    cone_angles_.assign(class_count_, 0.0);
    for (int p = 0; p < static_cast<int>(polygons_.size()); ++p) {
      const int n = vertex_count(p);
      for (int k = 0; k < n; ++k) {
        const Cd to_next = vertex(p, (k + 1) % n) - vertex(p, k);
        const Cd to_prev = vertex(p, (k - 1 + n) % n) - vertex(p, k);
        double ang = std::arg(to_prev / to_next);
        if (ang < 0) ang += 2 * std::numbers::pi;
        cone_angles_[vertex_class_[vertex_index(p, k)]] += ang;
      }
    }
    for (double a : cone_angles_) {
      const double multiple = a / std::numbers::pi;
      if (std::abs(multiple - std::round(multiple)) > 1e-9)
        throw InvalidInput("polygon surface: cone angle is not a multiple of pi");
    }
  }

  void check_edge_ref(const EdgeRef& r) const {
    if (r.poly < 0 || r.poly >= static_cast<int>(polygons_.size()) || r.edge < 0 ||
        r.edge >= static_cast<int>(polygons_[r.poly].size()))
      throw InvalidInput("polygon surface: gluing references a missing edge");
  }

  std::vector<std::vector<Cd>> polygons_;
  std::vector<Gluing> gluings_;
  std::vector<int> vertex_offsets_;
  std::vector<Crossing> crossings_;
  std::vector<int> vertex_class_;
  std::vector<double> cone_angles_;
  int total_vertices_ = 0;
  int class_count_ = 0;
  double shortest_edge_ = 0.0;
};

struct SaddleConnection {
  Cd holonomy;
  int start_cone = 0;
  int end_cone = 0;
};

struct SaddleConnectionSet {
  std::vector<SaddleConnection> connections;
  bool complete = true;  // false when the enumeration budget was exhausted

  std::vector<Cd> holonomies() const {
    std::vector<Cd> hs;
    hs.reserve(connections.size());
    for (const auto& c : connections) hs.push_back(c.holonomy);
    return hs;
  }
};

/// sum_i |Re(e^{i theta / 2} v_i)| over the holonomies of an explicitly
/// supplied geodesic chain.
inline double intersection_sum(const std::vector<Cd>& chain, double theta) {
  if (chain.empty()) throw InvalidInput("intersection_sum: empty chain");
  const Cd phase = std::polar(1.0, theta / 2.0);
  double total = 0.0;
  for (const Cd& v : chain) {
    if (v == Cd(0)) throw InvalidInput("intersection_sum: zero holonomy");
    total += std::abs((phase * v).real());
  }
  return total;
}

inline double intersection_sum(const SaddleConnectionSet& chain, double theta) {
  return intersection_sum(chain.holonomies(), theta);
}

namespace detail_unfold {

constexpr double kAngleTol = 1e-12;

struct Wedge {
  double lo, hi;  // 0 < hi - lo <= pi
};

// Angle of d lifted into [base, base + 2 pi).
inline double lift_angle(Cd d, double base) {
  double a = std::arg(d);
  while (a < base) a += 2 * std::numbers::pi;
  while (a >= base + 2 * std::numbers::pi) a -= 2 * std::numbers::pi;
  return a;
}

// Directions from the source hitting the open segment [A, B]; width < pi.
// Returns nothing when the source is collinear with the segment.
inline std::optional<Wedge> segment_arc(Cd a, Cd b) {
  const double ang_a = std::arg(a);
  double ang_b = std::arg(b);
  // Representative of ang_b within pi of ang_a.
  while (ang_b < ang_a - std::numbers::pi) ang_b += 2 * std::numbers::pi;
  while (ang_b > ang_a + std::numbers::pi) ang_b -= 2 * std::numbers::pi;
  const double lo = std::min(ang_a, ang_b), hi = std::max(ang_a, ang_b);
  if (hi - lo < kAngleTol || hi - lo > std::numbers::pi - kAngleTol) return std::nullopt;
  return Wedge{lo, hi};
}

// Intersection of a wedge with a segment arc, tried at both 2 pi shifts.
inline std::optional<Wedge> intersect(const Wedge& w, const Wedge& arc) {
  for (const double shift : {0.0, 2 * std::numbers::pi, -2 * std::numbers::pi}) {
    const double lo = std::max(w.lo, arc.lo + shift);
    const double hi = std::min(w.hi, arc.hi + shift);
    if (hi - lo > kAngleTol) return Wedge{lo, hi};
  }
  return std::nullopt;
}

// Crossing radius of the ray dir(angle) from the origin with segment [A, B],
// if any.
inline std::optional<double> ray_segment_radius(double angle, Cd a, Cd b) {
  const Cd d = std::polar(1.0, angle);
  const Cd e = b - a;
  const double det = d.real() * (-e.imag()) - (-e.real()) * d.imag();
  if (std::abs(det) < 1e-15) return std::nullopt;
  const double r = (a.real() * (-e.imag()) + e.real() * a.imag()) / det;
  const double s = (d.real() * a.imag() - d.imag() * a.real()) / det;
  if (r <= 0.0 || s < -1e-12 || s > 1.0 + 1e-12) return std::nullopt;
  return r;
}

inline bool point_in_convex(const std::vector<Cd>& poly, Cd p, double tol) {
  const int n = static_cast<int>(poly.size());
  for (int i = 0; i < n; ++i) {
    const Cd a = poly[i], b = poly[(i + 1) % n];
    const Cd u = b - a, v = p - a;
    if (u.real() * v.imag() - u.imag() * v.real() < -tol) return false;
  }
  return true;
}

struct Node {
  int poly;
  int sign;        // development map: z -> sign * z + offset
  Cd offset;
  Wedge wedge;
  int entry_edge;  // -1 at a root
};

}  // namespace detail_unfold

/// All saddle connections of flat length at most `length_cap`: straight
/// segments between cone points with no cone point in the interior.
/// Holonomies are deduplicated on (vector, start cone, end cone) with 1e-9
/// tolerance and emitted sorted by (length, angle).  When the node budget
/// runs out the result is flagged incomplete.
inline SaddleConnectionSet saddle_connections(const PolygonSurface& surface, double length_cap,
                                              std::size_t node_budget = 1u << 20) {
  using namespace detail_unfold;
  if (!(length_cap > 0.0)) throw InvalidInput("saddle_connections: length cap must be positive");

  SaddleConnectionSet result;
  auto emit = [&](Cd v, int start_cls, int end_cls) {
    result.connections.push_back({v, start_cls, end_cls});
  };

  // Polygon edges are saddle connections in their own right; the corridor
  // search below only reports directions interior to a wedge.
  {
    for (int p = 0; p < static_cast<int>(surface.polygons().size()); ++p) {
      for (int e = 0; e < surface.vertex_count(p); ++e) {
        const auto& c = surface.crossing(p, e);
        // Each surface edge appears twice in the table; keep one side.
        if (std::make_pair(c.neighbor.poly, c.neighbor.edge) < std::make_pair(p, e)) continue;
        const Cd v = surface.edge_vector(p, e);
        if (std::abs(v) > length_cap) continue;
        const int s = surface.vertex_class(p, e);
        const int t = surface.vertex_class(p, (e + 1) % surface.vertex_count(p));
        emit(v, s, t);
        emit(-v, t, s);
      }
    }
  }

  std::size_t nodes_used = 0;
  for (int p0 = 0; p0 < static_cast<int>(surface.polygons().size()); ++p0) {
    const int n0 = surface.vertex_count(p0);
    for (int k0 = 0; k0 < n0; ++k0) {
      const int source_class = surface.vertex_class(p0, k0);
      const Cd src = surface.vertex(p0, k0);

      std::deque<Node> queue;
      {
        const Cd to_next = surface.vertex(p0, (k0 + 1) % n0) - src;
        const Cd to_prev = surface.vertex(p0, (k0 - 1 + n0) % n0) - src;
        const double lo = std::arg(to_next);
        double span = std::arg(to_prev / to_next);
        if (span <= 0) span += 2 * std::numbers::pi;
        queue.push_back(Node{p0, +1, Cd(0), Wedge{lo, lo + span}, -1});
      }

      while (!queue.empty()) {
        if (++nodes_used > node_budget) {
          result.complete = false;
          queue.clear();
          break;
        }
        const Node node = queue.front();
        queue.pop_front();

        const auto& local = surface.polygons()[node.poly];
        const int n = static_cast<int>(local.size());
        std::vector<Cd> dev(n);
        for (int i = 0; i < n; ++i)
          dev[i] = static_cast<double>(node.sign) * local[i] + node.offset - src;

        // Entry segment, for corridor validation of candidates.
        Cd entry_a, entry_b;
        if (node.entry_edge >= 0) {
          entry_a = dev[node.entry_edge];
          entry_b = dev[(node.entry_edge + 1) % n];
        }

        // Vertex candidates strictly inside the wedge.
        for (int i = 0; i < n; ++i) {
          const Cd d = dev[i];
          const double r = std::abs(d);
          if (r < 1e-12 || r > length_cap) continue;
          const double ang = lift_angle(d, node.wedge.lo);
          if (ang <= node.wedge.lo + kAngleTol || ang >= node.wedge.hi - kAngleTol) continue;
          if (node.entry_edge >= 0) {
            // The segment must genuinely traverse the entry edge first.
            const auto r_in = ray_segment_radius(ang, entry_a, entry_b);
            if (!r_in || *r_in >= r * (1.0 - 1e-12)) continue;
            const Cd mid = std::polar((*r_in + r) / 2.0, ang) + src;
            const Cd mid_local =
                (mid - node.offset) * static_cast<double>(node.sign);  // sign^2 = 1
            if (!point_in_convex(local, mid_local, 1e-9)) continue;
          }
          emit(d, source_class, surface.vertex_class(node.poly, i));
        }

        // Corridor expansion across every other edge.
        for (int e = 0; e < n; ++e) {
          if (e == node.entry_edge) continue;
          const auto arc = segment_arc(dev[e], dev[(e + 1) % n]);
          if (!arc) continue;
          const auto next_wedge = intersect(node.wedge, *arc);
          if (!next_wedge) continue;

          // Spot-check the corridor at the middle direction: the exit
          // crossing must come after the entry crossing.  Edge roles cannot
          // swap inside a wedge free of vertex directions.
          const double mid_ang = (next_wedge->lo + next_wedge->hi) / 2.0;
          const auto r_out = ray_segment_radius(mid_ang, dev[e], dev[(e + 1) % n]);
          if (!r_out) continue;
          if (node.entry_edge >= 0) {
            const auto r_in = ray_segment_radius(mid_ang, entry_a, entry_b);
            if (!r_in || *r_in >= *r_out) continue;
          }
          if (*r_out > length_cap) continue;

          const auto& cross = surface.crossing(node.poly, e);
          const int nsign = node.sign * cross.sign;
          const Cd noffset = static_cast<double>(node.sign) * cross.offset + node.offset;

          // Radial prune: skip copies entirely beyond the cap.
          const auto& nlocal = surface.polygons()[cross.neighbor.poly];
          double min_r = std::numeric_limits<double>::infinity();
          for (const Cd& v : nlocal)
            min_r = std::min(min_r, std::abs(static_cast<double>(nsign) * v + noffset - src));
          if (min_r > length_cap) continue;

          queue.push_back(Node{cross.neighbor.poly, nsign, noffset, *next_wedge,
                               cross.neighbor.edge});
        }
      }
      if (!result.complete) break;
    }
    if (!result.complete) break;
  }

  // Deduplicate on (holonomy, start, end) with geometric tolerance, then
  // order by (length, angle).
  auto& cs = result.connections;
  std::sort(cs.begin(), cs.end(), [](const SaddleConnection& a, const SaddleConnection& b) {
    const double la = std::abs(a.holonomy), lb = std::abs(b.holonomy);
    if (la != lb) return la < lb;
    const double aa = std::arg(a.holonomy), ab = std::arg(b.holonomy);
    if (aa != ab) return aa < ab;
    if (a.start_cone != b.start_cone) return a.start_cone < b.start_cone;
    return a.end_cone < b.end_cone;
  });
  std::vector<SaddleConnection> unique;
  for (const auto& c : cs) {
    bool dup = false;
    for (auto it = unique.rbegin(); it != unique.rend(); ++it) {
      if (std::abs(std::abs(it->holonomy) - std::abs(c.holonomy)) > 1e-9) break;
      if (it->start_cone == c.start_cone && it->end_cone == c.end_cone &&
          std::abs(it->holonomy - c.holonomy) < 1e-9) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(c);
  }
  cs = std::move(unique);
  return result;
}

/// Maps every vertex by a determinant-one linear map; the gluing
/// combinatorics is untouched and holonomies transform alongside.
inline PolygonSurface sl2_action(const Eigen::Matrix<double, 2, 2>& a,
                                 const PolygonSurface& surface) {
  require_unimodular(a);
  std::vector<std::vector<Cd>> polygons = surface.polygons();
  for (auto& poly : polygons)
    for (Cd& v : poly) v = apply_sl2(a, v);
  return PolygonSurface(std::move(polygons), surface.gluings());
}

/// Brute-force reference for the square torus: visible (primitive) lattice
/// vectors of length at most the cap.
inline std::vector<Cd> square_torus_lattice_oracle(double length_cap) {
  std::vector<Cd> out;
  const long long m_max = static_cast<long long>(std::floor(length_cap));
  for (long long m = -m_max; m <= m_max; ++m) {
    for (long long n = -m_max; n <= m_max; ++n) {
      if (m == 0 && n == 0) continue;
      if (std::gcd(std::llabs(m), std::llabs(n)) != 1) continue;
      const Cd v(static_cast<double>(m), static_cast<double>(n));
      if (std::abs(v) <= length_cap) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end(), [](Cd a, Cd b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return std::arg(a) < std::arg(b);
  });
  return out;
}

}  // namespace kobalt
