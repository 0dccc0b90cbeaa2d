#pragma once

#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "kobalt/errors.hpp"
#include "kobalt/matrix_ball.hpp"
#include "kobalt/polygon_surface.hpp"
#include "kobalt/types.hpp"

// Wire formats.  Complex matrices travel as
//   {"rows": n, "cols": m, "re": [[...]], "im": [[...]]}
// and surfaces as
//   {"polygons": [[[re, im], ...], ...],
//    "gluings": [[poly, edge, poly, edge, sign], ...]}.

namespace kobalt {

using Json = nlohmann::ordered_json;

inline Json matrix_to_json(const ComplexMatrix<double>& m) {
  Json re = Json::array(), im = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json rrow = Json::array(), irow = Json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      rrow.push_back(m(i, j).real());
      irow.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline ComplexMatrix<double> matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re") ||
      !j.contains("im"))
    throw InvalidInput("matrix json: expected {rows, cols, re, im}");
  const Index rows = j.at("rows").get<Index>();
  const Index cols = j.at("cols").get<Index>();
  if (rows < 1 || cols < 1) throw InvalidInput("matrix json: bad dimensions");
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<Index>(re.size()) != rows || static_cast<Index>(im.size()) != rows)
    throw InvalidInput("matrix json: row count mismatch");
  ComplexMatrix<double> m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (static_cast<Index>(re[i].size()) != cols || static_cast<Index>(im[i].size()) != cols)
      throw InvalidInput("matrix json: column count mismatch");
    for (Index j2 = 0; j2 < cols; ++j2)
      m(i, j2) = {re[i][j2].get<double>(), im[i][j2].get<double>()};
  }
  return m;
}

inline Json shape_to_json(const MatrixBallShape<double>& s) {
  return Json{{"rows", s.rows}, {"cols", s.cols}, {"kind", to_string(s.kind)}};
}

inline MatrixBallShape<double> shape_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("kind"))
    throw InvalidInput("shape json: expected {rows, cols, kind}");
  const std::string kind = j.at("kind").get<std::string>();
  BallKind k;
  if (kind == "full_matrix_ball")
    k = BallKind::FullMatrixBall;
  else if (kind == "polydisk")
    k = BallKind::Polydisk;
  else if (kind == "complex_ball")
    k = BallKind::ComplexBall;
  else
    throw InvalidInput("shape json: unknown kind '" + kind + "'");
  return MatrixBallShape<double>(j.at("rows").get<Index>(), j.at("cols").get<Index>(), k);
}

inline Json complex_to_json(std::complex<double> z) {
  return Json::array({z.real(), z.imag()});
}

inline std::complex<double> complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    throw InvalidInput("complex json: expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Json surface_to_json(const PolygonSurface& s) {
  Json polys = Json::array();
  for (const auto& vs : s.polygons()) {
    Json poly = Json::array();
    for (const Cd& v : vs) poly.push_back(complex_to_json(v));
    polys.push_back(std::move(poly));
  }
  Json glu = Json::array();
  for (const auto& g : s.gluings())
    glu.push_back(Json::array({g.a.poly, g.a.edge, g.b.poly, g.b.edge, g.sign}));
  return Json{{"polygons", std::move(polys)}, {"gluings", std::move(glu)}};
}

inline PolygonSurface surface_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("polygons") || !j.contains("gluings"))
    throw InvalidInput("surface json: expected {polygons, gluings}");
  std::vector<std::vector<Cd>> polygons;
  for (const auto& poly : j.at("polygons")) {
    std::vector<Cd> vs;
    for (const auto& v : poly) vs.push_back(complex_from_json(v));
    polygons.push_back(std::move(vs));
  }
  std::vector<Gluing> gluings;
  for (const auto& g : j.at("gluings")) {
    if (!g.is_array() || g.size() != 5)
      throw InvalidInput("surface json: gluing must be [poly, edge, poly, edge, sign]");
    gluings.push_back(Gluing{{g[0].get<int>(), g[1].get<int>()},
                             {g[2].get<int>(), g[3].get<int>()},
                             g[4].get<int>()});
  }
  return PolygonSurface(std::move(polygons), std::move(gluings));
}

/// CSV cell with 17 significant digits; round-trips doubles exactly.
inline std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace kobalt
