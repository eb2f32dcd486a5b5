#include <cmath>
#include <map>

#include "doctest.h"
#include "mdcutfem/cases.hpp"
#include "mdcutfem/mesh.hpp"

using namespace mdcutfem;

TEST_SUITE("mesh") {

TEST_CASE("counts and mesh size") {
  const BackgroundMesh m(BBox{}, 5);
  CHECK(m.num_triangles() == 50);
  CHECK(m.num_vertices() == 36);
  CHECK(BackgroundMesh(BBox{}, 80).h() == doctest::Approx(std::sqrt(2.0) / 80));
  CHECK(BackgroundMesh(BBox{{-1, -1}, {1, 1}}, 5).num_triangles() == 200);
  CHECK_THROWS(BackgroundMesh(BBox{}, 1));
}

TEST_CASE("shifted mesh still covers the box") {
  const BackgroundMesh m(BBox{}, 10, Vec2(0.0031, 0.0017));
  CHECK(m.nx() == 11);
  for (double x : {0.0, 0.001, 0.5, 0.999, 1.0})
    for (double y : {0.0, 0.3, 1.0}) CHECK(m.locate({x, y}) >= 0);
  double total = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const auto c = m.corners(t);
    const double a = 0.5 * ((c[1] - c[0]).x() * (c[2] - c[0]).y() - (c[1] - c[0]).y() * (c[2] - c[0]).x());
    CHECK(a > 0);
    CHECK(a == doctest::Approx(m.triangle_area(t)));
    total += a;
  }
  CHECK(total == doctest::Approx(11.0 * 11.0 / 100.0));
}

TEST_CASE("conforming: interior edges are shared by exactly two triangles") {
  const BackgroundMesh m(BBox{}, 4);
  std::map<std::pair<int, int>, int> edges;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const auto v = m.triangle(t);
    for (int k = 0; k < 3; ++k) ++edges[{std::min(v[k], v[(k + 1) % 3]), std::max(v[k], v[(k + 1) % 3])}];
  }
  for (const auto& [e, n] : edges) {
    const Vec2 a = m.vertex(e.first), b = m.vertex(e.second);
    const bool boundary = (a.x() == b.x() && (a.x() == 0 || a.x() == 1)) || (a.y() == b.y() && (a.y() == 0 || a.y() == 1));
    CHECK(n == (boundary ? 1 : 2));
  }
}

TEST_CASE("active meshes against brute force") {
  const MixedDomain d = build_domain(catalog("case1").geometry);
  const BackgroundMesh m(BBox{}, 5);
  // x = 1/2 runs through the middle of a cell column: both triangles of five cells
  const ActiveMesh f = extract_active(m, d, {1, 1});
  CHECK(f.size() == 10);
  int brute = 0;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const auto c = m.corners(t);
    bool hit = false;
    for (int k = 0; k < 3; ++k) hit = hit || dist_segment_segment(c[k], c[(k + 1) % 3], {0.5, 0}, {0.5, 1}) < 1e-12;
    brute += hit;
    CHECK(hit == f.contains(t));
  }
  CHECK(brute == 10);
  // at N = 10 the line lies on mesh edges and touches both neighbouring columns
  const BackgroundMesh m10(BBox{}, 10);
  CHECK(extract_active(m10, d, {1, 1}).size() == 40);
  CHECK(extract_active(m, d, {2, 1}).size() == 30);
}

TEST_CASE("point activity: interior, edge, vertex") {
  const BackgroundMesh m(BBox{}, 4);
  GeometrySpec s;
  s.polygons = {{{0, 0}, {0.5, 0}, {0.5, 0.5}, {0, 0.5}}, {{0, 0.5}, {0.5, 0.5}, {0.5, 1}, {0, 1}},
                {{0.5, 0.5}, {1, 0.5}, {1, 1}, {0.5, 1}}, {{0.5, 0}, {1, 0}, {1, 0.5}, {0.5, 0.5}}};
  s.polylines = {{{0.5, 0}, {0.5, 0.5}}, {{1, 0.5}, {0.5, 0.5}}, {{0.5, 1}, {0.5, 0.5}}, {{0, 0.5}, {0.5, 0.5}}};
  s.points = {{0.5, 0.5}};
  const MixedDomain d = build_domain(s);
  CHECK(extract_active(m, d, {0, 1}).size() == 6);
  CHECK(extract_active(BackgroundMesh(BBox{}, 5, Vec2(0.0031, 0.0017)), d, {0, 1}).size() == 1);
  // on a cell diagonal
  CHECK(extract_active(BackgroundMesh(BBox{}, 5), d, {0, 1}).size() == 2);
  CHECK(extract_active(BackgroundMesh(BBox{}, 5, Vec2(0.1, 0.0)), d, {0, 1}).size() == 2);
}

TEST_CASE("refinement never shrinks an active mesh by more than h") {
  const MixedDomain d = build_domain(catalog("case3").geometry);
  for (ComponentId id : {ComponentId{1, 2}, ComponentId{2, 3}, ComponentId{0, 1}}) {
    const BackgroundMesh c(BBox{}, 5, Vec2(0.0031, 0.0017)), f(BBox{}, 10, Vec2(0.0031, 0.0017));
    const ActiveMesh ac = extract_active(c, d, id), af = extract_active(f, d, id);
    for (int t : af.triangles()) {
      for (const Vec2& p : f.corners(t)) {
        double best = 1e9;
        for (int s : ac.triangles()) {
          const auto k = c.corners(s);
          for (int e = 0; e < 3; ++e) best = std::min(best, dist_point_segment(p, k[e], k[(e + 1) % 3]));
          if (triangle_contains(k, p)) best = 0;
        }
        CHECK(best <= c.h() + 1e-12);
      }
    }
  }
}

}
