#include "doctest.h"
#include "mdcutfem/cases.hpp"
#include "mdcutfem/error.hpp"
#include "mdcutfem/geometry.hpp"

using namespace mdcutfem;

namespace {
std::vector<Vec2> rect(double x0, double y0, double x1, double y1) { return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}; }
}

TEST_SUITE("geometry") {

TEST_CASE("case1 domain and facets") {
  const MixedDomain d = build_domain(catalog("case1").geometry);
  REQUIRE(d.component_count() == 3);
  CHECK(d.components()[0].id == ComponentId{2, 1});
  CHECK(d.components()[2].id == ComponentId{1, 1});
  const auto cls = classify_boundary(d);
  // two interface facets, one per bulk edge side, plus two fracture endpoint facets on the box
  CHECK(cls.interior.size() == 2);
  CHECK(cls.exterior.size() == 8);
  int endpoint = 0;
  for (const auto& f : d.facets()) {
    CHECK(f.normal.norm() == doctest::Approx(1.0));
    if (f.is_endpoint()) {
      ++endpoint;
      CHECK(f.exterior());
    }
  }
  CHECK(endpoint == 2);
  // the interface facet of 2,1 points into 2,2
  for (int f : d.owned_facets({2, 1})) {
    const auto& F = d.facets()[f];
    if (!F.exterior()) {
      CHECK(*F.neighbor == ComponentId{1, 1});
      CHECK(F.normal.x() == doctest::Approx(1.0));
    }
  }
  CHECK(d.incoming_facets({1, 1}).size() == 2);
  CHECK(d.upward_facets_at({1, 1}, Vec2(0.5, 0.3)).size() == 2);
}

TEST_CASE("bulk areas tile the box for every catalog case") {
  for (const auto& name : catalog_names()) {
    const CaseDefinition c = catalog(name);
    const MixedDomain d = build_domain(c.geometry);
    double a = 0.0;
    for (const auto& comp : d.components())
      if (comp.id.dim == 2) a += signed_area(comp.vertices);
    CHECK_MESSAGE(a == doctest::Approx(c.geometry.bbox.area()).epsilon(1e-10), name);
  }
}

TEST_CASE("point components collect their fracture endpoints") {
  const MixedDomain d = build_domain(catalog("case3").geometry);
  CHECK(d.incoming_facets({0, 1}).size() == 4);
  CHECK(d.upward_facets_at({0, 1}, Vec2(0.5, 0.5)).size() == 4);
}

TEST_CASE("rejections") {
  GeometrySpec s;
  s.polygons = {rect(0, 0, 1, 1)};
  std::reverse(s.polygons[0].begin(), s.polygons[0].end());
  CHECK_THROWS_AS(build_domain(s), GeometryError);

  // a shared bulk edge without a fracture on it
  GeometrySpec h;
  h.polygons = {rect(0, 0, 0.5, 1), rect(0.5, 0, 1, 1)};
  CHECK_THROWS_AS(build_domain(h), HierarchyViolation);

  // a fracture ending in the interior without a point
  GeometrySpec e;
  e.polygons = {rect(0, 0, 0.5, 1), rect(0.5, 0, 1, 1)};
  e.polylines = {{{0.5, 0}, {0.5, 0.5}}, {{0.5, 0.5}, {0.5, 1}}};
  CHECK_THROWS_AS(build_domain(e), HierarchyViolation);

  // crossing fractures
  GeometrySpec x = e;
  x.polylines = {{{0.5, 0}, {0.5, 1}}, {{0, 0.5}, {1, 0.5}}};
  CHECK_THROWS(build_domain(x));

  GeometrySpec out;
  out.polygons = {rect(0, 0, 1.5, 1)};
  CHECK_THROWS_AS(build_domain(out), GeometryError);
}

TEST_CASE("kernels") {
  const auto sq = rect(0, 0, 1, 1);
  CHECK(signed_area(sq) == 1.0);
  CHECK(point_in_polygon({0.5, 0.5}, sq));
  CHECK(point_in_polygon({1.0, 0.5}, sq));
  CHECK_FALSE(point_in_polygon({1.1, 0.5}, sq));
  CHECK(dist_point_segment({0, 1}, {-1, 0}, {1, 0}) == doctest::Approx(1));
  CHECK(dist_point_segment({2, 0}, {-1, 0}, {1, 0}) == doctest::Approx(1));
  CHECK(dist_segment_segment({0, 0}, {1, 1}, {0, 1}, {1, 0}) == 0.0);
  CHECK(dist_segment_segment({0, 0}, {1, 0}, {0, 2}, {1, 2}) == doctest::Approx(2));
  // an L shape with a collinear vertex triangulates into pieces that add up
  const std::vector<Vec2> L{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}, {0, 1}};
  double a = 0.0;
  for (const auto& t : ear_clip(L)) a += signed_area({L[t[0]], L[t[1]], L[t[2]]});
  CHECK(a == doctest::Approx(3.0));
  CHECK(bbox_side(BBox{}, {0, 0.2}, {0, 0.7}) == BoundarySide::Left);
  CHECK(bbox_side(BBox{}, {0.2, 1}, {0.7, 1}) == BoundarySide::Top);
  CHECK(bbox_side(BBox{}, {0.2, 0.5}, {0.7, 0.5}) == BoundarySide::None);
  CHECK(ComponentId{2, 3} < ComponentId{1, 1});
  CHECK(ComponentId{1, 1} < ComponentId{1, 2});
}

}
