#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mdcutfem/geometry.hpp"
#include "mdcutfem/mesh.hpp"

namespace mdcutfem {

struct QuadPoint {
  Vec2 x{0.0, 0.0};
  double w = 0.0;
  Vec2 t{0.0, 0.0};  // unit tangent on line rules, zero otherwise
  // range into ComponentQuadrature::upward: facets of (d+1)-components through x
  std::uint32_t up_begin = 0;
  std::uint32_t up_count = 0;
};

/// Points of one entity restricted to one background triangle.
struct QuadRule {
  int tri = -1;
  std::vector<QuadPoint> points;
  double measure() const;
};

struct FacetRule {
  int facet = -1;
  int tri = -1;  // owner-side active triangle
  std::vector<QuadPoint> points;
};

struct ComponentQuadrature {
  ComponentId id;
  std::vector<QuadRule> domain;
  std::vector<FacetRule> facets;
  std::vector<int> upward;
};

struct Segment {
  Vec2 a;
  Vec2 b;
  double length() const { return (b - a).norm(); }
};

/// Sutherland-Hodgman clip of a polygon against a convex CCW polygon.
std::vector<Vec2> clip_convex(const std::vector<Vec2>& subject, const std::vector<Vec2>& clip);

/// Intersection of a triangle with a simple CCW polygon as a list of convex CCW pieces.
/// Pieces with area below min_area are dropped.
std::vector<std::vector<Vec2>> clip_triangle_polygon(const std::array<Vec2, 3>& tri,
                                                     const std::vector<Vec2>& polygon, double min_area = 0.0);
/// Same, with a precomputed triangulation of the polygon.
std::vector<std::vector<Vec2>> clip_triangle_polygon(const std::array<Vec2, 3>& tri,
                                                     const std::vector<Vec2>& polygon,
                                                     const std::vector<std::array<int, 3>>& ears,
                                                     double min_area = 0.0);

/// Parameter interval [t0,t1] of a->b inside the closed triangle. A piece lying on a triangle
/// edge is only reported when the triangle sits on the left of a->b, so each such piece is
/// claimed by exactly one triangle.
bool clip_segment_triangle(const std::array<Vec2, 3>& tri, const Vec2& a, const Vec2& b, double& t0, double& t1);

std::vector<Segment> clip_triangle_polyline(const std::array<Vec2, 3>& tri, const std::vector<Vec2>& polyline,
                                            double min_length = 0.0);

// Rules: degree-5 Dunavant on triangles, fan from the vertex centroid on convex polygons,
// 3-point Gauss-Legendre on segments, unit weight on points.
std::vector<QuadPoint> make_rule(const std::array<Vec2, 3>& tri);
std::vector<QuadPoint> make_rule(const std::vector<Vec2>& convex_polygon);
std::vector<QuadPoint> make_rule(const Segment& seg);
std::vector<QuadPoint> make_rule(const Vec2& point);

class CutCellCache {
 public:
  CutCellCache(const BackgroundMesh& mesh, const MixedDomain& domain, const std::vector<ActiveMesh>& active);

  /// Indexed by the component's canonical slot.
  const ComponentQuadrature& component(int slot) const { return comps_[slot]; }
  int size() const { return static_cast<int>(comps_.size()); }
  std::vector<QuadPoint> full_triangle(int t) const { return make_rule(mesh_->corners(t)); }

 private:
  const BackgroundMesh* mesh_;
  std::vector<ComponentQuadrature> comps_;
};

}  // namespace mdcutfem
