#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace mdcutfem {

using Vec2 = Eigen::Vector2d;

/// Component (d,i) with 1-based index i.
struct ComponentId {
  int dim = 2;
  int index = 1;

  bool operator==(const ComponentId&) const = default;
  // Canonical order: dimension descending, then index ascending.
  std::strong_ordering operator<=>(const ComponentId& o) const {
    if (dim != o.dim) return o.dim <=> dim;
    return index <=> o.index;
  }
  std::string str() const;
};

struct BBox {
  Vec2 lo{0.0, 0.0};
  Vec2 hi{1.0, 1.0};
  double area() const { return (hi - lo).prod(); }
};

enum class BoundarySide { None, Left, Right, Bottom, Top };

const char* side_name(BoundarySide s);
BoundarySide side_from_name(const std::string& name);

struct ManifoldComponent {
  ComponentId id;
  // Polygon (CCW, not closed), polyline, or a single point.
  std::vector<Vec2> vertices;
};

struct BoundaryFacet {
  ComponentId owner;
  // Segment [a,b] of a bulk boundary, oriented with the polygon. For d=1 endpoint facets a == b.
  Vec2 a{0.0, 0.0};
  Vec2 b{0.0, 0.0};
  std::optional<ComponentId> neighbor;  // empty means exterior
  Vec2 normal{0.0, 0.0};
  BoundarySide side = BoundarySide::None;

  bool exterior() const { return !neighbor.has_value(); }
  bool is_endpoint() const { return owner.dim == 1; }
  double length() const { return (b - a).norm(); }
};

struct GeometrySpec {
  BBox bbox;
  std::vector<std::vector<Vec2>> polygons;
  std::vector<std::vector<Vec2>> polylines;
  std::vector<Vec2> points;
};

class MixedDomain {
 public:
  const BBox& bbox() const { return bbox_; }
  const std::vector<ManifoldComponent>& components() const { return components_; }
  const std::vector<BoundaryFacet>& facets() const { return facets_; }

  int component_count() const { return static_cast<int>(components_.size()); }
  /// Position of a component in the canonical order; throws if absent.
  int slot(ComponentId id) const;
  const ManifoldComponent& component(ComponentId id) const { return components_[slot(id)]; }
  bool has(ComponentId id) const;

  /// Facets owned by the component.
  const std::vector<int>& owned_facets(ComponentId id) const { return owned_[slot(id)]; }
  /// Facets whose neighbor is the component (i.e. the upward facets of a d<2 component).
  const std::vector<int>& incoming_facets(ComponentId id) const { return incoming_[slot(id)]; }

  /// Upward facets (neighbor == id) whose geometry contains x.
  std::vector<int> upward_facets_at(ComponentId id, const Vec2& x, double tol = 1e-10) const;

  friend MixedDomain build_domain(const GeometrySpec& spec);

 private:
  BBox bbox_;
  std::vector<ManifoldComponent> components_;
  std::vector<BoundaryFacet> facets_;
  std::vector<std::vector<int>> owned_;
  std::vector<std::vector<int>> incoming_;
};

MixedDomain build_domain(const GeometrySpec& spec);

const Vec2& facet_normal(const MixedDomain& domain, int facet);

struct FacetClassification {
  std::vector<int> interior;
  std::vector<int> exterior;
};
FacetClassification classify_boundary(const MixedDomain& domain);

// Kernels.
inline double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }
double signed_area(const std::vector<Vec2>& poly);
double dist_point_segment(const Vec2& p, const Vec2& a, const Vec2& b);
double dist_segment_segment(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);
/// Closed point-in-polygon test; points within tol of the boundary count as inside.
bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly, double tol = 1e-12);
/// Triangulation of a simple CCW polygon into vertex-index triples.
std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& poly);
BoundarySide bbox_side(const BBox& box, const Vec2& a, const Vec2& b, double tol = 1e-10);

}  // namespace mdcutfem
