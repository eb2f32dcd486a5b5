#pragma once

#include <array>
#include <vector>

#include "mdcutfem/geometry.hpp"

namespace mdcutfem {

/// Structured triangulation of (a rigidly shifted grid covering) the bounding box.
/// Each grid cell is split along its NE diagonal into a lower triangle
/// (v00, v10, v11) and an upper triangle (v00, v11, v01).
class BackgroundMesh {
 public:
  BackgroundMesh(const BBox& bbox, int n, const Vec2& shift = Vec2::Zero());

  int n() const { return n_; }
  /// Mesh parameter sqrt(2)/N, the longest edge.
  double h() const;
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int num_vertices() const { return (nx_ + 1) * (ny_ + 1); }
  int num_triangles() const { return 2 * nx_ * ny_; }

  Vec2 vertex(int v) const;
  std::array<int, 3> triangle(int t) const;
  std::array<Vec2, 3> corners(int t) const;
  double triangle_area(int /*t*/) const { return 0.5 / (double(n_) * n_); }

  /// Lowest-index triangle whose closure contains p (tolerance 1e-12), or -1.
  int locate(const Vec2& p) const;
  /// All triangles whose closure contains p, ascending.
  std::vector<int> containing(const Vec2& p, double tol = 1e-12) const;
  /// Triangles whose cells overlap the box [lo,hi] (padded by one cell).
  std::vector<int> triangles_near(const Vec2& lo, const Vec2& hi) const;

 private:
  int n_;
  int nx_, ny_;
  Vec2 origin_;
};

bool triangle_contains(const std::array<Vec2, 3>& tri, const Vec2& p, double tol = 1e-12);

/// Background triangles meeting the closed component (sorted ascending).
class ActiveMesh {
 public:
  ActiveMesh() = default;
  ActiveMesh(ComponentId id, std::vector<int> triangles) : id_(id), tris_(std::move(triangles)) {}

  ComponentId id() const { return id_; }
  const std::vector<int>& triangles() const { return tris_; }
  bool contains(int t) const;
  int size() const { return static_cast<int>(tris_.size()); }

 private:
  ComponentId id_;
  std::vector<int> tris_;
};

BackgroundMesh build_background(const BBox& bbox, int n, const Vec2& shift = Vec2::Zero());
ActiveMesh extract_active(const BackgroundMesh& mesh, const MixedDomain& domain, ComponentId component);

}  // namespace mdcutfem
