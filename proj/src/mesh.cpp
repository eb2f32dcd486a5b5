#include "mdcutfem/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "mdcutfem/error.hpp"

namespace mdcutfem {

namespace {

constexpr double kTouch = 1e-12;

double dist_triangle_segment(const std::array<Vec2, 3>& tri, const Vec2& a, const Vec2& b) {
  if (triangle_contains(tri, a, 0.0) || triangle_contains(tri, b, 0.0)) return 0.0;
  double d = dist_segment_segment(a, b, tri[0], tri[1]);
  d = std::min(d, dist_segment_segment(a, b, tri[1], tri[2]));
  d = std::min(d, dist_segment_segment(a, b, tri[2], tri[0]));
  return d;
}

double dist_triangle_polygon(const std::array<Vec2, 3>& tri, const std::vector<Vec2>& poly) {
  for (const Vec2& c : tri)
    if (point_in_polygon(c, poly, 0.0)) return 0.0;
  double d = 1e300;
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    d = std::min(d, dist_triangle_segment(tri, poly[k], poly[(k + 1) % n]));
    if (d == 0.0) break;
  }
  return d;
}

}  // namespace

bool triangle_contains(const std::array<Vec2, 3>& tri, const Vec2& p, double tol) {
  // distance-based closure test; the triangles are positively oriented
  bool inside = true;
  for (int k = 0; k < 3; ++k) {
    const Vec2& a = tri[k];
    const Vec2& b = tri[(k + 1) % 3];
    if (cross(b - a, p - a) < 0.0) inside = false;
  }
  if (inside) return true;
  if (tol <= 0.0) return false;
  for (int k = 0; k < 3; ++k)
    if (dist_point_segment(p, tri[k], tri[(k + 1) % 3]) <= tol) return true;
  return false;
}

BackgroundMesh::BackgroundMesh(const BBox& bbox, int n, const Vec2& shift) : n_(n) {
  if (n < 2) throw Error("mesh resolution N must be at least 2");
  const Vec2 ext = bbox.hi - bbox.lo;
  const double N = n;
  // the shifted lattice must still cover the box
  const int kx0 = static_cast<int>(std::floor(-shift.x() * N + 1e-9));
  const int ky0 = static_cast<int>(std::floor(-shift.y() * N + 1e-9));
  const int kx1 = static_cast<int>(std::ceil((ext.x() - shift.x()) * N - 1e-9));
  const int ky1 = static_cast<int>(std::ceil((ext.y() - shift.y()) * N - 1e-9));
  nx_ = kx1 - kx0;
  ny_ = ky1 - ky0;
  origin_ = bbox.lo + shift + Vec2(kx0 / N, ky0 / N);
}

double BackgroundMesh::h() const { return std::sqrt(2.0) / n_; }

Vec2 BackgroundMesh::vertex(int v) const {
  const int i = v % (nx_ + 1);
  const int j = v / (nx_ + 1);
  return origin_ + Vec2(i / double(n_), j / double(n_));
}

std::array<int, 3> BackgroundMesh::triangle(int t) const {
  const int cell = t / 2;
  const int i = cell % nx_;
  const int j = cell / nx_;
  const int v00 = j * (nx_ + 1) + i;
  const int v10 = v00 + 1;
  const int v01 = v00 + nx_ + 1;
  const int v11 = v01 + 1;
  if (t % 2 == 0) return {v00, v10, v11};
  return {v00, v11, v01};
}

std::array<Vec2, 3> BackgroundMesh::corners(int t) const {
  const auto v = triangle(t);
  return {vertex(v[0]), vertex(v[1]), vertex(v[2])};
}

std::vector<int> BackgroundMesh::triangles_near(const Vec2& lo, const Vec2& hi) const {
  const int i0 = std::max(0, static_cast<int>(std::floor((lo.x() - origin_.x()) * n_)) - 1);
  const int j0 = std::max(0, static_cast<int>(std::floor((lo.y() - origin_.y()) * n_)) - 1);
  const int i1 = std::min(nx_ - 1, static_cast<int>(std::floor((hi.x() - origin_.x()) * n_)) + 1);
  const int j1 = std::min(ny_ - 1, static_cast<int>(std::floor((hi.y() - origin_.y()) * n_)) + 1);
  std::vector<int> out;
  for (int j = j0; j <= j1; ++j)
    for (int i = i0; i <= i1; ++i) {
      out.push_back(2 * (j * nx_ + i));
      out.push_back(2 * (j * nx_ + i) + 1);
    }
  return out;
}

std::vector<int> BackgroundMesh::containing(const Vec2& p, double tol) const {
  std::vector<int> out;
  for (int t : triangles_near(p, p))
    if (triangle_contains(corners(t), p, tol)) out.push_back(t);
  return out;
}

int BackgroundMesh::locate(const Vec2& p) const {
  const auto c = containing(p);
  return c.empty() ? -1 : c.front();
}

bool ActiveMesh::contains(int t) const { return std::binary_search(tris_.begin(), tris_.end(), t); }

BackgroundMesh build_background(const BBox& bbox, int n, const Vec2& shift) {
  return BackgroundMesh(bbox, n, shift);
}

ActiveMesh extract_active(const BackgroundMesh& mesh, const MixedDomain& domain, ComponentId component) {
  const ManifoldComponent& c = domain.component(component);
  Vec2 lo = c.vertices[0];
  Vec2 hi = c.vertices[0];
  for (const Vec2& p : c.vertices) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  std::vector<int> tris;
  for (int t : mesh.triangles_near(lo, hi)) {
    const auto tri = mesh.corners(t);
    double d;
    if (component.dim == 2) {
      d = dist_triangle_polygon(tri, c.vertices);
    } else if (component.dim == 1) {
      d = 1e300;
      for (std::size_t k = 0; k + 1 < c.vertices.size() && d > kTouch; ++k)
        d = std::min(d, dist_triangle_segment(tri, c.vertices[k], c.vertices[k + 1]));
    } else {
      d = triangle_contains(tri, c.vertices[0], kTouch) ? 0.0 : 1.0;
    }
    if (d < kTouch) tris.push_back(t);
  }
  std::sort(tris.begin(), tris.end());
  return ActiveMesh(component, std::move(tris));
}

}  // namespace mdcutfem
