#include "mdcutfem/cutquad.hpp"

#include <algorithm>
#include <cmath>

#include "mdcutfem/error.hpp"

namespace mdcutfem {

namespace {

constexpr double kEdgeTol = 1e-12;

// Dunavant, degree 5
constexpr double kW0 = 0.225;
constexpr double kA1 = 0.0597158717897698;
constexpr double kB1 = 0.4701420641051151;
constexpr double kW1 = 0.1323941527885062;
constexpr double kA2 = 0.7974269853530873;
constexpr double kB2 = 0.1012865073234563;
constexpr double kW2 = 0.1259391805448271;

void append_triangle_rule(const Vec2& p0, const Vec2& p1, const Vec2& p2, std::vector<QuadPoint>& out) {
  const double area = 0.5 * std::abs(cross(p1 - p0, p2 - p0));
  if (area == 0.0) return;
  auto add = [&](double l0, double l1, double l2, double w) {
    QuadPoint q;
    q.x = l0 * p0 + l1 * p1 + l2 * p2;
    q.w = w * area;
    out.push_back(q);
  };
  add(1.0 / 3, 1.0 / 3, 1.0 / 3, kW0);
  add(kA1, kB1, kB1, kW1);
  add(kB1, kA1, kB1, kW1);
  add(kB1, kB1, kA1, kW1);
  add(kA2, kB2, kB2, kW2);
  add(kB2, kA2, kB2, kW2);
  add(kB2, kB2, kA2, kW2);
}

std::array<Vec2, 2> bounds(const std::vector<Vec2>& pts) {
  Vec2 lo = pts[0], hi = pts[0];
  for (const Vec2& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return {lo, hi};
}

}  // namespace

double QuadRule::measure() const {
  double s = 0.0;
  for (const auto& q : points) s += q.w;
  return s;
}

std::vector<Vec2> clip_convex(const std::vector<Vec2>& subject, const std::vector<Vec2>& clip) {
  std::vector<Vec2> out = subject;
  const std::size_t m = clip.size();
  for (std::size_t k = 0; k < m && !out.empty(); ++k) {
    const Vec2& p = clip[k];
    const Vec2& q = clip[(k + 1) % m];
    const Vec2 e = q - p;
    std::vector<Vec2> in = std::move(out);
    out.clear();
    const std::size_t n = in.size();
    for (std::size_t j = 0; j < n; ++j) {
      const Vec2& s = in[j];
      const Vec2& f = in[(j + 1) % n];
      const double ds = cross(e, s - p);
      const double df = cross(e, f - p);
      if (ds >= 0.0) out.push_back(s);
      if ((ds >= 0.0) != (df >= 0.0)) {
        const double t = ds / (ds - df);
        out.push_back(s + t * (f - s));
      }
    }
  }
  // collapse repeated points produced by touching edges
  std::vector<Vec2> clean;
  for (const Vec2& p : out)
    if (clean.empty() || (p - clean.back()).norm() > 1e-15) clean.push_back(p);
  while (clean.size() > 1 && (clean.front() - clean.back()).norm() <= 1e-15) clean.pop_back();
  if (clean.size() < 3) clean.clear();
  return clean;
}

std::vector<std::vector<Vec2>> clip_triangle_polygon(const std::array<Vec2, 3>& tri,
                                                     const std::vector<Vec2>& polygon,
                                                     const std::vector<std::array<int, 3>>& ears, double min_area) {
  std::vector<std::vector<Vec2>> pieces;
  const std::vector<Vec2> subject{tri[0], tri[1], tri[2]};
  const auto tb = bounds(subject);
  for (const auto& ear : ears) {
    const std::vector<Vec2> e{polygon[ear[0]], polygon[ear[1]], polygon[ear[2]]};
    const auto eb = bounds(e);
    if ((eb[0].array() > tb[1].array()).any() || (tb[0].array() > eb[1].array()).any()) continue;
    auto piece = clip_convex(subject, e);
    if (piece.empty()) continue;
    const double area = signed_area(piece);
    if (area <= min_area || area <= 0.0) continue;
    pieces.push_back(std::move(piece));
  }
  return pieces;
}

std::vector<std::vector<Vec2>> clip_triangle_polygon(const std::array<Vec2, 3>& tri,
                                                     const std::vector<Vec2>& polygon, double min_area) {
  return clip_triangle_polygon(tri, polygon, ear_clip(polygon), min_area);
}

bool clip_segment_triangle(const std::array<Vec2, 3>& tri, const Vec2& a, const Vec2& b, double& t0, double& t1) {
  t0 = 0.0;
  t1 = 1.0;
  const Vec2 d = b - a;
  int aligned = -1;
  for (int k = 0; k < 3; ++k) {
    const Vec2& p = tri[k];
    const Vec2 e = tri[(k + 1) % 3] - p;
    const double len = e.norm();
    const double sa = cross(e, a - p) / len;
    const double sb = cross(e, b - p) / len;
    if (std::abs(sa) <= kEdgeTol && std::abs(sb) <= kEdgeTol) {
      aligned = k;
      continue;
    }
    if (sa < -kEdgeTol && sb < -kEdgeTol) return false;
    if (sa >= -kEdgeTol && sb >= -kEdgeTol) continue;
    const double t = sa / (sa - sb);
    if (sa < sb) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
  }
  if (t1 <= t0) return false;
  if (aligned >= 0) {
    const Vec2 e = tri[(aligned + 1) % 3] - tri[aligned];
    if (d.dot(e) <= 0.0) return false;
  }
  return true;
}

std::vector<Segment> clip_triangle_polyline(const std::array<Vec2, 3>& tri, const std::vector<Vec2>& polyline,
                                            double min_length) {
  std::vector<Segment> out;
  for (std::size_t k = 0; k + 1 < polyline.size(); ++k) {
    const Vec2& a = polyline[k];
    const Vec2& b = polyline[k + 1];
    double t0, t1;
    if (!clip_segment_triangle(tri, a, b, t0, t1)) continue;
    Segment s{t0 == 0.0 ? a : Vec2(a + t0 * (b - a)), t1 == 1.0 ? b : Vec2(a + t1 * (b - a))};
    if (s.length() <= min_length) continue;
    out.push_back(s);
  }
  return out;
}

std::vector<QuadPoint> make_rule(const std::array<Vec2, 3>& tri) {
  std::vector<QuadPoint> out;
  append_triangle_rule(tri[0], tri[1], tri[2], out);
  return out;
}

std::vector<QuadPoint> make_rule(const std::vector<Vec2>& convex_polygon) {
  std::vector<QuadPoint> out;
  const std::size_t n = convex_polygon.size();
  if (n < 3) return out;
  if (n == 3) {
    append_triangle_rule(convex_polygon[0], convex_polygon[1], convex_polygon[2], out);
    return out;
  }
  Vec2 c = Vec2::Zero();
  for (const Vec2& p : convex_polygon) c += p;
  c /= double(n);
  for (std::size_t k = 0; k < n; ++k) append_triangle_rule(c, convex_polygon[k], convex_polygon[(k + 1) % n], out);
  return out;
}

std::vector<QuadPoint> make_rule(const Segment& seg) {
  static const double g = std::sqrt(3.0 / 5.0);
  const double len = seg.length();
  const Vec2 t = (seg.b - seg.a) / len;
  const Vec2 mid = 0.5 * (seg.a + seg.b);
  std::vector<QuadPoint> out;
  for (auto [xi, w] : {std::pair{-g, 5.0 / 9.0}, std::pair{0.0, 8.0 / 9.0}, std::pair{g, 5.0 / 9.0}}) {
    QuadPoint q;
    q.x = mid + 0.5 * xi * (seg.b - seg.a);
    q.w = 0.5 * w * len;
    q.t = t;
    out.push_back(q);
  }
  return out;
}

std::vector<QuadPoint> make_rule(const Vec2& point) {
  QuadPoint q;
  q.x = point;
  q.w = 1.0;
  return {q};
}

CutCellCache::CutCellCache(const BackgroundMesh& mesh, const MixedDomain& domain,
                           const std::vector<ActiveMesh>& active)
    : mesh_(&mesh) {
  const double h = mesh.h();
  const auto& facets = domain.facets();
  comps_.resize(domain.component_count());

  for (int s = 0; s < domain.component_count(); ++s) {
    const ManifoldComponent& comp = domain.components()[s];
    const ActiveMesh& am = active.at(s);
    if (am.id() != comp.id) throw InternalError("active meshes are not in canonical order");
    ComponentQuadrature& cq = comps_[s];
    cq.id = comp.id;

    if (comp.id.dim == 2) {
      const auto ears = ear_clip(comp.vertices);
      for (int t : am.triangles()) {
        QuadRule rule;
        rule.tri = t;
        for (const auto& piece : clip_triangle_polygon(mesh.corners(t), comp.vertices, ears, 1e-14 * h * h)) {
          auto pts = make_rule(piece);
          rule.points.insert(rule.points.end(), pts.begin(), pts.end());
        }
        if (!rule.points.empty()) cq.domain.push_back(std::move(rule));
      }
      for (int f : domain.owned_facets(comp.id)) {
        const BoundaryFacet& F = facets[f];
        for (int t : am.triangles()) {
          double t0, t1;
          if (!clip_segment_triangle(mesh.corners(t), F.a, F.b, t0, t1)) continue;
          const Segment seg{F.a + t0 * (F.b - F.a), F.a + t1 * (F.b - F.a)};
          if (seg.length() <= 1e-14 * h) continue;
          cq.facets.push_back({f, t, make_rule(seg)});
        }
      }
    } else if (comp.id.dim == 1) {
      const auto& L = comp.vertices;
      const auto& incoming = domain.incoming_facets(comp.id);
      for (int t : am.triangles()) {
        QuadRule rule;
        rule.tri = t;
        const auto tri = mesh.corners(t);
        for (std::size_t k = 0; k + 1 < L.size(); ++k) {
          double t0, t1;
          if (!clip_segment_triangle(tri, L[k], L[k + 1], t0, t1)) continue;
          const Vec2 d = L[k + 1] - L[k];
          // break at the ends of bulk facets so every point sees a fixed set of them
          std::vector<double> cuts{t0, t1};
          for (int f : incoming) {
            for (const Vec2& e : {facets[f].a, facets[f].b}) {
              if (dist_point_segment(e, L[k], L[k + 1]) >= 1e-10) continue;
              const double te = (e - L[k]).dot(d) / d.squaredNorm();
              if (te > t0 && te < t1) cuts.push_back(te);
            }
          }
          std::sort(cuts.begin(), cuts.end());
          for (std::size_t m = 0; m + 1 < cuts.size(); ++m) {
            const Segment seg{m == 0 && t0 == 0.0 ? L[k] : Vec2(L[k] + cuts[m] * d),
                              m + 2 == cuts.size() && t1 == 1.0 ? L[k + 1] : Vec2(L[k] + cuts[m + 1] * d)};
            if (seg.length() <= 1e-14 * h) continue;
            auto pts = make_rule(seg);
            rule.points.insert(rule.points.end(), pts.begin(), pts.end());
          }
        }
        if (!rule.points.empty()) cq.domain.push_back(std::move(rule));
      }
      for (int f : domain.owned_facets(comp.id)) {
        int tri = -1;
        for (int t : am.triangles())
          if (triangle_contains(mesh.corners(t), facets[f].a)) {
            tri = t;
            break;
          }
        if (tri < 0) throw InternalError("fracture endpoint outside its active mesh");
        cq.facets.push_back({f, tri, make_rule(facets[f].a)});
      }
    } else {
      const Vec2& x0 = comp.vertices[0];
      int tri = -1;
      for (int t : am.triangles())
        if (triangle_contains(mesh.corners(t), x0)) {
          tri = t;
          break;
        }
      if (tri < 0) throw InternalError("point component outside its active mesh");
      cq.domain.push_back({tri, make_rule(x0)});
    }

    if (comp.id.dim < 2) {
      for (auto& rule : cq.domain) {
        for (auto& q : rule.points) {
          const auto up = domain.upward_facets_at(comp.id, q.x);
          q.up_begin = static_cast<std::uint32_t>(cq.upward.size());
          q.up_count = static_cast<std::uint32_t>(up.size());
          cq.upward.insert(cq.upward.end(), up.begin(), up.end());
        }
      }
    }
    if (!am.triangles().empty() && cq.domain.empty())
      throw InternalError("component " + comp.id.str() + " has an active mesh but no quadrature");
  }
}

}  // namespace mdcutfem
