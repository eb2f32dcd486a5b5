#include "mdcutfem/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "mdcutfem/error.hpp"

namespace mdcutfem {

namespace {

constexpr double kMatchTol = 1e-10;

std::string fmt_point(const Vec2& p) {
  return "(" + std::to_string(p.x()) + ", " + std::to_string(p.y()) + ")";
}

bool inside_bbox(const BBox& box, const Vec2& p, double tol = kMatchTol) {
  return p.x() >= box.lo.x() - tol && p.x() <= box.hi.x() + tol && p.y() >= box.lo.y() - tol &&
         p.y() <= box.hi.y() + tol;
}

BoundarySide point_side(const BBox& box, const Vec2& p, double tol = kMatchTol) {
  if (!inside_bbox(box, p, tol)) return BoundarySide::None;
  if (std::abs(p.x() - box.lo.x()) < tol) return BoundarySide::Left;
  if (std::abs(p.x() - box.hi.x()) < tol) return BoundarySide::Right;
  if (std::abs(p.y() - box.lo.y()) < tol) return BoundarySide::Bottom;
  if (std::abs(p.y() - box.hi.y()) < tol) return BoundarySide::Top;
  return BoundarySide::None;
}

void check_polygon(const std::vector<Vec2>& poly, int index) {
  const std::string who = "polygon " + std::to_string(index);
  const int n = static_cast<int>(poly.size());
  if (n < 3) throw GeometryError(who + " has fewer than 3 vertices");
  for (int k = 0; k < n; ++k) {
    const Vec2& a = poly[k];
    const Vec2& b = poly[(k + 1) % n];
    if ((b - a).norm() < kMatchTol) throw GeometryError(who + " has a repeated vertex at " + fmt_point(a));
  }
  for (int k = 0; k < n; ++k) {
    const Vec2& a = poly[k];
    const Vec2& b = poly[(k + 1) % n];
    const Vec2& c = poly[(k + 2) % n];
    // a spike doubles back along the previous edge
    if (std::abs(cross(b - a, c - b)) < 1e-14 && (b - a).dot(c - b) < 0)
      throw GeometryError(who + " folds back on itself at " + fmt_point(b));
    for (int m = k + 2; m < n; ++m) {
      if (k == 0 && m == n - 1) continue;
      if (dist_segment_segment(a, b, poly[m], poly[(m + 1) % n]) < 1e-12)
        throw GeometryError(who + " self-intersects near " + fmt_point(a));
    }
  }
  if (signed_area(poly) <= 0.0) throw GeometryError(who + " is not counterclockwise (signed area <= 0)");
}

void check_polyline(const std::vector<Vec2>& line, int index) {
  const std::string who = "polyline " + std::to_string(index);
  const int n = static_cast<int>(line.size());
  if (n < 2) throw GeometryError(who + " has fewer than 2 vertices");
  for (int k = 0; k + 1 < n; ++k) {
    if ((line[k + 1] - line[k]).norm() < kMatchTol)
      throw GeometryError(who + " has a repeated vertex at " + fmt_point(line[k]));
  }
  for (int k = 0; k + 1 < n; ++k) {
    if (k + 2 < n) {
      const Vec2 u = line[k + 1] - line[k];
      const Vec2 v = line[k + 2] - line[k + 1];
      if (std::abs(cross(u, v)) < 1e-14 && u.dot(v) < 0)
        throw GeometryError(who + " folds back on itself at " + fmt_point(line[k + 1]));
    }
    for (int m = k + 2; m + 1 < n; ++m) {
      if (dist_segment_segment(line[k], line[k + 1], line[m], line[m + 1]) < 1e-12)
        throw GeometryError(who + " self-intersects near " + fmt_point(line[k]));
    }
  }
}

}  // namespace

std::string ComponentId::str() const { return std::to_string(dim) + "," + std::to_string(index); }

const char* side_name(BoundarySide s) {
  switch (s) {
    case BoundarySide::Left: return "left";
    case BoundarySide::Right: return "right";
    case BoundarySide::Bottom: return "bottom";
    case BoundarySide::Top: return "top";
    case BoundarySide::None: break;
  }
  return "none";
}

BoundarySide side_from_name(const std::string& name) {
  if (name == "left") return BoundarySide::Left;
  if (name == "right") return BoundarySide::Right;
  if (name == "bottom") return BoundarySide::Bottom;
  if (name == "top") return BoundarySide::Top;
  return BoundarySide::None;
}

double signed_area(const std::vector<Vec2>& poly) {
  double s = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) s += cross(poly[k], poly[(k + 1) % n]);
  return 0.5 * s;
}

double dist_point_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

double dist_segment_segment(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const Vec2 r = b - a;
  const Vec2 s = d - c;
  const double denom = cross(r, s);
  if (denom != 0.0) {
    const double t = cross(c - a, s) / denom;
    const double u = cross(c - a, r) / denom;
    if (t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0) return 0.0;
  }
  return std::min({dist_point_segment(a, c, d), dist_point_segment(b, c, d), dist_point_segment(c, a, b),
                   dist_point_segment(d, a, b)});
}

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly, double tol) {
  const std::size_t n = poly.size();
  bool inside = false;
  for (std::size_t k = 0, j = n - 1; k < n; j = k++) {
    const Vec2& a = poly[k];
    const Vec2& b = poly[j];
    if (dist_point_segment(p, a, b) <= tol) return true;
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double xi = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < xi) inside = !inside;
    }
  }
  return inside;
}

std::vector<std::array<int, 3>> ear_clip(const std::vector<Vec2>& poly) {
  std::vector<int> ring(poly.size());
  for (std::size_t k = 0; k < poly.size(); ++k) ring[k] = static_cast<int>(k);
  std::vector<std::array<int, 3>> out;

  const double scale = std::max(1e-300, std::abs(signed_area(poly)));
  auto in_triangle = [&](const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
    const double tol = -1e-14 * scale;
    return cross(b - a, p - a) >= tol && cross(c - b, p - b) >= tol && cross(a - c, p - c) >= tol;
  };

  while (ring.size() > 3) {
    const int n = static_cast<int>(ring.size());
    bool clipped = false;
    // drop collinear vertices first; they never change the region
    for (int k = 0; k < n && !clipped; ++k) {
      const Vec2& a = poly[ring[(k + n - 1) % n]];
      const Vec2& b = poly[ring[k]];
      const Vec2& c = poly[ring[(k + 1) % n]];
      if (std::abs(cross(b - a, c - b)) <= 1e-14 * scale && (b - a).dot(c - b) > 0) {
        ring.erase(ring.begin() + k);
        clipped = true;
      }
    }
    if (clipped) continue;
    for (int k = 0; k < n && !clipped; ++k) {
      const int ia = ring[(k + n - 1) % n];
      const int ib = ring[k];
      const int ic = ring[(k + 1) % n];
      const Vec2& a = poly[ia];
      const Vec2& b = poly[ib];
      const Vec2& c = poly[ic];
      if (cross(b - a, c - b) <= 0.0) continue;
      bool ear = true;
      for (int m = 0; m < n && ear; ++m) {
        const int im = ring[m];
        if (im == ia || im == ib || im == ic) continue;
        const Vec2& p = poly[im];
        if ((p - a).norm() == 0.0 || (p - b).norm() == 0.0 || (p - c).norm() == 0.0) continue;
        if (in_triangle(p, a, b, c)) ear = false;
      }
      if (ear) {
        out.push_back({ia, ib, ic});
        ring.erase(ring.begin() + k);
        clipped = true;
      }
    }
    if (!clipped) throw GeometryError("ear clipping failed; polygon is not simple");
  }
  if (std::abs(cross(poly[ring[1]] - poly[ring[0]], poly[ring[2]] - poly[ring[0]])) > 0.0)
    out.push_back({ring[0], ring[1], ring[2]});
  return out;
}

BoundarySide bbox_side(const BBox& box, const Vec2& a, const Vec2& b, double tol) {
  const std::array<BoundarySide, 4> sides{BoundarySide::Left, BoundarySide::Right, BoundarySide::Bottom,
                                          BoundarySide::Top};
  for (BoundarySide s : sides) {
    auto on = [&](const Vec2& p) {
      switch (s) {
        case BoundarySide::Left: return std::abs(p.x() - box.lo.x()) < tol;
        case BoundarySide::Right: return std::abs(p.x() - box.hi.x()) < tol;
        case BoundarySide::Bottom: return std::abs(p.y() - box.lo.y()) < tol;
        case BoundarySide::Top: return std::abs(p.y() - box.hi.y()) < tol;
        default: return false;
      }
    };
    if (on(a) && on(b)) return s;
  }
  return BoundarySide::None;
}

int MixedDomain::slot(ComponentId id) const {
  auto it = std::lower_bound(components_.begin(), components_.end(), id,
                             [](const ManifoldComponent& c, const ComponentId& v) { return c.id < v; });
  if (it == components_.end() || it->id != id) throw Error("unknown component " + id.str());
  return static_cast<int>(it - components_.begin());
}

bool MixedDomain::has(ComponentId id) const {
  return std::any_of(components_.begin(), components_.end(), [&](const auto& c) { return c.id == id; });
}

std::vector<int> MixedDomain::upward_facets_at(ComponentId id, const Vec2& x, double tol) const {
  std::vector<int> out;
  for (int f : incoming_[slot(id)]) {
    const BoundaryFacet& F = facets_[f];
    const double d = F.is_endpoint() ? (x - F.a).norm() : dist_point_segment(x, F.a, F.b);
    if (d < tol) out.push_back(f);
  }
  return out;
}

MixedDomain build_domain(const GeometrySpec& spec) {
  MixedDomain dom;
  dom.bbox_ = spec.bbox;
  if (!(spec.bbox.hi.x() > spec.bbox.lo.x() && spec.bbox.hi.y() > spec.bbox.lo.y()))
    throw GeometryError("bounding box is empty");

  for (std::size_t k = 0; k < spec.polygons.size(); ++k) {
    std::vector<Vec2> poly = spec.polygons[k];
    if (poly.size() > 1 && (poly.front() - poly.back()).norm() < kMatchTol) poly.pop_back();
    check_polygon(poly, static_cast<int>(k + 1));
    for (const Vec2& p : poly)
      if (!inside_bbox(spec.bbox, p)) throw GeometryError("polygon vertex outside the bounding box " + fmt_point(p));
    dom.components_.push_back({ComponentId{2, static_cast<int>(k + 1)}, poly});
  }
  for (std::size_t k = 0; k < spec.polylines.size(); ++k) {
    check_polyline(spec.polylines[k], static_cast<int>(k + 1));
    for (const Vec2& p : spec.polylines[k])
      if (!inside_bbox(spec.bbox, p)) throw GeometryError("polyline vertex outside the bounding box " + fmt_point(p));
    dom.components_.push_back({ComponentId{1, static_cast<int>(k + 1)}, spec.polylines[k]});
  }
  for (std::size_t k = 0; k < spec.points.size(); ++k) {
    if (!inside_bbox(spec.bbox, spec.points[k]))
      throw GeometryError("point outside the bounding box " + fmt_point(spec.points[k]));
    dom.components_.push_back({ComponentId{0, static_cast<int>(k + 1)}, {spec.points[k]}});
  }

  // fractures may only meet at their endpoints
  for (std::size_t p = 0; p < spec.polylines.size(); ++p) {
    for (std::size_t q = p + 1; q < spec.polylines.size(); ++q) {
      const auto& L1 = spec.polylines[p];
      const auto& L2 = spec.polylines[q];
      for (std::size_t s = 0; s + 1 < L1.size(); ++s) {
        for (std::size_t t = 0; t + 1 < L2.size(); ++t) {
          if (dist_segment_segment(L1[s], L1[s + 1], L2[t], L2[t + 1]) > 1e-12) continue;
          bool shared_end = false;
          for (const Vec2& e1 : {L1.front(), L1.back()})
            for (const Vec2& e2 : {L2.front(), L2.back()})
              if ((e1 - e2).norm() < kMatchTol) shared_end = true;
          if (!shared_end)
            throw GeometryError("polylines " + std::to_string(p + 1) + " and " + std::to_string(q + 1) +
                                " intersect away from their endpoints");
        }
      }
    }
  }

  std::vector<const ManifoldComponent*> fractures;
  std::vector<const ManifoldComponent*> points;
  for (const auto& c : dom.components_) {
    if (c.id.dim == 1) fractures.push_back(&c);
    if (c.id.dim == 0) points.push_back(&c);
  }

  for (const auto& c : dom.components_) {
    if (c.id.dim != 2) continue;
    const auto& poly = c.vertices;
    const std::size_t n = poly.size();
    for (std::size_t k = 0; k < n; ++k) {
      const Vec2 p0 = poly[k];
      const Vec2 p1 = poly[(k + 1) % n];
      const Vec2 e = p1 - p0;
      const double len2 = e.squaredNorm();
      std::vector<double> cuts{0.0, 1.0};
      auto add_cut = [&](const Vec2& q) {
        if (dist_point_segment(q, p0, p1) >= kMatchTol) return;
        const double t = (q - p0).dot(e) / len2;
        if (t > 1e-12 && t < 1.0 - 1e-12) cuts.push_back(t);
      };
      for (const auto* f : fractures)
        for (const Vec2& q : f->vertices) add_cut(q);
      for (const auto* pt : points) add_cut(pt->vertices[0]);
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end(),
                             [&](double a, double b) { return std::abs(a - b) * std::sqrt(len2) < kMatchTol; }),
                 cuts.end());
      const Vec2 normal = Vec2(e.y(), -e.x()).normalized();
      for (std::size_t m = 0; m + 1 < cuts.size(); ++m) {
        BoundaryFacet F;
        F.owner = c.id;
        F.a = m == 0 ? p0 : Vec2(p0 + cuts[m] * e);
        F.b = m + 2 == cuts.size() ? p1 : Vec2(p0 + cuts[m + 1] * e);
        F.normal = normal;
        for (const auto* f : fractures) {
          const auto& L = f->vertices;
          for (std::size_t s = 0; s + 1 < L.size() && !F.neighbor; ++s) {
            if (dist_point_segment(F.a, L[s], L[s + 1]) < kMatchTol &&
                dist_point_segment(F.b, L[s], L[s + 1]) < kMatchTol)
              F.neighbor = f->id;
          }
          if (F.neighbor) break;
        }
        if (!F.neighbor) {
          F.side = bbox_side(dom.bbox_, F.a, F.b);
          if (F.side == BoundarySide::None)
            throw HierarchyViolation("boundary piece " + fmt_point(F.a) + "-" + fmt_point(F.b) + " of component " +
                                     c.id.str() + " lies on no fracture and not on the domain boundary");
        }
        dom.facets_.push_back(F);
      }
    }
  }

  for (const auto* f : fractures) {
    const auto& L = f->vertices;
    const std::array<std::pair<Vec2, Vec2>, 2> ends{std::pair{L.front(), L[1]},
                                                    std::pair{L.back(), L[L.size() - 2]}};
    for (const auto& [end, inner] : ends) {
      BoundaryFacet F;
      F.owner = f->id;
      F.a = end;
      F.b = end;
      F.normal = (end - inner).normalized();
      for (const auto* pt : points) {
        if ((pt->vertices[0] - end).norm() < kMatchTol) {
          F.neighbor = pt->id;
          break;
        }
      }
      if (!F.neighbor) {
        F.side = point_side(dom.bbox_, end);
        if (F.side == BoundarySide::None)
          throw HierarchyViolation("endpoint " + fmt_point(end) + " of fracture " + f->id.str() +
                                   " lies on no point component and not on the domain boundary");
      }
      dom.facets_.push_back(F);
    }
  }

  dom.owned_.assign(dom.components_.size(), {});
  dom.incoming_.assign(dom.components_.size(), {});
  for (std::size_t k = 0; k < dom.facets_.size(); ++k) {
    const auto& F = dom.facets_[k];
    dom.owned_[dom.slot(F.owner)].push_back(static_cast<int>(k));
    if (F.neighbor) dom.incoming_[dom.slot(*F.neighbor)].push_back(static_cast<int>(k));
  }
  return dom;
}

const Vec2& facet_normal(const MixedDomain& domain, int facet) { return domain.facets().at(facet).normal; }

FacetClassification classify_boundary(const MixedDomain& domain) {
  FacetClassification out;
  const auto& facets = domain.facets();
  for (std::size_t k = 0; k < facets.size(); ++k)
    (facets[k].exterior() ? out.exterior : out.interior).push_back(static_cast<int>(k));
  return out;
}

}  // namespace mdcutfem
