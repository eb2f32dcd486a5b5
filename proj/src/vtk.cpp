#include "mdcutfem/vtk.hpp"

#include <cstdio>
#include <string>
#include <vector>

namespace mdcutfem {

namespace {

struct Cell {
  int type;  // 1 vertex, 3 line, 5 triangle
  int first;
  int count;
  ComponentId id;
};

std::string fmt10(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

void write_vtk(std::ostream& os, const Problem& problem, const Discretization& disc, const Eigen::VectorXd& uh) {
  const MixedDomain& dom = problem.domain();
  std::vector<Vec2> nodes;
  std::vector<double> values, exact;
  std::vector<Cell> cells;
  const bool with_exact = problem.has_exact();

  auto node = [&](int slot, int tri, const Vec2& p) {
    const BasisEval b = eval_basis(disc.mesh, tri, p);
    const auto d = disc.dofs.triangle_dofs(slot, tri);
    nodes.push_back(p);
    values.push_back(b.value[0] * uh[d[0]] + b.value[1] * uh[d[1]] + b.value[2] * uh[d[2]]);
    if (with_exact) exact.push_back(problem.u(slot, p));
  };

  for (int s = 0; s < dom.component_count(); ++s) {
    const ManifoldComponent& c = dom.components()[s];
    for (int t : disc.active[s].triangles()) {
      const auto corners = disc.mesh.corners(t);
      if (c.id.dim == 2) {
        for (const auto& piece : clip_triangle_polygon(corners, c.vertices, 1e-14 * disc.h * disc.h)) {
          for (std::size_t k = 1; k + 1 < piece.size(); ++k) {
            cells.push_back({5, int(nodes.size()), 3, c.id});
            node(s, t, piece[0]);
            node(s, t, piece[k]);
            node(s, t, piece[k + 1]);
          }
        }
      } else if (c.id.dim == 1) {
        for (const Segment& seg : clip_triangle_polyline(corners, c.vertices)) {
          cells.push_back({3, int(nodes.size()), 2, c.id});
          node(s, t, seg.a);
          node(s, t, seg.b);
        }
      }
    }
    if (c.id.dim == 0) {
      const int t = trace_triangle(disc.mesh, disc.active[s], c.vertices[0]);
      cells.push_back({1, int(nodes.size()), 1, c.id});
      node(s, t, c.vertices[0]);
    }
  }

  os << "# vtk DataFile Version 2.0\n"
     << "mdcutfem solution N=" << disc.mesh.n() << "\n"
     << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << nodes.size() << " double\n";
  for (const Vec2& p : nodes) os << fmt10(p.x()) << " " << fmt10(p.y()) << " 0\n";
  std::size_t size = 0;
  for (const Cell& c : cells) size += 1 + c.count;
  os << "CELLS " << cells.size() << " " << size << "\n";
  for (const Cell& c : cells) {
    os << c.count;
    for (int k = 0; k < c.count; ++k) os << " " << c.first + k;
    os << "\n";
  }
  os << "CELL_TYPES " << cells.size() << "\n";
  for (const Cell& c : cells) os << c.type << "\n";
  os << "CELL_DATA " << cells.size() << "\n";
  os << "SCALARS dim int 1\nLOOKUP_TABLE default\n";
  for (const Cell& c : cells) os << c.id.dim << "\n";
  os << "SCALARS index int 1\nLOOKUP_TABLE default\n";
  for (const Cell& c : cells) os << c.id.index << "\n";
  os << "POINT_DATA " << nodes.size() << "\n";
  os << "SCALARS u_h double 1\nLOOKUP_TABLE default\n";
  for (double v : values) os << fmt10(v) << "\n";
  if (with_exact) {
    os << "SCALARS u double 1\nLOOKUP_TABLE default\n";
    for (double v : exact) os << fmt10(v) << "\n";
  }
}

}  // namespace mdcutfem
