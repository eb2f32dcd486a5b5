#include "mdcutfem/fespace.hpp"

#include <algorithm>
#include <cmath>

#include "mdcutfem/error.hpp"

namespace mdcutfem {

DofMap::DofMap(const BackgroundMesh& mesh, const std::vector<ActiveMesh>& active) : mesh_(&mesh) {
  for (const ActiveMesh& am : active) {
    std::vector<int> verts;
    for (int t : am.triangles())
      for (int v : mesh.triangle(t)) verts.push_back(v);
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::vector<int> local(mesh.num_vertices(), -1);
    for (std::size_t k = 0; k < verts.size(); ++k) local[verts[k]] = static_cast<int>(k);
    offset_.push_back(total_);
    total_ += static_cast<int>(verts.size());
    vertices_.push_back(std::move(verts));
    local_.push_back(std::move(local));
  }
}

int DofMap::dof(int slot, int v) const {
  const int l = local_[slot][v];
  return l < 0 ? -1 : offset_[slot] + l;
}

std::array<int, 3> DofMap::triangle_dofs(int slot, int t) const {
  const auto v = mesh_->triangle(t);
  return {dof(slot, v[0]), dof(slot, v[1]), dof(slot, v[2])};
}

int DofMap::slot_of(int d) const {
  auto it = std::upper_bound(offset_.begin(), offset_.end(), d);
  return static_cast<int>(it - offset_.begin()) - 1;
}

DofMap build_dofmap(const BackgroundMesh& mesh, const std::vector<ActiveMesh>& active) {
  return DofMap(mesh, active);
}

BasisEval eval_basis(const std::array<Vec2, 3>& tri, const Vec2& p, double tol) {
  const Vec2 e1 = tri[1] - tri[0];
  const Vec2 e2 = tri[2] - tri[0];
  const double det = cross(e1, e2);
  if (det == 0.0) throw PointOutsideElement("degenerate triangle");
  BasisEval b;
  const Vec2 r = p - tri[0];
  const double l1 = cross(r, e2) / det;
  const double l2 = cross(e1, r) / det;
  b.value = {1.0 - l1 - l2, l1, l2};
  // barycentrics scale like distance / height; compare against tol in length units
  const double scale = std::sqrt(std::abs(det));
  for (double l : b.value)
    if (l * scale < -tol) throw PointOutsideElement("point outside element");
  b.grad[1] = Vec2(e2.y(), -e2.x()) / det;
  b.grad[2] = Vec2(-e1.y(), e1.x()) / det;
  b.grad[0] = -b.grad[1] - b.grad[2];
  return b;
}

BasisEval eval_basis(const BackgroundMesh& mesh, int t, const Vec2& p) { return eval_basis(mesh.corners(t), p); }

Vec2 tangential_gradient(const Vec2& g, int dim, const Vec2& tangent) {
  if (dim == 2) return g;
  if (dim == 1) return g.dot(tangent) * tangent;
  return Vec2::Zero();
}

int trace_triangle(const BackgroundMesh& mesh, const ActiveMesh& active, const Vec2& p) {
  const auto cands = mesh.containing(p);
  for (int t : cands)
    if (active.contains(t)) return t;
  throw PointNotInActiveMesh("point (" + std::to_string(p.x()) + ", " + std::to_string(p.y()) +
                             ") is not in the active mesh of component " + active.id().str());
}

double trace_eval(const BackgroundMesh& mesh, const ActiveMesh& active, const DofMap& dofs, int slot,
                  const Eigen::VectorXd& coeffs, const Vec2& p) {
  const int t = trace_triangle(mesh, active, p);
  const BasisEval b = eval_basis(mesh, t, p);
  const auto d = dofs.triangle_dofs(slot, t);
  return b.value[0] * coeffs[d[0]] + b.value[1] * coeffs[d[1]] + b.value[2] * coeffs[d[2]];
}

SolutionField::SolutionField(const BackgroundMesh& mesh, const std::vector<ActiveMesh>& active, const DofMap& dofs,
                             Eigen::VectorXd coeffs)
    : mesh_(&mesh), active_(&active), dofs_(&dofs), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != dofs.total()) throw Error("solution length does not match the dof map");
  if (!coeffs_.allFinite()) throw Error("solution contains non-finite entries");
}

double SolutionField::value(int slot, const Vec2& p) const {
  return trace_eval(*mesh_, (*active_)[slot], *dofs_, slot, coeffs_, p);
}

double SolutionField::value(int slot, int t, const Vec2& p) const {
  const BasisEval b = eval_basis(*mesh_, t, p);
  const auto d = dofs_->triangle_dofs(slot, t);
  return b.value[0] * coeffs_[d[0]] + b.value[1] * coeffs_[d[1]] + b.value[2] * coeffs_[d[2]];
}

Vec2 SolutionField::gradient(int slot, int t) const {
  const BasisEval b = eval_basis(*mesh_, t, mesh_->corners(t)[0]);
  const auto d = dofs_->triangle_dofs(slot, t);
  return b.grad[0] * coeffs_[d[0]] + b.grad[1] * coeffs_[d[1]] + b.grad[2] * coeffs_[d[2]];
}

}  // namespace mdcutfem
