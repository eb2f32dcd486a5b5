#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "mdcutfem/geometry.hpp"
#include "mdcutfem/mesh.hpp"

namespace mdcutfem {

/// One independent P1 block per component, numbered by (d desc, i asc) and then by vertex id.
class DofMap {
 public:
  DofMap(const BackgroundMesh& mesh, const std::vector<ActiveMesh>& active);

  int total() const { return total_; }
  int components() const { return static_cast<int>(offset_.size()); }
  int offset(int slot) const { return offset_[slot]; }
  int block_size(int slot) const { return static_cast<int>(vertices_[slot].size()); }
  const std::vector<int>& vertices(int slot) const { return vertices_[slot]; }
  /// Global dof of background vertex v in a component block, or -1.
  int dof(int slot, int v) const;
  std::array<int, 3> triangle_dofs(int slot, int t) const;
  /// Component slot owning a global dof.
  int slot_of(int dof) const;

 private:
  const BackgroundMesh* mesh_;
  std::vector<int> offset_;
  std::vector<std::vector<int>> vertices_;
  std::vector<std::vector<int>> local_;
  int total_ = 0;
};

DofMap build_dofmap(const BackgroundMesh& mesh, const std::vector<ActiveMesh>& active);

struct BasisEval {
  std::array<double, 3> value;
  std::array<Vec2, 3> grad;
};

/// P1 hat values and ambient gradients on a triangle; throws PointOutsideElement.
BasisEval eval_basis(const std::array<Vec2, 3>& tri, const Vec2& p, double tol = 1e-12);
BasisEval eval_basis(const BackgroundMesh& mesh, int t, const Vec2& p);

/// Projection onto the tangent space: identity for d=2, (g.t)t for d=1, zero for d=0.
Vec2 tangential_gradient(const Vec2& g, int dim, const Vec2& tangent = Vec2::Zero());

/// Active triangle of a component used to evaluate its field at p: the lowest-index background
/// triangle containing p if it is active, else the lowest active one. Throws PointNotInActiveMesh.
int trace_triangle(const BackgroundMesh& mesh, const ActiveMesh& active, const Vec2& p);

class SolutionField {
 public:
  SolutionField(const BackgroundMesh& mesh, const std::vector<ActiveMesh>& active, const DofMap& dofs,
                Eigen::VectorXd coeffs);

  const Eigen::VectorXd& coefficients() const { return coeffs_; }
  const DofMap& dofmap() const { return *dofs_; }
  double value(int slot, const Vec2& p) const;
  double value(int slot, int t, const Vec2& p) const;
  Vec2 gradient(int slot, int t) const;

 private:
  const BackgroundMesh* mesh_;
  const std::vector<ActiveMesh>* active_;
  const DofMap* dofs_;
  Eigen::VectorXd coeffs_;
};

/// Value of component `slot`'s P1 function at p.
double trace_eval(const BackgroundMesh& mesh, const ActiveMesh& active, const DofMap& dofs, int slot,
                  const Eigen::VectorXd& coeffs, const Vec2& p);

}  // namespace mdcutfem
