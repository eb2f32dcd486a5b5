#pragma once

#include <array>
#include <memory>
#include <vector>

#include <Eigen/Sparse>

#include "mdcutfem/cutquad.hpp"
#include "mdcutfem/fespace.hpp"
#include "mdcutfem/mesh.hpp"
#include "mdcutfem/problem.hpp"

namespace mdcutfem {

/// Background mesh, active meshes, quadrature and dofs for one resolution.
/// Members refer to each other, so it is neither copied nor moved.
struct Discretization {
  Discretization(const MixedDomain& domain, int n, const Vec2& shift);
  Discretization(const Discretization&) = delete;
  Discretization& operator=(const Discretization&) = delete;

  const MixedDomain* domain;
  BackgroundMesh mesh;
  std::vector<ActiveMesh> active;
  CutCellCache cache;
  DofMap dofs;
  double h;
};

std::unique_ptr<Discretization> discretize(const MixedDomain& domain, int n, const Vec2& shift = Vec2::Zero());

/// Sparse linear functional over global dofs with a small fixed capacity.
struct Row {
  static constexpr int kCapacity = 64;
  int n = 0;
  std::array<int, kCapacity> dof;
  std::array<double, kCapacity> val;

  void add(int d, double v);
  double apply(const Eigen::VectorXd& x) const;
};

/// Everything assembly needs at one quadrature point of a component.
struct PointRows {
  BasisEval own;
  std::array<int, 3> own_dofs;
  std::array<Vec2, 3> own_grad;  // tangential gradients of the own hats
  Row L;                          // L v = beta.grad v + (div beta + kappa) v - sum nu.beta v_up
  Row R;                          // L v - sum B^-([v]_up)
  Vec2 beta;
};

PointRows build_rows(const Problem& problem, const Discretization& disc, int slot, const QuadRule& rule,
                     const QuadPoint& q);
std::vector<int> upward_of(const ComponentQuadrature& cq, const QuadPoint& q);

using Triplets = std::vector<Eigen::Triplet<double>>;

struct Contribution {
  Triplets triplets;
  Eigen::VectorXd rhs;
};

struct AssembledSystem {
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd b;
  double tau1 = 0.0;
};

Contribution assemble_diffusion(const Problem& problem, const Discretization& disc);
/// (L v, w) together with the source (f, w).
Contribution assemble_convection(const Problem& problem, const Discretization& disc);
Contribution assemble_robin(const Problem& problem, const Discretization& disc);
Contribution assemble_gls(const Problem& problem, const Discretization& disc, double tau1);
Contribution assemble_fullgrad(const StabParams& params, const Discretization& disc);

AssembledSystem assemble_all(const Problem& problem, const Discretization& disc, const StabParams& params);
AssembledSystem assemble_all(const Problem& problem, const Discretization& disc, const StabParams& params,
                             double tau1);

Eigen::SparseMatrix<double> to_matrix(const Discretization& disc, const Triplets& t);

}  // namespace mdcutfem
