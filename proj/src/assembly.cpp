#include "mdcutfem/assembly.hpp"

#include <cmath>

#include "mdcutfem/error.hpp"

namespace mdcutfem {

namespace {

std::vector<ActiveMesh> extract_all(const BackgroundMesh& mesh, const MixedDomain& domain) {
  std::vector<ActiveMesh> out;
  for (const auto& c : domain.components()) out.push_back(extract_active(mesh, domain, c.id));
  return out;
}

void add_outer(Triplets& t, const Row& a, const Row& b, double s) {
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < b.n; ++j) t.emplace_back(a.dof[i], b.dof[j], s * a.val[i] * b.val[j]);
}

// P1 function of component `slot` at x, as a row over its dofs
void add_trace(Row& row, const Discretization& disc, int slot, const Vec2& x, double scale) {
  const int t = trace_triangle(disc.mesh, disc.active[slot], x);
  const BasisEval b = eval_basis(disc.mesh, t, x);
  const auto d = disc.dofs.triangle_dofs(slot, t);
  for (int k = 0; k < 3; ++k) row.add(d[k], scale * b.value[k]);
}

}  // namespace

Discretization::Discretization(const MixedDomain& dom, int n, const Vec2& shift)
    : domain(&dom),
      mesh(dom.bbox(), n, shift),
      active(extract_all(mesh, dom)),
      cache(mesh, dom, active),
      dofs(mesh, active),
      h(mesh.h()) {}

std::unique_ptr<Discretization> discretize(const MixedDomain& domain, int n, const Vec2& shift) {
  return std::make_unique<Discretization>(domain, n, shift);
}

void Row::add(int d, double v) {
  if (n == kCapacity) throw InternalError("residual row capacity exceeded");
  dof[n] = d;
  val[n] = v;
  ++n;
}

double Row::apply(const Eigen::VectorXd& x) const {
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += val[k] * x[dof[k]];
  return s;
}

std::vector<int> upward_of(const ComponentQuadrature& cq, const QuadPoint& q) {
  return {cq.upward.begin() + q.up_begin, cq.upward.begin() + q.up_begin + q.up_count};
}

PointRows build_rows(const Problem& problem, const Discretization& disc, int slot, const QuadRule& rule,
                     const QuadPoint& q) {
  PointRows r;
  const int d = problem.dim(slot);
  r.own = eval_basis(disc.mesh, rule.tri, q.x);
  r.own_dofs = disc.dofs.triangle_dofs(slot, rule.tri);
  for (int k = 0; k < 3; ++k) r.own_grad[k] = tangential_gradient(r.own.grad[k], d, q.t);
  r.beta = problem.beta(slot, q.x, q.t);
  const double react = problem.div_tangential(slot, q.x, q.t) + problem.kappa(slot, q.x);
  for (int k = 0; k < 3; ++k) {
    const double v = r.beta.dot(r.own_grad[k]) + react * r.own.value[k];
    r.L.add(r.own_dofs[k], v);
    r.R.add(r.own_dofs[k], v);
  }
  const auto& cq = disc.cache.component(slot);
  for (std::uint32_t k = 0; k < q.up_count; ++k) {
    const int f = cq.upward[q.up_begin + k];
    const int up = problem.domain().slot(problem.domain().facets()[f].owner);
    const double bn = problem.beta_nu(f, q.x);
    const double B = problem.weight_B(f, q.x, -1);
    add_trace(r.L, disc, up, q.x, -bn);
    // R: -bn v_up - B (v_up - v_own)
    add_trace(r.R, disc, up, q.x, -bn - B);
    for (int m = 0; m < 3; ++m) r.R.add(r.own_dofs[m], B * r.own.value[m]);
  }
  return r;
}

Contribution assemble_diffusion(const Problem& problem, const Discretization& disc) {
  Contribution c;
  c.rhs = Eigen::VectorXd::Zero(disc.dofs.total());
  for (int s = 0; s < disc.cache.size(); ++s) {
    const int d = problem.dim(s);
    if (d == 0) continue;
    for (const auto& rule : disc.cache.component(s).domain) {
      const auto dofs = disc.dofs.triangle_dofs(s, rule.tri);
      const BasisEval b = eval_basis(disc.mesh, rule.tri, rule.points.front().x);
      for (const auto& q : rule.points) {
        const Eigen::Matrix2d a = problem.alpha(s, q.x);
        if (a.isZero(0.0)) continue;
        std::array<Vec2, 3> g;
        for (int k = 0; k < 3; ++k) g[k] = tangential_gradient(b.grad[k], d, q.t);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) c.triplets.emplace_back(dofs[i], dofs[j], q.w * g[i].dot(a * g[j]));
      }
    }
  }
  return c;
}

Contribution assemble_convection(const Problem& problem, const Discretization& disc) {
  Contribution c;
  c.rhs = Eigen::VectorXd::Zero(disc.dofs.total());
  for (int s = 0; s < disc.cache.size(); ++s) {
    for (const auto& rule : disc.cache.component(s).domain) {
      for (const auto& q : rule.points) {
        const PointRows r = build_rows(problem, disc, s, rule, q);
        const double fx = problem.f(s, q.x);
        for (int i = 0; i < 3; ++i) {
          const double wi = q.w * r.own.value[i];
          for (int k = 0; k < r.L.n; ++k) c.triplets.emplace_back(r.own_dofs[i], r.L.dof[k], wi * r.L.val[k]);
          c.rhs[r.own_dofs[i]] += wi * fx;
        }
      }
    }
  }
  return c;
}

Contribution assemble_robin(const Problem& problem, const Discretization& disc) {
  Contribution c;
  c.rhs = Eigen::VectorXd::Zero(disc.dofs.total());
  const auto& facets = problem.domain().facets();
  for (int s = 0; s < disc.cache.size(); ++s) {
    for (const auto& fr : disc.cache.component(s).facets) {
      const BoundaryFacet& F = facets[fr.facet];
      const auto dofs = disc.dofs.triangle_dofs(s, fr.tri);
      for (const auto& q : fr.points) {
        const BasisEval b = eval_basis(disc.mesh, fr.tri, q.x);
        const double B = problem.weight_B(fr.facet, q.x, -1);
        if (B == 0.0) continue;
        Row jump;
        for (int k = 0; k < 3; ++k) jump.add(dofs[k], b.value[k]);
        if (F.exterior()) {
          const double gx = problem.g(fr.facet, q.x);
          for (int k = 0; k < 3; ++k) c.rhs[dofs[k]] += q.w * B * gx * b.value[k];
        } else {
          add_trace(jump, disc, problem.domain().slot(*F.neighbor), q.x, -1.0);
        }
        add_outer(c.triplets, jump, jump, q.w * B);
      }
    }
  }
  return c;
}

Contribution assemble_gls(const Problem& problem, const Discretization& disc, double tau1) {
  Contribution c;
  c.rhs = Eigen::VectorXd::Zero(disc.dofs.total());
  if (tau1 == 0.0) return c;
  const double scale = tau1 * disc.h;
  for (int s = 0; s < disc.cache.size(); ++s) {
    for (const auto& rule : disc.cache.component(s).domain) {
      for (const auto& q : rule.points) {
        const PointRows r = build_rows(problem, disc, s, rule, q);
        add_outer(c.triplets, r.R, r.R, scale * q.w);
        const double fx = problem.f(s, q.x);
        for (int k = 0; k < r.R.n; ++k) c.rhs[r.R.dof[k]] += scale * q.w * fx * r.R.val[k];
      }
    }
  }
  return c;
}

Contribution assemble_fullgrad(const StabParams& params, const Discretization& disc) {
  Contribution c;
  c.rhs = Eigen::VectorXd::Zero(disc.dofs.total());
  if (params.tau2 == 0.0) return c;
  for (int s = 0; s < disc.cache.size(); ++s) {
    const int d = disc.cache.component(s).id.dim;
    // tau2 h^(3-(n-d)) with n = 2
    const double factor = params.tau2 * std::pow(disc.h, 1 + d);
    for (int t : disc.active[s].triangles()) {
      const auto dofs = disc.dofs.triangle_dofs(s, t);
      const auto corners = disc.mesh.corners(t);
      const BasisEval b = eval_basis(corners, corners[0]);
      const double area = disc.mesh.triangle_area(t);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) c.triplets.emplace_back(dofs[i], dofs[j], factor * area * b.grad[i].dot(b.grad[j]));
    }
  }
  return c;
}

Eigen::SparseMatrix<double> to_matrix(const Discretization& disc, const Triplets& t) {
  Eigen::SparseMatrix<double> A(disc.dofs.total(), disc.dofs.total());
  A.setFromTriplets(t.begin(), t.end());
  return A;
}

AssembledSystem assemble_all(const Problem& problem, const Discretization& disc, const StabParams& params,
                             double tau1) {
  AssembledSystem sys;
  sys.tau1 = tau1;
  Triplets all;
  sys.b = Eigen::VectorXd::Zero(disc.dofs.total());
  for (Contribution part : {assemble_diffusion(problem, disc), assemble_convection(problem, disc),
                            assemble_robin(problem, disc), assemble_gls(problem, disc, tau1),
                            assemble_fullgrad(params, disc)}) {
    all.insert(all.end(), part.triplets.begin(), part.triplets.end());
    sys.b += part.rhs;
  }
  sys.A = to_matrix(disc, all);
  sys.A.makeCompressed();
  if (!sys.b.allFinite()) throw InternalError("right-hand side has non-finite entries");
  for (int k = 0; k < sys.A.nonZeros(); ++k)
    if (!std::isfinite(sys.A.valuePtr()[k])) throw InternalError("matrix has non-finite entries");
  return sys;
}

AssembledSystem assemble_all(const Problem& problem, const Discretization& disc, const StabParams& params) {
  const Scales sc = compute_scales(problem, disc.cache);
  return assemble_all(problem, disc, params, tau1(params, sc, disc.h));
}

}  // namespace mdcutfem
