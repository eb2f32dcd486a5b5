#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mdcutfem/expr.hpp"
#include "mdcutfem/geometry.hpp"

namespace mdcutfem {

class CutCellCache;

/// Exterior data: one expression, optionally overridden per bounding-box side.
struct BoundaryData {
  Expr all;
  std::map<BoundarySide, Expr> sides;

  const Expr& at(BoundarySide s) const;
};

struct ComponentCoefficients {
  ComponentId id;
  // symmetric tensor for d=2; axx is the scalar for d=1; unused for d=0
  Expr axx, axy, ayy;
  // ambient field; on d=1 it must be tangent to the polyline
  Expr bx, by;
  // d=1 only: tangential speed along the polyline direction (first to last vertex)
  std::optional<Expr> beta_t;
  Expr kappa, f;
  BoundaryData g;
  std::optional<Expr> u, ux, uy;
};

struct CoefficientSet {
  std::vector<ComponentCoefficients> comps;

  const ComponentCoefficients& at(ComponentId id) const;
  ComponentCoefficients& at(ComponentId id);
};

struct StabParams {
  double c_tau = 1.0;
  double tau2 = 1e-3;
};

struct Scales {
  double eps = 0.0;       // smallest diffusion eigenvalue over the d>=1 components
  double beta_inf = 0.0;  // largest |beta|
};

/// c_tau * min(1/beta_inf, h/eps) where a zero scale drops its argument. Throws BothScalesZero.
double tau1(const StabParams& params, const Scales& scales, double h);

/// Coefficients bound to a domain.
class Problem {
 public:
  Problem(const MixedDomain& domain, CoefficientSet coeffs);

  const MixedDomain& domain() const { return *domain_; }
  const CoefficientSet& coefficients() const { return coeffs_; }
  const ComponentCoefficients& coeff(int slot) const { return coeffs_.comps[slot]; }
  int dim(int slot) const { return coeffs_.comps[slot].id.dim; }

  /// Unit tangent of the polyline direction at an endpoint facet of a fracture.
  Vec2 endpoint_tangent(int facet) const;

  Eigen::Matrix2d alpha(int slot, const Vec2& x) const;
  /// alpha_nn of the facet's owner (nu.alpha.nu; the scalar for fractures).
  double alpha_nn(int facet, const Vec2& x) const;
  /// beta of a component; t is the polyline tangent (needed on fractures).
  Vec2 beta(int slot, const Vec2& x, const Vec2& t = Vec2::Zero()) const;
  /// beta of the facet's owner at x.
  Vec2 facet_beta(int facet, const Vec2& x) const;
  double beta_nu(int facet, const Vec2& x) const;
  double kappa(int slot, const Vec2& x) const { return coeffs_.comps[slot].kappa(x.x(), x.y()); }
  double f(int slot, const Vec2& x) const { return coeffs_.comps[slot].f(x.x(), x.y()); }
  double g(int facet, const Vec2& x) const;

  /// Tangential divergence of beta by central differences (step 1e-6).
  double div_tangential(int slot, const Vec2& x, const Vec2& t = Vec2::Zero()) const;
  /// (Div beta)_d at x: tangential divergence minus the normal fluxes of the upward facets.
  double div_beta(int slot, const Vec2& x, const Vec2& t, const std::vector<int>& upward) const;
  double div_beta(int slot, const Vec2& x, const Vec2& t = Vec2::Zero()) const;
  /// alpha_nn + |beta_nu|_- (sign < 0) or alpha_nn + |beta_nu|_+ (sign > 0).
  double weight_B(int facet, const Vec2& x, int sign = -1) const;

  bool has_exact(int slot) const { return coeffs_.comps[slot].u.has_value(); }
  bool has_exact() const;
  double u(int slot, const Vec2& x) const;
  /// Ambient gradient of the exact solution: stored closed form, else central differences (step 1e-6).
  Vec2 grad_u(int slot, const Vec2& x) const;

 private:
  const MixedDomain* domain_;
  CoefficientSet coeffs_;
};

Scales compute_scales(const Problem& problem, const CutCellCache& cache);

/// Throws ConfigError if beta is not tangent on a fracture or alpha is not positive semidefinite.
void validate_coefficients(const Problem& problem, const CutCellCache& cache);

struct CoercivityReport {
  std::vector<double> ess_inf;  // per component slot, inf of 2 kappa + Div beta
  double min() const;
  bool satisfied() const { return min() > 0.0; }
};
CoercivityReport coercivity_check(const Problem& problem, const CutCellCache& cache);

}  // namespace mdcutfem
