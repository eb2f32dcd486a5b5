#include "mdcutfem/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "mdcutfem/cutquad.hpp"
#include "mdcutfem/error.hpp"

namespace mdcutfem {

namespace {

constexpr double kDiffStep = 1e-6;

double ev(const Expr& e, const Vec2& x) { return e(x.x(), x.y()); }

}  // namespace

const Expr& BoundaryData::at(BoundarySide s) const {
  auto it = sides.find(s);
  return it == sides.end() ? all : it->second;
}

const ComponentCoefficients& CoefficientSet::at(ComponentId id) const {
  for (const auto& c : comps)
    if (c.id == id) return c;
  throw ConfigError("no coefficients for component " + id.str());
}

ComponentCoefficients& CoefficientSet::at(ComponentId id) {
  for (auto& c : comps)
    if (c.id == id) return c;
  throw ConfigError("no coefficients for component " + id.str());
}

double tau1(const StabParams& params, const Scales& scales, double h) {
  const double inf = std::numeric_limits<double>::infinity();
  const double conv = scales.beta_inf > 0.0 ? 1.0 / scales.beta_inf : inf;
  const double diff = scales.eps > 0.0 ? h / scales.eps : inf;
  if (conv == inf && diff == inf) throw BothScalesZero("both beta_inf and eps vanish; tau1 is undefined");
  const double t = params.c_tau * std::min(conv, diff);
  // the two bounds tau1*eps <= c_tau*h and tau1*beta_inf <= c_tau
  if (t * scales.eps > params.c_tau * h * (1 + 1e-12) || t * scales.beta_inf > params.c_tau * (1 + 1e-12))
    throw InternalError("tau1 violates its scale bounds");
  return t;
}

Problem::Problem(const MixedDomain& domain, CoefficientSet coeffs) : domain_(&domain) {
  // reorder to the canonical component order
  for (const auto& c : domain.components()) coeffs_.comps.push_back(coeffs.at(c.id));
}

Vec2 Problem::endpoint_tangent(int facet) const {
  const BoundaryFacet& F = domain_->facets()[facet];
  const auto& L = domain_->component(F.owner).vertices;
  // the normal points out of the polyline: against the direction at the start, along it at the end
  const bool at_start = (F.a - L.front()).norm() < (F.a - L.back()).norm();
  return at_start ? Vec2(-F.normal) : F.normal;
}

Eigen::Matrix2d Problem::alpha(int slot, const Vec2& x) const {
  const auto& c = coeffs_.comps[slot];
  Eigen::Matrix2d a = Eigen::Matrix2d::Zero();
  if (c.id.dim == 2) {
    a << ev(c.axx, x), ev(c.axy, x), ev(c.axy, x), ev(c.ayy, x);
  } else if (c.id.dim == 1) {
    a = ev(c.axx, x) * Eigen::Matrix2d::Identity();
  }
  return a;
}

double Problem::alpha_nn(int facet, const Vec2& x) const {
  const BoundaryFacet& F = domain_->facets()[facet];
  const int s = domain_->slot(F.owner);
  if (F.owner.dim == 1) return ev(coeffs_.comps[s].axx, x);
  return F.normal.dot(alpha(s, x) * F.normal);
}

Vec2 Problem::beta(int slot, const Vec2& x, const Vec2& t) const {
  const auto& c = coeffs_.comps[slot];
  if (c.id.dim == 1 && c.beta_t) return ev(*c.beta_t, x) * t;
  if (c.id.dim == 0) return Vec2::Zero();
  return Vec2(ev(c.bx, x), ev(c.by, x));
}

Vec2 Problem::facet_beta(int facet, const Vec2& x) const {
  const BoundaryFacet& F = domain_->facets()[facet];
  const int s = domain_->slot(F.owner);
  if (F.owner.dim == 1) return beta(s, x, endpoint_tangent(facet));
  return beta(s, x);
}

double Problem::beta_nu(int facet, const Vec2& x) const {
  return domain_->facets()[facet].normal.dot(facet_beta(facet, x));
}

double Problem::g(int facet, const Vec2& x) const {
  const BoundaryFacet& F = domain_->facets()[facet];
  return ev(coeffs_.comps[domain_->slot(F.owner)].g.at(F.side), x);
}

double Problem::div_tangential(int slot, const Vec2& x, const Vec2& t) const {
  const int d = dim(slot);
  const double s = kDiffStep;
  if (d == 2) {
    const auto& c = coeffs_.comps[slot];
    const Vec2 ex(s, 0.0), ey(0.0, s);
    return (ev(c.bx, x + ex) - ev(c.bx, x - ex) + ev(c.by, x + ey) - ev(c.by, x - ey)) / (2 * s);
  }
  if (d == 1) return (beta(slot, x + s * t, t).dot(t) - beta(slot, x - s * t, t).dot(t)) / (2 * s);
  return 0.0;
}

double Problem::div_beta(int slot, const Vec2& x, const Vec2& t, const std::vector<int>& upward) const {
  double v = div_tangential(slot, x, t);
  for (int f : upward) v -= beta_nu(f, x);
  return v;
}

double Problem::div_beta(int slot, const Vec2& x, const Vec2& t) const {
  return div_beta(slot, x, t, domain_->upward_facets_at(coeffs_.comps[slot].id, x));
}

double Problem::weight_B(int facet, const Vec2& x, int sign) const {
  const double bn = beta_nu(facet, x);
  const double part = sign < 0 ? -std::min(bn, 0.0) : std::max(bn, 0.0);
  return alpha_nn(facet, x) + part;
}

bool Problem::has_exact() const {
  return std::all_of(coeffs_.comps.begin(), coeffs_.comps.end(), [](const auto& c) { return c.u.has_value(); });
}

double Problem::u(int slot, const Vec2& x) const {
  const auto& c = coeffs_.comps[slot];
  if (!c.u) throw ExactSolutionMissing("component " + c.id.str() + " has no exact solution");
  return ev(*c.u, x);
}

Vec2 Problem::grad_u(int slot, const Vec2& x) const {
  const auto& c = coeffs_.comps[slot];
  if (!c.u) throw ExactSolutionMissing("component " + c.id.str() + " has no exact solution");
  Vec2 g;
  if (c.ux && c.uy) {
    g = Vec2(ev(*c.ux, x), ev(*c.uy, x));
  } else {
    const double s = kDiffStep;
    g = Vec2((ev(*c.u, x + Vec2(s, 0)) - ev(*c.u, x - Vec2(s, 0))) / (2 * s),
             (ev(*c.u, x + Vec2(0, s)) - ev(*c.u, x - Vec2(0, s))) / (2 * s));
  }
  // integrable singularities (e.g. at a corner of a polar solution) evaluate to zero
  if (!g.allFinite()) g.setZero();
  return g;
}

Scales compute_scales(const Problem& problem, const CutCellCache& cache) {
  Scales s;
  double eps = std::numeric_limits<double>::infinity();
  for (int slot = 0; slot < cache.size(); ++slot) {
    const int d = problem.dim(slot);
    for (const auto& rule : cache.component(slot).domain) {
      for (const auto& q : rule.points) {
        s.beta_inf = std::max(s.beta_inf, problem.beta(slot, q.x, q.t).norm());
        if (d == 2) {
          Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(problem.alpha(slot, q.x), Eigen::EigenvaluesOnly);
          eps = std::min(eps, es.eigenvalues()(0));
        } else if (d == 1) {
          eps = std::min(eps, problem.alpha(slot, q.x)(0, 0));
        }
      }
    }
  }
  s.eps = std::isfinite(eps) ? std::max(0.0, eps) : 0.0;
  return s;
}

void validate_coefficients(const Problem& problem, const CutCellCache& cache) {
  for (int slot = 0; slot < cache.size(); ++slot) {
    const auto& c = problem.coeff(slot);
    for (const auto& rule : cache.component(slot).domain) {
      for (const auto& q : rule.points) {
        if (c.id.dim == 1 && !c.beta_t) {
          const Vec2 b = problem.beta(slot, q.x, q.t);
          if (std::abs(b.x() * q.t.y() - b.y() * q.t.x()) >= 1e-10)
            throw ConfigError("beta of fracture " + c.id.str() + " is not tangent to it");
        }
        if (c.id.dim == 2) {
          const Eigen::Matrix2d a = problem.alpha(slot, q.x);
          Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(a, Eigen::EigenvaluesOnly);
          if (es.eigenvalues()(0) < -1e-14 * std::max(1.0, a.norm()))
            throw ConfigError("alpha of component " + c.id.str() + " is not positive semidefinite");
        } else if (c.id.dim == 1 && problem.alpha(slot, q.x)(0, 0) < 0.0) {
          throw ConfigError("alpha of component " + c.id.str() + " is negative");
        }
      }
    }
  }
}

double CoercivityReport::min() const {
  double m = std::numeric_limits<double>::infinity();
  for (double v : ess_inf) m = std::min(m, v);
  return m;
}

CoercivityReport coercivity_check(const Problem& problem, const CutCellCache& cache) {
  CoercivityReport r;
  for (int slot = 0; slot < cache.size(); ++slot) {
    const auto& cq = cache.component(slot);
    double m = std::numeric_limits<double>::infinity();
    for (const auto& rule : cq.domain) {
      for (const auto& q : rule.points) {
        const std::vector<int> up(cq.upward.begin() + q.up_begin, cq.upward.begin() + q.up_begin + q.up_count);
        m = std::min(m, 2 * problem.kappa(slot, q.x) + problem.div_beta(slot, q.x, q.t, up));
      }
    }
    r.ess_inf.push_back(m);
  }
  return r;
}

}  // namespace mdcutfem
