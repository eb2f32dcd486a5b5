#include "mdcutfem/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "mdcutfem/error.hpp"

namespace mdcutfem {

namespace {

double own_value(const PointRows& r, const Eigen::VectorXd& v) {
  return r.own.value[0] * v[r.own_dofs[0]] + r.own.value[1] * v[r.own_dofs[1]] + r.own.value[2] * v[r.own_dofs[2]];
}

Vec2 own_gradient(const PointRows& r, const Eigen::VectorXd& v) {
  return r.own_grad[0] * v[r.own_dofs[0]] + r.own_grad[1] * v[r.own_dofs[1]] + r.own_grad[2] * v[r.own_dofs[2]];
}

double field_at(const Discretization& disc, int slot, const Eigen::VectorXd& v, const Vec2& x) {
  return trace_eval(disc.mesh, disc.active[slot], disc.dofs, slot, v, x);
}

double field_at(const Discretization& disc, int slot, int tri, const Eigen::VectorXd& v, const Vec2& x) {
  const BasisEval b = eval_basis(disc.mesh, tri, x);
  const auto d = disc.dofs.triangle_dofs(slot, tri);
  return b.value[0] * v[d[0]] + b.value[1] * v[d[1]] + b.value[2] * v[d[2]];
}

int owner_slot(const Problem& p, int facet) { return p.domain().slot(p.domain().facets()[facet].owner); }

// L u for the exact solution at a domain quadrature point
double exact_L(const Problem& p, int slot, const QuadPoint& q, const std::vector<int>& up) {
  const int d = p.dim(slot);
  const Vec2 g = tangential_gradient(p.grad_u(slot, q.x), d, q.t);
  double v = p.beta(slot, q.x, q.t).dot(g) + (p.div_tangential(slot, q.x, q.t) + p.kappa(slot, q.x)) * p.u(slot, q.x);
  for (int f : up) v -= p.beta_nu(f, q.x) * p.u(owner_slot(p, f), q.x);
  return v;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

EnergyParts energy_parts(const Problem& problem, const Discretization& disc, const NormWeights& weights,
                         const Eigen::VectorXd& vh, bool with_exact) {
  if (with_exact && !problem.has_exact()) throw ExactSolutionMissing("energy norm needs exact solutions");
  EnergyParts e;
  const double eps = weights.eps;
  const double gls = weights.tau1 * disc.h;
  const auto& facets = problem.domain().facets();
  for (int s = 0; s < disc.cache.size(); ++s) {
    const auto& cq = disc.cache.component(s);
    const int d = cq.id.dim;
    for (const auto& rule : cq.domain) {
      for (const auto& q : rule.points) {
        const PointRows r = build_rows(problem, disc, s, rule, q);
        const double err = (with_exact ? problem.u(s, q.x) : 0.0) - own_value(r, vh);
        e.l2 += q.w * err * err;
        if (d >= 1 && eps > 0.0) {
          const Vec2 gu = with_exact ? tangential_gradient(problem.grad_u(s, q.x), d, q.t) : Vec2::Zero();
          e.eps_grad += eps * q.w * (gu - own_gradient(r, vh)).squaredNorm();
        }
        const double le = (with_exact ? exact_L(problem, s, q, upward_of(cq, q)) : 0.0) - r.L.apply(vh);
        e.gls += gls * q.w * le * le;
      }
    }
    for (const auto& fr : cq.facets) {
      const BoundaryFacet& F = facets[fr.facet];
      for (const auto& q : fr.points) {
        double jump = (with_exact ? problem.u(s, q.x) : 0.0) - field_at(disc, s, fr.tri, vh, q.x);
        if (!F.exterior()) {
          const int nb = problem.domain().slot(*F.neighbor);
          jump -= (with_exact ? problem.u(nb, q.x) : 0.0) - field_at(disc, nb, vh, q.x);
        }
        const double bn = std::abs(problem.beta_nu(fr.facet, q.x));
        e.eps_jump += eps * q.w * jump * jump;
        (F.exterior() ? e.beta_bnd : e.beta_jump) += bn * q.w * jump * jump;
      }
    }
    if (weights.params.tau2 > 0.0) {
      const double factor = weights.params.tau2 * std::pow(disc.h, 1 + d);
      for (int t : disc.active[s].triangles()) {
        const auto corners = disc.mesh.corners(t);
        const BasisEval b = eval_basis(corners, corners[0]);
        const auto dofs = disc.dofs.triangle_dofs(s, t);
        const Vec2 gh = b.grad[0] * vh[dofs[0]] + b.grad[1] * vh[dofs[1]] + b.grad[2] * vh[dofs[2]];
        for (const auto& q : disc.cache.full_triangle(t)) {
          const Vec2 gu = with_exact ? problem.grad_u(s, q.x) : Vec2::Zero();
          e.stab += factor * q.w * (gu - gh).squaredNorm();
        }
      }
    }
  }
  return e;
}

double norm_energy(const Problem& problem, const Discretization& disc, const NormWeights& weights,
                   const Eigen::VectorXd& uh) {
  return std::sqrt(energy_parts(problem, disc, weights, uh, true).total());
}

double norm_l2(const Problem& problem, const Discretization& disc, const Eigen::VectorXd& uh) {
  if (!problem.has_exact()) throw ExactSolutionMissing("L2 error needs exact solutions");
  double s2 = 0.0;
  for (int s = 0; s < disc.cache.size(); ++s) {
    for (const auto& rule : disc.cache.component(s).domain) {
      for (const auto& q : rule.points) {
        const double err = problem.u(s, q.x) - field_at(disc, s, rule.tri, uh, q.x);
        s2 += q.w * err * err;
      }
    }
  }
  return std::sqrt(s2);
}

bool ManufacturedReport::passed() const {
  for (std::size_t k = 0; k < ids.size(); ++k)
    if (!(interior[k] <= interior_tol) || !(facet[k] <= facet_tol)) return false;
  return true;
}

std::string ManufacturedReport::str() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const bool ok = interior[k] <= interior_tol && facet[k] <= facet_tol;
    os << "  component " << ids[k].str() << ": interior " << fmt("%.3e", interior[k]) << " (tol "
       << fmt("%.0e", interior_tol) << "), facets " << fmt("%.3e", facet[k]) << " (tol " << fmt("%.0e", facet_tol)
       << ")" << (ok ? "" : "  FAILED") << "\n";
  }
  return os.str();
}

ManufacturedReport verify_manufactured(const Problem& p, unsigned seed, int interior_points, int facet_points,
                                       double exclusion) {
  if (!p.has_exact()) throw ExactSolutionMissing("manufactured check needs exact solutions");
  const MixedDomain& dom = p.domain();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double s = 1e-4;
  ManufacturedReport rep;

  std::vector<Vec2> singular;
  for (const auto& c : dom.components())
    if (c.id.dim == 0) singular.push_back(c.vertices[0]);
  auto excluded = [&](const Vec2& x) {
    return std::any_of(singular.begin(), singular.end(), [&](const Vec2& z) { return (x - z).norm() < exclusion; });
  };
  auto u = [&](int slot, const Vec2& x) { return p.u(slot, x); };

  // normal flux nu.(-alpha grad u + beta u) of the owner of an upward facet
  auto upward_flux = [&](int f, const Vec2& x) {
    const BoundaryFacet& F = dom.facets()[f];
    const int o = owner_slot(p, f);
    Vec2 t = Vec2::Zero();
    if (F.owner.dim == 1) t = p.endpoint_tangent(f);
    const Vec2 g = tangential_gradient(p.grad_u(o, x), F.owner.dim, t);
    return F.normal.dot(-(p.alpha(o, x) * g) + p.facet_beta(f, x) * u(o, x));
  };

  for (int slot = 0; slot < dom.component_count(); ++slot) {
    const ManifoldComponent& c = dom.components()[slot];
    const int d = c.id.dim;
    double worst = 0.0;
    auto record = [&](const Vec2& x, double residual) {
      worst = std::max(worst, std::abs(residual) / std::max(1.0, std::abs(p.f(slot, x))));
    };

    if (d == 2) {
      Vec2 lo = c.vertices[0], hi = c.vertices[0];
      for (const Vec2& v : c.vertices) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
      }
      int found = 0;
      for (int tries = 0; found < interior_points && tries < 200 * interior_points; ++tries) {
        const Vec2 x(lo.x() + U(rng) * (hi.x() - lo.x()), lo.y() + U(rng) * (hi.y() - lo.y()));
        if (!point_in_polygon(x, c.vertices, 0.0) || excluded(x)) continue;
        ++found;
        auto flux = [&](const Vec2& y) {
          const Vec2 g((u(slot, y + Vec2(s, 0)) - u(slot, y - Vec2(s, 0))) / (2 * s),
                       (u(slot, y + Vec2(0, s)) - u(slot, y - Vec2(0, s))) / (2 * s));
          return Vec2(-(p.alpha(slot, y) * g) + p.beta(slot, y) * u(slot, y));
        };
        const double div = (flux(x + Vec2(s, 0)).x() - flux(x - Vec2(s, 0)).x() + flux(x + Vec2(0, s)).y() -
                            flux(x - Vec2(0, s)).y()) /
                           (2 * s);
        record(x, div + p.kappa(slot, x) * u(slot, x) - p.f(slot, x));
      }
    } else if (d == 1) {
      const auto& L = c.vertices;
      std::vector<double> cum{0.0};
      for (std::size_t k = 0; k + 1 < L.size(); ++k) cum.push_back(cum.back() + (L[k + 1] - L[k]).norm());
      int found = 0;
      for (int tries = 0; found < interior_points && tries < 200 * interior_points; ++tries) {
        const double arc = U(rng) * cum.back();
        const std::size_t k =
            std::min<std::size_t>(L.size() - 2, std::upper_bound(cum.begin(), cum.end(), arc) - cum.begin() - 1);
        const Vec2 t = (L[k + 1] - L[k]).normalized();
        const Vec2 x = L[k] + (arc - cum[k]) * t;
        if (excluded(x)) continue;
        const auto up = dom.upward_facets_at(c.id, x);
        ++found;
        auto flux = [&](const Vec2& y) {
          const double dt = (u(slot, y + s * t) - u(slot, y - s * t)) / (2 * s);
          return -p.alpha(slot, y)(0, 0) * dt + p.beta(slot, y, t).dot(t) * u(slot, y);
        };
        double r = (flux(x + s * t) - flux(x - s * t)) / (2 * s) + p.kappa(slot, x) * u(slot, x) - p.f(slot, x);
        for (int f : up) r -= upward_flux(f, x);
        record(x, r);
      }
    } else {
      const Vec2& x = c.vertices[0];
      double r = p.kappa(slot, x) * u(slot, x) - p.f(slot, x);
      for (int f : dom.upward_facets_at(c.id, x)) r -= upward_flux(f, x);
      record(x, r);
    }
    rep.ids.push_back(c.id);
    rep.interior.push_back(worst);

    // interface and boundary conditions
    double fworst = 0.0;
    const auto& owned = dom.owned_facets(c.id);
    if (d >= 1 && !owned.empty()) {
      std::vector<double> cum{0.0};
      for (int f : owned) cum.push_back(cum.back() + std::max(dom.facets()[f].length(), 1e-3));
      for (int k = 0; k < facet_points; ++k) {
        const double pick = U(rng) * cum.back();
        const std::size_t m =
            std::min<std::size_t>(owned.size() - 1, std::upper_bound(cum.begin(), cum.end(), pick) - cum.begin() - 1);
        const int f = owned[m];
        const BoundaryFacet& F = dom.facets()[f];
        const Vec2 x = F.a + U(rng) * (F.b - F.a);
        Vec2 t = Vec2::Zero();
        if (d == 1) t = p.endpoint_tangent(f);
        const Vec2 g = tangential_gradient(p.grad_u(slot, x), d, t);
        const double flux = F.normal.dot(p.alpha(slot, x) * g);
        const double B = p.weight_B(f, x, -1);
        const double jump = F.exterior() ? u(slot, x) - p.g(f, x) : u(slot, x) - u(dom.slot(*F.neighbor), x);
        fworst = std::max(fworst, std::abs(flux + B * jump));
      }
    }
    rep.facet.push_back(fworst);
  }
  return rep;
}

void require_manufactured(const ManufacturedReport& report) {
  if (!report.passed()) throw ResidualExceeded("manufactured solution residuals exceed tolerance:\n" + report.str());
}

std::string IdentityReport::str() const {
  std::ostringstream os;
  os << "  transfer identity: relative defect " << fmt("%.3e", transfer_rel) << "\n"
     << "  partial integration: relative defect " << fmt("%.3e", partial_rel) << "\n"
     << "  partial integration (v = w): relative defect " << fmt("%.3e", partial_vv_rel) << "\n";
  return os.str();
}

IdentityReport check_identities(const Problem& p, const Discretization& disc, bool throw_on_failure) {
  const MixedDomain& dom = p.domain();
  // distinct multiples per component so that jumps do not vanish
  auto cv = [](int slot) { return 1.0 + 0.25 * slot; };
  auto cw = [](int slot) { return 1.0 / (1.0 + 0.5 * slot); };
  auto v = [&](int slot, const Vec2& x) { return cv(slot) * std::exp(x.x() + x.y()); };
  auto w = [&](int slot, const Vec2& x) { return cw(slot) * std::exp(x.x() - x.y()); };
  auto gv = [&](int slot, const Vec2& x) { return Vec2(v(slot, x), v(slot, x)); };
  auto gw = [&](int slot, const Vec2& x) { return Vec2(w(slot, x), -w(slot, x)); };

  double tr_l = 0.0, tr_r = 0.0;
  double Dv_w = 0.0, v_Dw = 0.0, div_vw = 0.0, Dv_v = 0.0, div_vv = 0.0;
  double mag = 0.0, mag_vv = 0.0;

  for (int s = 0; s < disc.cache.size(); ++s) {
    const auto& cq = disc.cache.component(s);
    const int d = cq.id.dim;
    for (const auto& rule : cq.domain) {
      for (const auto& q : rule.points) {
        const auto up = upward_of(cq, q);
        const Vec2 beta = p.beta(s, q.x, q.t);
        double Dv = beta.dot(tangential_gradient(gv(s, q.x), d, q.t));
        double Dw = beta.dot(tangential_gradient(gw(s, q.x), d, q.t));
        double upv = 0.0;
        for (int f : up) {
          const int o = owner_slot(p, f);
          const double bn = p.beta_nu(f, q.x);
          Dv -= bn * (v(o, q.x) - v(s, q.x));
          Dw -= bn * (w(o, q.x) - w(s, q.x));
          upv += v(o, q.x);
        }
        const double div = p.div_beta(s, q.x, q.t, up);
        tr_r += q.w * upv * w(s, q.x);
        Dv_w += q.w * Dv * w(s, q.x);
        v_Dw += q.w * v(s, q.x) * Dw;
        div_vw += q.w * div * v(s, q.x) * w(s, q.x);
        Dv_v += q.w * Dv * v(s, q.x);
        div_vv += q.w * div * v(s, q.x) * v(s, q.x);
        mag += q.w * (std::abs(Dv * w(s, q.x)) + std::abs(v(s, q.x) * Dw) + std::abs(div * v(s, q.x) * w(s, q.x)));
        mag_vv += q.w * (std::abs(Dv * v(s, q.x)) + std::abs(div * v(s, q.x) * v(s, q.x)));
      }
    }
  }
  double bI = 0.0, bB = 0.0, bI_vv = 0.0, bB_vv = 0.0;
  for (int s = 0; s < disc.cache.size(); ++s) {
    for (const auto& fr : disc.cache.component(s).facets) {
      const BoundaryFacet& F = dom.facets()[fr.facet];
      for (const auto& q : fr.points) {
        const double bn = p.beta_nu(fr.facet, q.x);
        if (F.exterior()) {
          bB += q.w * bn * v(s, q.x) * w(s, q.x);
          bB_vv += q.w * bn * v(s, q.x) * v(s, q.x);
        } else {
          const int nb = dom.slot(*F.neighbor);
          const double jv = v(s, q.x) - v(nb, q.x);
          const double jw = w(s, q.x) - w(nb, q.x);
          bI += q.w * bn * jv * jw;
          bI_vv += q.w * bn * jv * jv;
          tr_l += q.w * v(s, q.x) * w(nb, q.x);
        }
        mag += q.w * std::abs(bn * v(s, q.x) * w(s, q.x));
        mag_vv += q.w * std::abs(bn * v(s, q.x) * v(s, q.x));
      }
    }
  }
  IdentityReport rep;
  rep.transfer_rel = std::abs(tr_l - tr_r) / std::max(1e-300, std::abs(tr_l) + std::abs(tr_r));
  rep.partial_rel = std::abs(Dv_w - (-v_Dw - div_vw + bI + bB)) / std::max(1e-300, mag);
  rep.partial_vv_rel = std::abs(2 * Dv_v - (-div_vv + bI_vv + bB_vv)) / std::max(1e-300, mag_vv);
  if (tr_l == 0.0 && tr_r == 0.0) rep.transfer_rel = 0.0;
  if (throw_on_failure && !rep.passed()) throw IdentityViolation("operator identities violated:\n" + rep.str());
  return rep;
}

RunResult run_single(const Problem& problem, int n, const Vec2& shift, const StabParams& params) {
  RunResult r;
  r.disc = discretize(problem.domain(), n, shift);
  validate_coefficients(problem, r.disc->cache);
  r.scales = compute_scales(problem, r.disc->cache);
  r.tau1 = tau1(params, r.scales, r.disc->h);
  r.coercivity = coercivity_check(problem, r.disc->cache);
  r.system = assemble_all(problem, *r.disc, params, r.tau1);
  r.solution = solve_direct(r.system.A, r.system.b);
  return r;
}

double galerkin_residual(const AssembledSystem& system, const Eigen::VectorXd& uh) {
  const double bmax = system.b.cwiseAbs().maxCoeff();
  const double res = (system.A * uh - system.b).cwiseAbs().maxCoeff();
  return bmax > 0.0 ? res / bmax : res;
}

std::string ErrorReport::csv() const {
  std::ostringstream os;
  os << "case,h,energy_err,energy_oc,l2_err,l2_oc\n";
  for (const auto& r : rows) {
    os << case_name << "," << fmt("%.10g", r.h) << "," << fmt("%.6e", r.energy) << ","
       << (r.energy_oc ? fmt("%.5f", *r.energy_oc) : "") << "," << fmt("%.6e", r.l2) << ","
       << (r.l2_oc ? fmt("%.5f", *r.l2_oc) : "") << "\n";
  }
  return os.str();
}

std::string ErrorReport::table() const {
  std::ostringstream os;
  char line[256];
  os << case_name << "  (c_tau = " << fmt("%g", params.c_tau) << ", tau2 = " << fmt("%g", params.tau2) << ")\n";
  std::snprintf(line, sizeof line, "%-12s %-14s %-10s %-14s %-10s %-14s\n", "h", "energy error", "energy OC",
                "L2 error", "L2 OC", "||.||_ab error");
  os << line;
  for (const auto& r : rows) {
    const std::string h = "1/" + std::to_string(r.n);
    std::snprintf(line, sizeof line, "%-12s %-14s %-10s %-14s %-10s %-14s\n", h.c_str(), fmt("%.5e", r.energy).c_str(),
                  r.energy_oc ? fmt("%.5f", *r.energy_oc).c_str() : "-", fmt("%.5e", r.l2).c_str(),
                  r.l2_oc ? fmt("%.5f", *r.l2_oc).c_str() : "-", fmt("%.5e", r.energy_ab).c_str());
    os << line;
  }
  if (analysis_energy_oc || analysis_l2_oc) {
    std::snprintf(line, sizeof line, "%-12s %-14s %-10s %-14s %-10s\n", "Analysis OC", "",
                  analysis_energy_oc ? fmt("%g", *analysis_energy_oc).c_str() : "-", "",
                  analysis_l2_oc ? fmt("%g", *analysis_l2_oc).c_str() : "-");
    os << line;
  }
  return os.str();
}

namespace {
std::optional<double> tail_mean(const std::vector<ErrorRow>& rows, bool energy) {
  std::vector<double> v;
  for (const auto& r : rows) {
    const auto& oc = energy ? r.energy_oc : r.l2_oc;
    if (oc) v.push_back(*oc);
  }
  if (v.empty()) return std::nullopt;
  if (v.size() == 1) return v.back();
  return 0.5 * (v[v.size() - 1] + v[v.size() - 2]);
}
}  // namespace

std::optional<double> ErrorReport::tail_energy_oc() const { return tail_mean(rows, true); }
std::optional<double> ErrorReport::tail_l2_oc() const { return tail_mean(rows, false); }

ErrorReport convergence_sweep(const Problem& problem, const std::vector<int>& ns, const Vec2& shift,
                              const StabParams& params, const std::string& name) {
  if (!problem.has_exact()) throw ExactSolutionMissing("case " + name + " has no exact solution");
  require_manufactured(verify_manufactured(problem));
  ErrorReport rep;
  rep.case_name = name;
  rep.params = params;
  for (int n : ns) {
    const auto t0 = std::chrono::steady_clock::now();
    RunResult run = run_single(problem, n, shift, params);
    const NormWeights w{run.scales.eps, run.tau1, params};
    const EnergyParts parts = energy_parts(problem, *run.disc, w, run.solution.x, true);
    ErrorRow row;
    row.n = n;
    row.h = run.disc->h;
    row.energy = std::sqrt(parts.total());
    row.energy_ab = std::sqrt(parts.alpha_beta());
    row.l2 = std::sqrt(parts.l2);
    row.dofs = run.disc->dofs.total();
    if (!rep.rows.empty() && n == 2 * rep.rows.back().n) {
      row.energy_oc = std::log2(rep.rows.back().energy / row.energy);
      row.l2_oc = std::log2(rep.rows.back().l2 / row.l2);
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace mdcutfem
