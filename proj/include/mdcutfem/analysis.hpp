#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mdcutfem/assembly.hpp"
#include "mdcutfem/problem.hpp"
#include "mdcutfem/solver.hpp"

namespace mdcutfem {

/// Squared contributions to the energy norm. Every part is nonnegative.
struct EnergyParts {
  double eps_grad = 0.0;   // eps ||grad e||^2
  double eps_jump = 0.0;   // eps ||[e]||^2 over all facets
  double l2 = 0.0;         // ||e||^2
  double beta_jump = 0.0;  // || |beta_nu|^(1/2) [e] ||^2 on interior facets
  double beta_bnd = 0.0;   // || |beta_nu|^(1/2) e ||^2 on exterior facets
  double gls = 0.0;        // tau1 h ||L e||^2
  double stab = 0.0;       // s_h(e, e)

  double alpha_beta() const { return eps_grad + eps_jump + l2 + beta_jump + beta_bnd; }
  double total() const { return alpha_beta() + gls + stab; }
};

struct NormWeights {
  double eps = 0.0;
  double tau1 = 0.0;
  StabParams params;
};

/// Parts of the norm of e = u - v_h (with_exact) or of v_h alone.
EnergyParts energy_parts(const Problem& problem, const Discretization& disc, const NormWeights& weights,
                         const Eigen::VectorXd& vh, bool with_exact = true);
/// Full energy norm of u - u_h. Throws ExactSolutionMissing.
double norm_energy(const Problem& problem, const Discretization& disc, const NormWeights& weights,
                   const Eigen::VectorXd& uh);
/// L2 norm of u - u_h over all components, point components by their point value.
double norm_l2(const Problem& problem, const Discretization& disc, const Eigen::VectorXd& uh);

struct ManufacturedReport {
  std::vector<ComponentId> ids;
  std::vector<double> interior;  // max scaled interior residual per component
  std::vector<double> facet;     // max facet residual per component
  double interior_tol = 1e-5;
  double facet_tol = 1e-8;
  bool passed() const;
  std::string str() const;
};

/// Strong-form residuals of the exact solution at random points. The interior tolerance is
/// relative to max(1,|f|); points closer than `exclusion` to a point component are skipped.
ManufacturedReport verify_manufactured(const Problem& problem, unsigned seed = 1, int interior_points = 500,
                                       int facet_points = 200, double exclusion = 0.05);
/// Throws ResidualExceeded unless the report passes.
void require_manufactured(const ManufacturedReport& report);

struct IdentityReport {
  double transfer_rel = 0.0;
  double partial_rel = 0.0;
  double partial_vv_rel = 0.0;
  double tol = 1e-8;
  bool passed() const { return transfer_rel < tol && partial_rel < tol && partial_vv_rel < tol; }
  std::string str() const;
};

/// Transfer and partial-integration identities with exponential fields e^{x+y}, e^{x-y}
/// (scaled per component so jumps do not vanish). Throws IdentityViolation when they fail.
IdentityReport check_identities(const Problem& problem, const Discretization& disc, bool throw_on_failure = true);

/// One assembled and solved problem.
struct RunResult {
  std::unique_ptr<Discretization> disc;
  Scales scales;
  double tau1 = 0.0;
  AssembledSystem system;
  SolveResult solution;
  CoercivityReport coercivity;
};

RunResult run_single(const Problem& problem, int n, const Vec2& shift, const StabParams& params);

/// max_k |(A u_h - b)_k| / ||b||_inf.
double galerkin_residual(const AssembledSystem& system, const Eigen::VectorXd& uh);

struct ErrorRow {
  int n = 0;
  double h = 0.0;
  double energy = 0.0;
  double energy_ab = 0.0;  // the alpha,beta part alone
  double l2 = 0.0;
  std::optional<double> energy_oc;
  std::optional<double> l2_oc;
  int dofs = 0;
  double seconds = 0.0;
};

struct ErrorReport {
  std::string case_name;
  StabParams params;
  std::vector<ErrorRow> rows;
  std::optional<double> analysis_energy_oc;
  std::optional<double> analysis_l2_oc;

  std::string csv() const;
  std::string table() const;
  /// Mean of the last two observed orders (or the last one if only one exists).
  std::optional<double> tail_energy_oc() const;
  std::optional<double> tail_l2_oc() const;
};

ErrorReport convergence_sweep(const Problem& problem, const std::vector<int>& ns, const Vec2& shift,
                              const StabParams& params, const std::string& name);

}  // namespace mdcutfem
