#include <cmath>
#include <sstream>

#include "doctest.h"
#include "mdcutfem/analysis.hpp"
#include "mdcutfem/cases.hpp"
#include "mdcutfem/config.hpp"
#include "mdcutfem/error.hpp"

using namespace mdcutfem;

namespace {
const char* kUnitSquare = R"({
  "name": "unit",
  "domain": {"bbox": [[0, 0], [1, 1]]},
  "stab": {"c_tau": 1, "tau2": 0},
  "bulks": [{"polygon": [[0, 0], [1, 0], [1, 1], [0, 1]], "alpha": "0", "beta": ["0", "0"],
             "kappa": "1", "f": "1", "g": "1", "u": "1", "grad_u": ["0", "0"]}]
})";
}

TEST_SUITE("analysis") {

TEST_CASE("unit error on the unit square has unit norm") {
  const CaseDefinition c = load_json(kUnitSquare);
  const MixedDomain d = build_domain(c.geometry);
  const Problem pb(d, c.coefficients);
  for (int n : {3, 8}) {
    const auto disc = discretize(d, n, c.shift);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(disc->dofs.total());
    const EnergyParts e = energy_parts(pb, *disc, {0.0, 0.0, c.params}, zero, true);
    CHECK(e.l2 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(e.total() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(norm_l2(pb, *disc, zero) == doctest::Approx(1.0).epsilon(1e-13));
    // u_h = 1 is exact
    const Eigen::VectorXd one = Eigen::VectorXd::Ones(disc->dofs.total());
    CHECK(energy_parts(pb, *disc, {0.0, 0.5, c.params}, one, true).total() < 1e-26);
  }
}

TEST_CASE("energy parts are nonnegative and weighted") {
  const CaseDefinition c = catalog("case1");
  const MixedDomain d = build_domain(c.geometry);
  const Problem pb(d, c.coefficients);
  RunResult r = run_single(pb, 10, c.shift, c.params);
  const NormWeights w{r.scales.eps, r.tau1, c.params};
  const EnergyParts e = energy_parts(pb, *r.disc, w, r.solution.x, true);
  for (double v : {e.eps_grad, e.eps_jump, e.l2, e.beta_jump, e.beta_bnd, e.gls, e.stab}) CHECK(v >= 0.0);
  CHECK(e.alpha_beta() <= e.total());
  CHECK(norm_energy(pb, *r.disc, w, r.solution.x) == doctest::Approx(std::sqrt(e.total())));
  NormWeights w2 = w;
  w2.tau1 *= 2;
  CHECK(energy_parts(pb, *r.disc, w2, r.solution.x, true).gls == doctest::Approx(2 * e.gls));
}

TEST_CASE("manufactured residuals and identities") {
  for (const char* name : {"case1", "case3"}) {
    const CaseDefinition c = catalog(name);
    const MixedDomain d = build_domain(c.geometry);
    const Problem pb(d, c.coefficients);
    const ManufacturedReport rep = verify_manufactured(pb, 5, 100, 50);
    CHECK_MESSAGE(rep.passed(), rep.str());
    const auto disc = discretize(d, 12, c.shift);
    const IdentityReport id = check_identities(pb, *disc, false);
    CHECK_MESSAGE(id.passed(), id.str());
  }
}

TEST_CASE("a wrong source is caught") {
  CaseDefinition c = catalog("case1");
  apply_override(c, "f_2_1", "1");
  const MixedDomain d = build_domain(c.geometry);
  const Problem pb(d, c.coefficients);
  const ManufacturedReport rep = verify_manufactured(pb, 5, 100, 50);
  CHECK_FALSE(rep.passed());
  CHECK_THROWS_AS(require_manufactured(rep), ResidualExceeded);
}

TEST_CASE("report formats") {
  ErrorReport rep;
  rep.case_name = "demo";
  ErrorRow a;
  a.n = 5;
  a.h = std::sqrt(2.0) / 5;
  a.energy = 0.1;
  a.l2 = 0.01;
  ErrorRow b = a;
  b.n = 10;
  b.h = a.h / 2;
  b.energy = 0.05;
  b.l2 = 0.0025;
  b.energy_oc = 1.0;
  b.l2_oc = 2.0;
  rep.rows = {a, b};
  std::istringstream in(rep.csv());
  std::string line;
  std::getline(in, line);
  CHECK(line == "case,h,energy_err,energy_oc,l2_err,l2_oc");
  std::getline(in, line);
  CHECK(line == "demo,0.2828427125,1.000000e-01,,1.000000e-02,");
  std::getline(in, line);
  CHECK(line == "demo,0.1414213562,5.000000e-02,1.00000,2.500000e-03,2.00000");
  CHECK(*rep.tail_energy_oc() == 1.0);
  CHECK(rep.table().find("1/10") != std::string::npos);
}

TEST_CASE("sweep orders") {
  const CaseDefinition c = catalog("case1");
  const MixedDomain d = build_domain(c.geometry);
  const Problem pb(d, c.coefficients);
  const ErrorReport rep = convergence_sweep(pb, {5, 10, 20}, c.shift, c.params, "case1");
  REQUIRE(rep.rows.size() == 3);
  CHECK_FALSE(rep.rows[0].energy_oc.has_value());
  for (int k = 1; k < 3; ++k) {
    const double oc = std::log(rep.rows[k - 1].energy / rep.rows[k].energy) / std::log(2.0);
    CHECK(*rep.rows[k].energy_oc == doctest::Approx(oc));
    CHECK(rep.rows[k].energy < rep.rows[k - 1].energy);
  }
}

}
