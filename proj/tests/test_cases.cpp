#include <cmath>

#include "doctest.h"
#include "mdcutfem/analysis.hpp"
#include "mdcutfem/cases.hpp"
#include "mdcutfem/error.hpp"

using namespace mdcutfem;

TEST_SUITE("cases") {

TEST_CASE("catalog") {
  CHECK(catalog_names().size() == 7);
  for (const auto& n : catalog_names()) CHECK(catalog(n).name == n);
  CHECK_THROWS_AS(catalog("case9"), UnknownCase);
  CHECK_THROWS_AS(catalog("case1", {{"eps1", "1"}}), ConfigError);
  CHECK_THROWS_AS(catalog("illus1", {{"eps1", "abc"}}), ConfigError);
}

TEST_CASE("exact solutions at known points") {
  const CaseDefinition c1 = catalog("case1");
  const auto& f1 = c1.coefficients.at({1, 1});
  CHECK((*f1.u)(0.5, 0.0) == doctest::Approx(2.0));
  CHECK((*c1.coefficients.at({2, 1}).u)(0.5, 0.0) == doctest::Approx(1.0));
  CHECK((*c1.coefficients.at({2, 2}).u)(0.5, 1.0) == doctest::Approx(std::exp(1.0)));

  const CaseDefinition c3 = catalog("case3");
  for (int i = 1; i <= 4; ++i) CHECK((*c3.coefficients.at({1, i}).u)(0.5, 0.5) == doctest::Approx(1.0));
  CHECK((*c3.coefficients.at({0, 1}).u)(0.5, 0.5) == 1.0);

  const CaseDefinition lr = catalog("lowreg");
  CHECK((*lr.coefficients.at({1, 1}).u)(0.0, -1.0) == doctest::Approx(-2.0));
  CHECK((*lr.coefficients.at({1, 2}).u)(1.0, 0.0) == doctest::Approx(-2.0));
  CHECK((*lr.coefficients.at({0, 1}).u)(0.0, 0.0) == 0.0);
  CHECK(lr.params.c_tau == 25.0);
}

TEST_CASE("Robin data") {
  const Expr u = Expr::parse("x*y"), ux = Expr::parse("y"), uy = Expr::parse("x");
  // outflow: B = alpha, g = u + n.grad u
  const Expr g = robin_data(u, ux, uy, 0.5, Vec2(1, 0), Vec2(1, 0));
  CHECK(g(1.0, 0.3) == doctest::Approx(0.3 + 0.3));
  // inflow: B = alpha + |beta.n|
  const Expr gi = robin_data(u, ux, uy, 0.5, Vec2(1, 0), Vec2(-1, 0));
  CHECK(gi(0.0, 0.4) == doctest::Approx(0.0 - 0.5 / 1.5 * 0.4));
  CHECK(robin_data(u, ux, uy, 0.0, Vec2(1, 0), Vec2(-1, 0))(0.3, 0.3) == doctest::Approx(0.09));
}

TEST_CASE("case2 drops fracture diffusion only") {
  const CaseDefinition a = catalog("case1"), b = catalog("case2");
  CHECK(a.coefficients.at({1, 1}).axx(0.5, 0.5) == doctest::Approx(1e-5));
  CHECK(b.coefficients.at({1, 1}).axx(0.5, 0.5) == 0.0);
  for (int i : {1, 2}) {
    CHECK(a.coefficients.at({2, i}).axx(0.2, 0.2) == b.coefficients.at({2, i}).axx(0.2, 0.2));
    CHECK(a.coefficients.at({2, i}).f(0.7, 0.2) == b.coefficients.at({2, i}).f(0.7, 0.2));
  }
  // the fracture source shifts by -2 eps_f e^y
  CHECK(a.coefficients.at({1, 1}).f(0.5, 0.3) - b.coefficients.at({1, 1}).f(0.5, 0.3) ==
        doctest::Approx(-2e-5 * std::exp(0.3)));
}

TEST_CASE("illustration parameters") {
  const CaseDefinition c = catalog("illus1", {{"eps1", "0.01"}, {"eps2", "0.02"}, {"beta_1_1", "[0,0.5]"}});
  CHECK(c.coefficients.at({1, 1}).axx(0, 0) == 0.01);
  CHECK(c.coefficients.at({2, 2}).axx(0, 0) == 0.02);
  CHECK(c.coefficients.at({1, 1}).by(0, 0) == 0.5);
  CHECK_FALSE(c.has_exact());

  const CaseDefinition d = catalog("illus2", {{"beta_1_1", "[0,0.4]"}});
  CHECK((*d.coefficients.at({1, 1}).beta_t)(0, 0) == doctest::Approx(0.4));
  CHECK((*d.coefficients.at({1, 2}).beta_t)(0, 0) == doctest::Approx(0.2));
  CHECK((*d.coefficients.at({1, 8}).beta_t)(0, 0) == doctest::Approx(0.4 / 6));
  // speeds cascade down the network
  for (int i = 2; i <= 8; ++i)
    CHECK((*d.coefficients.at({1, i}).beta_t)(0, 0) < (*d.coefficients.at({1, 1}).beta_t)(0, 0));
}

TEST_CASE("illustrations solve") {
  for (const char* name : {"illus1", "illus2"}) {
    const CaseDefinition c = catalog(name);
    const MixedDomain d = build_domain(c.geometry);
    const Problem pb(d, c.coefficients);
    RunResult r = run_single(pb, c.ns.front(), c.shift, c.params);
    CHECK(r.solution.x.allFinite());
    CHECK(r.solution.report.relative_residual < 1e-10);
  }
}

}
