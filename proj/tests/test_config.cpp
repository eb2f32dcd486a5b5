#include <random>

#include "doctest.h"
#include "mdcutfem/cases.hpp"
#include "mdcutfem/config.hpp"
#include "mdcutfem/error.hpp"

using namespace mdcutfem;

namespace {

std::string message_of(const std::string& text) {
  try {
    load_json(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

// Compare two coefficient sets by sampling every expression.
void check_same(const CaseDefinition& a, const CaseDefinition& b) {
  REQUIRE(a.coefficients.comps.size() == b.coefficients.comps.size());
  CHECK(a.geometry.polygons == b.geometry.polygons);
  CHECK(a.geometry.polylines == b.geometry.polylines);
  CHECK(a.geometry.points == b.geometry.points);
  CHECK(a.ns == b.ns);
  CHECK(a.shift == b.shift);
  CHECK(a.params.c_tau == b.params.c_tau);
  CHECK(a.params.tau2 == b.params.tau2);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-1.0, 2.0);
  auto same = [&](const Expr& x, const Expr& y) {
    for (int k = 0; k < 5; ++k) {
      const double px = U(rng), py = U(rng);
      const double vx = x(px, py), vy = y(px, py);
      if (std::isfinite(vx)) CHECK(vy == doctest::Approx(vx).epsilon(1e-14));
    }
  };
  for (std::size_t s = 0; s < a.coefficients.comps.size(); ++s) {
    const auto& p = a.coefficients.comps[s];
    const auto& q = b.coefficients.comps[s];
    CHECK(p.id == q.id);
    if (p.id.dim >= 1) {
      same(p.axx, q.axx);
      same(p.bx, q.bx);
      same(p.by, q.by);
    }
    if (p.id.dim == 2) {
      same(p.axy, q.axy);
      same(p.ayy, q.ayy);
    }
    CHECK(p.beta_t.has_value() == q.beta_t.has_value());
    if (p.beta_t) same(*p.beta_t, *q.beta_t);
    same(p.kappa, q.kappa);
    same(p.f, q.f);
    same(p.g.all, q.g.all);
    CHECK(p.g.sides.size() == q.g.sides.size());
    for (const auto& [side, e] : p.g.sides) same(e, q.g.at(side));
    REQUIRE(p.u.has_value() == q.u.has_value());
    if (p.u) same(*p.u, *q.u);
  }
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("every catalog case survives a JSON round trip") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const CaseDefinition c = catalog(name);
    const CaseDefinition back = load_json(dump_json(c));
    CHECK(back.name == name);
    check_same(c, back);
    CHECK(dump_json(back) == dump_json(c));
  }
}

TEST_CASE("syntax errors carry line and column") {
  const std::string msg = message_of("{\n  \"name\": \"x\",\n  \"domain\": {\"bbox\": [[0,0],[1,1]]\n}\n");
  CHECK(msg.find("line 5, column 1") != std::string::npos);
}

TEST_CASE("schema errors carry a path") {
  CHECK(message_of(R"({"domain": {"bbox": [[0,0],[1,1]]}, "colour": 1})").find("unknown key 'colour'") !=
        std::string::npos);
  const std::string bad_beta = R"({"domain": {"bbox": [[0,0],[1,1]]},
    "bulks": [{"polygon": [[0,0],[1,0],[1,1],[0,1]], "alpha": "0", "beta": ["1"]}]})";
  CHECK(message_of(bad_beta).find("/bulks/0/beta") != std::string::npos);
  const std::string bad_expr = R"({"domain": {"bbox": [[0,0],[1,1]]},
    "bulks": [{"polygon": [[0,0],[1,0],[1,1],[0,1]], "alpha": "0", "beta": ["0","0"], "kappa": "0", "f": "exp(x"}]})";
  CHECK(message_of(bad_expr).find("/bulks/0/f") != std::string::npos);
  const std::string wrong_id = R"({"domain": {"bbox": [[0,0],[1,1]]},
    "bulks": [{"id": "2,3", "polygon": [[0,0],[1,0],[1,1],[0,1]], "alpha": "0", "beta": ["0","0"]}]})";
  CHECK(message_of(wrong_id).find("/bulks/0/id") != std::string::npos);
  CHECK_FALSE(message_of(R"({"domain": {"bbox": [[0,0],[1,1]]}})").empty());
  CHECK_THROWS_AS(load_file("/nonexistent/case.json"), ConfigError);
}

TEST_CASE("overrides") {
  CaseDefinition c = catalog("case1");
  apply_override(c, "ctau", "2.5");
  apply_override(c, "tau2", "0");
  apply_override(c, "shift", "[0.1, 0.2]");
  apply_override(c, "n", "[4,8]");
  apply_override(c, "kappa_2_2", "3*x");
  apply_override(c, "beta_2_1", "[0.5,-1]");
  apply_override(c, "alpha_1_1", "0.25");
  apply_override(c, "g_2_1", "7");
  CHECK(c.params.c_tau == 2.5);
  CHECK(c.params.tau2 == 0.0);
  CHECK(c.shift == Vec2(0.1, 0.2));
  CHECK(c.ns == std::vector<int>{4, 8});
  const auto& b2 = c.coefficients.at({2, 2});
  CHECK(b2.kappa(2.0, 0.0) == 6.0);
  const auto& b1 = c.coefficients.at({2, 1});
  CHECK(b1.bx(0, 0) == 0.5);
  CHECK(b1.by(0, 0) == -1.0);
  CHECK(b1.g.at(BoundarySide::Left)(0, 0) == 7.0);
  CHECK(c.coefficients.at({1, 1}).axx(0, 0) == 0.25);
  CHECK_THROWS_AS(apply_override(c, "kappa_2_9", "1"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "colour", "1"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "ctau", "-1"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "f_2_1", "exp(x"), ConfigError);
  CHECK_THROWS_AS(split_assignment("novalue"), ConfigError);
  CHECK(split_assignment("a=b=c") == std::pair<std::string, std::string>{"a", "b=c"});
}

}
