#include "mdcutfem/cases.hpp"

#include <cmath>
#include <cstdio>

#include "mdcutfem/error.hpp"

namespace mdcutfem {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return v < 0 ? "(" + std::string(buf) + ")" : std::string(buf);
}

Expr E(const std::string& s) { return Expr::parse(s); }

struct Spec {
  std::string alpha = "0";
  Vec2 beta{0.0, 0.0};
  std::string kappa = "0";
  std::string f = "0";
  std::string g = "0";
  std::string u, ux, uy;
};

ComponentCoefficients make(ComponentId id, const Spec& s) {
  ComponentCoefficients c;
  c.id = id;
  if (id.dim >= 1) {
    c.axx = E(s.alpha);
    if (id.dim == 2) c.ayy = c.axx;
    c.bx = Expr::constant(s.beta.x());
    c.by = Expr::constant(s.beta.y());
  }
  c.kappa = E(s.kappa);
  c.f = E(s.f);
  c.g.all = E(s.g);
  if (!s.u.empty()) {
    c.u = E(s.u);
    if (!s.ux.empty()) {
      c.ux = E(s.ux);
      c.uy = E(s.uy);
    }
  }
  return c;
}

// Robin data on every box side for components with closed-form gradients and constant alpha, beta.
void fill_robin(CaseDefinition& c) {
  const std::pair<BoundarySide, Vec2> sides[] = {{BoundarySide::Left, Vec2(-1, 0)},
                                                 {BoundarySide::Right, Vec2(1, 0)},
                                                 {BoundarySide::Bottom, Vec2(0, -1)},
                                                 {BoundarySide::Top, Vec2(0, 1)}};
  for (auto& comp : c.coefficients.comps) {
    if (comp.id.dim == 0 || !comp.ux) continue;
    const double a = comp.axx(0.0, 0.0);
    const Vec2 b(comp.bx(0.0, 0.0), comp.by(0.0, 0.0));
    for (const auto& [side, n] : sides) {
      // a fracture endpoint facet sees alpha along its outward tangent, which is n
      comp.g.sides[side] = robin_data(*comp.u, *comp.ux, *comp.uy, a, b, n);
    }
  }
}

std::vector<Vec2> rect(double x0, double y0, double x1, double y1) {
  return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

// Cases I, II and IV share the geometry and exact solutions.
CaseDefinition single_fracture(const std::string& name, double eps, double eps_frac, double kappa_bulk,
                               double kappa_frac) {
  CaseDefinition c;
  c.name = name;
  c.geometry.bbox = {{0, 0}, {1, 1}};
  c.geometry.polygons = {rect(0, 0, 0.5, 1), rect(0.5, 0, 1, 1)};
  c.geometry.polylines = {{{0.5, 0}, {0.5, 1}}};

  // bulk: -eps lap u + beta.grad u + kappa u with lap u = 2u and beta.grad u = u
  const std::string fb = num(1.0 + kappa_bulk - 2.0 * eps);
  Spec b1{num(eps), {1, 0}, num(kappa_bulk), fb + "*exp((x-0.5)+y)", "0", "exp((x-0.5)+y)", "exp((x-0.5)+y)",
          "exp((x-0.5)+y)"};
  Spec b2{num(eps), {-1, 0}, num(kappa_bulk), fb + "*exp(-(x-0.5)+y)", "0", "exp(-(x-0.5)+y)",
          "-exp(-(x-0.5)+y)", "exp(-(x-0.5)+y)"};
  // fracture: -eps_f u'' + u' + kappa_f u minus the bulk inflow 2(1-eps)e^y
  const double ff = -2.0 * eps_frac + 2.0 + 2.0 * kappa_frac - 2.0 * (1.0 - eps);
  Spec fr{num(eps_frac), {0, 1}, num(kappa_frac), num(ff) + "*exp(y)", "0", "2*exp(y)", "0", "2*exp(y)"};
  c.coefficients.comps = {make({2, 1}, b1), make({2, 2}, b2), make({1, 1}, fr)};
  fill_robin(c);
  c.expected_energy_oc = 1.0;
  c.expected_l2_oc = 1.5;
  return c;
}

CaseDefinition case3() {
  CaseDefinition c;
  c.name = "case3";
  c.geometry.bbox = {{0, 0}, {1, 1}};
  c.geometry.polygons = {rect(0, 0, 0.5, 0.5), rect(0, 0.5, 0.5, 1), rect(0.5, 0.5, 1, 1), rect(0.5, 0, 1, 0.5)};
  c.geometry.polylines = {{{0.5, 0}, {0.5, 0.5}}, {{1, 0.5}, {0.5, 0.5}}, {{0.5, 1}, {0.5, 0.5}}, {{0, 0.5}, {0.5, 0.5}}};
  c.geometry.points = {{0.5, 0.5}};
  auto bulk = [](Vec2 b, const std::string& u, const std::string& ux, const std::string& uy) {
    Spec s{"0", b, "1", "", "0", u, ux, uy};
    s.f = num(b.x()) + "*(" + ux + ")+" + num(b.y()) + "*(" + uy + ")+(" + u + ")";
    return s;
  };
  const Spec b1 = bulk({1, 1}, "x^2+y^2", "2*x", "2*y");
  const Spec b2 = bulk({-1, -1}, "1+(x-0.5)^2+(y-0.5)^2", "2*(x-0.5)", "2*(y-0.5)");
  const Spec b3 = bulk({-1, -1}, "-(x^2+y^2)", "-2*x", "-2*y");
  const Spec b4 = bulk({-1, 1}, "x^2-y^2", "2*x", "-2*y");
  // fractures: beta.grad u + 2u minus the inflow sum of nu.beta u over the two neighbours
  Spec f1{"0", {0, 1}, "2", "2*(y-1)+2*(0.75+(y-1)^2)-0.5", "0", "0.75+(y-1)^2", "0", "2*(y-1)"};
  Spec f2{"0", {-1, 0}, "2", "-2*(x-0.5)+2*(1+(x-0.5)^2)+0.5", "0", "1+(x-0.5)^2", "2*(x-0.5)", "0"};
  Spec f3{"0", {0, 1}, "2", "2*(y-0.5)+3*(1+(y-0.5)^2)+0.25+y^2", "0", "1+(y-0.5)^2", "0", "2*(y-0.5)"};
  Spec f4{"0", {1, 0}, "2", "-2*(x-0.5)+2*(1-(x-0.5)^2)-(x^2+0.25)-(1+(x-0.5)^2)", "0", "1-(x-0.5)^2",
          "-2*(x-0.5)", "0"};
  Spec p{"0", {0, 0}, "2", "0", "0", "1", "0", "0"};
  c.coefficients.comps = {make({2, 1}, b1), make({2, 2}, b2), make({2, 3}, b3), make({2, 4}, b4), make({1, 1}, f1),
                          make({1, 2}, f2),  make({1, 3}, f3),  make({1, 4}, f4),  make({0, 1}, p)};
  fill_robin(c);
  c.expected_energy_oc = 1.5;
  c.expected_l2_oc = 2.0;
  return c;
}

CaseDefinition lowreg() {
  const double eps = 1e-5;
  CaseDefinition c;
  c.name = "lowreg";
  c.params.c_tau = 25.0;
  c.geometry.bbox = {{-1, -1}, {1, 1}};
  c.geometry.polygons = {rect(-1, -1, 0, 0), rect(-1, 0, 0, 1), rect(0, 0, 1, 1), rect(0, -1, 1, 0)};
  c.geometry.polylines = {{{0, -1}, {0, 0}}, {{1, 0}, {0, 0}}, {{0, 1}, {0, 0}}, {{-1, 0}, {0, 0}}};
  c.geometry.points = {{0, 0}};
  auto bulk = [&](Vec2 b, double s) {
    const std::string sg = num(s);
    Spec sp{num(eps), b, "1", "", "0", sg + "*r^(5/3)*sin(2*theta)",
            sg + "*r^(2/3)*((5/3)*sin(2*theta)*cos(theta)-2*cos(2*theta)*sin(theta))",
            sg + "*r^(2/3)*((5/3)*sin(2*theta)*sin(theta)+2*cos(2*theta)*cos(theta))"};
    // the Laplacian of r^(5/3) sin(2 theta) is -(11/9) r^(-1/3) sin(2 theta)
    sp.f = sg + "*(11/9)*" + num(eps) + "*r^(-1/3)*sin(2*theta)+" + num(b.x()) + "*(" + sp.ux + ")+" + num(b.y()) +
           "*(" + sp.uy + ")+(" + sp.u + ")";
    return sp;
  };
  auto frac = [&](Vec2 b) {
    Spec sp{"0", b, "1", "", "0", "-2*r^(2/3)", "-(4/3)*r^(-1/3)*cos(theta)", "-(4/3)*r^(-1/3)*sin(theta)"};
    // each of the two neighbours pushes eps u_f through the interface
    sp.f = num(b.x()) + "*(" + sp.ux + ")+" + num(b.y()) + "*(" + sp.uy + ")+" + num(1.0 + 2.0 * eps) + "*(" + sp.u +
           ")";
    return sp;
  };
  Spec p{"0", {0, 0}, "2", "0", "0", "0", "0", "0"};
  c.coefficients.comps = {make({2, 1}, bulk({1, 0}, 1)),  make({2, 2}, bulk({0, -1}, -1)),
                          make({2, 3}, bulk({-1, 0}, 1)), make({2, 4}, bulk({0, 1}, -1)),
                          make({1, 1}, frac({0, 1})),     make({1, 2}, frac({-1, 0})),
                          make({1, 3}, frac({0, 1})),     make({1, 4}, frac({1, 0})),
                          make({0, 1}, p)};
  fill_robin(c);
  c.expected_energy_oc = 0.66;
  c.expected_l2_oc = 1.16;
  return c;
}

Vec2 parse_vec(const std::string& key, const std::string& value) {
  CaseDefinition scratch;
  scratch.coefficients.comps.push_back(ComponentCoefficients{});
  scratch.coefficients.comps.back().id = {1, 1};
  apply_override(scratch, "beta_1_1", value);
  const auto& cc = scratch.coefficients.comps.back();
  if (!cc.bx.is_constant() || !cc.by.is_constant()) throw ConfigError(key + ": expected constant components");
  return {cc.bx(0, 0), cc.by(0, 0)};
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(key + ": expected a number, got '" + value + "'");
}

CaseDefinition illus1(const std::map<std::string, std::string>& p) {
  double eps1 = 0.0, eps2 = 0.0;
  Vec2 bf(0.0, 0.2);
  for (const auto& [k, v] : p) {
    if (k == "eps1") eps1 = parse_double(k, v);
    if (k == "eps2") eps2 = parse_double(k, v);
    if (k == "beta_1_1") bf = parse_vec(k, v);
  }
  CaseDefinition c;
  c.name = "illus1";
  c.geometry.bbox = {{0, 0}, {1, 1}};
  c.geometry.polygons = {rect(0, 0, 0.5, 1), rect(0.5, 0, 1, 1)};
  c.geometry.polylines = {{{0.5, 0}, {0.5, 1}}};
  Spec b{num(eps2), {1, 1}, "0", "0", "0", "", "", ""};
  Spec f{num(eps1), bf, "0", "0", "0", "", "", ""};
  c.coefficients.comps = {make({2, 1}, b), make({2, 2}, b), make({1, 1}, f)};
  // a pulse entering through the left side
  c.coefficients.comps[0].g.sides[BoundarySide::Left] = E("exp(-50*(y-0.3)^2)");
  c.ns = {10};
  c.shift = Vec2::Zero();
  return c;
}

CaseDefinition illus2(const std::map<std::string, std::string>& p) {
  double b = 0.1;
  for (const auto& [k, v] : p)
    if (k == "beta_1_1") b = parse_vec(k, v).norm();
  CaseDefinition c;
  c.name = "illus2";
  c.geometry.bbox = {{0, 0}, {2, 1}};
  const Vec2 P1(0.6, 0.5), P2(1.1, 0.75), P3(1.1, 0.3);
  // curved branches are polylines; every fracture starts at its upstream end
  c.geometry.polylines = {
      {{0, 0.5}, P1},
      {P1, {0.7, 0.62}, {0.85, 0.71}, P2},
      {P1, {0.7, 0.38}, {0.85, 0.31}, P3},
      {P2, {1.4, 0.8}, {1.7, 0.78}, {2, 0.8}},
      {P2, {1.3, 0.9}, {1.5, 1}},
      {P2, P3},
      {P3, {1.5, 0.22}, {2, 0.25}},
      {P3, {1.3, 0.12}, {1.5, 0}},
  };
  c.geometry.points = {P1, P2, P3};
  c.geometry.polygons = {
      {{0, 0}, {1.5, 0}, {1.3, 0.12}, P3, {0.85, 0.31}, {0.7, 0.38}, P1, {0, 0.5}},
      {{0, 0.5}, P1, {0.7, 0.62}, {0.85, 0.71}, P2, {1.3, 0.9}, {1.5, 1}, {0, 1}},
      {P1, {0.7, 0.38}, {0.85, 0.31}, P3, P2, {0.85, 0.71}, {0.7, 0.62}},
      {{1.5, 0}, {2, 0}, {2, 0.25}, {1.5, 0.22}, P3, {1.3, 0.12}},
      {P3, {1.5, 0.22}, {2, 0.25}, {2, 0.8}, {1.7, 0.78}, {1.4, 0.8}, P2},
      {P2, {1.4, 0.8}, {1.7, 0.78}, {2, 0.8}, {2, 1}, {1.5, 1}, {1.3, 0.9}},
  };
  Spec bulk{"0", {0, 1}, "0", "0", "1+sin(15*x)", "", "", ""};
  for (int i = 1; i <= 6; ++i) c.coefficients.comps.push_back(make({2, i}, bulk));
  const double speed[] = {b, b / 2, b / 2, b / 4, b / 4, b / 4, b / 6, b / 6};
  for (int i = 1; i <= 8; ++i) {
    auto comp = make({1, i}, Spec{"1e-3", {0, 0}, "0", "0", "1", "", "", ""});
    comp.beta_t = Expr::constant(speed[i - 1]);
    c.coefficients.comps.push_back(comp);
  }
  for (int i = 1; i <= 3; ++i) c.coefficients.comps.push_back(make({0, i}, Spec{}));
  c.ns = {20};
  c.shift = Vec2::Zero();
  return c;
}

}  // namespace

Expr robin_data(const Expr& u, const Expr& ux, const Expr& uy, double alpha_nn, const Vec2& beta, const Vec2& normal) {
  const double B = alpha_nn + std::max(0.0, -beta.dot(normal));
  if (B == 0.0 || alpha_nn == 0.0) return u;
  const double cx = alpha_nn * normal.x() / B, cy = alpha_nn * normal.y() / B;
  std::string s = u.str();
  if (cx != 0.0) s += "+" + num(cx) + "*" + ux.str();
  if (cy != 0.0) s += "+" + num(cy) + "*" + uy.str();
  return Expr::parse(s);
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"case1", "case2", "case3", "case4", "lowreg", "illus1", "illus2"};
  return names;
}

bool is_case_parameter(const std::string& name, const std::string& key) {
  if (name == "illus1") return key == "eps1" || key == "eps2" || key == "beta_1_1";
  if (name == "illus2") return key == "beta_1_1";
  return false;
}

CaseDefinition catalog(const std::string& name, const std::map<std::string, std::string>& parameters) {
  for (const auto& [k, v] : parameters)
    if (!is_case_parameter(name, k)) throw ConfigError("case " + name + " has no parameter '" + k + "'");
  if (name == "case1") return single_fracture("case1", 1e-5, 1e-5, 1.0, 2.0);
  if (name == "case2") return single_fracture("case2", 1e-5, 0.0, 1.0, 2.0);
  if (name == "case3") return case3();
  if (name == "case4") return single_fracture("case4", 1e-10, 1e-10, 0.0, 0.0);
  if (name == "lowreg") return lowreg();
  if (name == "illus1") return illus1(parameters);
  if (name == "illus2") return illus2(parameters);
  throw UnknownCase("unknown case '" + name + "'");
}

}  // namespace mdcutfem
