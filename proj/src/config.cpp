#include "mdcutfem/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mdcutfem/error.hpp"

namespace mdcutfem {

using json = nlohmann::json;

bool CaseDefinition::has_exact() const {
  return !coefficients.comps.empty() &&
         std::all_of(coefficients.comps.begin(), coefficients.comps.end(), [](const auto& c) { return c.u.has_value(); });
}

namespace {

const BoundarySide kSides[] = {BoundarySide::Left, BoundarySide::Right, BoundarySide::Bottom, BoundarySide::Top};

json point(const Vec2& p) { return json::array({p.x(), p.y()}); }

json points(const std::vector<Vec2>& v) {
  json a = json::array();
  for (const Vec2& p : v) a.push_back(point(p));
  return a;
}

json component_json(const ComponentCoefficients& c) {
  json j;
  j["id"] = c.id.str();
  if (c.id.dim == 2) {
    j["alpha"] = json::array({c.axx.str(), c.axy.str(), c.ayy.str()});
  } else if (c.id.dim == 1) {
    j["alpha"] = c.axx.str();
  }
  if (c.id.dim >= 1) {
    j["beta"] = json::array({c.bx.str(), c.by.str()});
    if (c.beta_t) j["beta_t"] = c.beta_t->str();
  }
  j["kappa"] = c.kappa.str();
  j["f"] = c.f.str();
  if (c.id.dim >= 1) {
    if (c.g.sides.empty()) {
      j["g"] = c.g.all.str();
    } else {
      json g;
      g["all"] = c.g.all.str();
      for (const auto& [s, e] : c.g.sides) g[side_name(s)] = e.str();
      j["g"] = g;
    }
  }
  if (c.u) j["u"] = c.u->str();
  if (c.ux && c.uy) j["grad_u"] = json::array({c.ux->str(), c.uy->str()});
  return j;
}

// ---- loading

struct Reader {
  std::string path;

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("config error at " + (path.empty() ? std::string("/") : path) + ": " + what);
  }

  Reader at(const std::string& key) const { return Reader{path + "/" + key}; }
  Reader at(std::size_t k) const { return Reader{path + "/" + std::to_string(k)}; }

  void keys(const json& j, std::initializer_list<const char*> allowed) const {
    if (!j.is_object()) fail("expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return it.key() == a; }))
        fail("unknown key '" + it.key() + "'");
    }
  }

  const json& need(const json& j, const char* key) const {
    if (!j.contains(key)) fail(std::string("missing key '") + key + "'");
    return j[key];
  }

  double number(const json& j) const {
    if (!j.is_number()) fail("expected a number");
    return j.get<double>();
  }

  int integer(const json& j) const {
    if (!j.is_number_integer()) fail("expected an integer");
    return j.get<int>();
  }

  Vec2 vec(const json& j) const {
    if (!j.is_array() || j.size() != 2) fail("expected [x, y]");
    return Vec2(at(0).number(j[0]), at(1).number(j[1]));
  }

  std::vector<Vec2> vecs(const json& j) const {
    if (!j.is_array()) fail("expected an array of points");
    std::vector<Vec2> v;
    for (std::size_t k = 0; k < j.size(); ++k) v.push_back(at(k).vec(j[k]));
    return v;
  }

  Expr expr(const json& j) const {
    if (j.is_number()) return Expr::constant(j.get<double>());
    if (!j.is_string()) fail("expected an expression string or a number");
    try {
      return Expr::parse(j.get<std::string>());
    } catch (const ParseError& e) {
      fail(std::string("bad expression '") + j.get<std::string>() + "': " + e.what());
    }
  }
};

ComponentId parse_id(const std::string& s) {
  int d = 0, i = 0;
  char comma = 0;
  std::istringstream is(s);
  if (!(is >> d >> comma >> i) || comma != ',') throw ConfigError("bad component id '" + s + "'");
  return {d, i};
}

ComponentCoefficients read_component(const Reader& r, const json& j, ComponentId id) {
  ComponentCoefficients c;
  c.id = id;
  if (j.contains("id") && (!j["id"].is_string() || parse_id(j["id"].get<std::string>()) != id))
    r.at("id").fail("expected \"" + id.str() + "\" (components are numbered by position)");
  if (id.dim == 2) {
    const json& a = r.need(j, "alpha");
    if (a.is_array()) {
      if (a.size() != 3) r.at("alpha").fail("expected [axx, axy, ayy] or a scalar");
      c.axx = r.at("alpha").at(0).expr(a[0]);
      c.axy = r.at("alpha").at(1).expr(a[1]);
      c.ayy = r.at("alpha").at(2).expr(a[2]);
    } else {
      c.axx = c.ayy = r.at("alpha").expr(a);
    }
  } else if (id.dim == 1) {
    c.axx = r.at("alpha").expr(r.need(j, "alpha"));
  }
  if (id.dim >= 1) {
    if (j.contains("beta")) {
      const json& b = j["beta"];
      if (!b.is_array() || b.size() != 2) r.at("beta").fail("expected [bx, by]");
      c.bx = r.at("beta").at(0).expr(b[0]);
      c.by = r.at("beta").at(1).expr(b[1]);
    } else if (id.dim == 2 || !j.contains("beta_t")) {
      r.fail("missing key 'beta'");
    }
    if (j.contains("beta_t")) {
      if (id.dim != 1) r.at("beta_t").fail("only fractures take a tangential speed");
      c.beta_t = r.at("beta_t").expr(j["beta_t"]);
    }
  }
  c.kappa = r.at("kappa").expr(r.need(j, "kappa"));
  c.f = j.contains("f") ? r.at("f").expr(j["f"]) : Expr();
  if (j.contains("g")) {
    const json& g = j["g"];
    const Reader rg = r.at("g");
    if (g.is_object()) {
      rg.keys(g, {"all", "left", "right", "bottom", "top"});
      if (g.contains("all")) c.g.all = rg.at("all").expr(g["all"]);
      for (BoundarySide s : kSides)
        if (g.contains(side_name(s))) c.g.sides[s] = rg.at(side_name(s)).expr(g[side_name(s)]);
    } else {
      c.g.all = rg.expr(g);
    }
  }
  if (j.contains("u")) c.u = r.at("u").expr(j["u"]);
  if (j.contains("grad_u")) {
    const json& g = j["grad_u"];
    if (!g.is_array() || g.size() != 2) r.at("grad_u").fail("expected [ux, uy]");
    if (!c.u) r.at("grad_u").fail("grad_u given without u");
    c.ux = r.at("grad_u").at(0).expr(g[0]);
    c.uy = r.at("grad_u").at(1).expr(g[1]);
  }
  return c;
}

std::size_t line_of(std::string_view text, std::size_t byte, std::size_t& column) {
  std::size_t line = 1, start = 0;
  for (std::size_t k = 0; k < std::min(byte, text.size()); ++k) {
    if (text[k] == '\n') {
      ++line;
      start = k + 1;
    }
  }
  column = byte >= start ? byte - start : 0;
  return line;
}

}  // namespace

std::string dump_json(const CaseDefinition& c) {
  json j;
  j["name"] = c.name;
  j["domain"]["bbox"] = json::array({point(c.geometry.bbox.lo), point(c.geometry.bbox.hi)});
  auto coeff = [&](ComponentId id) -> const ComponentCoefficients& { return c.coefficients.at(id); };
  j["bulks"] = json::array();
  for (std::size_t k = 0; k < c.geometry.polygons.size(); ++k) {
    json b = component_json(coeff({2, int(k + 1)}));
    b["polygon"] = points(c.geometry.polygons[k]);
    j["bulks"].push_back(b);
  }
  j["fractures"] = json::array();
  for (std::size_t k = 0; k < c.geometry.polylines.size(); ++k) {
    json f = component_json(coeff({1, int(k + 1)}));
    f["polyline"] = points(c.geometry.polylines[k]);
    j["fractures"].push_back(f);
  }
  j["points"] = json::array();
  for (std::size_t k = 0; k < c.geometry.points.size(); ++k) {
    json p = component_json(coeff({0, int(k + 1)}));
    p["point"] = point(c.geometry.points[k]);
    j["points"].push_back(p);
  }
  j["stab"] = {{"c_tau", c.params.c_tau}, {"tau2", c.params.tau2}};
  j["mesh"] = {{"n", c.ns}, {"shift", point(c.shift)}};
  if (c.expected_energy_oc || c.expected_l2_oc) {
    json e = json::object();
    if (c.expected_energy_oc) e["energy_oc"] = *c.expected_energy_oc;
    if (c.expected_l2_oc) e["l2_oc"] = *c.expected_l2_oc;
    j["expected"] = e;
  }
  return j.dump(2) + "\n";
}

CaseDefinition load_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t col = 0;
    const std::size_t line = line_of(text, e.byte ? e.byte - 1 : 0, col);
    throw ConfigError("config syntax error at line " + std::to_string(line) + ", column " + std::to_string(col + 1) +
                      ": " + e.what());
  }
  const Reader root{""};
  root.keys(j, {"name", "domain", "bulks", "fractures", "points", "stab", "mesh", "expected"});
  CaseDefinition c;
  if (j.contains("name")) {
    if (!j["name"].is_string()) root.at("name").fail("expected a string");
    c.name = j["name"].get<std::string>();
  }
  const json& dom = root.need(j, "domain");
  root.at("domain").keys(dom, {"bbox"});
  const json& bb = root.at("domain").need(dom, "bbox");
  const Reader rb = root.at("domain").at("bbox");
  if (!bb.is_array() || bb.size() != 2) rb.fail("expected [[x0, y0], [x1, y1]]");
  c.geometry.bbox.lo = rb.at(0).vec(bb[0]);
  c.geometry.bbox.hi = rb.at(1).vec(bb[1]);
  if (!(c.geometry.bbox.lo.array() < c.geometry.bbox.hi.array()).all()) rb.fail("empty box");

  auto list = [&](const char* key) -> json {
    if (!j.contains(key)) return json::array();
    if (!j[key].is_array()) root.at(key).fail("expected an array");
    return j[key];
  };
  const json bulks = list("bulks");
  for (std::size_t k = 0; k < bulks.size(); ++k) {
    const Reader r = root.at("bulks").at(k);
    r.keys(bulks[k], {"id", "polygon", "alpha", "beta", "kappa", "f", "g", "u", "grad_u"});
    c.geometry.polygons.push_back(r.at("polygon").vecs(r.need(bulks[k], "polygon")));
    c.coefficients.comps.push_back(read_component(r, bulks[k], {2, int(k + 1)}));
  }
  const json fr = list("fractures");
  for (std::size_t k = 0; k < fr.size(); ++k) {
    const Reader r = root.at("fractures").at(k);
    r.keys(fr[k], {"id", "polyline", "alpha", "beta", "beta_t", "kappa", "f", "g", "u", "grad_u"});
    c.geometry.polylines.push_back(r.at("polyline").vecs(r.need(fr[k], "polyline")));
    c.coefficients.comps.push_back(read_component(r, fr[k], {1, int(k + 1)}));
  }
  const json pts = list("points");
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Reader r = root.at("points").at(k);
    r.keys(pts[k], {"id", "point", "kappa", "f", "u", "grad_u"});
    c.geometry.points.push_back(r.at("point").vec(r.need(pts[k], "point")));
    c.coefficients.comps.push_back(read_component(r, pts[k], {0, int(k + 1)}));
  }
  if (c.geometry.polygons.empty()) root.at("bulks").fail("at least one bulk is required");

  if (j.contains("stab")) {
    const Reader r = root.at("stab");
    r.keys(j["stab"], {"c_tau", "tau2"});
    if (j["stab"].contains("c_tau")) c.params.c_tau = r.at("c_tau").number(j["stab"]["c_tau"]);
    if (j["stab"].contains("tau2")) c.params.tau2 = r.at("tau2").number(j["stab"]["tau2"]);
    if (!(c.params.c_tau > 0.0)) r.at("c_tau").fail("must be positive");
    if (!(c.params.tau2 >= 0.0)) r.at("tau2").fail("must be nonnegative");
  }
  if (j.contains("mesh")) {
    const Reader r = root.at("mesh");
    const json& m = j["mesh"];
    r.keys(m, {"n", "shift"});
    if (m.contains("n")) {
      c.ns.clear();
      if (m["n"].is_array()) {
        for (std::size_t k = 0; k < m["n"].size(); ++k) c.ns.push_back(r.at("n").at(k).integer(m["n"][k]));
      } else {
        c.ns.push_back(r.at("n").integer(m["n"]));
      }
      if (c.ns.empty() || std::any_of(c.ns.begin(), c.ns.end(), [](int n) { return n < 1; }))
        r.at("n").fail("expected positive mesh counts");
    }
    if (m.contains("shift")) c.shift = r.at("shift").vec(m["shift"]);
  }
  if (j.contains("expected")) {
    const Reader r = root.at("expected");
    r.keys(j["expected"], {"energy_oc", "l2_oc"});
    if (j["expected"].contains("energy_oc")) c.expected_energy_oc = r.at("energy_oc").number(j["expected"]["energy_oc"]);
    if (j["expected"].contains("l2_oc")) c.expected_l2_oc = r.at("l2_oc").number(j["expected"]["l2_oc"]);
  }
  return c;
}

CaseDefinition load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_json(ss.str());
}

std::pair<std::string, std::string> split_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("expected key=value, got '" + text + "'");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

namespace {

std::vector<std::string> bracket_list(const std::string& key, const std::string& value) {
  std::string v = value;
  v.erase(std::remove_if(v.begin(), v.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); }),
          v.end());
  if (v.size() < 2 || v.front() != '[' || v.back() != ']') throw ConfigError(key + ": expected [a,b,...]");
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (std::size_t k = 1; k + 1 < v.size(); ++k) {
    const char ch = v[k];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double to_number(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(key + ": expected a number, got '" + s + "'");
}

Expr to_expr(const std::string& key, const std::string& s) {
  try {
    return Expr::parse(s);
  } catch (const ParseError& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

}  // namespace

void apply_override(CaseDefinition& c, const std::string& key, const std::string& value) {
  if (key == "ctau" || key == "c_tau") {
    c.params.c_tau = to_number(key, value);
    if (!(c.params.c_tau > 0.0)) throw ConfigError("ctau must be positive");
    return;
  }
  if (key == "tau2") {
    c.params.tau2 = to_number(key, value);
    if (!(c.params.tau2 >= 0.0)) throw ConfigError("tau2 must be nonnegative");
    return;
  }
  if (key == "shift") {
    const auto v = bracket_list(key, value);
    if (v.size() != 2) throw ConfigError("shift: expected [dx,dy]");
    c.shift = Vec2(to_number(key, v[0]), to_number(key, v[1]));
    return;
  }
  if (key == "n") {
    c.ns.clear();
    for (const auto& s : bracket_list(key, value)) c.ns.push_back(static_cast<int>(to_number(key, s)));
    return;
  }
  // <field>_<d>_<i>
  const auto u2 = key.rfind('_');
  const auto u1 = u2 == std::string::npos || u2 == 0 ? std::string::npos : key.rfind('_', u2 - 1);
  if (u1 == std::string::npos) throw ConfigError("unknown override key '" + key + "'");
  const std::string field = key.substr(0, u1);
  ComponentId id;
  try {
    id = {std::stoi(key.substr(u1 + 1, u2 - u1 - 1)), std::stoi(key.substr(u2 + 1))};
  } catch (const std::exception&) {
    throw ConfigError("unknown override key '" + key + "'");
  }
  ComponentCoefficients* comp = nullptr;
  for (auto& cc : c.coefficients.comps)
    if (cc.id == id) comp = &cc;
  if (!comp) throw ConfigError(key + ": no component " + id.str());

  if (field == "alpha") {
    comp->axx = comp->ayy = to_expr(key, value);
    comp->axy = Expr();
  } else if (field == "beta") {
    const auto v = bracket_list(key, value);
    if (v.size() != 2) throw ConfigError(key + ": expected [bx,by]");
    comp->bx = to_expr(key, v[0]);
    comp->by = to_expr(key, v[1]);
    comp->beta_t.reset();
  } else if (field == "beta_t") {
    if (id.dim != 1) throw ConfigError(key + ": only fractures take a tangential speed");
    comp->beta_t = to_expr(key, value);
  } else if (field == "kappa") {
    comp->kappa = to_expr(key, value);
  } else if (field == "f") {
    comp->f = to_expr(key, value);
  } else if (field == "g") {
    comp->g.all = to_expr(key, value);
    comp->g.sides.clear();
  } else if (field == "u") {
    comp->u = to_expr(key, value);
    comp->ux.reset();
    comp->uy.reset();
  } else {
    throw ConfigError("unknown override field '" + field + "'");
  }
}

}  // namespace mdcutfem
