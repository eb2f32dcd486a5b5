#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "mdcutfem/analysis.hpp"
#include "mdcutfem/cases.hpp"
#include "mdcutfem/error.hpp"
#include "mdcutfem/vtk.hpp"

using namespace mdcutfem;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string case_name;
  std::string config;
  int n = 0;
  std::vector<int> n_list;
  std::optional<double> ctau, tau2;
  std::vector<double> shift;
  std::string out_dir = ".";
  std::string csv;
  std::string vtk;
  std::vector<std::string> sets;
};

void add_common(CLI::App* app, Options& o) {
  auto* src = app->add_option("--case", o.case_name, "catalog case")->group("Input");
  app->add_option("--config", o.config, "JSON case file")->group("Input")->excludes(src);
  app->add_option("--n", o.n, "single mesh resolution N (h = sqrt(2)/N)")->check(CLI::PositiveNumber);
  app->add_option("--n-list", o.n_list, "comma separated mesh resolutions")->delimiter(',');
  app->add_option("--ctau", o.ctau, "least-squares constant c_tau");
  app->add_option("--tau2", o.tau2, "full-gradient stabilization tau_2");
  app->add_option("--shift", o.shift, "mesh shift dx,dy")->delimiter(',')->expected(2);
  app->add_option("--out-dir", o.out_dir, "output directory");
  app->add_option("--set", o.sets, "key=value override (repeatable)");
}

CaseDefinition load(const Options& o) {
  std::vector<std::pair<std::string, std::string>> overrides;
  for (const auto& s : o.sets) overrides.push_back(split_assignment(s));
  CaseDefinition c;
  if (!o.config.empty()) {
    c = load_file(o.config);
    if (c.name.empty()) c.name = fs::path(o.config).stem().string();
  } else {
    const std::string name = o.case_name.empty() ? "case1" : o.case_name;
    std::map<std::string, std::string> params;
    for (const auto& [k, v] : overrides)
      if (is_case_parameter(name, k)) params[k] = v;
    c = catalog(name, params);
  }
  for (const auto& [k, v] : overrides)
    if (o.config.empty() ? !is_case_parameter(c.name, k) : true) apply_override(c, k, v);
  if (o.ctau) c.params.c_tau = *o.ctau;
  if (o.tau2) c.params.tau2 = *o.tau2;
  if (!(c.params.c_tau > 0.0) || !(c.params.tau2 >= 0.0)) throw ConfigError("need c_tau > 0 and tau2 >= 0");
  if (o.shift.size() == 2) c.shift = Vec2(o.shift[0], o.shift[1]);
  if (!o.n_list.empty()) c.ns = o.n_list;
  if (o.n > 0) c.ns = {o.n};
  return c;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

int cmd_run(const Options& o) {
  const CaseDefinition c = load(o);
  const MixedDomain domain = build_domain(c.geometry);
  const Problem problem(domain, c.coefficients);
  const int n = o.n > 0 ? o.n : c.ns.front();
  RunResult r = run_single(problem, n, c.shift, c.params);
  if (!r.coercivity.satisfied())
    std::cerr << "warning: 2 kappa + Div beta has infimum " << r.coercivity.min()
              << " (not positive); solving anyway\n";

  fs::create_directories(o.out_dir);
  const std::string stem = c.name + "_n" + std::to_string(n);
  const fs::path vtk = o.vtk.empty() ? fs::path(o.out_dir) / (stem + ".vtk") : fs::path(o.vtk);
  {
    std::ofstream out(vtk);
    if (!out) throw ConfigError("cannot write " + vtk.string());
    write_vtk(out, problem, *r.disc, r.solution.x);
  }
  std::ostringstream s;
  s << "case " << c.name << "\n"
    << "N " << n << "  h " << r.disc->h << "\n"
    << "dofs " << r.disc->dofs.total() << "\n"
    << "c_tau " << c.params.c_tau << "  tau1 " << r.tau1 << "  tau2 " << c.params.tau2 << "\n"
    << "eps " << r.scales.eps << "  beta_inf " << r.scales.beta_inf << "\n"
    << "relative residual " << sci(r.solution.report.relative_residual) << "\n"
    << "solve seconds " << r.solution.report.seconds << "\n";
  if (problem.has_exact()) {
    const EnergyParts e = energy_parts(problem, *r.disc, {r.scales.eps, r.tau1, c.params}, r.solution.x, true);
    s << "energy error " << sci(std::sqrt(e.total())) << "\n"
      << "alpha,beta error " << sci(std::sqrt(e.alpha_beta())) << "\n"
      << "L2 error " << sci(std::sqrt(e.l2)) << "\n";
  }
  s << "vtk " << vtk.string() << "\n";
  std::ofstream(fs::path(o.out_dir) / (stem + "_summary.txt")) << s.str();
  std::cout << s.str();
  return 0;
}

int cmd_converge(const Options& o) {
  const CaseDefinition c = load(o);
  const MixedDomain domain = build_domain(c.geometry);
  const Problem problem(domain, c.coefficients);
  ErrorReport rep = convergence_sweep(problem, c.ns, c.shift, c.params, c.name);
  rep.analysis_energy_oc = c.expected_energy_oc;
  rep.analysis_l2_oc = c.expected_l2_oc;
  std::cout << rep.table();
  fs::path csv = o.csv.empty() ? fs::path(o.out_dir) / (c.name + ".csv") : fs::path(o.csv);
  if (csv.has_parent_path()) fs::create_directories(csv.parent_path());
  std::ofstream out(csv);
  if (!out) throw ConfigError("cannot write " + csv.string());
  out << rep.csv();
  std::cout << "csv " << csv.string() << "\n";

  int status = 0;
  auto check = [&](const char* what, std::optional<double> seen, std::optional<double> expected) {
    if (!seen || !expected) return;
    if (*seen < *expected - 0.25) {
      std::cout << what << " order " << *seen << " misses the expected " << *expected << " by more than 0.25\n";
      status = 2;
    }
  };
  check("energy", rep.tail_energy_oc(), c.expected_energy_oc);
  check("L2", rep.tail_l2_oc(), c.expected_l2_oc);
  return status;
}

int cmd_verify(const Options& o) {
  int status = 0;
  std::vector<std::string> names;
  if (!o.case_name.empty() || !o.config.empty()) {
    names.push_back("");
  } else {
    names = {"case1", "case2", "case3", "case4", "lowreg"};
  }
  for (const auto& nm : names) {
    Options oo = o;
    if (!nm.empty()) oo.case_name = nm;
    const CaseDefinition c = load(oo);
    const MixedDomain domain = build_domain(c.geometry);
    const Problem problem(domain, c.coefficients);
    const ManufacturedReport rep = verify_manufactured(problem);
    std::cout << "manufactured residuals, " << c.name << ": " << (rep.passed() ? "ok" : "FAILED") << "\n"
              << rep.str();
    if (!rep.passed()) status = 2;
  }
  {
    const CaseDefinition c = catalog("case1");
    const MixedDomain domain = build_domain(c.geometry);
    const Problem problem(domain, c.coefficients);
    const auto disc = discretize(domain, 40, c.shift);
    const IdentityReport id = check_identities(problem, *disc, false);
    std::cout << "operator identities, case1 N=40: " << (id.passed() ? "ok" : "FAILED") << "\n" << id.str();
    if (!id.passed()) status = 2;
  }
  {
    // conditioning with and without the full-gradient term
    const CaseDefinition c = catalog("case1");
    const MixedDomain domain = build_domain(c.geometry);
    const Problem problem(domain, c.coefficients);
    for (double tau2 : {1e-3, 0.0}) {
      const auto disc = discretize(domain, 20, c.shift);
      StabParams p = c.params;
      p.tau2 = tau2;
      const AssembledSystem sys = assemble_all(problem, *disc, p);
      std::cout << "conditioning probe, case1 N=20, tau2=" << tau2 << ": ";
      try {
        std::cout << "cond_1 ~ " << sci(condition_estimate_1(sys.A)) << "\n";
      } catch (const SingularMatrix& e) {
        std::cout << "factorization failed (" << e.what() << ")\n";
      }
    }
  }
  return status;
}

int cmd_dump(const Options& o) {
  const CaseDefinition c = load(o);
  std::cout << dump_json(c);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stabilized cut finite elements for convection-diffusion on mixed-dimensional domains"};
  app.require_subcommand(1);
  Options o;
  auto* run = app.add_subcommand("run", "solve once and write VTK plus a summary");
  add_common(run, o);
  run->add_option("--vtk", o.vtk, "VTK output path");
  auto* conv = app.add_subcommand("converge", "convergence sweep with error table and CSV");
  add_common(conv, o);
  conv->add_option("--csv", o.csv, "CSV output path");
  auto* ver = app.add_subcommand("verify", "manufactured residuals, operator identities, conditioning");
  add_common(ver, o);
  auto* dump = app.add_subcommand("dump", "print a case as a JSON config");
  add_common(dump, o);
  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed()) return cmd_run(o);
    if (conv->parsed()) return cmd_converge(o);
    if (ver->parsed()) return cmd_verify(o);
    if (dump->parsed()) return cmd_dump(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
