#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdcutfem/geometry.hpp"
#include "mdcutfem/problem.hpp"

namespace mdcutfem {

/// Everything needed to run one experiment: geometry, data, stabilization and meshes.
struct CaseDefinition {
  std::string name;
  GeometrySpec geometry;
  CoefficientSet coefficients;
  StabParams params;
  std::vector<int> ns{5, 10, 20, 40, 80};
  Vec2 shift{0.0031, 0.0017};
  std::optional<double> expected_energy_oc;
  std::optional<double> expected_l2_oc;

  bool has_exact() const;
};

/// JSON document for a case. Expressions are written in their parenthesized form.
std::string dump_json(const CaseDefinition& c);
/// Parses and validates a JSON case. Syntax errors report line and column; schema errors
/// report the JSON path. Expression errors are ConfigErrors carrying the parser position.
CaseDefinition load_json(std::string_view text);
CaseDefinition load_file(const std::string& path);

/// key=value override. Keys: ctau, tau2, shift=[dx,dy], n=[..], and per component
/// <field>_<d>_<i> with field one of alpha, beta, beta_t, kappa, f, g, u.
/// beta takes [bx,by]; alpha sets a scalar multiple of the identity.
void apply_override(CaseDefinition& c, const std::string& key, const std::string& value);

/// Splits "key=value"; throws ConfigError without '='.
std::pair<std::string, std::string> split_assignment(const std::string& text);

}  // namespace mdcutfem
