#pragma once

#include <map>
#include <string>
#include <vector>

#include "mdcutfem/config.hpp"

namespace mdcutfem {

/// case1, case2, case3, case4, lowreg, illus1, illus2.
const std::vector<std::string>& catalog_names();

/// Case-specific parameters accepted by catalog(): illus1 takes eps1 (fracture diffusion),
/// eps2 (bulk diffusion) and beta_1_1=[bx,by]; illus2 takes beta_1_1=[0,b] whose magnitude
/// drives the whole fracture network. Other cases take none.
bool is_case_parameter(const std::string& name, const std::string& key);

/// Throws UnknownCase, or ConfigError for a bad parameter.
CaseDefinition catalog(const std::string& name, const std::map<std::string, std::string>& parameters = {});

/// Robin data g = u + (alpha_nn / B) nu.grad u with B = alpha_nn + |beta.nu|_-, so that the
/// exact solution satisfies nu.alpha grad u + B (u - g) = 0. Returns u when B = 0.
Expr robin_data(const Expr& u, const Expr& ux, const Expr& uy, double alpha_nn, const Vec2& beta, const Vec2& normal);

}  // namespace mdcutfem
