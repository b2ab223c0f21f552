// SPDX-License-Identifier: Apache-2.0
//
// Problem builders shared by the unit tests and the acceptance runner. Specs
// go through the config parser so the schema path is exercised as well.
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "hopfcert/config.hpp"
#include "hopfcert/models.hpp"

namespace hopfcert::testing {

inline config::Config vdp_config(const std::string& mode = "frobenius") {
  config::Json doc = config::example("vdp");
  doc["numeric"]["norm_mode"] = mode;
  return config::parse(doc);
}

// Z2×O4 (with_sign) or O4 cube model with ρ chosen for the requested 𝒞, the
// α window centered on α_j^h and a disk domain around (α_j^h, ω).
inline config::Config cube_config(double c_value, int j, const std::string& symmetry,
                                  bool with_sign = true, double q = 0.0) {
  models::CubeParameters p;
  p.q = q;
  p.rho = models::cube_rho_for(p, c_value);
  const double a = models::cube_hopf_alpha(p, j);
  const double w = models::cube_omega(p);
  const double half = p.rho / 3.0;
  config::Json doc = {
      {"model",
       {{"preset", "cube"}, {"R", p.R}, {"L", p.L}, {"C", p.C}, {"rho", p.rho}, {"q", p.q}}},
      {"group", {{"preset", with_sign ? "Z2xO4" : "O4"}}},
      {"symmetry", symmetry},
      {"envelope", {{"kind", "derived"}}},
      {"alpha_interval", {a - half, a + half}},
      {"hopf_hint", {a, w}},
      {"numeric",
       {{"domain", {{"strategy", "disk"}, {"radius", std::min(0.075, p.rho / 4.0)}}}}}};
  return config::parse(doc);
}

// ρ as the parameter at α = RC/L on the O4 model.
inline config::Config coupling_config(const std::string& symmetry, double q = 0.2) {
  config::Json doc = config::example("cube-coupling");
  doc["model"]["q"] = q;
  doc["group"] = {{"preset", "O4"}};
  doc["symmetry"] = symmetry;
  return config::parse(doc);
}

// Hopf point index j and the branch symmetries expected there (Z2×O4 model).
inline std::vector<std::pair<int, std::vector<std::string>>> branch_symmetries() {
  return {{0, {"+S4"}},
          {1, {"-D4z", "-D3z", "-D2d", "-Z4c", "-Z3t"}},
          {2, {"+D4d", "+D3", "+D2d", "+Z4c", "+Z3t"}},
          {3, {"-S4-"}}};
}

}  // namespace hopfcert::testing
