// SPDX-License-Identifier: Apache-2.0
//
// JSON problem configurations: schema validation, defaults, the three
// built-in examples, and conversion to a certifier::ProblemSpec.
//
// Top-level keys (unknown keys are rejected):
//   model          {"preset": "vdp"} | {"preset": "cube", R, L, C, rho, sigma, q,
//                  "parameter": "alpha" | "rho", "alpha"} | {"dimension", "A0", "A1"}
//   group          {"preset": "trivial" | "Z2xO4" | "O4"} |
//                  {"points", "generators": [{"sign", "perm", "matrix"}]}
//   symmetry       catalog name or {"name", "elements": [[sign, "perm", "phase"]]}
//   envelope       {"kind": "power", coefficient, exponent} | {"kind": "polynomial",
//                  coefficients} | {"kind": "table", points} | {"kind": "explicit",
//                  pieces: [{alpha_lo, alpha_hi, N}], r, R} | {"kind": "derived"}
//   alpha_interval [lo, hi]
//   hopf_hint      [alpha, beta] (optional)
//   numeric        {norm_mode, m_rel_tol, axis_grid, equivariance_tol, domain}
//   scan           {alpha: [lo, hi], beta: [lo, hi], n_alpha, n_beta}
//   oracle         {alpha_start, amplitude_min, amplitude_max, alpha_min, alpha_max}
//   output         {certificate, m_grid, polygon, contour, trace}
#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hopfcert/certifier.hpp"
#include "hopfcert/models.hpp"

namespace hopfcert::config {

using Json = nlohmann::ordered_json;

struct ModelInfo {
  std::string preset = "explicit";  // "vdp", "cube" or "explicit"
  models::CubeParameters cube;
  std::string parameter = "alpha";  // "rho" makes ρ the parameter at fixed α
  double fixed_alpha = 0.0;
};

struct ScanSettings {
  std::array<double, 2> alpha{-0.6, 0.6};
  std::array<double, 2> beta{0.3, 1.5};
  int n_alpha = 121;
  int n_beta = 121;
};

struct OracleSettings {
  double alpha_start = 0.01;
  std::optional<double> amplitude_min;
  std::optional<double> amplitude_max;
  double alpha_min = -1.0;
  double alpha_max = 1.0;
};

struct Outputs {
  std::filesystem::path certificate;
  std::filesystem::path m_grid;
  std::filesystem::path polygon;
  std::filesystem::path contour;
  std::filesystem::path trace;
};

struct Config {
  certifier::ProblemSpec spec;
  ModelInfo model;
  std::optional<models::VectorField> field;  // full nonlinear field for presets
  ScanSettings scan;
  OracleSettings oracle;
  Outputs output;
  Json normalized;  // the document with every default spelled out
};

// Throws ConfigError with a single-line diagnostic on schema violations.
// Relative output paths are resolved against base_dir.
Config parse(const Json& doc, const std::filesystem::path& base_dir = {});
Config load(const std::filesystem::path& file);

// "vdp", "cube-hopf", "cube-coupling". Emitted in normalized form.
Json example(std::string_view name);
std::vector<std::string> example_names();

}  // namespace hopfcert::config
