// SPDX-License-Identifier: Apache-2.0
//
// Built-in families: the Van der Pol oscillator and eight LCR oscillators
// coupled along the edges of a cube.
#pragma once

#include <functional>

#include "hopfcert/spectral.hpp"

namespace hopfcert::models {

// ẋ₁ = x₂, ẋ₂ = −x₁ + αx₂ − x₁²x₂.
spectral::LinearFamily vdp_family(double alpha_lo, double alpha_hi);

struct CubeParameters {
  double R = 1.0;
  double L = 2.0;
  double C = 1.0;
  double rho = 0.3;
  double sigma = 1.0;  // cubic coefficient of −(σ/C)u³
  double q = 0.0;      // quadratic coefficient of (q/C)u²; breaks the Z2 symmetry
};

// K = adjacency of the cube graph − 3I (vertices 1..8, faces 1234 and 5678,
// edges i–i+4).
MatrixXd cube_coupling();
// 2×2 oscillator block [[−R/L, 1/L], [−1/C, (α − kρ)/C]].
Eigen::Matrix2d cube_block(const CubeParameters& p, double alpha, int k);
// A(α) = I₈ ⊗ osc(α) + ρ K ⊗ diag(0, 1/(2C)), interleaved (j_m, u_m).
spectral::LinearFamily cube_family_alpha(const CubeParameters& p, double alpha_lo, double alpha_hi);
// Same matrix with α fixed and ρ as the parameter.
spectral::LinearFamily cube_family_rho(const CubeParameters& p, double alpha, double rho_lo,
                                       double rho_hi);

double cube_hopf_alpha(const CubeParameters& p, int j);    // RC/L + jρ
double cube_steady_alpha(const CubeParameters& p, int k);  // 1/R + kρ
double cube_c(const CubeParameters& p);                    // (1/(ρR))(1 − R²C/L)
double cube_omega(const CubeParameters& p);                // √((1 − R²C/L)/(LC))
// ρ giving a requested 𝒞.
double cube_rho_for(const CubeParameters& p, double c);

// Full vector fields (parameter, x) ↦ ẋ for the oracle.
using VectorField = std::function<VectorXd(double, const VectorXd&)>;
VectorField vdp_field();
// A(parameter)·x plus −(σ/C)u_m³ + (q/C)u_m² on every u coordinate; works for
// both the α- and the ρ-parameterized cube family.
VectorField cube_field(const CubeParameters& p, const spectral::LinearFamily& fam);

}  // namespace hopfcert::models
