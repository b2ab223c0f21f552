// SPDX-License-Identifier: Apache-2.0
//
// Two-sided enclosures of M(α, β) = (Σ_{l≥0} |Δ_l(α,0,β)^{-1}|²)^{1/2} on the
// fixed spaces of H^φ, the β-minimizer on a vertical segment, level-curve
// and disk domains 𝒟, and the nonlinearity threshold 𝒩.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hopfcert/spectral.hpp"

namespace hopfcert::estimator {

using spectral::DomainD;
using spectral::Point;
using spectral::RestrictedFamily;

enum class NormMode { spectral, frobenius };

std::string to_string(NormMode mode);
NormMode parse_norm_mode(const std::string& text);

struct MEstimate {
  double lower = 0.0;
  double upper = 0.0;
  int truncation_l = 0;
  NormMode mode = NormMode::spectral;
  double mid() const { return 0.5 * (lower + upper); }
};

// spectral: 1/σ_min(m); frobenius: ‖m^{-1}‖_F. Throws ResonanceError(l, α, β)
// when σ_min ≤ 1e-14·σ_max.
double term_norm(const MatrixXc& m, NormMode mode, int l = 0, double alpha = 0.0,
                 double beta = 0.0);

// Partial sum Σ_{l≤L} |Δ_l^{-1}|² and rigorous bounds on the remainder.
// Per residue class r (period p, first index l₁ > L), with a = max ‖A_r‖₂ and
// c = d_r (frobenius) or 1 (spectral):
//   tail ≤ c/(l₁β − a)² + c/(pβ(l₁β − a)),   tail ≥ c/(pβ(l₁β + a)).
struct MSeries {
  double partial = 0.0;
  double tail_lower = 0.0;
  double tail_upper = 0.0;
  int truncation_l = 0;
};
MSeries m_series(const RestrictedFamily& rf, double alpha, double beta, NormMode mode, int l_max);

// Adaptive truncation until (upper − lower)/lower ≤ rel_tol.
MEstimate compute_m(const RestrictedFamily& rf, double alpha, double beta, NormMode mode,
                    double rel_tol = 1e-6);

// 1 + (π/β · csc(π/β))², the Van der Pol closed form; it equals M(0, β)² in
// frobenius mode. Throws DomainError at the poles β = 1/k.
double m_closed_form_vdp(double beta);

struct SegmentMinimum {
  double beta = 0.0;
  MEstimate m;
  bool interior = true;  // false when the minimum sits at an interval endpoint
};

// Global minimizer of β ↦ M(α₀, β): coarse scan, golden section on the
// bracketing cell, then bisection on the sign of a central-difference
// derivative of the fixed-truncation series.
SegmentMinimum minimize_m_on_segment(const RestrictedFamily& rf, double alpha0, double beta_lo,
                                     double beta_hi, NormMode mode);

struct MGrid {
  std::vector<double> alphas;
  std::vector<double> betas;
  MatrixXd lower;  // (alpha index, beta index); +inf at resonant nodes
  MatrixXd upper;
};

MGrid scan_m_grid(const RestrictedFamily& rf, double alpha_lo, double alpha_hi, double beta_lo,
                  double beta_hi, int n_alpha, int n_beta, NormMode mode, double rel_tol = 1e-4);

struct DomainStrategy {
  std::string kind = "level-curve";  // or "disk"
  double radius = 0.05;               // disk radius
  int grid = 201;                     // level-curve grid nodes per side
  double window_factor = 3.0;         // half-width = factor·|β₀ − β*|
  double level_offset = 1e-3;         // level = M(α₀, β*)·(1 + offset)
  std::optional<double> level;        // explicit level overrides the offset rule
  std::optional<double> segment_lo;   // minimizing segment, default 0.1·β₀
  std::optional<double> segment_hi;   // default β₀·(1 − 1e-3)
  int disk_segments = 256;
};

struct DomainBuild {
  DomainD domain;
  std::optional<SegmentMinimum> minimum;  // level-curve only
  std::optional<MGrid> grid;              // level-curve only
};

// Throws DomainError when no closed level component encloses the Hopf point
// after three window enlargements, or when an explicit level is below the
// grid minimum of M.
DomainBuild build_domain_d(const RestrictedFamily& rf, Point hopf, NormMode mode,
                           const DomainStrategy& strategy);

struct Threshold {
  double n = 0.0;      // inf over ∂𝒟 of 1/(√(2π)·M.upper)
  double m_max = 0.0;  // the maximizing M.upper
  Point where = Point::Zero();
};

// Throws DomainError when every restricted mode is empty (M ≡ 0).
Threshold threshold_n(const RestrictedFamily& rf, const DomainD& d, NormMode mode,
                      double rel_tol = 1e-6);

}  // namespace hopfcert::estimator
