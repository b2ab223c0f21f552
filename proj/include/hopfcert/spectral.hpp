// SPDX-License-Identifier: Apache-2.0
//
// Linear families A(α) = A0 + α·A1, their restrictions Δ_l and Λ_l to the
// fixed-point spaces of a twisted subgroup, root counts by the argument
// principle, and the degree data n_0, n_l.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hopfcert/contour.hpp"
#include "hopfcert/group.hpp"
#include "hopfcert/linalg.hpp"

namespace hopfcert::spectral {

using contour::ClosedPath;
using contour::Point;

struct LinearFamily {
  MatrixXd a0;
  MatrixXd a1;
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
  // Group elements A(α) must commute with; empty means the space's generators.
  std::vector<group::GroupElement> witnesses;

  int dim() const { return static_cast<int>(a0.rows()); }
  MatrixXd at(double alpha) const { return a0 + alpha * a1; }
};

// max over sampled α of ‖A(α)ρ(g) − ρ(g)A(α)‖ for the witness generators.
double equivariance_residual(const LinearFamily& fam, const group::RepresentationSpace& space);

struct ParameterPoint {
  double alpha = 0.0;
  double tau = 0.0;
  double beta = 0.0;
};

// 𝒫 = [α₋, α₊] × [0, τ*] × [β_min, β*]. β_min = 0 is the product box of the
// theorem; a positive β_min excludes roots sitting on the real axis.
struct RegionP {
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
  double tau_max = 0.0;
  double beta_min = 0.0;
  double beta_max = 0.0;
};

// τ* = β* = 1.5·(1 + max_α ‖A(α)‖₂) over a 64-point α grid plus ‖A1‖₂·Δα.
RegionP build_region(const LinearFamily& fam, double alpha_lo, double alpha_hi);

struct DomainD {
  ClosedPath boundary;   // counterclockwise in (α, β)
  std::string strategy;  // "level-curve" or "disk"
  Point hopf_point = Point::Zero();
  double level = 0.0;    // M level for level curves, radius for disks
  bool contains(const Point& p) const { return boundary.contains(p); }
};

// A family restricted to the fixed spaces of H^φ. Fixed spaces depend on l
// only through l mod period (the lcm of phase denominators); restrictions
// are cached per residue class. Residue 0 is the spatial fixed space V^H.
class RestrictedFamily {
 public:
  RestrictedFamily(const LinearFamily& fam, const group::RepresentationSpace& space,
                   const group::TwistedSubgroup& h);

  const LinearFamily& family() const { return fam_; }
  const std::string& symmetry() const { return symmetry_; }
  int period() const { return period_; }
  int residue(int l) const { return l % period_; }
  int dim(int l) const { return static_cast<int>(bases_[static_cast<std::size_t>(residue(l))].dim()); }
  int max_dim() const;
  // True when every mode l ≥ 1 has a zero-dimensional restriction.
  bool all_modes_empty() const;
  const group::FixedSpaceBasis& basis(int l) const {
    return bases_[static_cast<std::size_t>(residue(l))];
  }

  // Bᴴ A(α) B for the basis at mode l.
  MatrixXc restricted(int l, double alpha) const;
  // Δ_l = l(τ + iβ)I − Bᴴ A(α) B.
  MatrixXc delta(int l, const ParameterPoint& p) const;
  // Λ_l: det of Δ_l for l ≥ 1, det(Bᴴ A(α) B) for l = 0; empty determinant = 1.
  cplx lambda(int l, const ParameterPoint& p) const;
  // max over residue classes with d > 0 of ‖Bᴴ A(α) B‖₂.
  double restricted_norm(double alpha) const;

 private:
  LinearFamily fam_;
  std::string symmetry_;
  int period_ = 1;
  std::vector<group::FixedSpaceBasis> bases_;
  std::vector<MatrixXc> r0_, r1_;  // Bᴴ A0 B and Bᴴ A1 B per residue
};

// Bᴴ (l(τ+iβ)I − A(α)) B.
MatrixXc delta_l(const LinearFamily& fam, const group::FixedSpaceBasis& basis,
                 const ParameterPoint& p, int l);
cplx lambda_l(const RestrictedFamily& rf, const ParameterPoint& p, int l);

// Roots of Λ_1(α, ·, ·) in the open box (0, τ_max) × (β_lo, β_hi), counted by
// the winding of λ ↦ det(λI − A_r(α)) along the box boundary.
int count_roots_slice(const RestrictedFamily& rf, double alpha, double tau_max, double beta_lo,
                      double beta_hi, const contour::WindingOptions& opt = {});

// Eigenvalues with multiplicity; each eigenpair residual is checked < 1e-8.
std::vector<cplx> eig_oracle(const MatrixXc& m);

// Winding of (α, β) ↦ Λ_l(α, 0, β) along ∂𝒟. The normalizing factor
// (ilβ)^{-d} has zero winding on β > 0 and is omitted.
int n_l(const RestrictedFamily& rf, const DomainD& d, int l,
        const contour::WindingOptions& opt = {},
        std::vector<contour::WindingSample>* trace = nullptr);

// sign det(−A(α)|V^H); +1 on a zero-dimensional V^H. Throws DomainError when
// |det| < 1e-12.
int n_0(const RestrictedFamily& rf, double alpha);

// A point (α, β) where the mode-l restriction has the eigenvalue ilβ, i.e. a
// root of Λ_l(·, 0, ·).
struct AxisRoot {
  double alpha = 0.0;
  double beta = 0.0;
  bool persistent = false;  // eigenvalue stays on the axis over a grid interval
};

// Sweeps α over a grid, tracks the number of restricted eigenvalues with
// Re > 0 and Im/l in (β_lo, β_hi], and bisects every change to 1e-10 in α;
// changes caused by Im leaving the window are dropped. Eigenvalues with
// |Re| < re_tol·(1 + ‖A_r‖) on three consecutive grid points are reported as
// persistent roots.
std::vector<AxisRoot> imaginary_axis_roots(const RestrictedFamily& rf, int l, double alpha_lo,
                                           double alpha_hi, double beta_lo, double beta_hi,
                                           int grid = 400, double re_tol = 1e-9);

}  // namespace hopfcert::spectral
