// SPDX-License-Identifier: Apache-2.0
//
// Empirical cross-check of certificates: Dormand–Prince integration with
// dense output, Newton shooting for periodic orbits inside a flow-invariant
// subspace, and pseudo-arclength continuation of the branch in α.
// Certificates never depend on this module.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hopfcert/group.hpp"
#include "hopfcert/linalg.hpp"

namespace hopfcert::oracle {

// Autonomous right-hand side ẋ = F(α, x).
using Rhs = std::function<VectorXd(double alpha, const VectorXd& x)>;

struct IntegrateOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_min = 1e-13;  // relative to the time span; smaller steps are underflow
  long max_steps = 5'000'000;
};

// Piecewise quintic dense output of one DOPRI5 run.
class Trajectory {
 public:
  double t0() const { return t0_; }
  double t1() const { return t1_; }
  const VectorXd& final_state() const { return final_; }
  double sup_norm() const { return sup_; }
  long steps() const { return static_cast<long>(steps_.size()); }
  VectorXd at(double t) const;

 private:
  friend Trajectory integrate(const std::function<VectorXd(const VectorXd&)>&, const VectorXd&,
                              double, const IntegrateOptions&);
  struct Step {
    double t, h;
    VectorXd r1, r2, r3, r4, r5;
  };
  double t0_ = 0.0, t1_ = 0.0, sup_ = 0.0;
  VectorXd final_;
  std::vector<Step> steps_;
};

// Integrates ẋ = f(x) over [0, T]. Throws NumericalFailure on step underflow
// (stiffness) or when max_steps is exceeded.
Trajectory integrate(const std::function<VectorXd(const VectorXd&)>& f, const VectorXd& x0,
                     double T, const IntegrateOptions& opt = {});

// ẏ = Qᵀ F(α, Q y) on the span of an orthonormal basis Q of a flow-invariant
// subspace. An empty basis means the identity.
struct ShootingSystem {
  Rhs rhs;
  int dim = 0;        // dimension of the full state
  MatrixXd basis;     // dim × k, orthonormal columns
  // Optional complex basis (full coordinates) of the mode-1 twisted fixed
  // space; the seed then looks for the critical eigenvalue only there.
  MatrixXc critical_basis;
  int reduced_dim() const { return basis.size() == 0 ? dim : static_cast<int>(basis.cols()); }
  VectorXd lift(const VectorXd& y) const { return basis.size() == 0 ? y : VectorXd(basis * y); }
  VectorXd reduce(const VectorXd& x) const {
    return basis.size() == 0 ? x : VectorXd(basis.transpose() * x);
  }
  VectorXd reduced_rhs(double alpha, const VectorXd& y) const { return reduce(rhs(alpha, lift(y))); }
};

struct OrbitSample {
  double alpha = 0.0;
  double period = 0.0;
  VectorXd initial_state;  // full state on the section
  double amplitude = 0.0;  // sup over one period of |x(t)|
  double residual = 0.0;   // |flow_T(x₀) − x₀|
  int section = 0;         // reduced coordinate of the phase condition
  double section_value = 0.0;
  std::vector<cplx> multipliers;
};

struct ShootingOptions {
  int section = -1;            // reduced coordinate of the section; −1 picks the fastest one
  double tol = 1e-11;          // Newton residual target
  int max_iter = 40;
  double fd_step = 1e-6;       // central differences for the monodromy
  double trivial_window = 1e-4;  // |μ − 1| below this counts as a trivial multiplier
  double min_amplitude = 1e-10;
  IntegrateOptions integration{1e-12, 1e-14};
};

// Newton shooting on (y, T); the phase condition holds the section
// coordinate at its value in the guess.
// Rejects constant solutions (amplitude < min_amplitude) and degenerate
// monodromy (not exactly one multiplier near 1). Throws NumericalFailure.
OrbitSample find_periodic_orbit(const ShootingSystem& sys, double alpha, const VectorXd& x0_guess,
                                double period_guess, const ShootingOptions& opt = {});

// Simulation seed: along the critical eigenplane of the linearization at 0,
// brackets a fixed point of the first-return map on the section through the
// origin and refines it by shooting. Returns nullopt when no small cycle is
// found, e.g. on the subcritical side.
std::optional<OrbitSample> seed_orbit(const ShootingSystem& sys, double alpha,
                                      ShootingOptions opt = {}, double max_amplitude = 10.0);

// sup over one period of |x(t)| from 4096 dense samples, refined by a
// quadratic fit around the largest sample.
double amplitude(const Trajectory& traj);
double amplitude(const ShootingSystem& sys, const OrbitSample& orbit);

// Dense trajectory over one period of a found orbit (full coordinates).
Trajectory orbit_trajectory(const ShootingSystem& sys, const OrbitSample& orbit,
                            const IntegrateOptions& opt = {1e-12, 1e-14});

// max_t |ρ(h) x(t − φ(h)p) − x(t)| over samples uniform in one period.
double symmetry_residual(const Trajectory& traj, double period, const MatrixXd& action,
                         const group::Phase& phase, int samples = 240);

enum class StopReason { alpha_bound, amplitude_target, step_failure };
std::string to_string(StopReason r);

struct BranchTrace {
  std::vector<OrbitSample> samples;
  std::vector<double> arclength;
  StopReason reason = StopReason::step_failure;
  std::string message;
};

struct ContinuationOptions {
  double alpha_min = -1.0;
  double alpha_max = 1.0;
  std::optional<double> amplitude_max;  // stop once an orbit reaches this amplitude
  std::optional<double> amplitude_min;  // stop once an orbit falls below it
  double step = 1e-2;
  double step_min = 1e-7;
  double step_max = 5e-2;
  double cap_alpha = 1e-2;      // per-step caps on |Δα|, |Δamplitude|, |Δperiod|
  double cap_amplitude = 1e-2;
  double cap_period = 0.5;
  int max_points = 4000;
  ShootingOptions shooting;
};

// Pseudo-arclength predictor–corrector in (y, T, α) starting from the orbit
// seeded at alpha_start. direction = ±1 selects the initial sign of dα.
BranchTrace continue_branch(const ShootingSystem& sys, double alpha_start, int direction,
                            const ContinuationOptions& opt = {});

}  // namespace hopfcert::oracle
