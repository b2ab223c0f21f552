// SPDX-License-Identifier: Apache-2.0
#include "hopfcert/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "hopfcert/errors.hpp"

namespace hopfcert::oracle {

// ------------------------------------------------------------ DOPRI5

namespace {

// Dormand–Prince 5(4) tableau and the quintic dense-output weights.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

}  // namespace

VectorXd Trajectory::at(double t) const {
  if (steps_.empty()) return final_;
  t = std::clamp(t, t0_, t1_);
  auto it = std::upper_bound(steps_.begin(), steps_.end(), t,
                             [](double x, const Step& s) { return x < s.t; });
  const Step& s = it == steps_.begin() ? steps_.front() : *(it - 1);
  const double th = std::clamp((t - s.t) / s.h, 0.0, 1.0), th1 = 1.0 - th;
  return s.r1 + th * (s.r2 + th1 * (s.r3 + th * (s.r4 + th1 * s.r5)));
}

Trajectory integrate(const std::function<VectorXd(const VectorXd&)>& f, const VectorXd& x0,
                     double T, const IntegrateOptions& opt) {
  Trajectory out;
  out.t0_ = 0.0;
  out.t1_ = T;
  out.final_ = x0;
  out.sup_ = x0.norm();
  if (!(T > 0.0)) return out;

  auto scale = [&](const VectorXd& a, const VectorXd& b) {
    return (opt.atol + opt.rtol * a.cwiseAbs().cwiseMax(b.cwiseAbs()).array()).matrix();
  };

  VectorXd y = x0, k1 = f(y);
  double t = 0.0;
  // Initial step from the size of the derivative.
  double h = 0.01 * T;
  {
    const VectorXd sc = scale(y, y);
    const double dn = (k1.array() / sc.array()).matrix().norm() / std::sqrt(double(y.size()));
    if (dn > 1e-10) h = std::min(h, 0.01 / dn);
  }
  const double h_floor = opt.h_min * T;
  double err_prev = 1e-4;
  long count = 0;
  while (t < T) {
    if (++count > opt.max_steps) throw NumericalFailure("integration exceeded the step budget");
    if (t + h > T) h = T - t;
    const VectorXd k2 = f(y + h * a21 * k1);
    const VectorXd k3 = f(y + h * (a31 * k1 + a32 * k2));
    const VectorXd k4 = f(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const VectorXd k5 = f(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const VectorXd k6 = f(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const VectorXd y1 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    const VectorXd k7 = f(y1);
    const VectorXd errv = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double err =
        (errv.array() / scale(y, y1).array()).matrix().norm() / std::sqrt(double(y.size()));
    if (!std::isfinite(err)) {
      h *= 0.25;
      if (h < h_floor) throw NumericalFailure("integration diverged");
      continue;
    }
    if (err <= 1.0) {
      Trajectory::Step s;
      s.t = t;
      s.h = h;
      s.r1 = y;
      s.r2 = y1 - y;
      s.r3 = h * k1 - s.r2;
      s.r4 = s.r2 - h * k7 - s.r3;
      s.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      for (double th : {0.25, 0.5, 0.75}) {
        const double th1 = 1.0 - th;
        out.sup_ = std::max(out.sup_, (s.r1 + th * (s.r2 + th1 * (s.r3 + th * (s.r4 + th1 * s.r5)))).norm());
      }
      out.steps_.push_back(std::move(s));
      t = (T - (t + h) < 1e-14 * T) ? T : t + h;
      y = y1;
      k1 = k7;
      out.sup_ = std::max(out.sup_, y.norm());
      // PI controller (exponents 0.7/5 and 0.4/5).
      const double fac = std::clamp(0.9 * std::pow(err, -0.14) * std::pow(err_prev, 0.08), 0.2, 5.0);
      err_prev = std::max(err, 1e-4);
      h *= fac;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      if (h < h_floor) throw NumericalFailure("step size underflow (stiff or singular vector field)");
    }
  }
  out.final_ = y;
  if (!out.steps_.empty()) out.steps_.back().h = T - out.steps_.back().t;
  return out;
}

// ---------------------------------------------------------- shooting

namespace {

Trajectory flow(const ShootingSystem& sys, double alpha, const VectorXd& y, double T,
                const IntegrateOptions& io) {
  return integrate([&](const VectorXd& v) { return sys.reduced_rhs(alpha, v); }, y, T, io);
}

VectorXd flow_end(const ShootingSystem& sys, double alpha, const VectorXd& y, double T,
                  const IntegrateOptions& io) {
  return flow(sys, alpha, y, T, io).final_state();
}

struct Shot {
  VectorXd end;
  MatrixXd phi;      // monodromy ∂φ_T/∂y
  VectorXd f_end;    // ∂φ_T/∂T
  VectorXd d_alpha;  // ∂φ_T/∂α (continuation only)
};

Shot shoot(const ShootingSystem& sys, double alpha, const VectorXd& y, double T,
           const ShootingOptions& opt, bool with_alpha) {
  const auto& io = opt.integration;
  const int k = static_cast<int>(y.size());
  Shot s;
  s.end = flow_end(sys, alpha, y, T, io);
  s.f_end = sys.reduced_rhs(alpha, s.end);
  s.phi.resize(k, k);
  const double h = opt.fd_step * std::max(1.0, y.norm());
  for (int j = 0; j < k; ++j) {
    VectorXd yp = y, ym = y;
    yp(j) += h;
    ym(j) -= h;
    s.phi.col(j) = (flow_end(sys, alpha, yp, T, io) - flow_end(sys, alpha, ym, T, io)) / (2.0 * h);
  }
  if (with_alpha) {
    const double ha = opt.fd_step * std::max(1.0, std::abs(alpha));
    s.d_alpha = (flow_end(sys, alpha + ha, y, T, io) - flow_end(sys, alpha - ha, y, T, io)) / (2.0 * ha);
  }
  return s;
}

std::vector<cplx> eigenvalues(const MatrixXd& m) {
  Eigen::EigenSolver<MatrixXd> es(m, false);
  std::vector<cplx> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
  return out;
}

int trivial_count(const std::vector<cplx>& mu, double window) {
  return static_cast<int>(
      std::count_if(mu.begin(), mu.end(), [&](cplx z) { return std::abs(z - 1.0) < window; }));
}

OrbitSample make_sample(const ShootingSystem& sys, double alpha, const VectorXd& y, double T,
                        const Shot& shot, int section, double section_value) {
  OrbitSample o;
  o.alpha = alpha;
  o.period = T;
  o.initial_state = sys.lift(y);
  o.residual = (shot.end - y).norm();
  o.section = section;
  o.section_value = section_value;
  o.multipliers = eigenvalues(shot.phi);
  o.amplitude = amplitude(sys, o);
  return o;
}

}  // namespace

OrbitSample find_periodic_orbit(const ShootingSystem& sys, double alpha, const VectorXd& x0_guess,
                                double period_guess, const ShootingOptions& opt) {
  VectorXd y = sys.reduce(x0_guess);
  const int k = static_cast<int>(y.size());
  double T = period_guess;
  if (!(T > 0.0)) throw NumericalFailure("period guess must be positive");
  int s = opt.section;
  if (s < 0) {
    sys.reduced_rhs(alpha, y).cwiseAbs().maxCoeff(&s);
  }
  const double c = y(s);

  auto residual = [&](const VectorXd& yy, double TT, VectorXd* end) {
    VectorXd e = flow_end(sys, alpha, yy, TT, opt.integration);
    VectorXd g(k + 1);
    g.head(k) = e - yy;
    g(k) = yy(s) - c;
    if (end) *end = e;
    return g;
  };

  Shot shot = shoot(sys, alpha, y, T, opt, false);
  VectorXd g(k + 1);
  g.head(k) = shot.end - y;
  g(k) = 0.0;
  double gn = g.norm();
  for (int it = 0; it < opt.max_iter && gn > opt.tol; ++it) {
    MatrixXd J = MatrixXd::Zero(k + 1, k + 1);
    J.topLeftCorner(k, k) = shot.phi - MatrixXd::Identity(k, k);
    J.topRightCorner(k, 1) = shot.f_end;
    J(k, s) = 1.0;
    const VectorXd dz = J.fullPivLu().solve(-g);
    double lambda = 1.0;
    bool improved = false;
    for (int damp = 0; damp < 8; ++damp, lambda *= 0.5) {
      const VectorXd yn = y + lambda * dz.head(k);
      const double Tn = T + lambda * dz(k);
      if (!(Tn > 0.0)) continue;
      VectorXd gn_vec;
      try {
        gn_vec = residual(yn, Tn, nullptr);
      } catch (const NumericalFailure&) {
        continue;
      }
      if (gn_vec.norm() < gn || damp == 7) {
        y = yn;
        T = Tn;
        improved = gn_vec.norm() < gn;
        break;
      }
    }
    if (!improved && dz.norm() < 1e-14 * (1.0 + y.norm())) break;
    shot = shoot(sys, alpha, y, T, opt, false);
    g.head(k) = shot.end - y;
    g(k) = y(s) - c;
    gn = g.norm();
  }
  if (!(gn < 1e-8))
    throw NumericalFailure("shooting did not converge: residual " + std::to_string(gn));
  OrbitSample o = make_sample(sys, alpha, y, T, shot, s, c);
  if (o.amplitude < opt.min_amplitude)
    throw NumericalFailure("converged to a constant solution (amplitude below the floor)");
  const int triv = trivial_count(o.multipliers, opt.trivial_window);
  if (triv != 1)
    throw NumericalFailure("degenerate monodromy: " + std::to_string(triv) +
                           " multipliers near 1, expected exactly one");
  return o;
}

std::optional<OrbitSample> seed_orbit(const ShootingSystem& sys, double alpha, ShootingOptions opt,
                                      double max_amplitude) {
  const int k = sys.reduced_dim();
  const double h = 1e-6;
  cplx lam_best;
  VectorXc v;
  if (sys.critical_basis.size() == 0) {
    MatrixXd J(k, k);
    for (int j = 0; j < k; ++j) {
      VectorXd e = VectorXd::Zero(k);
      e(j) = h;
      J.col(j) = (sys.reduced_rhs(alpha, e) - sys.reduced_rhs(alpha, -e)) / (2.0 * h);
    }
    Eigen::ComplexEigenSolver<MatrixXc> es(J.cast<cplx>(), true);
    Eigen::Index best = -1;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const cplx lam = es.eigenvalues()(i);
      if (lam.imag() <= 1e-8) continue;
      if (best < 0 || std::abs(lam.real()) < std::abs(es.eigenvalues()(best).real())) best = i;
    }
    if (best < 0) return std::nullopt;
    lam_best = es.eigenvalues()(best);
    v = es.eigenvectors().col(best);
  } else {
    // Linearization restricted to the twisted fixed space, lifted back.
    const MatrixXc& B = sys.critical_basis;
    const int n = sys.dim;
    MatrixXd J(n, n);
    for (int j = 0; j < n; ++j) {
      VectorXd e = VectorXd::Zero(n);
      e(j) = h;
      J.col(j) = (sys.rhs(alpha, e) - sys.rhs(alpha, -e)) / (2.0 * h);
    }
    Eigen::ComplexEigenSolver<MatrixXc> es(B.adjoint() * J.cast<cplx>() * B, true);
    Eigen::Index best = -1;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const cplx lam = es.eigenvalues()(i);
      if (lam.imag() <= 1e-8) continue;
      if (best < 0 || std::abs(lam.real()) < std::abs(es.eigenvalues()(best).real())) best = i;
    }
    if (best < 0) return std::nullopt;
    lam_best = es.eigenvalues()(best);
    const VectorXc full = B * es.eigenvectors().col(best);
    v = sys.basis.size() == 0 ? full : VectorXc(sys.basis.transpose().cast<cplx>() * full);
    if (v.norm() < 1e-8) return std::nullopt;
  }
  const double beta = lam_best.imag();
  Eigen::Index s = 0;
  v.cwiseAbs().maxCoeff(&s);
  // Rotate so v_s is purely imaginary: Re v then lies on the section y_s = 0
  // and the flow crosses it with ẏ_s ≈ −β|v_s| ≠ 0.
  v *= cplx(0.0, 1.0) * std::conj(v(s)) / std::abs(v(s));
  VectorXd u = v.real();
  u(s) = 0.0;
  u.normalize();
  const double T0 = 2.0 * M_PI / beta;

  // First return to {y_s = 0, ẏ_s < 0} from a·u; returns (⟨y_ret, u⟩ − a, time).
  auto return_map = [&](double a) -> std::optional<std::pair<double, double>> {
    Trajectory tr;
    try {
      tr = flow(sys, alpha, a * u, 1.6 * T0, opt.integration);
    } catch (const NumericalFailure&) {
      return std::nullopt;
    }
    const int n = 400;
    double tp = 0.5 * T0, vp = tr.at(tp)(s);
    for (int i = 1; i <= n; ++i) {
      const double t = 0.5 * T0 + 1.1 * T0 * i / n;
      const double vt = tr.at(t)(s);
      if (vp > 0.0 && vt <= 0.0) {
        double lo = tp, hi = t;
        for (int b = 0; b < 60; ++b) {
          const double m = 0.5 * (lo + hi);
          if (tr.at(m)(s) > 0.0)
            lo = m;
          else
            hi = m;
        }
        const double tc = 0.5 * (lo + hi);
        return std::make_pair(tr.at(tc).dot(u) - a, tc);
      }
      tp = t;
      vp = vt;
    }
    return std::nullopt;
  };

  double a_prev = 1e-4 * std::min(1.0, max_amplitude);
  auto d_prev = return_map(a_prev);
  if (!d_prev) return std::nullopt;
  for (double a = a_prev * 1.25; a <= max_amplitude; a *= 1.25) {
    const auto d = return_map(a);
    if (!d) return std::nullopt;
    if ((d->first > 0.0) != (d_prev->first > 0.0)) {
      double lo = a_prev, hi = a;
      const bool lo_positive = d_prev->first > 0.0;
      double period = d->second;
      for (int b = 0; b < 40; ++b) {
        const double m = 0.5 * (lo + hi);
        const auto dm = return_map(m);
        if (!dm) break;
        period = dm->second;
        if ((dm->first > 0.0) == lo_positive)
          lo = m;
        else
          hi = m;
      }
      opt.section = static_cast<int>(s);
      try {
        return find_periodic_orbit(sys, alpha, sys.lift(0.5 * (lo + hi) * u), period, opt);
      } catch (const NumericalFailure&) {
        return std::nullopt;
      }
    }
    a_prev = a;
    d_prev = d;
  }
  return std::nullopt;
}

// --------------------------------------------------------- amplitude

double amplitude(const Trajectory& traj) {
  constexpr int n = 4096;
  std::vector<double> v(n + 1);
  for (int i = 0; i <= n; ++i)
    v[static_cast<std::size_t>(i)] = traj.at(traj.t0() + (traj.t1() - traj.t0()) * i / n).norm();
  const auto it = std::max_element(v.begin(), v.end());
  const double best = *it;
  const auto i = it - v.begin();
  if (i == 0 || i == n) return best;
  const double fm = v[static_cast<std::size_t>(i - 1)], f0 = best, fp = v[static_cast<std::size_t>(i + 1)];
  const double curv = fm - 2.0 * f0 + fp;
  if (!(curv < 0.0)) return best;
  // Vertex of the parabola through the three samples.
  const double shift = 0.5 * (fm - fp) / curv;
  return std::max(best, f0 - 0.25 * (fm - fp) * shift);
}

Trajectory orbit_trajectory(const ShootingSystem& sys, const OrbitSample& orbit,
                            const IntegrateOptions& opt) {
  return integrate([&](const VectorXd& x) { return sys.rhs(orbit.alpha, x); }, orbit.initial_state,
                   orbit.period, opt);
}

double amplitude(const ShootingSystem& sys, const OrbitSample& orbit) {
  return amplitude(orbit_trajectory(sys, orbit));
}

double symmetry_residual(const Trajectory& traj, double period, const MatrixXd& action,
                         const group::Phase& phase, int samples) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = period * i / samples;
    double ts = std::fmod(t - phase.value() * period, period);
    if (ts < 0.0) ts += period;
    worst = std::max(worst, (action * traj.at(ts) - traj.at(t)).norm());
  }
  return worst;
}

// ------------------------------------------------------ continuation

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::alpha_bound:
      return "alpha_bound";
    case StopReason::amplitude_target:
      return "amplitude_target";
    case StopReason::step_failure:
      return "step_failure";
  }
  return "step_failure";
}

namespace {

// Unit kernel vector of the (k+1) × (k+2) Jacobian of (y, T, α) ↦ (φ − y, y_s − c).
VectorXd tangent(const Shot& shot, int s) {
  const int k = static_cast<int>(shot.end.size());
  MatrixXd J = MatrixXd::Zero(k + 1, k + 2);
  J.topLeftCorner(k, k) = shot.phi - MatrixXd::Identity(k, k);
  J.block(0, k, k, 1) = shot.f_end;
  J.block(0, k + 1, k, 1) = shot.d_alpha;
  J(k, s) = 1.0;
  Eigen::JacobiSVD<MatrixXd> svd(J, Eigen::ComputeFullV);
  return svd.matrixV().col(k + 1).normalized();
}

}  // namespace

BranchTrace continue_branch(const ShootingSystem& sys, double alpha_start, int direction,
                            const ContinuationOptions& opt) {
  BranchTrace trace;
  const auto first = seed_orbit(sys, alpha_start, opt.shooting);
  if (!first) {
    trace.reason = StopReason::step_failure;
    trace.message = "no periodic orbit near alpha = " + std::to_string(alpha_start);
    return trace;
  }
  trace.samples.push_back(*first);
  trace.arclength.push_back(0.0);
  auto stop_on = [&](const OrbitSample& o) -> std::optional<StopReason> {
    if ((opt.amplitude_max && o.amplitude >= *opt.amplitude_max) ||
        (opt.amplitude_min && o.amplitude <= *opt.amplitude_min))
      return StopReason::amplitude_target;
    return std::nullopt;
  };
  if (auto r = stop_on(*first)) {
    trace.reason = *r;
    return trace;
  }

  const int k = sys.reduced_dim();
  const int s = first->section;
  const double c = first->section_value;
  VectorXd z(k + 2);
  z.head(k) = sys.reduce(first->initial_state);
  z(k) = first->period;
  z(k + 1) = first->alpha;
  Shot shot = shoot(sys, z(k + 1), z.head(k), z(k), opt.shooting, true);
  VectorXd t = tangent(shot, s);
  if (t(k + 1) * direction < 0.0) t = -t;

  double h = opt.step;
  while (static_cast<int>(trace.samples.size()) < opt.max_points) {
    const VectorXd pred = z + h * t;
    VectorXd w = pred;
    bool ok = false;
    int iters = 0;
    Shot ws;
    try {
      for (; iters < 12; ++iters) {
        ws = shoot(sys, w(k + 1), w.head(k), w(k), opt.shooting, true);
        VectorXd g(k + 2);
        g.head(k) = ws.end - w.head(k);
        g(k) = w(s) - c;
        g(k + 1) = t.dot(w - pred);
        if (g.norm() < opt.shooting.tol) {
          ok = true;
          break;
        }
        MatrixXd J = MatrixXd::Zero(k + 2, k + 2);
        J.topLeftCorner(k, k) = ws.phi - MatrixXd::Identity(k, k);
        J.block(0, k, k, 1) = ws.f_end;
        J.block(0, k + 1, k, 1) = ws.d_alpha;
        J(k, s) = 1.0;
        J.row(k + 1) = t.transpose();
        w += J.fullPivLu().solve(-g);
        if (!(w(k) > 0.0)) break;
      }
    } catch (const NumericalFailure&) {
      ok = false;
    }

    std::optional<OrbitSample> sample;
    if (ok) {
      sample = make_sample(sys, w(k + 1), w.head(k), w(k), ws, s, c);
      const OrbitSample& prev = trace.samples.back();
      if (std::abs(sample->alpha - prev.alpha) > opt.cap_alpha ||
          std::abs(sample->amplitude - prev.amplitude) > opt.cap_amplitude ||
          std::abs(sample->period - prev.period) > opt.cap_period || sample->residual >= 1e-8)
        ok = false;
    }
    if (!ok) {
      h *= 0.5;
      if (h < opt.step_min) {
        trace.reason = StopReason::step_failure;
        trace.message = "corrector failed below the minimum step";
        return trace;
      }
      continue;
    }
    if (sample->alpha < opt.alpha_min || sample->alpha > opt.alpha_max) {
      trace.reason = StopReason::alpha_bound;
      return trace;
    }
    trace.arclength.push_back(trace.arclength.back() + (w - z).norm());
    trace.samples.push_back(*sample);
    if (auto r = stop_on(*sample)) {
      trace.reason = *r;
      return trace;
    }
    VectorXd tn = tangent(ws, s);
    if (tn.dot(t) < 0.0) tn = -tn;
    z = w;
    t = tn;
    if (iters <= 4) h = std::min(h * 1.5, opt.step_max);
  }
  trace.reason = StopReason::step_failure;
  trace.message = "maximum number of continuation points reached";
  return trace;
}

}  // namespace hopfcert::oracle
