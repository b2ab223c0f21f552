// SPDX-License-Identifier: Apache-2.0
#include "hopfcert/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hopfcert/errors.hpp"

namespace hopfcert::estimator {

std::string to_string(NormMode mode) { return mode == NormMode::spectral ? "spectral" : "frobenius"; }

NormMode parse_norm_mode(const std::string& text) {
  if (text == "spectral") return NormMode::spectral;
  if (text == "frobenius") return NormMode::frobenius;
  throw ConfigError("norm mode must be 'spectral' or 'frobenius', got '" + text + "'");
}

namespace {

// |m^{-1}|² in the requested norm.
double term_squared(const MatrixXc& m, NormMode mode, int l, double alpha, double beta) {
  const auto d = m.rows();
  if (d <= 2) {
    const auto [smin, smax] = extreme_singular_values(m);
    if (!(smin > 1e-14 * smax)) throw ResonanceError(l, alpha, beta);
    return mode == NormMode::spectral ? 1.0 / (smin * smin) : inverse_frobenius_squared(m);
  }
  Eigen::JacobiSVD<MatrixXc> svd(m);
  const VectorXd s = svd.singularValues();
  if (!(s(d - 1) > 1e-14 * s(0))) throw ResonanceError(l, alpha, beta);
  return mode == NormMode::spectral ? 1.0 / (s(d - 1) * s(d - 1)) : s.cwiseInverse().squaredNorm();
}

// Restricted matrices at a fixed α and the running partial sum.
class Series {
 public:
  Series(const RestrictedFamily& rf, double alpha, double beta, NormMode mode)
      : alpha_(alpha), beta_(beta), mode_(mode), period_(rf.period()) {
    for (int r = 0; r < period_; ++r) {
      dims_.push_back(rf.dim(r));
      mats_.push_back(rf.restricted(r, alpha));
      if (dims_.back() > 0) norm_ = std::max(norm_, spectral_norm(mats_.back()));
    }
    if (std::all_of(dims_.begin(), dims_.end(), [](int d) { return d == 0; }))
      throw DomainError("every restricted mode is empty, so M vanishes identically");
  }

  int last() const { return last_; }
  double partial() const { return sum_; }
  double norm() const { return norm_; }

  void extend_to(int l_max) {
    for (int l = last_ + 1; l <= l_max; ++l) {
      const auto r = static_cast<std::size_t>(l % period_);
      if (dims_[r] == 0) continue;
      work_ = -mats_[r];
      work_.diagonal().array() += cplx(0.0, l * beta_);
      sum_ += term_squared(work_, mode_, l, alpha_, beta_);
    }
    last_ = std::max(last_, l_max);
  }

  // {lower, upper} bounds on Σ_{l > last} terms; upper = +inf if l₁β ≤ ‖A_r‖.
  std::pair<double, double> tail() const {
    double lo = 0.0, hi = 0.0;
    const double p = period_;
    for (int r = 0; r < period_; ++r) {
      const int d = dims_[static_cast<std::size_t>(r)];
      if (d == 0) continue;
      const double c = mode_ == NormMode::frobenius ? d : 1.0;
      const int first = last_ + 1;
      const int l1 = first + (((r - first) % period_) + period_) % period_;
      const double x = l1 * beta_;
      if (!(x > norm_)) return {lo, std::numeric_limits<double>::infinity()};
      hi += c / ((x - norm_) * (x - norm_)) + c / (p * beta_ * (x - norm_));
      lo += c / (p * beta_ * (x + norm_));
    }
    return {lo, hi};
  }

 private:
  double alpha_, beta_;
  NormMode mode_;
  int period_;
  std::vector<int> dims_;
  std::vector<MatrixXc> mats_;
  MatrixXc work_;
  double norm_ = 0.0;
  double sum_ = 0.0;
  int last_ = -1;
};

constexpr int kMaxTruncation = 20'000'000;

}  // namespace

double term_norm(const MatrixXc& m, NormMode mode, int l, double alpha, double beta) {
  return std::sqrt(term_squared(m, mode, l, alpha, beta));
}

MSeries m_series(const RestrictedFamily& rf, double alpha, double beta, NormMode mode, int l_max) {
  if (!(beta > 0.0)) throw DomainError("M requires beta > 0");
  Series s(rf, alpha, beta, mode);
  s.extend_to(l_max);
  const auto [lo, hi] = s.tail();
  return {s.partial(), lo, hi, l_max};
}

MEstimate compute_m(const RestrictedFamily& rf, double alpha, double beta, NormMode mode,
                    double rel_tol) {
  if (!(beta > 0.0)) throw DomainError("M requires beta > 0");
  Series s(rf, alpha, beta, mode);
  int l = std::max(16, 2 * static_cast<int>(std::ceil(s.norm() / beta)) + 2);
  while (true) {
    if (l > kMaxTruncation)
      throw ResolutionError("M series: truncation limit reached at beta = " + std::to_string(beta));
    s.extend_to(l);
    const auto [tl, tu] = s.tail();
    if (!std::isfinite(tu)) {
      l *= 2;
      continue;
    }
    const double lower = std::sqrt(s.partial() + tl);
    const double upper = std::sqrt(s.partial() + tu);
    const double gap = (upper - lower) / lower;
    if (gap <= rel_tol) return {lower, upper, l, mode};
    const double factor = std::clamp(1.25 * std::sqrt(gap / rel_tol), 1.1, 64.0);
    l = static_cast<int>(std::ceil(l * factor));
  }
}

double m_closed_form_vdp(double beta) {
  if (!(beta > 0.0)) throw DomainError("closed form requires beta > 0");
  const double x = M_PI / beta;
  const double s = std::sin(x);
  if (std::abs(s) < 1e-15 * std::max(1.0, x)) throw DomainError("closed form has a pole at this beta");
  const double c = x / s;
  return 1.0 + c * c;
}

// ---------------------------------------------------------- minimizer

SegmentMinimum minimize_m_on_segment(const RestrictedFamily& rf, double alpha0, double beta_lo,
                                     double beta_hi, NormMode mode) {
  if (!(beta_lo > 0.0) || !(beta_hi > beta_lo))
    throw DomainError("minimizing segment must satisfy 0 < beta_lo < beta_hi");
  constexpr int kCoarse = 200;
  auto coarse = [&](double b) {
    try {
      return compute_m(rf, alpha0, b, mode, 1e-5).mid();
    } catch (const ResonanceError&) {
      return std::numeric_limits<double>::infinity();
    } catch (const ResolutionError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  std::vector<double> bs(kCoarse + 1), vals(kCoarse + 1);
  for (int i = 0; i <= kCoarse; ++i) {
    bs[static_cast<std::size_t>(i)] = beta_lo + (beta_hi - beta_lo) * i / kCoarse;
    vals[static_cast<std::size_t>(i)] = coarse(bs[static_cast<std::size_t>(i)]);
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  if (!std::isfinite(*it)) throw DomainError("M is resonant along the whole segment");
  const auto best = static_cast<int>(std::distance(vals.begin(), it));
  if (best == 0 || best == kCoarse) {
    const double b = bs[static_cast<std::size_t>(best)];
    return {b, compute_m(rf, alpha0, b, mode), false};
  }

  double a = bs[static_cast<std::size_t>(best - 1)], c = bs[static_cast<std::size_t>(best + 1)];
  // Smooth objective: fixed truncation plus the mean of the tail bounds.
  const int l_fix = compute_m(rf, alpha0, bs[static_cast<std::size_t>(best)], mode, 1e-10).truncation_l;
  auto smooth = [&](double b) {
    const MSeries s = m_series(rf, alpha0, b, mode, l_fix);
    return s.partial + 0.5 * (s.tail_lower + s.tail_upper);
  };

  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = c - invphi * (c - a), x2 = a + invphi * (c - a);
  double f1 = smooth(x1), f2 = smooth(x2);
  while (c - a > 1e-7 * std::max(1.0, c)) {
    if (f1 < f2) {
      c = x2;
      x2 = x1;
      f2 = f1;
      x1 = c - invphi * (c - a);
      f1 = smooth(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (c - a);
      f2 = smooth(x2);
    }
  }
  const double bg = 0.5 * (a + c);

  const double h = 1e-6 * bg;
  auto slope = [&](double b) { return (smooth(b + h) - smooth(b - h)) / (2.0 * h); };
  double lo = bg - 1e-5 * bg, hi = bg + 1e-5 * bg;
  double slo = slope(lo), shi = slope(hi);
  for (int k = 0; k < 20 && !(slo < 0.0 && shi > 0.0); ++k) {
    lo -= 1e-5 * bg * (1 << k);
    hi += 1e-5 * bg * (1 << k);
    slo = slope(lo);
    shi = slope(hi);
  }
  double beta_star = bg;
  if (slo < 0.0 && shi > 0.0) {
    while (hi - lo > 1e-12 * bg) {
      const double mid = 0.5 * (lo + hi);
      if (slope(mid) < 0.0)
        lo = mid;
      else
        hi = mid;
    }
    beta_star = 0.5 * (lo + hi);
  }
  return {beta_star, compute_m(rf, alpha0, beta_star, mode), true};
}

// --------------------------------------------------------------- grid

MGrid scan_m_grid(const RestrictedFamily& rf, double alpha_lo, double alpha_hi, double beta_lo,
                  double beta_hi, int n_alpha, int n_beta, NormMode mode, double rel_tol) {
  if (n_alpha < 2 || n_beta < 2) throw DomainError("M grid needs at least 2 nodes per side");
  MGrid g;
  g.alphas.resize(static_cast<std::size_t>(n_alpha));
  g.betas.resize(static_cast<std::size_t>(n_beta));
  for (int i = 0; i < n_alpha; ++i)
    g.alphas[static_cast<std::size_t>(i)] = alpha_lo + (alpha_hi - alpha_lo) * i / (n_alpha - 1);
  for (int j = 0; j < n_beta; ++j)
    g.betas[static_cast<std::size_t>(j)] = beta_lo + (beta_hi - beta_lo) * j / (n_beta - 1);
  g.lower.resize(n_alpha, n_beta);
  g.upper.resize(n_alpha, n_beta);
  const double inf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_alpha; ++i)
    for (int j = 0; j < n_beta; ++j) {
      try {
        const MEstimate m = compute_m(rf, g.alphas[static_cast<std::size_t>(i)],
                                      g.betas[static_cast<std::size_t>(j)], mode, rel_tol);
        g.lower(i, j) = m.lower;
        g.upper(i, j) = m.upper;
      } catch (const ResonanceError&) {
        g.lower(i, j) = g.upper(i, j) = inf;
      } catch (const ResolutionError&) {
        g.lower(i, j) = g.upper(i, j) = inf;
      }
    }
  return g;
}

// ------------------------------------------------------------- domain

DomainBuild build_domain_d(const RestrictedFamily& rf, Point hopf, NormMode mode,
                           const DomainStrategy& st) {
  DomainBuild out;
  out.domain.hopf_point = hopf;
  if (st.kind == "disk") {
    if (!(st.radius > 0.0) || !(hopf.y() - st.radius > 0.0))
      throw DomainError("disk radius must be positive and keep beta > 0");
    out.domain.boundary = spectral::ClosedPath::circle(hopf, st.radius, st.disk_segments);
    out.domain.strategy = "disk";
    out.domain.level = st.radius;
    return out;
  }
  if (st.kind != "level-curve") throw ConfigError("unknown domain strategy '" + st.kind + "'");

  const double b0 = hopf.y();
  const double seg_lo = st.segment_lo.value_or(0.1 * b0);
  const double seg_hi = st.segment_hi.value_or(b0 * (1.0 - 1e-3));
  const SegmentMinimum mn = minimize_m_on_segment(rf, hopf.x(), seg_lo, seg_hi, mode);
  out.minimum = mn;
  const double level = st.level.value_or(mn.m.mid() * (1.0 + st.level_offset));

  double half = st.window_factor * std::abs(b0 - mn.beta);
  if (!(half > 0.0)) throw DomainError("segment minimizer coincides with the Hopf point");
  for (int attempt = 0; attempt < 4; ++attempt, half *= 1.5) {
    const double blo = std::max(b0 - half, 0.02 * b0);
    MGrid g = scan_m_grid(rf, hopf.x() - half, hopf.x() + half, blo, b0 + half, st.grid, st.grid,
                          mode, 1e-4);
    MatrixXd z = 0.5 * (g.lower + g.upper);
    const double zmin = z.minCoeff();
    if (st.level && level <= zmin)
      throw DomainError("requested level " + std::to_string(level) +
                        " is below the minimum of M on the scan window");
    for (Eigen::Index k = 0; k < z.size(); ++k)
      if (!std::isfinite(z(k))) z(k) = 1e300;
    const auto loops = contour::level_loops(g.alphas, g.betas, z, level);
    const spectral::ClosedPath* best = nullptr;
    double best_area = std::numeric_limits<double>::infinity();
    for (const auto& loop : loops) {
      if (!loop.contains(hopf)) continue;
      const double area = std::abs(loop.signed_area());
      if (area < best_area) {
        best_area = area;
        best = &loop;
      }
    }
    if (best) {
      out.domain.boundary = best->oriented_ccw();
      out.domain.strategy = "level-curve";
      out.domain.level = level;
      out.grid = std::move(g);
      return out;
    }
  }
  throw DomainError("level component through the segment minimizer is not closed within the "
                    "scan window; enlarge the window");
}

// ---------------------------------------------------------- threshold

Threshold threshold_n(const RestrictedFamily& rf, const DomainD& d, NormMode mode, double rel_tol) {
  if (rf.all_modes_empty())
    throw DomainError("every restricted mode is empty, so M vanishes identically");
  const auto& v = d.boundary.vertices();
  const std::size_t n = v.size();
  auto m_at = [&](const Point& p) { return compute_m(rf, p.x(), p.y(), mode, rel_tol).upper; };
  double best = -1.0;
  Point where = v.front();
  std::size_t best_edge = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % n];
    for (const Point& p : {a, Point(0.5 * (a + b))}) {
      const double m = m_at(p);
      if (m > best) {
        best = m;
        where = p;
        best_edge = i;
      }
    }
  }
  // Refine along the edges around the worst sample.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t e : {(best_edge + n - 1) % n, best_edge, (best_edge + 1) % n}) {
    const Point a = v[e], b = v[(e + 1) % n];
    auto f = [&](double t) { return m_at(a + t * (b - a)); };
    double lo = 0.0, hi = 1.0;
    double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 30; ++it) {
      if (f1 > f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - invphi * (hi - lo);
        f1 = f(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + invphi * (hi - lo);
        f2 = f(x2);
      }
    }
    for (const auto& [t, m] : {std::pair{x1, f1}, std::pair{x2, f2}})
      if (m > best) {
        best = m;
        where = a + t * (b - a);
      }
  }
  return {1.0 / (std::sqrt(2.0 * M_PI) * best), best, where};
}

}  // namespace hopfcert::estimator
