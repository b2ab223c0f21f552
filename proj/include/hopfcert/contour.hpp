// SPDX-License-Identifier: Apache-2.0
//
// Planar closed paths, argument-principle winding numbers with adaptive
// subdivision, sampling-based nonvanishing scans, marching-squares level sets.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "hopfcert/errors.hpp"
#include "hopfcert/linalg.hpp"

namespace hopfcert::contour {

using Point = Eigen::Vector2d;

// Closed polygon parameterized by normalized arclength s ∈ [0, 1].
class ClosedPath {
 public:
  ClosedPath() = default;
  explicit ClosedPath(std::vector<Point> vertices);

  static ClosedPath rectangle(Point lo, Point hi);  // counterclockwise from lo
  static ClosedPath circle(Point center, double radius, int segments = 256);

  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  double length() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }
  // Parameter of vertex i (i = size() maps to 1).
  double vertex_parameter(std::size_t i) const;
  Point at(double s) const;

  double signed_area() const;
  bool counterclockwise() const { return signed_area() > 0.0; }
  ClosedPath reversed() const;
  ClosedPath oriented_ccw() const { return counterclockwise() ? *this : reversed(); }
  // No two non-adjacent edges intersect and no edge is degenerate.
  bool is_simple() const;
  // Nonzero winding of the polygon around p (boundary points count as inside).
  bool contains(const Point& p) const;
  double distance_to_boundary(const Point& p) const;
  Eigen::AlignedBox2d bounds() const;

 private:
  std::vector<Point> vertices_;
  std::vector<double> cumulative_;  // arclength at each vertex, back() = total
};

struct WindingOptions {
  double abs_floor = 1e-12;
  int max_depth = 40;
  int initial_samples = 128;
  double max_jump = M_PI / 2.0;
};

struct WindingSample {
  double s;
  Point p;
  cplx value;
  double cum_arg;
};

namespace detail {

template <typename F>
void refine_segment(F& f, const ClosedPath& path, double s0, double s1, cplx f0, cplx f1, int depth,
                    const WindingOptions& opt, double& total,
                    std::vector<WindingSample>* trace) {
  const double jump = std::arg(f1 / f0);
  // The chord test guards against a loop around 0 hidden between two samples
  // whose phases happen to agree.
  const bool suspicious =
      std::abs(jump) > opt.max_jump || std::min(std::abs(f0), std::abs(f1)) < std::abs(f1 - f0);
  if (!suspicious) {
    total += jump;
    if (trace) trace->push_back({s1, path.at(s1), f1, total});
    return;
  }
  if (depth >= opt.max_depth)
    throw ResolutionError("winding number: depth cap reached near s = " + std::to_string(s0));
  const double sm = 0.5 * (s0 + s1);
  const cplx fm = f(path.at(sm));
  if (!(std::abs(fm) > opt.abs_floor))
    throw ZeroOnContourError("winding number: zero on contour", sm);
  refine_segment(f, path, s0, sm, f0, fm, depth + 1, opt, total, trace);
  refine_segment(f, path, sm, s1, fm, f1, depth + 1, opt, total, trace);
}

}  // namespace detail

// Winding number of f ∘ path around 0. f maps a Point to a complex value.
// Throws ZeroOnContourError when |f| ≤ abs_floor at a sample and
// ResolutionError when the depth cap is exhausted.
template <typename F>
int winding_number(F&& f, const ClosedPath& path, const WindingOptions& opt = {},
                   std::vector<WindingSample>* trace = nullptr) {
  std::vector<double> knots;
  const std::size_t nv = path.size();
  const int per_edge_min = 2;
  for (std::size_t i = 0; i < nv; ++i) {
    const double a = path.vertex_parameter(i), b = path.vertex_parameter(i + 1);
    const int k = std::max(per_edge_min,
                           static_cast<int>(std::ceil((b - a) * opt.initial_samples)));
    for (int j = 0; j < k; ++j) knots.push_back(a + (b - a) * j / k);
  }
  knots.push_back(1.0);
  std::vector<cplx> values(knots.size());
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    values[i] = f(path.at(knots[i]));
    if (!(std::abs(values[i]) > opt.abs_floor))
      throw ZeroOnContourError("winding number: zero on contour", knots[i]);
  }
  values.back() = values.front();
  double total = 0.0;
  if (trace) {
    trace->clear();
    trace->push_back({0.0, path.at(0.0), values.front(), 0.0});
  }
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    detail::refine_segment(f, path, knots[i], knots[i + 1], values[i], values[i + 1], 0, opt,
                           total, trace);
  const double turns = total / (2.0 * M_PI);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) >= 0.01)
    throw ResolutionError("winding number: non-integer total " + std::to_string(turns));
  return static_cast<int>(rounded);
}

enum class ScanOutcome { clean, zero, unresolved };

struct ScanResult {
  ScanOutcome outcome = ScanOutcome::clean;
  Point where = Point::Zero();  // offending location for zero / unresolved
  double min_modulus = INFINITY;
};

struct ScanOptions {
  int initial = 16;        // cells per side
  int max_depth = 10;      // quadtree levels below the initial grid
  double abs_floor = 1e-12;
  double safety = 10.0;    // required ratio min|f| / corner variation
};

namespace detail {

inline bool zero_in_hull(const std::vector<cplx>& v) {
  // 0 lies in the convex hull iff no half-plane through 0 contains every value.
  std::vector<double> ang;
  for (const auto& z : v) ang.push_back(std::arg(z));
  std::sort(ang.begin(), ang.end());
  double max_gap = 0.0;
  for (std::size_t i = 0; i + 1 < ang.size(); ++i) max_gap = std::max(max_gap, ang[i + 1] - ang[i]);
  max_gap = std::max(max_gap, ang.front() + 2.0 * M_PI - ang.back());
  return max_gap <= M_PI;
}

template <typename F>
void scan_cell(F& f, Point lo, Point hi, const std::array<cplx, 4>& c, int depth,
               const ScanOptions& opt, ScanResult& res) {
  if (res.outcome == ScanOutcome::zero) return;
  double m = INFINITY, var = 0.0;
  for (int i = 0; i < 4; ++i) {
    m = std::min(m, std::abs(c[static_cast<std::size_t>(i)]));
    for (int j = i + 1; j < 4; ++j)
      var = std::max(var, std::abs(c[static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(j)]));
  }
  res.min_modulus = std::min(res.min_modulus, m);
  if (m <= opt.abs_floor) {
    res.outcome = ScanOutcome::zero;
    res.where = lo;
    return;
  }
  if (m > opt.safety * var) return;
  if (depth >= opt.max_depth) {
    if (zero_in_hull({c.begin(), c.end()})) {
      res.outcome = ScanOutcome::zero;
      res.where = 0.5 * (lo + hi);
    } else if (res.outcome == ScanOutcome::clean) {
      res.outcome = ScanOutcome::unresolved;
      res.where = 0.5 * (lo + hi);
    }
    return;
  }
  const Point mid = 0.5 * (lo + hi);
  // Corner order: (lo.x,lo.y), (hi.x,lo.y), (hi.x,hi.y), (lo.x,hi.y).
  const cplx fb = f(Point(mid.x(), lo.y())), fr = f(Point(hi.x(), mid.y()));
  const cplx ft = f(Point(mid.x(), hi.y())), fl = f(Point(lo.x(), mid.y()));
  const cplx fm = f(mid);
  scan_cell(f, lo, mid, {c[0], fb, fm, fl}, depth + 1, opt, res);
  scan_cell(f, Point(mid.x(), lo.y()), Point(hi.x(), mid.y()), {fb, c[1], fr, fm}, depth + 1, opt,
            res);
  scan_cell(f, mid, hi, {fm, fr, c[2], ft}, depth + 1, opt, res);
  scan_cell(f, Point(lo.x(), mid.y()), Point(mid.x(), hi.y()), {fl, fm, ft, c[3]}, depth + 1, opt,
            res);
}

}  // namespace detail

// Sampling check that f has no zero on the rectangle [lo, hi]. A cell is
// accepted when its smallest corner modulus exceeds safety × the largest
// corner difference; otherwise it is split until max_depth.
template <typename F>
ScanResult scan_rectangle(F&& f, Point lo, Point hi, const ScanOptions& opt = {}) {
  ScanResult res;
  const int n = opt.initial;
  const Point step = (hi - lo) / n;
  std::vector<cplx> grid(static_cast<std::size_t>((n + 1) * (n + 1)));
  auto idx = [n](int i, int j) { return static_cast<std::size_t>(j * (n + 1) + i); };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) grid[idx(i, j)] = f(Point(lo.x() + i * step.x(), lo.y() + j * step.y()));
  for (int j = 0; j < n && res.outcome != ScanOutcome::zero; ++j)
    for (int i = 0; i < n && res.outcome != ScanOutcome::zero; ++i) {
      const Point a(lo.x() + i * step.x(), lo.y() + j * step.y());
      detail::scan_cell(f, a, a + step,
                        {grid[idx(i, j)], grid[idx(i + 1, j)], grid[idx(i + 1, j + 1)],
                         grid[idx(i, j + 1)]},
                        0, opt, res);
    }
  return res;
}

struct IntervalScan {
  ScanOutcome outcome = ScanOutcome::clean;
  double where = 0.0;
  double min_modulus = INFINITY;
};

// Sampling check that a real function has no zero on [a, b]: sign changes
// and moduli below the floor report a zero, unresolved segments are reported
// when refinement cannot separate min|f| from the local variation.
template <typename F>
IntervalScan scan_interval(F&& f, double a, double b, int initial = 256, int max_depth = 20,
                           double abs_floor = 1e-12, double safety = 10.0) {
  IntervalScan res;
  std::function<void(double, double, double, double, int)> rec = [&](double x0, double x1,
                                                                     double f0, double f1,
                                                                     int depth) {
    if (res.outcome == ScanOutcome::zero) return;
    res.min_modulus = std::min({res.min_modulus, std::abs(f0), std::abs(f1)});
    if (std::abs(f0) <= abs_floor || std::abs(f1) <= abs_floor || (f0 < 0) != (f1 < 0)) {
      res.outcome = ScanOutcome::zero;
      res.where = std::abs(f0) <= std::abs(f1) ? x0 : x1;
      if ((f0 < 0) != (f1 < 0)) {
        double lo = x0, hi = x1, flo = f0;
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi), fm = f(mid);
          if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        res.where = 0.5 * (lo + hi);
      }
      return;
    }
    if (std::min(std::abs(f0), std::abs(f1)) > safety * std::abs(f1 - f0)) return;
    if (depth >= max_depth) {
      if (res.outcome == ScanOutcome::clean) {
        res.outcome = ScanOutcome::unresolved;
        res.where = 0.5 * (x0 + x1);
      }
      return;
    }
    const double xm = 0.5 * (x0 + x1), fm = f(xm);
    rec(x0, xm, f0, fm, depth + 1);
    rec(xm, x1, fm, f1, depth + 1);
  };
  double xprev = a, fprev = f(a);
  for (int i = 1; i <= initial; ++i) {
    const double x = a + (b - a) * i / initial, fx = f(x);
    rec(xprev, x, fprev, fx, 0);
    xprev = x;
    fprev = fx;
  }
  return res;
}

// Closed polylines of {z = level} for z sampled on a tensor grid
// (z(i, j) at (xs[i], ys[j])). Saddle cells are split by the cell-center
// average. Open polylines that leave the window are discarded.
std::vector<ClosedPath> level_loops(const std::vector<double>& xs, const std::vector<double>& ys,
                                    const MatrixXd& z, double level);

}  // namespace hopfcert::contour
