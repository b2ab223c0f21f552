// SPDX-License-Identifier: Apache-2.0
#include "hopfcert/contour.hpp"

#include <map>
#include <unordered_map>

namespace hopfcert::contour {

ClosedPath::ClosedPath(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  // A repeated closing vertex is implicit.
  if (vertices_.size() > 1 && (vertices_.front() - vertices_.back()).norm() == 0.0)
    vertices_.pop_back();
  if (vertices_.size() < 3) throw DomainError("closed path needs at least three vertices");
  cumulative_.resize(vertices_.size() + 1);
  cumulative_[0] = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    cumulative_[i + 1] =
        cumulative_[i] + (vertices_[(i + 1) % vertices_.size()] - vertices_[i]).norm();
  if (!(cumulative_.back() > 0.0)) throw DomainError("closed path has zero length");
}

ClosedPath ClosedPath::rectangle(Point lo, Point hi) {
  return ClosedPath({lo, Point(hi.x(), lo.y()), hi, Point(lo.x(), hi.y())});
}

ClosedPath ClosedPath::circle(Point center, double radius, int segments) {
  std::vector<Point> v;
  v.reserve(static_cast<std::size_t>(segments));
  for (int k = 0; k < segments; ++k) {
    const double t = 2.0 * M_PI * k / segments;
    v.emplace_back(center.x() + radius * std::cos(t), center.y() + radius * std::sin(t));
  }
  return ClosedPath(std::move(v));
}

double ClosedPath::vertex_parameter(std::size_t i) const {
  return cumulative_[std::min(i, vertices_.size())] / cumulative_.back();
}

Point ClosedPath::at(double s) const {
  const double total = cumulative_.back();
  double t = s - std::floor(s);
  if (s >= 1.0 && t == 0.0) t = 0.0;
  const double target = t * total;
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  std::size_t i = static_cast<std::size_t>(std::distance(cumulative_.begin(), it));
  i = std::clamp<std::size_t>(i, 1, vertices_.size()) - 1;
  const double seg = cumulative_[i + 1] - cumulative_[i];
  const double u = seg > 0.0 ? (target - cumulative_[i]) / seg : 0.0;
  const Point& a = vertices_[i];
  const Point& b = vertices_[(i + 1) % vertices_.size()];
  return a + u * (b - a);
}

double ClosedPath::signed_area() const {
  double a = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Point& p = vertices_[i];
    const Point& q = vertices_[(i + 1) % vertices_.size()];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * a;
}

ClosedPath ClosedPath::reversed() const {
  std::vector<Point> v(vertices_.rbegin(), vertices_.rend());
  return ClosedPath(std::move(v));
}

namespace {

double cross(const Point& a, const Point& b, const Point& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

bool on_segment(const Point& a, const Point& b, const Point& p) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d) {
  const double d1 = cross(c, d, a), d2 = cross(c, d, b);
  const double d3 = cross(a, b, c), d4 = cross(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (p - (a + t * ab)).norm();
}

}  // namespace

bool ClosedPath::is_simple() const {
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i)
    if ((vertices_[(i + 1) % n] - vertices_[i]).norm() == 0.0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = vertices_[i];
    const Point& b = vertices_[(i + 1) % n];
    const Eigen::AlignedBox2d box_ab(a.cwiseMin(b), a.cwiseMax(b));
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the closing edge
      const Point& c = vertices_[j];
      const Point& d = vertices_[(j + 1) % n];
      const Eigen::AlignedBox2d box_cd(c.cwiseMin(d), c.cwiseMax(d));
      if (!box_ab.intersects(box_cd)) continue;
      if (segments_intersect(a, b, c, d)) return false;
    }
  }
  return true;
}

double ClosedPath::distance_to_boundary(const Point& p) const {
  double best = INFINITY;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    best = std::min(best, point_segment_distance(p, vertices_[i],
                                                 vertices_[(i + 1) % vertices_.size()]));
  return best;
}

bool ClosedPath::contains(const Point& p) const {
  if (distance_to_boundary(p) <= 1e-12 * std::max(1.0, bounds().diagonal().norm())) return true;
  int wn = 0;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = vertices_[i];
    const Point& b = vertices_[(i + 1) % n];
    if (a.y() <= p.y()) {
      if (b.y() > p.y() && cross(a, b, p) > 0) ++wn;
    } else if (b.y() <= p.y() && cross(a, b, p) < 0) {
      --wn;
    }
  }
  return wn != 0;
}

Eigen::AlignedBox2d ClosedPath::bounds() const {
  Eigen::AlignedBox2d box;
  for (const auto& v : vertices_) box.extend(v);
  return box;
}

// ------------------------------------------------------ marching squares

std::vector<ClosedPath> level_loops(const std::vector<double>& xs, const std::vector<double>& ys,
                                    const MatrixXd& z, double level) {
  const int nx = static_cast<int>(xs.size()), ny = static_cast<int>(ys.size());
  if (z.rows() != nx || z.cols() != ny) throw DomainError("level_loops: grid shape mismatch");
  // Edge keys: horizontal (i,j)-(i+1,j) → 2·(j·nx+i); vertical (i,j)-(i,j+1) → 2·(j·nx+i)+1.
  auto hkey = [nx](int i, int j) { return 2L * (static_cast<long>(j) * nx + i); };
  auto vkey = [nx](int i, int j) { return 2L * (static_cast<long>(j) * nx + i) + 1; };
  auto above = [&](int i, int j) { return z(i, j) >= level; };
  auto interp = [&](int i0, int j0, int i1, int j1) {
    const double z0 = z(i0, j0), z1 = z(i1, j1);
    const double t = std::clamp((level - z0) / (z1 - z0), 0.0, 1.0);
    return Point(xs[static_cast<std::size_t>(i0)] +
                     t * (xs[static_cast<std::size_t>(i1)] - xs[static_cast<std::size_t>(i0)]),
                 ys[static_cast<std::size_t>(j0)] +
                     t * (ys[static_cast<std::size_t>(j1)] - ys[static_cast<std::size_t>(j0)]));
  };

  std::map<long, Point> points;
  std::unordered_map<long, std::vector<long>> adj;
  auto link = [&](long a, long b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };

  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      const bool c0 = above(i, j), c1 = above(i + 1, j), c2 = above(i + 1, j + 1),
                 c3 = above(i, j + 1);
      // Edges: 0 bottom, 1 right, 2 top, 3 left.
      const long key[4] = {hkey(i, j), vkey(i + 1, j), hkey(i, j + 1), vkey(i, j)};
      const bool cut[4] = {c0 != c1, c1 != c2, c3 != c2, c0 != c3};
      if (cut[0] && !points.count(key[0])) points[key[0]] = interp(i, j, i + 1, j);
      if (cut[1] && !points.count(key[1])) points[key[1]] = interp(i + 1, j, i + 1, j + 1);
      if (cut[2] && !points.count(key[2])) points[key[2]] = interp(i, j + 1, i + 1, j + 1);
      if (cut[3] && !points.count(key[3])) points[key[3]] = interp(i, j, i, j + 1);
      const int ncut = cut[0] + cut[1] + cut[2] + cut[3];
      if (ncut == 2) {
        long ends[2];
        int k = 0;
        for (int e = 0; e < 4; ++e)
          if (cut[e]) ends[k++] = key[e];
        link(ends[0], ends[1]);
      } else if (ncut == 4) {
        const double center = 0.25 * (z(i, j) + z(i + 1, j) + z(i + 1, j + 1) + z(i, j + 1));
        if ((center >= level) == c0) {
          link(key[0], key[1]);  // isolate corner 1
          link(key[2], key[3]);  // isolate corner 3
        } else {
          link(key[3], key[0]);  // isolate corner 0
          link(key[1], key[2]);  // isolate corner 2
        }
      }
    }
  }

  std::vector<ClosedPath> loops;
  std::map<long, bool> visited;
  for (const auto& [start, _] : points) {
    if (visited[start]) continue;
    const auto& nb = adj[start];
    if (nb.size() != 2) {
      visited[start] = true;
      continue;
    }
    std::vector<long> chain = {start};
    visited[start] = true;
    long prev = start, cur = nb[0];
    bool closed = false;
    while (true) {
      if (cur == start) {
        closed = true;
        break;
      }
      if (visited[cur]) break;
      visited[cur] = true;
      chain.push_back(cur);
      const auto& n2 = adj[cur];
      if (n2.size() != 2) break;
      const long next = n2[0] == prev ? n2[1] : n2[0];
      prev = cur;
      cur = next;
    }
    if (!closed || chain.size() < 3) continue;
    std::vector<Point> v;
    v.reserve(chain.size());
    for (long k : chain) {
      const Point& p = points[k];
      if (v.empty() || (p - v.back()).norm() > 1e-14) v.push_back(p);
    }
    while (v.size() > 1 && (v.front() - v.back()).norm() <= 1e-14) v.pop_back();
    if (v.size() >= 3) loops.emplace_back(std::move(v));
  }
  return loops;
}

}  // namespace hopfcert::contour
