// SPDX-License-Identifier: Apache-2.0
#include "hopfcert/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "hopfcert/errors.hpp"

namespace hopfcert::certifier {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

// Threshold comparisons need every digit to be legible.
std::string fmt_full(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string fmt_point(const Point& p) { return "(" + fmt(p.x()) + ", " + fmt(p.y()) + ")"; }

ConditionResult verified(std::string d) { return {Verdict::verified, std::move(d)}; }
ConditionResult violated(std::string d) { return {Verdict::violated, std::move(d)}; }
ConditionResult unverifiable(std::string d) { return {Verdict::unverifiable, std::move(d)}; }

Json number_or_unbounded(double x) {
  if (std::isinf(x)) return "unbounded";
  return x;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::verified:
      return "verified";
    case Verdict::violated:
      return "violated";
    case Verdict::unverifiable:
      return "unverifiable_at_resolution";
  }
  return "unverifiable_at_resolution";
}

// ------------------------------------------------------------- envelope

void NonlinearEnvelope::validate() const {
  switch (kind) {
    case Kind::power:
      if (!(coefficient >= 0.0) || !(exponent >= 0.0))
        throw ConfigError("power envelope needs coefficient >= 0 and exponent >= 0");
      break;
    case Kind::polynomial:
      if (coefficients.empty()) throw ConfigError("polynomial envelope has no coefficients");
      for (double c : coefficients)
        if (!(c >= 0.0)) throw ConfigError("polynomial envelope coefficients must be >= 0");
      break;
    case Kind::table:
      if (table.size() < 2) throw ConfigError("table envelope needs at least two samples");
      if (table.front().first != 0.0) throw ConfigError("table envelope must start at s = 0");
      for (std::size_t i = 0; i < table.size(); ++i) {
        if (!(table[i].second >= 0.0)) throw ConfigError("table envelope values must be >= 0");
        if (i > 0 && !(table[i].first > table[i - 1].first && table[i].second >= table[i - 1].second))
          throw ConfigError("table envelope must be strictly increasing in s and nondecreasing in g");
      }
      break;
    case Kind::explicit_bound:
      if (pieces.empty()) throw ConfigError("explicit envelope has no N(alpha) pieces");
      for (const auto& p : pieces)
        if (!(p.alpha_hi >= p.alpha_lo) || !(p.n >= 0.0))
          throw ConfigError("explicit envelope pieces need alpha_lo <= alpha_hi and N >= 0");
      if (!(r >= 0.0) || !(R > r)) throw ConfigError("explicit envelope needs 0 <= r < R");
      break;
  }
}

double NonlinearEnvelope::g(double s) const {
  switch (kind) {
    case Kind::power:
      return exponent == 0.0 ? coefficient : coefficient * std::pow(s, exponent);
    case Kind::polynomial: {
      double acc = 0.0;
      for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * s + *it;
      return acc;
    }
    case Kind::table: {
      if (s > table.back().first) return kInf;
      auto hi = std::lower_bound(table.begin(), table.end(), s,
                                 [](const auto& e, double x) { return e.first < x; });
      if (hi == table.begin()) return hi->second;
      auto lo = hi - 1;
      const double t = (s - lo->first) / (hi->first - lo->first);
      return lo->second + t * (hi->second - lo->second);
    }
    case Kind::explicit_bound: {
      double n = 0.0;
      for (const auto& p : pieces) n = std::max(n, p.n);
      return n;
    }
  }
  return kInf;
}

bool NonlinearEnvelope::constant() const {
  switch (kind) {
    case Kind::power:
      return exponent == 0.0 || coefficient == 0.0;
    case Kind::polynomial:
      return std::all_of(coefficients.begin() + 1, coefficients.end(),
                         [](double c) { return c == 0.0; });
    case Kind::table:
      return false;
    case Kind::explicit_bound:
      return true;
  }
  return false;
}

std::string NonlinearEnvelope::kind_name() const {
  switch (kind) {
    case Kind::power:
      return "power";
    case Kind::polynomial:
      return "polynomial";
    case Kind::table:
      return "table";
    case Kind::explicit_bound:
      return "explicit";
  }
  return "power";
}

Json NonlinearEnvelope::to_json() const {
  Json j;
  j["kind"] = kind_name();
  switch (kind) {
    case Kind::power:
      j["coefficient"] = coefficient;
      j["exponent"] = exponent;
      break;
    case Kind::polynomial:
      j["coefficients"] = coefficients;
      break;
    case Kind::table: {
      Json rows = Json::array();
      for (const auto& [s, v] : table) rows.push_back({s, v});
      j["table"] = rows;
      break;
    }
    case Kind::explicit_bound: {
      Json rows = Json::array();
      for (const auto& p : pieces)
        rows.push_back(Json{{"alpha_lo", p.alpha_lo}, {"alpha_hi", p.alpha_hi}, {"N", p.n}});
      j["pieces"] = rows;
      j["r"] = r;
      j["R"] = number_or_unbounded(R);
      break;
    }
  }
  return j;
}

std::optional<double> invert_envelope(const NonlinearEnvelope& env, double threshold) {
  if (!(env.g(0.0) < threshold)) return std::nullopt;
  if (env.constant()) return kInf;
  double lo = 0.0, hi = 1.0;
  if (env.kind == NonlinearEnvelope::Kind::table) {
    hi = env.table.back().first;
    if (env.g(hi) < threshold) return hi;
  } else {
    int doublings = 0;
    while (env.g(hi) < threshold) {
      lo = hi;
      hi *= 2.0;
      if (++doublings > 200) return kInf;
    }
  }
  // Invariant: g(lo) < 𝒩 ≤ g(hi).
  while (hi - lo > 1e-14 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (env.g(mid) < threshold)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

// --------------------------------------------------------------- checks

ConditionResult check_p1(const ProblemSpec& spec, const spectral::RestrictedFamily& rf) {
  const int d0 = rf.dim(0);
  if (d0 == 0) return verified("V^H = {0}: Lambda_0 is the empty determinant 1 on the whole interval");
  auto f = [&](double a) { return rf.lambda(0, {a, 0.0, 0.0}).real(); };
  const auto scan = contour::scan_interval(f, spec.alpha_lo, spec.alpha_hi, 256, 20,
                                           spec.tol.p1_abs_floor);
  switch (scan.outcome) {
    case contour::ScanOutcome::clean:
      return verified("dim V^H = " + std::to_string(d0) + "; det A|V^H keeps one sign on [" +
                      fmt(spec.alpha_lo) + ", " + fmt(spec.alpha_hi) + "], min |det| = " +
                      fmt(scan.min_modulus));
    case contour::ScanOutcome::zero:
      return violated("dim V^H = " + std::to_string(d0) + "; det A|V^H vanishes at " +
                      spec.parameter + " = " + fmt(scan.where) +
                      " (steady-state bifurcation inside the interval)");
    case contour::ScanOutcome::unresolved:
      break;
  }
  return unverifiable("det A|V^H could not be separated from 0 near " + spec.parameter + " = " +
                      fmt(scan.where));
}

P2Result check_p2(const ProblemSpec& spec, const spectral::RestrictedFamily& rf,
                  const spectral::RegionP& region) {
  P2Result out;
  if (rf.dim(1) == 0) {
    out.t_minus = 0;
    out.t_plus = 0;
    out.condition = violated("V_1^{H^phi} = {0}: Lambda_1 has no roots, so t_- = t_+ = 0");
    return out;
  }
  const double a0 = region.alpha_lo, a1 = region.alpha_hi;
  const double tmax = region.tau_max, blo = region.beta_min, bhi = region.beta_max;

  struct Face {
    const char* name;
    std::function<cplx(const Point&)> f;
    Point lo, hi;
    bool bottom;
  };
  const std::vector<Face> faces = {
      {"tau = tau*", [&](const Point& q) { return rf.lambda(1, {q.x(), tmax, q.y()}); },
       Point(a0, blo), Point(a1, bhi), false},
      {"beta = beta*", [&](const Point& q) { return rf.lambda(1, {q.x(), q.y(), bhi}); },
       Point(a0, 0.0), Point(a1, tmax), false},
      {"beta = beta_min", [&](const Point& q) { return rf.lambda(1, {q.x(), q.y(), blo}); },
       Point(a0, 0.0), Point(a1, tmax), true},
  };
  for (const auto& face : faces) {
    const auto res = contour::scan_rectangle(face.f, face.lo, face.hi, spec.tol.faces);
    if (res.outcome == contour::ScanOutcome::clean) continue;
    out.bottom_face_failed = face.bottom;
    const std::string where = "(" + spec.parameter + ", second coordinate) = " + fmt_point(res.where);
    if (res.outcome == contour::ScanOutcome::zero)
      out.condition = violated(std::string("Lambda_1 vanishes on the face ") + face.name + " near " +
                               where + "; increase the margin of P");
    else
      out.condition = unverifiable(std::string("Lambda_1 not separated from 0 on the face ") +
                                   face.name + " near " + where);
    return out;
  }

  try {
    out.t_minus = spectral::count_roots_slice(rf, a0, tmax, blo, bhi, spec.tol.winding);
    out.t_plus = spectral::count_roots_slice(rf, a1, tmax, blo, bhi, spec.tol.winding);
  } catch (const ZeroOnContourError& e) {
    out.condition = violated(std::string("root of Lambda_1 on the boundary of an end slice: ") + e.what());
    return out;
  } catch (const ResolutionError& e) {
    out.condition = unverifiable(std::string("end-slice root count unresolved: ") + e.what());
    return out;
  }
  const std::string counts = "t_- = " + std::to_string(*out.t_minus) +
                             ", t_+ = " + std::to_string(*out.t_plus);
  if (*out.t_minus == *out.t_plus)
    out.condition = violated("faces clean but " + counts + ": no net crossing of the imaginary axis");
  else
    out.condition = verified("faces tau = tau*, beta = beta*, beta = beta_min clean; " + counts);
  return out;
}

P3Result check_p3(const ProblemSpec& spec, const spectral::RestrictedFamily& rf,
                  const spectral::DomainD& d, const spectral::RegionP& region) {
  P3Result out;
  const auto& path = d.boundary;
  if (path.size() < 3 || !path.is_simple()) {
    out.condition = violated("boundary of D is not a simple closed polygon");
    return out;
  }
  for (const auto& v : path.vertices()) {
    if (v.x() < region.alpha_lo || v.x() > region.alpha_hi || !(v.y() > region.beta_min) ||
        v.y() > region.beta_max) {
      out.condition = violated("boundary vertex " + fmt_point(v) + " leaves P_0 = [" +
                               fmt(region.alpha_lo) + ", " + fmt(region.alpha_hi) + "] x (" +
                               fmt(region.beta_min) + ", " + fmt(region.beta_max) + "]");
      return out;
    }
  }

  // (ii) Roots of Λ_1 in P_0 must be exactly those in closure(D).
  out.axis_roots = spectral::imaginary_axis_roots(rf, 1, region.alpha_lo, region.alpha_hi,
                                                  region.beta_min, region.beta_max,
                                                  spec.tol.axis_grid);
  const double edge_tol = 1e-9 * (1.0 + path.bounds().diagonal().norm());
  for (const auto& root : out.axis_roots) {
    const Point p(root.alpha, root.beta);
    const bool inside = d.contains(p);
    const double dist = path.distance_to_boundary(p);
    if (inside && dist > edge_tol) continue;
    out.condition = violated(std::string(inside ? "root of Lambda_1 on the boundary of D at "
                                                : "root of Lambda_1 in P_0 outside D at ") +
                             fmt_point(p) + (root.persistent ? " (persistent along the axis)" : ""));
    return out;
  }

  // (iii) Λ_l ≠ 0 on ∂D for every l; modes above L* are nonsingular since
  // lβ > ‖A_r(α)‖ there.
  double norm_max = 0.0, beta_min = kInf, span = 0.0;
  const auto& vs = path.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    norm_max = std::max(norm_max, rf.restricted_norm(vs[i].x()));
    beta_min = std::min(beta_min, vs[i].y());
    span = std::max(span, std::abs(vs[(i + 1) % vs.size()].x() - vs[i].x()));
  }
  norm_max += spectral_norm(rf.family().a1) * span;
  out.mode_cap = static_cast<int>(std::ceil(norm_max / beta_min)) + 1;
  if (out.mode_cap > 100000) {
    out.condition = unverifiable("mode cap L* = " + std::to_string(out.mode_cap) + " is too large");
    return out;
  }
  for (int l = 1; l <= out.mode_cap; ++l) {
    try {
      out.n_l.emplace_back(l, spectral::n_l(rf, d, l, spec.tol.winding));
    } catch (const ZeroOnContourError& e) {
      out.condition = violated("Lambda_" + std::to_string(l) + " vanishes on the boundary of D at " +
                               fmt_point(path.at(e.parameter())));
      return out;
    } catch (const ResolutionError& e) {
      out.condition = unverifiable("winding of Lambda_" + std::to_string(l) +
                                   " unresolved along the boundary of D: " + e.what());
      return out;
    }
  }
  // Resonances: a root of Λ_l, l ≥ 2, inside D is rejected even though only
  // the boundary condition enters the degree.
  const auto box = path.bounds();
  for (int l = 2; l <= out.mode_cap; ++l) {
    if (rf.dim(l) == 0) continue;
    const auto roots = spectral::imaginary_axis_roots(
        rf, l, std::max(box.min().x(), region.alpha_lo), std::min(box.max().x(), region.alpha_hi),
        box.min().y(), box.max().y(), spec.tol.axis_grid);
    for (const auto& root : roots) {
      const Point p(root.alpha, root.beta);
      if (!d.contains(p)) continue;
      out.condition = violated("resonance: Lambda_" + std::to_string(l) + " vanishes inside D at " +
                               fmt_point(p));
      return out;
    }
  }
  out.condition = verified("boundary simple inside P_0; " + std::to_string(out.axis_roots.size()) +
                           " root(s) of Lambda_1 in P_0, all interior to D; Lambda_l nonzero on the "
                           "boundary for l = 1.." + std::to_string(out.mode_cap) +
                           " and beyond by the norm bound; no resonance inside D");
  return out;
}

P45Result check_p4_p5(const ProblemSpec& spec, const spectral::RestrictedFamily& rf,
                      const spectral::DomainD& d) {
  P45Result out;
  const auto& env = spec.envelope;
  try {
    env.validate();
  } catch (const ConfigError& e) {
    out.p4 = violated(e.what());
    out.p5 = unverifiable("no valid envelope");
    return out;
  }
  try {
    const auto th = estimator::threshold_n(rf, d, spec.mode, spec.tol.m_rel_tol);
    out.threshold = th.n;
    out.m_max = th.m_max;
    out.m_max_at = th.where;
  } catch (const ResonanceError& e) {
    out.p4 = verified("envelope " + env.kind_name());
    out.p5 = violated(std::string("M is infinite on the boundary of D: ") + e.what());
    return out;
  } catch (const Error& e) {
    out.p4 = verified("envelope " + env.kind_name());
    out.p5 = unverifiable(std::string("threshold N not computed: ") + e.what());
    return out;
  }
  const double nth = *out.threshold;

  if (env.kind == NonlinearEnvelope::Kind::explicit_bound) {
    double n_max = 0.0;
    double covered = spec.alpha_lo;
    auto pieces = env.pieces;
    std::sort(pieces.begin(), pieces.end(),
              [](const auto& a, const auto& b) { return a.alpha_lo < b.alpha_lo; });
    for (const auto& p : pieces) {
      if (p.alpha_hi < spec.alpha_lo || p.alpha_lo > spec.alpha_hi) continue;
      if (p.alpha_lo > covered) break;
      covered = std::max(covered, p.alpha_hi);
      n_max = std::max(n_max, p.n);
    }
    if (covered < spec.alpha_hi) {
      out.p4 = violated("explicit N(alpha) does not cover the parameter interval beyond " + fmt(covered));
      out.p5 = unverifiable("N(alpha) undefined on part of the interval");
      return out;
    }
    out.n_value = n_max;
    out.r = env.r;
    out.R = env.R;
    out.p4 = verified("explicit bound |f| <= N(alpha) max{r, |x|} for |x| <= R with r = " + fmt(env.r) +
                      ", R = " + fmt(env.R));
    if (n_max < nth)
      out.p5 = verified("max N = " + fmt_full(n_max) + " < threshold " + fmt_full(nth));
    else
      out.p5 = violated("max N = " + fmt_full(n_max) + " >= threshold " + fmt_full(nth));
    return out;
  }

  out.p4 = verified("|f(alpha, x)| <= g(|x|) |x| with g nondecreasing (" + env.kind_name() +
                    "), hence N = g(R) and r = 0");
  const auto big_r = invert_envelope(env, nth);
  if (!big_r || !(*big_r > 0.0)) {
    out.p5 = violated("g(0) = " + fmt(env.g(0.0)) + " is not below the threshold " + fmt(nth));
    return out;
  }
  out.r = 0.0;
  out.R = *big_r;
  out.n_value = std::isinf(*big_r) ? env.g(0.0) : env.g(*big_r);
  out.p5 = verified("N = g(R) = " + fmt_full(*out.n_value) + " < threshold " + fmt_full(nth) +
                    (std::isinf(*big_r) ? " globally (unbounded branch)" : " at R = " + fmt(*big_r)));
  return out;
}

std::optional<Point> detect_hopf_point(const ProblemSpec& spec, const spectral::RestrictedFamily& rf,
                                       const spectral::RegionP& region) {
  const auto roots = spectral::imaginary_axis_roots(rf, 1, region.alpha_lo, region.alpha_hi,
                                                    region.beta_min, region.beta_max,
                                                    spec.tol.axis_grid);
  const double mid = 0.5 * (region.alpha_lo + region.alpha_hi);
  std::optional<Point> best;
  for (const auto& r : roots) {
    if (r.persistent) continue;
    if (!best || std::abs(r.alpha - mid) < std::abs(best->x() - mid)) best = Point(r.alpha, r.beta);
  }
  return best;
}

// ---------------------------------------------------------- certificate

std::optional<int> Certificate::n_1() const {
  for (const auto& [l, n] : n_l)
    if (l == 1) return n;
  return std::nullopt;
}

Json Certificate::to_json() const {
  Json j;
  j["tool"] = "hopfcert";
  j["version"] = "0.1.0";
  j["verdict"] = verdict;
  j["symmetry"] = Json{{"name", symmetry},
                       {"order", symmetry_order},
                       {"phase_period", phase_period},
                       {"fixed_space_dims", fixed_dims}};
  j["model"] = header;
  j["parameter"] = Json{{"name", parameter}, {"interval", {alpha_lo, alpha_hi}}};
  j["norm_mode"] = estimator::to_string(mode);
  j["interpretation"] = notes;

  if (region)
    j["region_p"] = Json{{"alpha", {region->alpha_lo, region->alpha_hi}},
                         {"tau", {0.0, region->tau_max}},
                         {"beta", {region->beta_min, region->beta_max}}};
  else
    j["region_p"] = nullptr;
  j["hopf_point"] = hopf_point ? Json{hopf_point->x(), hopf_point->y()} : Json(nullptr);

  if (domain) {
    const auto box = domain->boundary.bounds();
    Json dj;
    dj["strategy"] = domain->strategy;
    if (domain->strategy == "disk")
      dj["radius"] = domain->level;
    else
      dj["level"] = domain->level;
    dj["alpha_range"] = {box.min().x(), box.max().x()};
    dj["beta_range"] = {box.min().y(), box.max().y()};
    dj["period_range"] = {2.0 * M_PI / box.max().y(), 2.0 * M_PI / box.min().y()};
    if (minimum)
      dj["segment_minimum"] = Json{{"beta", minimum->beta},
                                   {"m_lower", minimum->m.lower},
                                   {"m_upper", minimum->m.upper},
                                   {"interior", minimum->interior}};
    Json verts = Json::array();
    for (const auto& v : domain->boundary.vertices()) verts.push_back({v.x(), v.y()});
    dj["orientation"] = "counterclockwise";
    dj["vertices"] = verts;
    j["domain_d"] = dj;
  } else {
    j["domain_d"] = nullptr;
  }

  Json conds;
  for (std::size_t i = 0; i < conditions.size(); ++i)
    conds["P" + std::to_string(i)] =
        Json{{"verdict", to_string(conditions[i].verdict)}, {"detail", conditions[i].detail}};
  j["conditions"] = conds;

  auto opt_int = [](const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); };
  j["t_minus"] = opt_int(t_minus);
  j["t_plus"] = opt_int(t_plus);
  j["n_0"] = opt_int(n_0);
  j["mode_cap"] = mode_cap;
  Json nl = Json::array();
  for (const auto& [l, n] : n_l) nl.push_back(Json{{"l", l}, {"n", n}});
  j["n_l"] = nl;
  const auto n1 = n_1();
  Json deg;
  deg["n_1"] = opt_int(n1);
  if (t_minus && t_plus) deg["t_minus_minus_t_plus"] = *t_minus - *t_plus;
  if (n1 && *n1 != 0 && t_minus && t_plus)
    deg["ratio"] = static_cast<double>(*t_minus - *t_plus) / *n1;
  if (n1 && t_minus && t_plus) deg["consistent"] = ((*n1 != 0) == (*t_minus != *t_plus));
  j["degree_count"] = deg;

  Json roots = Json::array();
  for (const auto& r : axis_roots)
    roots.push_back(Json{{"alpha", r.alpha}, {"beta", r.beta}, {"persistent", r.persistent}});
  j["axis_roots"] = roots;

  j["threshold_N"] = threshold ? Json(*threshold) : Json(nullptr);
  j["m_max"] = m_max ? Json(*m_max) : Json(nullptr);
  j["envelope"] = envelope.to_json();
  j["r"] = r ? Json(*r) : Json(nullptr);
  j["R"] = R ? number_or_unbounded(*R) : Json(nullptr);
  j["diagnostics"] = diagnostics;
  return j;
}

std::string Certificate::serialize() const { return to_json().dump(2) + "\n"; }

int exit_code(const std::string& verdict) {
  if (verdict == "certified") return 0;
  if (verdict == "violated") return 2;
  if (verdict == "unverifiable_at_resolution") return 4;
  return 3;
}

std::string overall_verdict(const std::array<ConditionResult, 6>& c, std::optional<int> t_minus,
                            std::optional<int> t_plus, std::optional<double> r,
                            std::optional<double> R) {
  bool any_violated = false, all_verified = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    any_violated = any_violated || c[i].verdict == Verdict::violated;
    all_verified = all_verified && c[i].verdict == Verdict::verified;
  }
  const bool crossing = t_minus && t_plus && *t_minus != *t_plus;
  const bool radii = r && R && *r < *R;
  if (all_verified && crossing && radii) return "certified";
  if (any_violated || (all_verified && !crossing)) return "violated";
  if (all_verified && !radii) return "violated";
  return "unverifiable_at_resolution";
}

Certificate certify(const ProblemSpec& spec) {
  Certificate cert;
  cert.symmetry = spec.symmetry.name();
  cert.symmetry_order = spec.symmetry.order();
  cert.parameter = spec.parameter;
  cert.alpha_lo = spec.alpha_lo;
  cert.alpha_hi = spec.alpha_hi;
  cert.mode = spec.mode;
  cert.envelope = spec.envelope;
  cert.header = spec.header;
  for (auto& c : cert.conditions) c = unverifiable("not reached");

  auto invalid = [&](const std::string& why) {
    cert.verdict = "invalid_input";
    cert.diagnostics.push_back(why);
    for (auto& c : cert.conditions) c = unverifiable("not evaluated: invalid input");
    return cert;
  };

  // Validation: nondegenerate interval, equivariance witness, symmetry
  // compatible with the representation.
  if (!(spec.alpha_lo < spec.alpha_hi)) return invalid("parameter interval is empty or degenerate");
  if (spec.family.dim() != spec.space.dim())
    return invalid("family dimension " + std::to_string(spec.family.dim()) +
                   " differs from the representation dimension " + std::to_string(spec.space.dim()));
  if (spec.symmetry.points() != spec.space.points())
    return invalid("symmetry acts on " + std::to_string(spec.symmetry.points()) +
                   " points but the representation on " + std::to_string(spec.space.points()));
  for (const auto& h : spec.symmetry.elements())
    if (!spec.space.contains(h)) return invalid("symmetry element " + h.str() + " is not in the group");
  const double eq = spectral::equivariance_residual(spec.family, spec.space);
  if (!(eq < spec.tol.equivariance))
    return invalid("A(alpha) is not equivariant: commutator residual " + fmt(eq));
  try {
    spec.envelope.validate();
  } catch (const ConfigError& e) {
    return invalid(e.what());
  }

  std::optional<spectral::RestrictedFamily> rf;
  try {
    rf.emplace(spec.family, spec.space, spec.symmetry);
  } catch (const Error& e) {
    return invalid(e.what());
  }
  cert.phase_period = rf->period();
  for (int l = 0; l < rf->period(); ++l) cert.fixed_dims.push_back(rf->dim(l));
  if (rf->dim(0) == 0 && rf->all_modes_empty())
    return invalid("every fixed space of " + spec.symmetry.name() + " is {0}, so M vanishes identically");

  cert.notes.push_back(
      "M(alpha, beta) is the square root of the Fourier-mode series sum_l |Delta_l^{-1}|^2; for the "
      "Van der Pol family 1 + (pi/beta csc(pi/beta))^2 equals M(0, beta)^2 in frobenius mode");
  cert.notes.push_back(
      "n_l is the winding number of Lambda_l(alpha, 0, beta) along the boundary of D, oriented "
      "counterclockwise in the (parameter, beta) plane");
  cert.notes.push_back(
      "t_- and t_+ count roots of Lambda_1 with tau in (0, tau*) and beta in (beta_min, beta*) at "
      "the interval endpoints");
  cert.notes.push_back("symmetry convention: h x(t - phi(h) p) = x(t) for (h, phi(h)) in H^phi");
  cert.conditions[0] = verified(
      "A(alpha) is affine in the parameter and the envelope bound is continuous; continuity holds by "
      "construction");

  try {
    spectral::RegionP region = spectral::build_region(spec.family, spec.alpha_lo, spec.alpha_hi);
    cert.region = region;
    cert.conditions[1] = check_p1(spec, *rf);

    if (spec.hopf_hint) {
      cert.hopf_point = *spec.hopf_hint;
      const Point& h = *spec.hopf_hint;
      if (h.x() < spec.alpha_lo || h.x() > spec.alpha_hi || !(h.y() > 0.0) || h.y() > region.beta_max)
        return invalid("Hopf hint " + fmt_point(h) + " lies outside P_0");
    } else {
      cert.hopf_point = detect_hopf_point(spec, *rf, region);
      if (!cert.hopf_point)
        cert.diagnostics.push_back("no crossing of the imaginary axis by a restricted eigenvalue");
    }

    if (cert.hopf_point) {
      try {
        auto build = estimator::build_domain_d(*rf, *cert.hopf_point, spec.mode, spec.domain);
        cert.domain = build.domain;
        cert.minimum = build.minimum;
      } catch (const ConfigError& e) {
        return invalid(e.what());
      } catch (const Error& e) {
        cert.diagnostics.push_back(std::string("domain D: ") + e.what());
      }
    }

    P2Result p2 = check_p2(spec, *rf, region);
    if (p2.bottom_face_failed && cert.domain) {
      const double bmin = cert.domain->boundary.bounds().min().y();
      for (double frac : {0.5, 0.25, 0.75}) {
        spectral::RegionP trial = region;
        trial.beta_min = frac * bmin;
        P2Result retry = check_p2(spec, *rf, trial);
        if (retry.bottom_face_failed || !retry.t_minus) continue;
        cert.notes.push_back("beta_min raised from 0 to " + fmt(trial.beta_min) +
                             " because Lambda_1 vanishes on the face beta = 0 (real eigenvalues)");
        region = trial;
        p2 = retry;
        break;
      }
    }
    cert.region = region;
    cert.conditions[2] = p2.condition;
    cert.t_minus = p2.t_minus;
    cert.t_plus = p2.t_plus;

    if (cert.domain) {
      P3Result p3 = check_p3(spec, *rf, *cert.domain, region);
      cert.conditions[3] = p3.condition;
      cert.mode_cap = p3.mode_cap;
      cert.n_l = p3.n_l;
      cert.axis_roots = p3.axis_roots;

      P45Result p45 = check_p4_p5(spec, *rf, *cert.domain);
      cert.conditions[4] = p45.p4;
      cert.conditions[5] = p45.p5;
      cert.threshold = p45.threshold;
      cert.m_max = p45.m_max;
      cert.r = p45.r;
      cert.R = p45.R;
      const auto box = cert.domain->boundary.bounds();
      cert.notes.push_back("minimal periods of the branch lie in [" + fmt(2.0 * M_PI / box.max().y()) +
                           ", " + fmt(2.0 * M_PI / box.min().y()) + "] from the beta range of D");
    } else {
      const std::string why = cert.hopf_point ? "domain D could not be built"
                                              : "no Hopf point to enclose";
      cert.conditions[3] = cert.hopf_point ? unverifiable(why) : violated(why);
      cert.conditions[4] = unverifiable(why);
      cert.conditions[5] = unverifiable(why);
    }

    if (cert.conditions[1].verdict == Verdict::verified) {
      try {
        cert.n_0 = spectral::n_0(*rf, spec.alpha_lo);
      } catch (const Error& e) {
        cert.diagnostics.push_back(std::string("n_0: ") + e.what());
      }
    }
  } catch (const std::exception& e) {
    cert.diagnostics.push_back(std::string("numerical failure: ") + e.what());
  }

  cert.verdict = overall_verdict(cert.conditions, cert.t_minus, cert.t_plus, cert.r, cert.R);
  return cert;
}

}  // namespace hopfcert::certifier
