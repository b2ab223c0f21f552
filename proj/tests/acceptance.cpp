// SPDX-License-Identifier: Apache-2.0
//
// Acceptance runner: one PASS/FAIL line per criterion, tolerances and runtime
// budgets pinned below. Exit status is the number of failed criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hopfcert/certifier.hpp"
#include "hopfcert/estimator.hpp"
#include "hopfcert/group.hpp"
#include "hopfcert/models.hpp"
#include "hopfcert/oracle.hpp"
#include "hopfcert/spectral.hpp"
#include "support.hpp"

using namespace hopfcert;
using estimator::NormMode;

namespace {

// Pinned tolerances and budgets.
constexpr double kBetaStarTarget = 0.699;
constexpr double kBetaStarTol = 1e-3;
constexpr double kTanResidualTol = 1e-5;
constexpr double kBudget1 = 5.0;
constexpr double kRLo = 0.28, kRHi = 0.30;
constexpr double kBudget2 = 30.0;
constexpr double kClosedFormTol = 1e-5;
constexpr int kClosedFormPoints = 50;
constexpr double kRealPartTol = 1e-9;
constexpr double kMultisetTol = 1e-9;
constexpr double kBudget5 = 120.0;
constexpr int kRandomFamilies = 100;
constexpr double kPopulationTol = 1e-2;
constexpr double kPeriodInflation = 0.1;
constexpr double kBudget9 = 60.0;
constexpr double kProjectorTol = 1e-10;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("FAILED " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto t0 = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double dt = seconds_since(t0);
  if (!out.pass) ++failures;
  std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " ["
            << std::fixed << std::setprecision(2) << dt << " s]" << std::defaultfloat;
  for (const auto& n : out.notes) std::cout << "; " << n;
  std::cout << std::endl;
}

spectral::RestrictedFamily restricted(const config::Config& cfg) {
  return {cfg.spec.family, cfg.spec.space, cfg.spec.symmetry};
}

std::vector<cplx> sorted(std::vector<cplx> v) {
  std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return v;
}

// Greedy nearest matching; returns the worst matched distance.
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (const cplx& x : a) {
    auto it = std::min_element(b.begin(), b.end(),
                               [&](cplx p, cplx q) { return std::abs(p - x) < std::abs(q - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

std::vector<cplx> eigenvalues(const MatrixXd& m) {
  Eigen::EigenSolver<MatrixXd> es(m, false);
  const VectorXc ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

void criterion1(Outcome& out) {
  const auto cfg = testing::vdp_config();
  const auto rf = restricted(cfg);
  const auto t0 = Clock::now();
  const auto m = estimator::minimize_m_on_segment(rf, 0.0, 0.1, 0.999, NormMode::frobenius);
  const double dt = seconds_since(t0);
  const double x = M_PI / m.beta;
  out.note("beta* = " + num(m.beta) + ", tan residual " + num(std::tan(x) - x));
  out.require(std::abs(m.beta - kBetaStarTarget) < kBetaStarTol, "|beta* - 0.699| < 1e-3");
  out.require(std::abs(std::tan(x) - x) < kTanResidualTol, "|tan(pi/beta*) - pi/beta*| < 1e-5");
  out.require(m.interior, "interior minimum");
  out.require(dt < kBudget1, "runtime < 5 s");
}

void criterion2(Outcome& out) {
  const auto t0 = Clock::now();
  const auto fro = certifier::certify(testing::vdp_config("frobenius").spec);
  const auto spe = certifier::certify(testing::vdp_config("spectral").spec);
  const double dt = seconds_since(t0);
  out.require(fro.verdict == "certified", "frobenius verdict certified (got " + fro.verdict + ")");
  out.require(spe.verdict == "certified", "spectral verdict certified (got " + spe.verdict + ")");
  if (!fro.R || !spe.R) {
    out.require(false, "R reported");
    return;
  }
  out.note("R frobenius = " + num(*fro.R) + ", R spectral = " + num(*spe.R));
  out.require(*fro.R >= kRLo && *fro.R <= kRHi, "frobenius R in [0.28, 0.30]");
  out.require(*spe.R >= *fro.R, "spectral R >= frobenius R");
  out.require(fro.domain && fro.domain->strategy == "level-curve", "level-curve domain");
  out.require(dt < kBudget2, "runtime < 30 s");
}

void criterion3(Outcome& out) {
  const auto rf = restricted(testing::vdp_config());
  double worst = 0.0;
  for (int i = 0; i < kClosedFormPoints; ++i) {
    const double beta = 0.3 + (0.95 - 0.3) * i / (kClosedFormPoints - 1);
    const double m = estimator::compute_m(rf, 0.0, beta, NormMode::frobenius).mid();
    const double ref = estimator::m_closed_form_vdp(beta);
    worst = std::max(worst, std::abs(m * m - ref) / ref);
  }
  out.note("max relative error of M^2 = " + num(worst));
  out.require(worst < kClosedFormTol, "relative error < 1e-5 on 50 points");
}

void criterion4(Outcome& out) {
  models::CubeParameters p;  // (R, L, C) = (1, 2, 1), rho = 0.3
  const auto fam = models::cube_family_alpha(p, 0.0, 2.5);
  // Number of non-real eigenvalues of the full 16×16 matrix with Re > 0.
  auto unstable_pairs = [&](double a) {
    int n = 0;
    for (const cplx& z : eigenvalues(fam.at(a)))
      if (std::abs(z.imag()) > 1e-6 && z.real() > 0.0) ++n;
    return n;
  };
  const std::array<int, 4> mult{1, 3, 3, 1};
  for (int j = 0; j < 4; ++j) {
    const double expected = 0.5 + 0.3 * j;
    double lo = expected - 0.1, hi = expected + 0.1;
    const int n_lo = unstable_pairs(lo), n_hi = unstable_pairs(hi);
    out.require(n_hi - n_lo == 2 * mult[static_cast<std::size_t>(j)],
                "eigenvalue count jump 2x" + std::to_string(mult[static_cast<std::size_t>(j)]) +
                    " at j = " + std::to_string(j));
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
      const double mid = 0.5 * (lo + hi);
      (unstable_pairs(mid) == n_lo ? lo : hi) = mid;
    }
    const double a = 0.5 * (lo + hi);
    double re = INFINITY;
    for (const cplx& z : eigenvalues(fam.at(a)))
      if (std::abs(z.imag()) > 1e-6) re = std::min(re, std::abs(z.real()));
    out.require(std::abs(a - expected) < kRealPartTol,
                "Hopf point j = " + std::to_string(j) + " at " + num(expected) + " (got " + num(a) + ")");
    out.require(re < kRealPartTol, "real part residual < 1e-9 at j = " + std::to_string(j));
  }
  for (int k = 0; k < 4; ++k) {
    const double a = 1.0 + 0.3 * k;
    Eigen::JacobiSVD<MatrixXd> svd(fam.at(a));
    const auto& s = svd.singularValues();
    out.require(s(s.size() - 1) < 1e-12 * s(0), "A singular at alpha = " + num(a));
  }
  double worst = 0.0;
  for (double a : {0.37, 0.5, 0.8, 1.0, 1.23, 1.4, 1.9}) {
    std::vector<cplx> blocks;
    for (int k = 0; k < 4; ++k) {
      const auto ev = eigenvalues(models::cube_block(p, a, k));
      for (int r = 0; r < mult[static_cast<std::size_t>(k)]; ++r)
        blocks.insert(blocks.end(), ev.begin(), ev.end());
    }
    worst = std::max(worst, multiset_distance(sorted(blocks), sorted(eigenvalues(fam.at(a)))));
  }
  out.note("block/full multiset distance " + num(worst));
  out.require(worst < kMultisetTol, "block spectra match the full matrix with multiplicities 1,3,3,1");
}

void criterion5(Outcome& out) {
  const auto t0 = Clock::now();
  int runs = 0;
  for (double c : {5.0 / 3.0, 1.0, 2.0, 3.0}) {
    for (const auto& [j, names] : testing::branch_symmetries()) {
      for (const auto& name : names) {
        const auto cfg = testing::cube_config(c, j, name);
        const auto cert = certifier::certify(cfg.spec);
        ++runs;
        const std::string tag = "C = " + num(c) + ", j = " + std::to_string(j) + ", " + name;
        out.require(cert.verdict == "certified", tag + " certified (got " + cert.verdict + ")");
        out.require(cert.t_minus && cert.t_plus && *cert.t_minus != *cert.t_plus,
                    tag + " crossing numbers differ");
        out.require(!cert.fixed_dims.empty() && cert.fixed_dims.front() == 0, tag + " dim V^H = 0");
      }
    }
  }
  const double dt = seconds_since(t0);
  out.note(std::to_string(runs) + " certifications");
  out.require(dt < kBudget5, "runtime < 2 min");
}

void criterion6(Outcome& out) {
  const double q = 0.2;  // an even term breaks the Z2 symmetry
  for (const std::string name : {"+D4dbar", "+D3bar", "+D2dbar", "+Z4cbar", "+Z3tbar"}) {
    const auto cert = certifier::certify(testing::cube_config(1.0, 2, name, false, q).spec);
    out.require(cert.verdict == "certified", "C = 1, j = 2, " + name + " certified (got " + cert.verdict + ")");
  }
  {
    const auto cert = certifier::certify(testing::cube_config(2.0, 2, "+D4dbar", false, q).spec);
    out.require(cert.conditions[1].verdict == certifier::Verdict::violated,
                "C = 2, j = 2, +D4dbar: P1 violated (" + cert.conditions[1].detail + ")");
  }
  {
    const auto cert = certifier::certify(testing::cube_config(2.0, 3, "-S4-bar", false, q).spec);
    out.require(cert.verdict == "certified", "C = 2, j = 3, -S4-bar certified (got " + cert.verdict + ")");
  }
  {
    const auto cert = certifier::certify(testing::cube_config(1.0, 3, "-S4-bar", false, q).spec);
    std::string why;
    for (std::size_t i = 0; i < cert.conditions.size(); ++i)
      if (cert.conditions[i].verdict != certifier::Verdict::verified)
        why += " P" + std::to_string(i) + " " + certifier::to_string(cert.conditions[i].verdict);
    out.require(cert.verdict != "certified", "C = 1, j = 3, -S4-bar not certified (got " + cert.verdict +
                                                 (why.empty() ? std::string() : ":" + why) + ")");
  }
  {
    // Context only: V^H is the constant block here, which is singular at α₃^h exactly when 𝒞 = 3.
    const auto cert = certifier::certify(testing::cube_config(3.0, 3, "-S4-bar", false, q).spec);
    out.note("C = 3, j = 3, -S4-bar: " + cert.verdict + " (P1 " +
             certifier::to_string(cert.conditions[1].verdict) + ")");
  }
}

void criterion7(Outcome& out) {
  // dim of the mode-1 fixed space inside the persistent block V_0 ⊗ ℂ.
  const auto space = group::RepresentationSpace::cube(false);
  MatrixXd v0 = MatrixXd::Zero(16, 2);
  for (int m = 0; m < 8; ++m) {
    v0(2 * m, 0) = 1.0 / std::sqrt(8.0);
    v0(2 * m + 1, 1) = 1.0 / std::sqrt(8.0);
  }
  const MatrixXc p0 = (v0 * v0.transpose()).cast<cplx>();
  // The maximal types of the coupling example; the D3d type is unresolved in
  // the catalog and +D3bar is the expected exception.
  const std::vector<std::string> maximal{"-D4zbar", "-D2dbar", "-Z4cbar", "-Z3tbar", "+D4dbar",
                                         "+D2dbar", "+Z4cbar", "+Z3tbar", "-S4-bar", "+D3bar"};
  std::string dims;
  for (const auto& name : maximal) {
    const auto b = group::fixed_space(space, group::catalog(name), 1);
    int d = 0;
    if (b.dim() > 0) {
      Eigen::JacobiSVD<MatrixXc> svd(p0 * b.columns);
      const auto& s = svd.singularValues();
      for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > 1.0 - 1e-8) ++d;  // unit singular values: directions inside V_0
    }
    dims += " " + name + ":" + std::to_string(d);
    const bool d3 = name.find("D3") != std::string::npos;
    if (d3)
      out.require(d > 0, name + " meets the persistent block");
    else
      out.require(d == 0, name + " misses the persistent block");
  }
  out.note("intersection dims" + dims);
  for (const std::string name : {"-D4zbar", "-S4-bar"}) {
    const auto cert = certifier::certify(testing::coupling_config(name).spec);
    out.require(cert.verdict == "certified", "rho = 0, " + name + " certified (got " + cert.verdict + ")");
    out.require(cert.hopf_point && std::abs(cert.hopf_point->x()) < 1e-8, name + " Hopf point at rho = 0");
  }
}

void criterion8(Outcome& out) {
  std::vector<certifier::Certificate> certs;
  certs.push_back(certifier::certify(testing::vdp_config().spec));
  certs.push_back(certifier::certify(testing::cube_config(5.0 / 3.0, 2, "+D4d").spec));
  certs.push_back(certifier::certify(testing::cube_config(5.0 / 3.0, 1, "-D4z").spec));
  certs.push_back(certifier::certify(testing::cube_config(5.0 / 3.0, 2, "+Z3t").spec));
  for (const auto& c : certs) {
    const auto n1 = c.n_1();
    const bool differ = c.t_minus && c.t_plus && *c.t_minus != *c.t_plus;
    out.require(n1.has_value(), c.symmetry + ": n_1 computed");
    if (n1) out.require((*n1 != 0) == differ, c.symmetry + ": n_1 != 0 iff t_+ != t_-");
  }

  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> dim_pick(1, 4);
  int tested = 0, skipped = 0;
  while (tested < kRandomFamilies) {
    const int n = dim_pick(rng);
    spectral::LinearFamily fam;
    fam.a0 = MatrixXd::NullaryExpr(n, n, [&] { return 2.0 * u(rng); });
    fam.a1 = MatrixXd::Zero(n, n);
    fam.alpha_lo = 0.0;
    fam.alpha_hi = 1.0;
    const auto space = group::RepresentationSpace::generated(
        1, n, {{group::GroupElement::identity(1), MatrixXd::Identity(n, n)}});
    const spectral::RestrictedFamily rf(fam, space, group::trivial_subgroup(1));
    const double tau_max = 0.5 + 2.0 * std::abs(u(rng));
    const double beta_lo = std::abs(u(rng)), beta_hi = beta_lo + 0.5 + 2.0 * std::abs(u(rng));
    int expected = 0;
    bool near_edge = false;
    for (const cplx& z : eigenvalues(fam.a0)) {
      const double t = z.real(), b = z.imag();
      const double edge = std::min({std::abs(t), std::abs(t - tau_max), std::abs(b - beta_lo),
                                    std::abs(b - beta_hi)});
      const bool inside = t > 0.0 && t < tau_max && b > beta_lo && b < beta_hi;
      if (edge < 1e-3 && (inside || (t > -1e-3 && t < tau_max + 1e-3 && b > beta_lo - 1e-3 &&
                                     b < beta_hi + 1e-3)))
        near_edge = true;
      if (inside) ++expected;
    }
    if (near_edge) {
      ++skipped;
      continue;
    }
    const int got = spectral::count_roots_slice(rf, 0.0, tau_max, beta_lo, beta_hi);
    ++tested;
    if (got != expected) {
      out.require(false, "random family " + std::to_string(tested) + ": winding " + std::to_string(got) +
                             " vs eigenvalues " + std::to_string(expected));
    }
  }
  out.note(std::to_string(tested) + " random families, " + std::to_string(skipped) +
           " skipped for eigenvalues within 1e-3 of the box");
}

void criterion9(Outcome& out) {
  const auto t0 = Clock::now();
  const auto cfg = testing::vdp_config();
  const auto cert = certifier::certify(cfg.spec);
  out.require(cert.verdict == "certified" && cert.domain.has_value(), "Van der Pol certified");
  if (!cert.domain) return;
  const auto box = cert.domain->boundary.bounds();
  const double bmin = box.min().y(), bmax = box.max().y();

  oracle::ShootingSystem sys;
  sys.rhs = *cfg.field;
  sys.dim = 2;
  oracle::ContinuationOptions opt;
  opt.alpha_min = -0.2;
  opt.alpha_max = 0.2;
  opt.amplitude_max = 0.35;
  std::vector<oracle::OrbitSample> all;
  for (int dir : {-1, 1}) {
    const auto tr = oracle::continue_branch(sys, 0.01, dir, opt);
    all.insert(all.end(), tr.samples.begin(), tr.samples.end());
  }
  out.require(!all.empty(), "orbits found");
  for (double s : {0.05, 0.1, 0.2, 0.29}) {
    double best = INFINITY;
    for (const auto& o : all) best = std::min(best, std::abs(o.amplitude - s));
    out.require(best < kPopulationTol, "amplitude " + num(s) + " populated (nearest " + num(best) + ")");
  }
  int inside = 0;
  for (const auto& o : all) {
    if (o.alpha < cfg.spec.alpha_lo || o.alpha > cfg.spec.alpha_hi) continue;
    if (cert.R && o.amplitude > *cert.R) continue;
    ++inside;
    const double b = 2.0 * M_PI / o.period;
    out.require(b >= (1.0 - kPeriodInflation) * bmin && b <= (1.0 + kPeriodInflation) * bmax,
                "2pi/period " + num(b) + " inside the inflated beta range");
  }
  out.note(std::to_string(all.size()) + " orbits, " + std::to_string(inside) +
           " inside the certified window");
  out.require(seconds_since(t0) < kBudget9, "runtime < 60 s");
}

void criterion10(Outcome& out) {
  // Truncation doubling keeps the enclosures nested and sound.
  int checks = 0;
  auto series_checks = [&](const spectral::RestrictedFamily& rf, double alpha, double beta,
                           NormMode mode) {
    const auto ref = estimator::m_series(rf, alpha, beta, mode, 4096);
    for (int l = 4; l <= 256; l *= 2) {
      const auto a = estimator::m_series(rf, alpha, beta, mode, l);
      const auto b = estimator::m_series(rf, alpha, beta, mode, 2 * l);
      out.require(a.partial + a.tail_lower <= b.partial + b.tail_lower * (1.0 + 1e-12) + 1e-15,
                  "lower enclosure monotone under doubling");
      out.require(b.partial + b.tail_upper <= (a.partial + a.tail_upper) * (1.0 + 1e-12),
                  "upper enclosure monotone under doubling");
      // Tail bounds against computed tail terms.
      const double computed = ref.partial - a.partial;
      out.require(computed <= a.tail_upper * (1.0 + 1e-12), "tail upper bound dominates");
      out.require(a.tail_lower <= computed + ref.tail_upper, "tail lower bound is sound");
      ++checks;
    }
  };
  series_checks(restricted(testing::vdp_config()), 0.1, 0.7, NormMode::frobenius);
  series_checks(restricted(testing::vdp_config()), -0.3, 1.4, NormMode::spectral);
  for (const std::string name : {"+D4d", "-D4z", "+Z3t"}) {
    const auto cfg = testing::cube_config(5.0 / 3.0, 2, name);
    const auto rf = restricted(cfg);
    for (NormMode mode : {NormMode::frobenius, NormMode::spectral}) series_checks(rf, 1.1, 0.45, mode);
  }

  // Averaging projectors across the catalog.
  const auto space = group::RepresentationSpace::cube(true);
  int projectors = 0;
  double worst = 0.0;
  for (const auto& name : group::catalog_names()) {
    group::TwistedSubgroup h;
    try {
      h = group::catalog(name);
    } catch (const LookupError& e) {
      if (e.unresolved()) continue;
      throw;
    }
    if (h.points() != space.points()) continue;
    for (int l = 0; l <= static_cast<int>(h.phase_period()); ++l) {
      const MatrixXc p = group::averaging_projector(space, h, l);
      worst = std::max(worst, (p * p - p).cwiseAbs().maxCoeff());
      ++projectors;
    }
  }
  out.require(worst < kProjectorTol, "projectors idempotent to 1e-10 (worst " + num(worst) + ")");
  out.note(std::to_string(checks) + " truncation checks, " + std::to_string(projectors) +
           " projectors, worst idempotency defect " + num(worst));
}

}  // namespace

int main() {
  report(1, "Van der Pol minimizer", criterion1);
  report(2, "Van der Pol amplitude bound", criterion2);
  report(3, "closed-form M^2 cross-check", criterion3);
  report(4, "cube spectrum", criterion4);
  report(5, "cube symmetry regression", criterion5);
  report(6, "degenerate discrimination on the O4 model", criterion6);
  report(7, "coupling-strength bifurcation", criterion7);
  report(8, "degree and root counts", criterion8);
  report(9, "oracle population", criterion9);
  report(10, "enclosure properties", criterion10);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures;
}
