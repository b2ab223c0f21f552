// SPDX-License-Identifier: Apache-2.0
#include "hopfcert/spectral.hpp"

#include <algorithm>

#include "hopfcert/errors.hpp"

namespace hopfcert::spectral {

double equivariance_residual(const LinearFamily& fam, const group::RepresentationSpace& space) {
  const auto& gens = fam.witnesses.empty() ? space.generators() : fam.witnesses;
  double worst = 0.0;
  for (int k = 0; k <= 4; ++k) {
    const double alpha = fam.alpha_lo + (fam.alpha_hi - fam.alpha_lo) * k / 4.0;
    const MatrixXd a = fam.at(alpha);
    for (const auto& g : gens) {
      const MatrixXd& r = space.action(g);
      worst = std::max(worst, (a * r - r * a).norm());
    }
  }
  return worst;
}

RegionP build_region(const LinearFamily& fam, double alpha_lo, double alpha_hi) {
  constexpr int kGrid = 64;
  double worst = 0.0;
  for (int k = 0; k < kGrid; ++k) {
    const double alpha = alpha_lo + (alpha_hi - alpha_lo) * k / (kGrid - 1);
    worst = std::max(worst, spectral_norm(fam.at(alpha)));
  }
  const double lipschitz = spectral_norm(fam.a1) * (alpha_hi - alpha_lo) / (kGrid - 1);
  const double bound = 1.5 * (1.0 + worst + lipschitz);
  return {alpha_lo, alpha_hi, bound, 0.0, bound};
}

// ---------------------------------------------------- RestrictedFamily

RestrictedFamily::RestrictedFamily(const LinearFamily& fam, const group::RepresentationSpace& space,
                                   const group::TwistedSubgroup& h)
    : fam_(fam), symmetry_(h.name()) {
  if (fam.a0.rows() != space.dim() || fam.a0.cols() != space.dim() || fam.a1.rows() != space.dim() ||
      fam.a1.cols() != space.dim())
    throw StructuralError("family dimension does not match the representation space");
  const auto p = h.phase_period();
  if (p > 1000) throw StructuralError(h.name() + ": phase period too large");
  period_ = static_cast<int>(p);
  for (int r = 0; r < period_; ++r) {
    bases_.push_back(group::fixed_space(space, h, r));
    const MatrixXc& b = bases_.back().columns;
    r0_.push_back(b.adjoint() * fam.a0.cast<cplx>() * b);
    r1_.push_back(b.adjoint() * fam.a1.cast<cplx>() * b);
  }
}

int RestrictedFamily::max_dim() const {
  int d = 0;
  for (const auto& b : bases_) d = std::max(d, b.dim());
  return d;
}

bool RestrictedFamily::all_modes_empty() const {
  // Residue 0 also covers l = period, 2·period, ...
  for (const auto& b : bases_)
    if (b.dim() > 0) return false;
  return true;
}

MatrixXc RestrictedFamily::restricted(int l, double alpha) const {
  const auto r = static_cast<std::size_t>(residue(l));
  return r0_[r] + alpha * r1_[r];
}

MatrixXc RestrictedFamily::delta(int l, const ParameterPoint& p) const {
  MatrixXc m = -restricted(l, p.alpha);
  m.diagonal().array() += static_cast<double>(l) * cplx(p.tau, p.beta);
  return m;
}

cplx RestrictedFamily::lambda(int l, const ParameterPoint& p) const {
  if (dim(l) == 0) return 1.0;
  if (l == 0) return restricted(0, p.alpha).determinant();
  return delta(l, p).determinant();
}

double RestrictedFamily::restricted_norm(double alpha) const {
  double n = 0.0;
  for (std::size_t r = 0; r < bases_.size(); ++r)
    if (bases_[r].dim() > 0) n = std::max(n, spectral_norm(r0_[r] + alpha * r1_[r]));
  return n;
}

// ----------------------------------------------------- free functions

MatrixXc delta_l(const LinearFamily& fam, const group::FixedSpaceBasis& basis,
                 const ParameterPoint& p, int l) {
  const MatrixXc& b = basis.columns;
  MatrixXc m = -(b.adjoint() * fam.at(p.alpha).cast<cplx>() * b);
  m.diagonal().array() += static_cast<double>(l) * cplx(p.tau, p.beta);
  return m;
}

cplx lambda_l(const RestrictedFamily& rf, const ParameterPoint& p, int l) { return rf.lambda(l, p); }

int count_roots_slice(const RestrictedFamily& rf, double alpha, double tau_max, double beta_lo,
                      double beta_hi, const contour::WindingOptions& opt) {
  if (rf.dim(1) == 0) return 0;
  const MatrixXc a = rf.restricted(1, alpha);
  auto f = [&](const Point& q) {
    MatrixXc m = -a;
    m.diagonal().array() += cplx(q.x(), q.y());
    return m.determinant();
  };
  return contour::winding_number(
      f, ClosedPath::rectangle(Point(0.0, beta_lo), Point(tau_max, beta_hi)), opt);
}

std::vector<cplx> eig_oracle(const MatrixXc& m) {
  if (m.rows() == 0) return {};
  Eigen::ComplexEigenSolver<MatrixXc> es(m, true);
  if (es.info() != Eigen::Success) throw NumericalFailure("eigenvalue oracle did not converge");
  std::vector<cplx> out;
  const double scale = std::max(1.0, m.norm());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const cplx lam = es.eigenvalues()(i);
    const VectorXc v = es.eigenvectors().col(i).normalized();
    if ((m * v - lam * v).norm() > 1e-8 * scale)
      throw NumericalFailure("eigenvalue oracle residual too large");
    out.push_back(lam);
  }
  return out;
}

int n_l(const RestrictedFamily& rf, const DomainD& dom, int l, const contour::WindingOptions& opt,
        std::vector<contour::WindingSample>* trace) {
  if (l < 1) throw DomainError("n_l requires l ≥ 1");
  if (rf.dim(l) == 0) {
    if (trace) trace->clear();
    return 0;
  }
  const auto box = dom.boundary.bounds();
  if (!(box.min().y() > 0.0)) throw DomainError("domain boundary must satisfy β > 0");
  auto f = [&](const Point& q) { return rf.lambda(l, {q.x(), 0.0, q.y()}); };
  return contour::winding_number(f, dom.boundary, opt, trace);
}

int n_0(const RestrictedFamily& rf, double alpha) {
  const int d = rf.dim(0);
  if (d == 0) return 1;
  const MatrixXc a = rf.restricted(0, alpha);
  const double det = (-a).determinant().real();
  if (std::abs(det) < 1e-12) throw DomainError("det(-A|V^H) vanishes at alpha = " + std::to_string(alpha));
  return det > 0 ? 1 : -1;
}

std::vector<AxisRoot> imaginary_axis_roots(const RestrictedFamily& rf, int l, double alpha_lo,
                                           double alpha_hi, double beta_lo, double beta_hi,
                                           int grid, double re_tol) {
  std::vector<AxisRoot> roots;
  if (rf.dim(l) == 0) return roots;
  const double ll = static_cast<double>(l);
  auto eigs = [&](double a) {
    Eigen::ComplexEigenSolver<MatrixXc> es(rf.restricted(l, a), false);
    return VectorXc(es.eigenvalues());
  };
  auto in_window = [&](const cplx& z) { return z.imag() / ll > beta_lo && z.imag() / ll <= beta_hi; };
  auto count = [&](double a) {
    int c = 0;
    for (const auto& z : eigs(a))
      if (z.real() > 0.0 && in_window(z)) ++c;
    return c;
  };
  auto tol_at = [&](double a) { return re_tol * (1.0 + spectral_norm(rf.restricted(l, a))); };

  std::vector<double> xs(static_cast<std::size_t>(grid) + 1);
  std::vector<int> counts(xs.size());
  std::vector<std::optional<double>> near(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = alpha_lo + (alpha_hi - alpha_lo) * static_cast<double>(i) / grid;
    const VectorXc ev = eigs(xs[i]);
    int c = 0;
    const double tol = tol_at(xs[i]);
    for (const auto& z : ev) {
      if (!in_window(z)) continue;
      if (z.real() > 0.0) ++c;
      if (std::abs(z.real()) < tol) near[i] = z.imag() / ll;
    }
    counts[i] = c;
  }

  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (counts[i] == counts[i + 1]) continue;
    double lo = xs[i], hi = xs[i + 1];
    const int clo = counts[i];
    while (hi - lo > 1e-10 * std::max(1.0, std::abs(lo))) {
      const double mid = 0.5 * (lo + hi);
      if (count(mid) == clo)
        lo = mid;
      else
        hi = mid;
    }
    const double ac = 0.5 * (lo + hi);
    const VectorXc ev = eigs(ac);
    double best = INFINITY, beta = 0.0;
    for (const auto& z : ev) {
      const double b = z.imag() / ll;
      if (b <= beta_lo - 1e-6 || b > beta_hi + 1e-6) continue;
      if (std::abs(z.real()) < best) {
        best = std::abs(z.real());
        beta = b;
      }
    }
    if (best < 1e-6 * (1.0 + spectral_norm(rf.restricted(l, ac)))) roots.push_back({ac, beta, false});
  }

  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!near[i]) continue;
    const bool run = (i >= 1 && near[i - 1] && i + 1 < xs.size() && near[i + 1]) ||
                     (i >= 2 && near[i - 1] && near[i - 2]) ||
                     (i + 2 < xs.size() && near[i + 1] && near[i + 2]);
    roots.push_back({xs[i], *near[i], run});
  }

  std::sort(roots.begin(), roots.end(),
            [](const AxisRoot& a, const AxisRoot& b) { return a.alpha < b.alpha; });
  std::vector<AxisRoot> unique;
  for (const auto& r : roots) {
    const bool dup = std::any_of(unique.begin(), unique.end(), [&](const AxisRoot& u) {
      return std::abs(u.alpha - r.alpha) < 1e-6 && std::abs(u.beta - r.beta) < 1e-6;
    });
    if (!dup) unique.push_back(r);
  }
  return unique;
}

}  // namespace hopfcert::spectral
