// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "hopfcert/errors.hpp"
#include "hopfcert/estimator.hpp"
#include "support.hpp"

using namespace hopfcert;
using namespace hopfcert::estimator;

namespace {

RestrictedFamily vdp() {
  const auto cfg = testing::vdp_config();
  return {cfg.spec.family, cfg.spec.space, cfg.spec.symmetry};
}

RestrictedFamily scalar(double a0) {
  spectral::LinearFamily fam;
  fam.a0 = MatrixXd::Constant(1, 1, a0);
  fam.a1 = MatrixXd::Zero(1, 1);
  fam.alpha_lo = -1.0;
  fam.alpha_hi = 1.0;
  const auto space = group::RepresentationSpace::generated(
      1, 1, {{group::GroupElement::identity(1), MatrixXd::Identity(1, 1)}});
  return {fam, space, group::trivial_subgroup(1)};
}

}  // namespace

TEST_CASE("per-mode norms") {
  CHECK(term_norm(MatrixXc::Identity(3, 3) * 2.0, NormMode::spectral) == doctest::Approx(0.5));
  for (double a : {-0.3, 0.0, 0.4})
    for (double b : {0.3, 0.7, 1.3}) {
      MatrixXc m(2, 2);
      m << cplx(0, b), -1.0, 1.0, cplx(-a, b);
      const double expected = (2.0 * (b * b + 1.0) + a * a) / (std::pow(b * b - 1.0, 2) + a * a * b * b);
      CHECK(std::pow(term_norm(m, NormMode::frobenius), 2) == doctest::Approx(expected).epsilon(1e-12));
    }
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n;
  for (int i = 0; i < 100; ++i) {
    const int d = 1 + i % 4;
    const MatrixXc m = MatrixXc::NullaryExpr(d, d, [&] { return cplx(n(rng), n(rng)); });
    CHECK(term_norm(m, NormMode::frobenius) >= term_norm(m, NormMode::spectral) * (1.0 - 1e-12));
  }
  CHECK_THROWS_AS(term_norm(MatrixXc::Zero(2, 2), NormMode::spectral), ResonanceError);
}

TEST_CASE("M for the scalar model against the cotangent identity") {
  const auto m = compute_m(scalar(-1.0), 0.0, 1.0, NormMode::frobenius);
  const double m2 = 0.5 * (1.0 + M_PI / std::tanh(M_PI));
  CHECK(m.lower <= std::sqrt(m2) * (1.0 + 1e-12));
  CHECK(m.upper >= std::sqrt(m2) * (1.0 - 1e-12));
  CHECK(m.mid() == doctest::Approx(1.4411).epsilon(1e-4));
  CHECK((m.upper - m.lower) / m.lower <= 1e-6);
}

TEST_CASE("M for Van der Pol") {
  const auto rf = vdp();
  CHECK(compute_m(rf, 0.0, 0.6991, NormMode::frobenius).mid() == doctest::Approx(4.711).epsilon(1e-3));
  CHECK(m_closed_form_vdp(0.6991) == doctest::Approx(22.19).epsilon(1e-3));
  CHECK(m_closed_form_vdp(2.0) == doctest::Approx(1.0 + M_PI * M_PI / 4.0));
  CHECK_THROWS_AS(m_closed_form_vdp(0.5), DomainError);
  CHECK_THROWS_AS(compute_m(rf, 0.0, 1.0, NormMode::frobenius), ResonanceError);
  CHECK(compute_m(rf, 0.0, 0.999, NormMode::frobenius).mid() > 100.0);
  for (double b : {0.31, 0.45, 0.62, 0.8, 0.93}) {
    const double m = compute_m(rf, 0.0, b, NormMode::frobenius).mid();
    CHECK(m * m == doctest::Approx(m_closed_form_vdp(b)).epsilon(1e-6));
    CHECK(compute_m(rf, 0.0, b, NormMode::spectral).mid() <= m);
  }
}

TEST_CASE("enclosures tighten monotonically with truncation") {
  const auto rf = vdp();
  double lo = 0.0, hi = INFINITY;
  for (int l = 1; l <= 512; l *= 2) {
    const auto s = m_series(rf, 0.2, 0.8, NormMode::frobenius, l);
    CHECK(s.partial + s.tail_lower >= lo * (1.0 - 1e-12));
    CHECK(s.partial + s.tail_upper <= hi * (1.0 + 1e-12));
    CHECK(s.tail_lower <= s.tail_upper);
    lo = s.partial + s.tail_lower;
    hi = s.partial + s.tail_upper;
  }
}

TEST_CASE("segment minimizer") {
  const auto m = minimize_m_on_segment(vdp(), 0.0, 0.1, 0.999, NormMode::frobenius);
  CHECK(m.interior);
  CHECK(m.beta == doctest::Approx(0.699).epsilon(1e-3));
  const double x = M_PI / m.beta;
  CHECK(std::abs(std::tan(x) - x) < 1e-6);
  CHECK(x == doctest::Approx(4.4934).epsilon(1e-4));
  const auto s = minimize_m_on_segment(scalar(-1.0), 0.0, 0.5, 3.0, NormMode::frobenius);
  CHECK_FALSE(s.interior);
  CHECK(s.beta == doctest::Approx(3.0));
}

TEST_CASE("level-curve domain and threshold") {
  const auto rf = vdp();
  const auto built = build_domain_d(rf, spectral::Point(0.0, 1.0), NormMode::frobenius, {});
  const auto& d = built.domain;
  CHECK(d.strategy == "level-curve");
  CHECK(d.boundary.is_simple());
  CHECK(d.contains(spectral::Point(0.0, 1.0)));
  CHECK_FALSE(d.contains(spectral::Point(0.0, 0.5)));
  CHECK_FALSE(d.contains(spectral::Point(0.0, 1.0 / 3.0)));
  const auto th = threshold_n(rf, d, NormMode::frobenius);
  CHECK(th.n == doctest::Approx(0.0847).epsilon(2e-3));
  CHECK(th.n == doctest::Approx(1.0 / (std::sqrt(2.0 * M_PI) * th.m_max)));

  // A disk through (0, β*) cannot beat the level curve.
  DomainStrategy ds;
  ds.kind = "disk";
  ds.radius = 1.0 - built.minimum->beta;
  const auto disk = build_domain_d(rf, spectral::Point(0.0, 1.0), NormMode::frobenius, ds);
  CHECK(threshold_n(rf, disk.domain, NormMode::frobenius).n <= th.n * (1.0 + 1e-6));
  // A small disk is a valid domain with a smaller threshold.
  ds.radius = 0.05;
  const auto small = build_domain_d(rf, spectral::Point(0.0, 1.0), NormMode::frobenius, ds);
  CHECK(threshold_n(rf, small.domain, NormMode::frobenius).n < th.n);

  DomainStrategy too_low;
  too_low.level = 0.5;
  CHECK_THROWS_AS(build_domain_d(rf, spectral::Point(0.0, 1.0), NormMode::frobenius, too_low), DomainError);
}

TEST_CASE("M grid") {
  const auto g = scan_m_grid(vdp(), -0.2, 0.2, 0.3, 1.5, 5, 13, NormMode::frobenius);
  CHECK(g.alphas.size() == 5);
  CHECK(g.betas.size() == 13);
  for (Eigen::Index i = 0; i < g.lower.rows(); ++i)
    for (Eigen::Index j = 0; j < g.lower.cols(); ++j) CHECK(g.lower(i, j) <= g.upper(i, j));
}
