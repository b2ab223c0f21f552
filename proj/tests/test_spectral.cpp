// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "hopfcert/errors.hpp"
#include "hopfcert/models.hpp"
#include "hopfcert/spectral.hpp"
#include "support.hpp"

using namespace hopfcert;
using namespace hopfcert::spectral;

namespace {

RestrictedFamily vdp() {
  const auto cfg = testing::vdp_config();
  return {cfg.spec.family, cfg.spec.space, cfg.spec.symmetry};
}

// Scalar family on a one-point trivial group.
RestrictedFamily scalar(double a0, double a1 = 0.0) {
  LinearFamily fam;
  fam.a0 = MatrixXd::Constant(1, 1, a0);
  fam.a1 = MatrixXd::Constant(1, 1, a1);
  fam.alpha_lo = -1.0;
  fam.alpha_hi = 1.0;
  const auto space = group::RepresentationSpace::generated(
      1, 1, {{group::GroupElement::identity(1), MatrixXd::Identity(1, 1)}});
  return {fam, space, group::trivial_subgroup(1)};
}

// ℝ with −1 acting by −1: every fixed space is {0}.
RestrictedFamily empty() {
  LinearFamily fam;
  fam.a0 = MatrixXd::Constant(1, 1, -1.0);
  fam.a1 = MatrixXd::Zero(1, 1);
  fam.alpha_lo = -1.0;
  fam.alpha_hi = 1.0;
  const group::GroupElement minus{-1, group::Permutation(1), group::Phase()};
  const auto space = group::RepresentationSpace::generated(1, 1, {{minus, -MatrixXd::Identity(1, 1)}});
  return {fam, space, group::TwistedSubgroup("minus", {group::GroupElement::identity(1), minus})};
}

DomainD disk(Point c, double radius) {
  DomainD d;
  d.boundary = ClosedPath::circle(c, radius);
  d.strategy = "disk";
  d.hopf_point = c;
  d.level = radius;
  return d;
}

}  // namespace

TEST_CASE("restricted characteristic operators of the Van der Pol family") {
  const auto rf = vdp();
  MatrixXc expected(2, 2);
  expected << cplx(0, 1), -1.0, 1.0, cplx(0, 1);
  CHECK((rf.delta(1, {0.0, 0.0, 1.0}) - expected).norm() < 1e-14);
  // l = 0 gives −A restricted to V^H.
  CHECK((rf.delta(0, {0.3, 0.7, 2.0}) + rf.restricted(0, 0.3)).norm() < 1e-14);
  for (int l : {1, 2, 3})
    for (double a : {-0.4, 0.0, 0.25})
      for (double t : {0.0, 0.3})
        for (double b : {0.4, 1.0, 1.7}) {
          const cplx z(t, b);
          const cplx closed = double(l * l) * z * z - a * double(l) * z + 1.0;
          CHECK(std::abs(rf.lambda(l, {a, t, b}) - closed) < 1e-12);
        }
  CHECK(std::abs(rf.lambda(1, {0.0, 0.0, 1.0})) < 1e-14);
}

TEST_CASE("cube blocks in the isotypic basis") {
  models::CubeParameters p;
  const auto fam = models::cube_family_alpha(p, 0.0, 2.0);
  const auto space = group::RepresentationSpace::cube(true);
  CHECK(equivariance_residual(fam, space) < 1e-10);
  // The O4-fixed modes are the block k = 0 with identical oscillators.
  const RestrictedFamily rf(fam, space, group::catalog("O4"));
  REQUIRE(rf.dim(1) == 2);
  const MatrixXc r = rf.restricted(1, 0.7);
  Eigen::ComplexEigenSolver<MatrixXc> es(r);
  Eigen::EigenSolver<Eigen::Matrix2d> block(models::cube_block(p, 0.7, 0));
  for (int i = 0; i < 2; ++i) {
    double best = INFINITY;
    for (int j = 0; j < 2; ++j) best = std::min(best, std::abs(es.eigenvalues()(i) - block.eigenvalues()(j)));
    CHECK(best < 1e-12);
  }
  const RestrictedFamily plus(fam, space, group::catalog("+D4d"));
  CHECK(plus.dim(0) == 0);
  CHECK(plus.lambda(0, {1.1, 0.0, 0.5}) == cplx(1.0, 0.0));
  CHECK(n_0(plus, 1.1) == 1);
}

TEST_CASE("cube Hopf and steady-state points") {
  models::CubeParameters p;
  for (int k = 0; k < 4; ++k) {
    const auto h = models::cube_block(p, models::cube_hopf_alpha(p, k), k);
    CHECK(std::abs(h.trace()) < 1e-14);
    CHECK(h.determinant() == doctest::Approx(std::pow(models::cube_omega(p), 2)));
    CHECK(std::abs(models::cube_block(p, models::cube_steady_alpha(p, k), k).determinant()) < 1e-14);
  }
  CHECK(models::cube_c(p) == doctest::Approx(5.0 / 3.0));
  CHECK(models::cube_rho_for(p, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("root counts in a slice") {
  const auto rf = vdp();
  CHECK(count_roots_slice(rf, -0.2, 10.0, 0.0, 10.0) == 0);
  CHECK(count_roots_slice(rf, 0.2, 10.0, 0.0, 10.0) == 1);
  // A zero-dimensional restriction has no roots.
  const auto none = empty();
  REQUIRE(none.all_modes_empty());
  CHECK(count_roots_slice(none, 0.0, 10.0, 0.0, 10.0) == 0);
}

TEST_CASE("eigenvalue oracle") {
  for (double a : {-0.5, 0.0, 0.3, 2.5}) {
    MatrixXc m(2, 2);
    m << 0.0, 1.0, -1.0, a;
    auto ev = eig_oracle(m);
    REQUIRE(ev.size() == 2);
    const cplx root = std::sqrt(cplx(a * a / 4.0 - 1.0));
    const cplx e1 = a / 2.0 + root, e2 = a / 2.0 - root;
    CHECK(std::min(std::abs(ev[0] - e1), std::abs(ev[0] - e2)) < 1e-12);
    CHECK(std::min(std::abs(ev[1] - e1), std::abs(ev[1] - e2)) < 1e-12);
  }
}

TEST_CASE("degrees n_l on small domains") {
  const auto rf = vdp();
  const auto d = disk(Point(0.0, 1.0), 0.05);
  CHECK(n_l(rf, d, 1) == -1);
  CHECK(n_l(rf, d, 2) == 0);
  // Agreement with the eigenvalue crossing: one pair crosses left to right.
  CHECK(count_roots_slice(rf, 0.04, 5.0, 0.5, 1.5) - count_roots_slice(rf, -0.04, 5.0, 0.5, 1.5) == 1);
  // Λ_2(0, 0, 1/2) = 0, so a disk reaching β = 1/2 sees a mode-2 root.
  CHECK(n_l(rf, disk(Point(0.0, 1.0), 0.6), 2) != 0);
  CHECK(n_l(empty(), d, 1) == 0);
}

TEST_CASE("steady-state degree n_0") {
  const auto rf = vdp();
  for (double a : {-0.5, 0.0, 0.5}) CHECK(n_0(rf, a) == 1);
  CHECK(n_0(scalar(-1.0), 0.0) == 1);
  CHECK(n_0(scalar(1.0), 0.0) == -1);
  CHECK_THROWS_AS(n_0(scalar(0.0, 1.0), 0.0), DomainError);
}

TEST_CASE("imaginary-axis roots") {
  const auto roots = imaginary_axis_roots(vdp(), 1, -0.5, 0.5, 0.1, 2.0);
  REQUIRE(roots.size() == 1);
  CHECK(std::abs(roots[0].alpha) < 1e-9);
  CHECK(roots[0].beta == doctest::Approx(1.0));
  CHECK_FALSE(roots[0].persistent);
  // The coupling family keeps the block-0 pair on the axis for every ρ.
  models::CubeParameters p;
  const auto fam = models::cube_family_rho(p, p.R * p.C / p.L, -0.1, 0.1);
  const RestrictedFamily o4(fam, group::RepresentationSpace::cube(false), group::catalog("O4"));
  const auto persistent = imaginary_axis_roots(o4, 1, -0.1, 0.1, 0.1, 2.0);
  REQUIRE_FALSE(persistent.empty());
  CHECK(persistent.front().persistent);
}
