// SPDX-License-Identifier: Apache-2.0
#include "hopfcert/models.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include "hopfcert/errors.hpp"

namespace hopfcert::models {

spectral::LinearFamily vdp_family(double alpha_lo, double alpha_hi) {
  spectral::LinearFamily f;
  f.a0 = (MatrixXd(2, 2) << 0.0, 1.0, -1.0, 0.0).finished();
  f.a1 = (MatrixXd(2, 2) << 0.0, 0.0, 0.0, 1.0).finished();
  f.alpha_lo = alpha_lo;
  f.alpha_hi = alpha_hi;
  return f;
}

MatrixXd cube_coupling() {
  const int edges[12][2] = {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {5, 6}, {6, 7},
                            {7, 8}, {8, 5}, {1, 5}, {2, 6}, {3, 7}, {4, 8}};
  MatrixXd k = -3.0 * MatrixXd::Identity(8, 8);
  for (const auto& e : edges) {
    k(e[0] - 1, e[1] - 1) = 1.0;
    k(e[1] - 1, e[0] - 1) = 1.0;
  }
  return k;
}

Eigen::Matrix2d cube_block(const CubeParameters& p, double alpha, int k) {
  Eigen::Matrix2d m;
  m << -p.R / p.L, 1.0 / p.L, -1.0 / p.C, (alpha - k * p.rho) / p.C;
  return m;
}

namespace {

void check(const CubeParameters& p) {
  if (!(p.R > 0 && p.L > 0 && p.C > 0)) throw ConfigError("cube model needs R, L, C > 0");
}

Eigen::Matrix2d osc(const CubeParameters& p, double alpha) {
  return (Eigen::Matrix2d() << -p.R / p.L, 1.0 / p.L, -1.0 / p.C, alpha / p.C).finished();
}

MatrixXd coupling_term(const CubeParameters& p) {
  const Eigen::Matrix2d c = (Eigen::Matrix2d() << 0.0, 0.0, 0.0, 1.0 / (2.0 * p.C)).finished();
  return Eigen::kroneckerProduct(cube_coupling(), c);
}

}  // namespace

spectral::LinearFamily cube_family_alpha(const CubeParameters& p, double alpha_lo, double alpha_hi) {
  check(p);
  const MatrixXd id8 = MatrixXd::Identity(8, 8);
  const Eigen::Matrix2d e22 = (Eigen::Matrix2d() << 0.0, 0.0, 0.0, 1.0 / p.C).finished();
  spectral::LinearFamily f;
  f.a0 = MatrixXd(Eigen::kroneckerProduct(id8, osc(p, 0.0))) + p.rho * coupling_term(p);
  f.a1 = Eigen::kroneckerProduct(id8, e22);
  f.alpha_lo = alpha_lo;
  f.alpha_hi = alpha_hi;
  return f;
}

spectral::LinearFamily cube_family_rho(const CubeParameters& p, double alpha, double rho_lo,
                                       double rho_hi) {
  check(p);
  spectral::LinearFamily f;
  f.a0 = Eigen::kroneckerProduct(MatrixXd::Identity(8, 8), osc(p, alpha));
  f.a1 = coupling_term(p);
  f.alpha_lo = rho_lo;
  f.alpha_hi = rho_hi;
  return f;
}

double cube_hopf_alpha(const CubeParameters& p, int j) { return p.R * p.C / p.L + j * p.rho; }
double cube_steady_alpha(const CubeParameters& p, int k) { return 1.0 / p.R + k * p.rho; }
double cube_c(const CubeParameters& p) { return (1.0 - p.R * p.R * p.C / p.L) / (p.rho * p.R); }
double cube_omega(const CubeParameters& p) {
  return std::sqrt((1.0 - p.R * p.R * p.C / p.L) / (p.L * p.C));
}
double cube_rho_for(const CubeParameters& p, double c) {
  return (1.0 - p.R * p.R * p.C / p.L) / (c * p.R);
}

VectorField vdp_field() {
  return [](double alpha, const VectorXd& x) {
    VectorXd dx(2);
    dx << x(1), -x(0) + alpha * x(1) - x(0) * x(0) * x(1);
    return dx;
  };
}

VectorField cube_field(const CubeParameters& p, const spectral::LinearFamily& fam) {
  return [p, fam](double param, const VectorXd& x) {
    VectorXd dx = fam.a0 * x + param * (fam.a1 * x);
    for (Eigen::Index m = 1; m < x.size(); m += 2) {
      const double u = x(m);
      dx(m) += (-p.sigma * u * u * u + p.q * u * u) / p.C;
    }
    return dx;
  };
}

}  // namespace hopfcert::models
