// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>

namespace hopfcert {

using cplx = std::complex<double>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXd = Mat<double>;
using MatrixXc = Mat<cplx>;
using VectorXd = Vec<double>;
using VectorXc = Vec<cplx>;

// Largest singular value.
template <typename Derived>
double spectral_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat<typename Derived::Scalar>> svd(m);
  return svd.singularValues()(0);
}

// Extreme singular values of a square matrix; returns {σ_min, σ_max}.
// Closed forms for d ≤ 2, Jacobi SVD otherwise.
template <typename Derived>
std::pair<double, double> extreme_singular_values(const Eigen::MatrixBase<Derived>& m) {
  const auto d = m.rows();
  if (d == 1) {
    const double a = std::abs(m(0, 0));
    return {a, a};
  }
  if (d == 2) {
    const double fro2 = m.squaredNorm();
    const double det = std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
    const double disc = std::sqrt(std::max(0.0, fro2 * fro2 - 4.0 * det * det));
    const double smax2 = 0.5 * (fro2 + disc);
    const double smin2 = smax2 > 0.0 ? det * det / smax2 : 0.0;
    return {std::sqrt(smin2), std::sqrt(smax2)};
  }
  Eigen::JacobiSVD<Mat<typename Derived::Scalar>> svd(m);
  const auto& s = svd.singularValues();
  return {s(s.size() - 1), s(0)};
}

// Σ 1/σ_i² = ‖m⁻¹‖_F², closed form for d ≤ 2.
template <typename Derived>
double inverse_frobenius_squared(const Eigen::MatrixBase<Derived>& m) {
  const auto d = m.rows();
  if (d == 1) return 1.0 / std::norm(m(0, 0));
  if (d == 2) {
    const double det2 = std::norm(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
    return m.squaredNorm() / det2;
  }
  Eigen::JacobiSVD<Mat<typename Derived::Scalar>> svd(m);
  return svd.singularValues().cwiseInverse().squaredNorm();
}

}  // namespace hopfcert
