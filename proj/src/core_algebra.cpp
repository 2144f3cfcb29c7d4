#include "hopfsol/core_algebra.hpp"

namespace hopfsol {

IdentityPair<double> pauli_identity_p1(int i, int j, int k, int l) {
  std::complex<double> lhs = 0.0;
  for (int a = 0; a < 3; ++a) {
    const auto s = pauli(a);
    lhs += s(i, j) * s(k, l);
  }
  const double rhs = 2.0 * kronecker(i, l) * kronecker(j, k) - kronecker(i, j) * kronecker(k, l);
  return {lhs.real(), rhs};
}

IdentityPair<std::complex<double>> pauli_identity_p2(int a, int i, int j, int k, int l) {
  std::complex<double> lhs = 0.0;
  for (int b = 0; b < 3; ++b)
    for (int c = 0; c < 3; ++c) {
      const int e = levi_civita(a, b, c);
      if (e == 0) continue;
      lhs += double(e) * pauli(b)(i, j) * pauli(c)(k, l);
    }
  const auto sa = pauli(a);
  const std::complex<double> rhs =
      std::complex<double>(0, 1) * (sa(i, l) * kronecker(j, k) - sa(k, j) * kronecker(i, l));
  return {lhs, rhs};
}

Eigen::Matrix4cd complex_frame() {
  using C = std::complex<double>;
  Eigen::Matrix4cd e = Eigen::Matrix4cd::Zero();
  for (int k = 0; k < 2; ++k) {
    e(2 * k, k) = C(0.5, 0);
    e(2 * k + 1, k) = C(0, -0.5);
    e(2 * k, 2 + k) = C(0.5, 0);
    e(2 * k + 1, 2 + k) = C(0, 0.5);
  }
  return e;
}

Eigen::Matrix4cd complex_coframe() {
  using C = std::complex<double>;
  Eigen::Matrix4cd d = Eigen::Matrix4cd::Zero();
  for (int k = 0; k < 2; ++k) {
    d(k, 2 * k) = C(1, 0);
    d(k, 2 * k + 1) = C(0, 1);
    d(2 + k, 2 * k) = C(1, 0);
    d(2 + k, 2 * k + 1) = C(0, -1);
  }
  return d;
}

Eigen::Vector4cd one_form_to_complex(const Eigen::Vector4cd& a) {
  return complex_frame().transpose() * a;
}

Eigen::Vector4cd one_form_to_real(const Eigen::Vector4cd& a_complex) {
  return complex_coframe().transpose() * a_complex;
}

Eigen::Matrix4cd two_form_to_complex(const Eigen::Matrix4cd& f) {
  const Eigen::Matrix4cd e = complex_frame();
  return e.transpose() * f * e;
}

Eigen::Matrix4cd two_form_to_real(const Eigen::Matrix4cd& f_complex) {
  const Eigen::Matrix4cd d = complex_coframe();
  return d.transpose() * f_complex * d;
}

}  // namespace hopfsol
