#pragma once

// Pauli / su(2) algebra, complex coordinates on R^4 and antisymmetric form
// containers shared by every other part of the library.
//
// Index convention: adjoint indices a, spinor indices i, spacetime indices mu
// are all 0-based in code (a = 0 is the first Pauli matrix, mu = 0 is x1).

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstddef>

namespace hopfsol {

template <typename Scalar>
using Point4T = Eigen::Matrix<Scalar, 4, 1>;
using Point4 = Point4T<double>;

template <typename Scalar>
using S2PointT = Eigen::Matrix<Scalar, 3, 1>;
using S2Point = S2PointT<double>;

/// su(2) adjoint triplet; real for phi^a, complex for complex-index gauge components.
template <typename Scalar>
using AdjointVectorT = Eigen::Matrix<Scalar, 3, 1>;
using AdjointVector = AdjointVectorT<double>;
using ComplexAdjoint = AdjointVectorT<std::complex<double>>;

template <typename Scalar>
using OneForm4T = Eigen::Matrix<Scalar, 4, 1>;
using OneForm4 = OneForm4T<double>;

template <typename Real>
using Matrix2cT = Eigen::Matrix<std::complex<Real>, 2, 2>;

/// z1 = x1 + i x2, z2 = x3 + i x4. No other pairing is supported.
template <typename Real>
struct ComplexPairT {
  std::complex<Real> z1{};
  std::complex<Real> z2{};

  static ComplexPairT from_point4(const Point4T<Real>& x) {
    return {{x(0), x(1)}, {x(2), x(3)}};
  }

  Point4T<Real> to_point4() const {
    return Point4T<Real>(z1.real(), z1.imag(), z2.real(), z2.imag());
  }

  Eigen::Matrix<std::complex<Real>, 2, 1> spinor() const {
    return Eigen::Matrix<std::complex<Real>, 2, 1>(z1, z2);
  }

  Real norm_squared() const { return std::norm(z1) + std::norm(z2); }
};
using ComplexPair = ComplexPairT<double>;

template <typename Real = double>
Matrix2cT<Real> pauli(int a) {
  using C = std::complex<Real>;
  Matrix2cT<Real> s;
  switch (a) {
    case 0: s << C(0), C(1), C(1), C(0); break;
    case 1: s << C(0), C(0, -1), C(0, 1), C(0); break;
    default: s << C(1), C(0), C(0), C(-1); break;
  }
  return s;
}

constexpr int levi_civita(int a, int b, int c) {
  return (a - b) * (b - c) * (c - a) / 2;
}

constexpr int levi_civita(int a, int b, int c, int d) {
  // sign of the permutation (a,b,c,d) of (0,1,2,3); 0 if any index repeats
  int p = 1;
  const int idx[4] = {a, b, c, d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (idx[i] == idx[j]) return 0;
      if (idx[i] > idx[j]) p = -p;
    }
  return p;
}

constexpr double kronecker(int i, int j) { return i == j ? 1.0 : 0.0; }

/// eps^abc u^b v^c without conjugation (Eigen's cross() conjugates complex results).
template <typename Derived1, typename Derived2>
auto adjoint_cross(const Eigen::MatrixBase<Derived1>& u, const Eigen::MatrixBase<Derived2>& v) {
  using Scalar = decltype(u.coeff(0) * v.coeff(0));
  return Eigen::Matrix<Scalar, 3, 1>(u.coeff(1) * v.coeff(2) - u.coeff(2) * v.coeff(1),
                                     u.coeff(2) * v.coeff(0) - u.coeff(0) * v.coeff(2),
                                     u.coeff(0) * v.coeff(1) - u.coeff(1) * v.coeff(0));
}

/// Bilinear (non-conjugating) adjoint contraction u^a v^a.
template <typename Derived1, typename Derived2>
auto adjoint_dot(const Eigen::MatrixBase<Derived1>& u, const Eigen::MatrixBase<Derived2>& v) {
  return (u.array() * v.array()).sum();
}

/// Antisymmetric rank-2 tensor on R^4. Storage is the full matrix, every write
/// goes to both (mu,nu) and (nu,mu) with opposite sign.
template <typename Scalar>
class TwoForm4T {
 public:
  using Matrix = Eigen::Matrix<Scalar, 4, 4>;

  TwoForm4T() : m_(Matrix::Zero()) {}

  /// Antisymmetric part of an arbitrary matrix.
  static TwoForm4T from_matrix(const Matrix& m) {
    TwoForm4T f;
    f.m_ = (m - m.transpose()) / Scalar(2);
    return f;
  }

  Scalar operator()(int mu, int nu) const { return m_(mu, nu); }

  void set(int mu, int nu, Scalar v) {
    if (mu == nu) return;
    m_(mu, nu) = v;
    m_(nu, mu) = -v;
  }

  const Matrix& matrix() const { return m_; }

  /// F(u, v) = u_mu F_{mu nu} v_nu
  template <typename D1, typename D2>
  Scalar apply(const Eigen::MatrixBase<D1>& u, const Eigen::MatrixBase<D2>& v) const {
    return u.transpose() * m_ * v;
  }

  TwoForm4T operator-() const { TwoForm4T f; f.m_ = -m_; return f; }

 private:
  Matrix m_;
};
using TwoForm4 = TwoForm4T<double>;

template <typename Real>
struct IdentityPair {
  Real lhs{};
  Real rhs{};
};

/// sum_a sigma^a_ij sigma^a_kl  vs  2 delta_il delta_jk - delta_ij delta_kl.
IdentityPair<double> pauli_identity_p1(int i, int j, int k, int l);

/// eps^abc sigma^b_ij sigma^c_kl  vs  i (sigma^a_il delta_jk - sigma^a_kj delta_il).
IdentityPair<std::complex<double>> pauli_identity_p2(int a, int i, int j, int k, int l);

/// eps_{mu nu lambda} A_mu F_{nu lambda} for forms already pulled back to three
/// intrinsic coordinates of a 3-surface.
template <typename Scalar>
Scalar wedge_density(const Eigen::Matrix<Scalar, 3, 1>& a, const Eigen::Matrix<Scalar, 3, 3>& f) {
  return Scalar(2) * (a(0) * f(1, 2) + a(1) * f(2, 0) + a(2) * f(0, 1));
}

// Complex-index bases. Component order is (z1, z2, zbar1, zbar2).
//
// The basis vectors are d/dz_k = (d/dx_{2k-1} - i d/dx_{2k}) / 2 and
// d/dzbar_k = (d/dx_{2k-1} + i d/dx_{2k}) / 2, stored as columns.
Eigen::Matrix4cd complex_frame();
/// Rows are the dual one-forms dz1, dz2, dzbar1, dzbar2 in real components.
Eigen::Matrix4cd complex_coframe();

/// A_(z1,z2,zb1,zb2) from A_(x1..x4).
Eigen::Vector4cd one_form_to_complex(const Eigen::Vector4cd& a);
Eigen::Vector4cd one_form_to_real(const Eigen::Vector4cd& a_complex);
Eigen::Matrix4cd two_form_to_complex(const Eigen::Matrix4cd& f);
Eigen::Matrix4cd two_form_to_real(const Eigen::Matrix4cd& f_complex);

}  // namespace hopfsol
