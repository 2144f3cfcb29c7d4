#include "hopfsol/ansatz_fields.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace hopfsol {

namespace {

constexpr cd kI{0.0, 1.0};

// m^a = x^T S^a x / x^T x
const std::array<Eigen::Matrix4d, 3>& quadratic_forms() {
  static const std::array<Eigen::Matrix4d, 3> s = [] {
    std::array<Eigen::Matrix4d, 3> out;
    out[0] << 0, 0, 1, 0,
              0, 0, 0, 1,
              1, 0, 0, 0,
              0, 1, 0, 0;
    out[1] << 0, 0, 0, 1,
              0, 0, -1, 0,
              0, -1, 0, 0,
              1, 0, 0, 0;
    out[2] = Eigen::Vector4d(1, 1, -1, -1).asDiagonal();
    return out;
  }();
  return s;
}

// a2 = 2 J x / r^2
Eigen::Matrix4d rotation_generator() {
  Eigen::Matrix4d j = Eigen::Matrix4d::Zero();
  j(0, 1) = -1; j(1, 0) = 1;
  j(2, 3) = -1; j(3, 2) = 1;
  return j;
}

TwoForm4 exterior_derivative(const Eigen::Matrix4d& da) {
  // da(mu, nu) = d_mu a_nu
  return TwoForm4::from_matrix(da - da.transpose());
}

Eigen::Vector3d cross_col(const Eigen::Matrix<double, 3, 4>& m, int mu, const Eigen::Matrix<double, 3, 4>& n, int nu) {
  return m.col(mu).cross(n.col(nu));
}

}  // namespace

void ModelParams::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be positive");
}

void require_off_origin(const Point4& x, const char* where) {
  if (!(x.norm() >= kOriginCutoff))
    throw OriginSingular(std::string(where) + ": |x| below the origin cutoff");
}

AdjointVector m_field(const Point4& x) {
  require_off_origin(x, "m_field");
  const double r2 = x.squaredNorm();
  const auto& s = quadratic_forms();
  AdjointVector m;
  for (int a = 0; a < 3; ++a) m(a) = x.dot(s[a] * x) / r2;
  return m;
}

MKinematics m_kinematics(const Point4& x) {
  require_off_origin(x, "m_kinematics");
  MKinematics k;
  const double r2 = x.squaredNorm();
  k.r = std::sqrt(r2);
  k.z = ComplexPair::from_point4(x);
  const Eigen::Vector2cd z = k.z.spinor();
  for (int a = 0; a < 3; ++a) k.m(a) = (z.adjoint() * pauli(a) * z)(0).real() / r2;
  for (int a = 0; a < 3; ++a) {
    const Eigen::Matrix2cd s = pauli(a);
    for (int kk = 0; kk < 2; ++kk) {
      cd d = 0.0, db = 0.0;
      for (int j = 0; j < 2; ++j) {
        d += s(j, kk) * std::conj(z(j));
        db += s(kk, j) * z(j);
      }
      k.dm(a, kk) = d / r2 - k.m(a) * std::conj(z(kk)) / r2;
      k.dbar_m(a, kk) = db / r2 - k.m(a) * z(kk) / r2;
    }
  }
  return k;
}

MRealDerivatives m_real_derivatives(const Point4& x) {
  require_off_origin(x, "m_real_derivatives");
  const auto& forms = quadratic_forms();
  const double s = x.squaredNorm();
  const Eigen::Vector4d ds = 2.0 * x;
  MRealDerivatives out;
  for (int a = 0; a < 3; ++a) {
    const double q = x.dot(forms[a] * x);
    const Eigen::Vector4d dq = 2.0 * forms[a] * x;
    out.m(a) = q / s;
    out.d.row(a) = (dq / s - q * ds / (s * s)).transpose();
    out.dd[a] = 2.0 * forms[a] / s - (dq * ds.transpose() + ds * dq.transpose()) / (s * s) -
                q * 2.0 * Eigen::Matrix4d::Identity() / (s * s) + 2.0 * q * ds * ds.transpose() / (s * s * s);
  }
  return out;
}

FieldSample eval_fields(const Point4& x, const RadialSample& s) {
  const MKinematics k = m_kinematics(x);
  FieldSample out;
  out.x = x;
  out.r = k.r;
  out.phi = s.f * k.m;
  out.a_holo = -kI * k.dm * s.g;
  out.a_antiholo = kI * k.dbar_m * s.g;
  for (int a = 0; a < 3; ++a) {
    const Eigen::Vector4cd c(out.a_holo(a, 0), out.a_holo(a, 1), out.a_antiholo(a, 0), out.a_antiholo(a, 1));
    out.a.row(a) = one_form_to_real(c).real().transpose();
  }
  return out;
}

cd CovariantDerivativeSample::kinetic_complex() const {
  cd sum = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int k = 0; k < 2; ++k) sum += dbar(a, k) * d(a, k);
  return 4.0 * sum;
}

CovariantDerivativeSample covariant_derivative(const Point4& x, const RadialSample& s) {
  const MKinematics k = m_kinematics(x);
  const Eigen::Vector2cd z = k.z.spinor();
  CovariantDerivativeSample out;
  for (int kk = 0; kk < 2; ++kk) {
    out.d.col(kk) = k.dm.col(kk) * (s.f * (1.0 - s.g)) + k.m.cast<cd>() * (std::conj(z(kk)) / (2.0 * k.r) * s.df);
    out.dbar.col(kk) = k.dbar_m.col(kk) * (s.f * (1.0 - s.g)) + k.m.cast<cd>() * (z(kk) / (2.0 * k.r) * s.df);
  }
  // real components straight from the definition d(f m) + e A x phi
  const MRealDerivatives md = m_real_derivatives(x);
  const FieldSample fs = eval_fields(x, s);
  for (int mu = 0; mu < 4; ++mu)
    out.real.col(mu) = s.df * x(mu) / k.r * md.m + s.f * md.d.col(mu) + ModelParams::e * fs.a_mu(mu).cross(fs.phi);
  return out;
}

cd FieldStrengthSample::mixed_square() const {
  cd sum = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) sum += complex[a](2 + i, j) * complex[a](i, 2 + j);
  return sum;
}

cd FieldStrengthSample::holomorphic_square() const {
  cd sum = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) sum += complex[a](2 + i, 2 + j) * complex[a](i, j);
  return sum;
}

double FieldStrengthSample::real_square() const {
  double sum = 0.0;
  for (int a = 0; a < 3; ++a) sum += real[a].matrix().squaredNorm();
  return sum;
}

FieldStrengthSample field_strength_analytic(const Point4& x, const RadialSample& s) {
  const MKinematics k = m_kinematics(x);
  const Eigen::Vector2cd z = k.z.spinor();
  const double r = k.r, r2 = r * r, r4 = r2 * r2;
  const double mpart = s.g * s.g - 2.0 * s.g;

  FieldStrengthSample out;
  for (int a = 0; a < 3; ++a) {
    Eigen::Matrix4cd f = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        out.c[a](i, j) = kI * (std::conj(z(i)) * k.dbar_m(a, j) + z(j) * k.dm(a, i)) / (2.0 * r);
        const cd mixed = 2.0 * kI * (r2 * kronecker(i, j) - std::conj(z(i)) * z(j)) / r4 * k.m(a) * mpart +
                         out.c[a](i, j) * s.dg;
        f(i, 2 + j) = mixed;
        f(2 + j, i) = -mixed;
        f(i, j) = -kI * (std::conj(z(i)) * k.dm(a, j) - std::conj(z(j)) * k.dm(a, i)) * s.dg / (2.0 * r);
        f(2 + i, 2 + j) = kI * (z(i) * k.dbar_m(a, j) - z(j) * k.dbar_m(a, i)) * s.dg / (2.0 * r);
      }
    out.complex[a] = f;
    out.real[a] = TwoForm4::from_matrix(two_form_to_real(f).real());
  }
  return out;
}

FieldStrengthSample field_strength_from_real(const std::array<TwoForm4, 3>& real) {
  FieldStrengthSample out;
  for (int a = 0; a < 3; ++a) {
    out.real[a] = real[a];
    out.complex[a] = two_form_to_complex(real[a].matrix().cast<cd>());
    out.c[a].setZero();
  }
  return out;
}

std::array<Eigen::Matrix4d, 3> gauge_field_jacobian(const Point4& x, const RadialSample& s) {
  const MRealDerivatives md = m_real_derivatives(x);
  const double r = x.norm();
  std::array<Eigen::Matrix4d, 3> da;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      Eigen::Vector3d ddm;
      for (int a = 0; a < 3; ++a) ddm(a) = md.dd[a](mu, nu);
      const Eigen::Vector3d v = -s.dg * x(mu) / r * md.m.cross(md.d.col(nu)) -
                                s.g * (cross_col(md.d, mu, md.d, nu) + md.m.cross(ddm));
      for (int a = 0; a < 3; ++a) da[a](mu, nu) = v(a);
    }
  return da;
}

FieldStrengthComponents field_strength_components(const Point4& x, const RadialSample& s) {
  require_off_origin(x, "field_strength_components");
  const ComplexPair zp = ComplexPair::from_point4(x);
  const Eigen::Vector2cd z = zp.spinor();
  const Eigen::Vector2cd zb = z.conjugate();
  const double r = x.norm(), r2 = r * r, r3 = r2 * r, r4 = r2 * r2, r5 = r4 * r;
  const double mpart = s.g * s.g - 2.0 * s.g;
  const Eigen::Matrix2cd s2 = pauli(1);
  const ComplexAdjoint delta(1.0, kI, 0.0);
  const ComplexAdjoint delta_bar(1.0, -kI, 0.0);

  FieldStrengthComponents out;
  const double q3 = (zb.transpose() * pauli(2) * z)(0).real();
  for (int a = 0; a < 3; ++a) {
    const Eigen::Matrix2cd sa = pauli(a);
    const double qa = (zb.transpose() * sa * z)(0).real();
    const double ma = qa / r2;
    const double d3 = kronecker(a, 2);
    out.f12(a) = -(zb.transpose() * sa * s2 * zb)(0) * s.dg / (2.0 * r3);
    out.f1b2b(a) = -(z.transpose() * s2 * sa * z)(0) * s.dg / (2.0 * r3);
    out.f11b(a) = 2.0 * kI * std::norm(z(1)) * ma * mpart / r4 + kI * (r4 * d3 - qa * q3) / (2.0 * r5) * s.dg;
    out.f12b(a) = -2.0 * kI * zb(0) * z(1) * ma * mpart / r4 +
                  kI * (r4 * delta(a) - 2.0 * zb(0) * z(1) * qa) / (2.0 * r5) * s.dg;
    out.f21b(a) = -2.0 * kI * zb(1) * z(0) * ma * mpart / r4 +
                  kI * (r4 * delta_bar(a) - 2.0 * zb(1) * z(0) * qa) / (2.0 * r5) * s.dg;
    out.f22b(a) = 2.0 * kI * std::norm(z(0)) * ma * mpart / r4 - kI * (r4 * d3 - qa * q3) / (2.0 * r5) * s.dg;
  }
  return out;
}

DensityBreakdown radial_density(double r, const RadialSample& s, const ModelParams& params) {
  DensityBreakdown d;
  const double w = 2.0 * s.g - s.g * s.g;
  d.kinetic = 4.0 * r * s.f * s.f * (1.0 - s.g) * (1.0 - s.g) + r * r * r * s.df * s.df / 2.0;
  const double magnetic = w == 0.0 ? 0.0 : (r == 0.0 ? std::numeric_limits<double>::infinity() : 8.0 * w * w / r);
  d.gauge = magnetic + 4.0 * r * s.dg * s.dg;
  d.potential = params.lambda * r * r * r * (s.f * s.f - 1.0) * (s.f * s.f - 1.0);
  d.total = d.kinetic + d.gauge + d.potential;
  return d;
}

double action_density(double r, const RadialSample& s, const ModelParams& params) {
  if (r < kOriginCutoff) throw OriginSingular("action_density: r below cutoff");
  return radial_density(r, s, params).total;
}

PointwiseLagrangian pointwise_lagrangian(const Point4& x, const RadialSample& s, const ModelParams& params) {
  PointwiseLagrangian l;
  l.kinetic = 0.5 * covariant_derivative(x, s).kinetic_real();
  l.gauge = 0.25 * field_strength_analytic(x, s).real_square();
  l.potential = params.lambda * (s.f * s.f - 1.0) * (s.f * s.f - 1.0);
  l.total = l.kinetic + l.gauge + l.potential;
  return l;
}

double action_total(const RadialProfile& profile, const ModelParams& params, double r_c, int subdivisions) {
  params.validate();
  if (subdivisions < 1) throw InvalidArgument("action_total: subdivisions must be >= 1");
  const double r_end = profile.r_back();
  if (r_c > r_end * (1.0 + 1e-12)) throw CutoffExceedsMesh("action_total: cutoff beyond the last mesh node");
  r_c = std::min(r_c, r_end);
  const auto& r = profile.radii();
  auto density = [&](double t) { return radial_density(t, profile.at(t), params).total; };

  double sum = 0.0;
  for (Eigen::Index i = 0; i + 1 < r.size() && r(i) < r_c; ++i) {
    const double a = r(i), b = std::min(r(i + 1), r_c);
    const double h = (b - a) / subdivisions;
    for (int p = 0; p < subdivisions; ++p) {
      const double lo = a + p * h, hi = p + 1 == subdivisions ? b : a + (p + 1) * h;
      sum += (hi - lo) / 6.0 * (density(lo) + 4.0 * density(0.5 * (lo + hi)) + density(hi));
    }
  }
  return sum;
}

BoundaryU1Sample boundary_u1(const Point4& x, const RadialSample& s) {
  const MKinematics k = m_kinematics(x);
  const MRealDerivatives md = m_real_derivatives(x);
  const FieldSample fs = eval_fields(x, s);
  const double r = k.r, r2 = r * r;

  BoundaryU1Sample out;
  out.zeta = k.z.spinor() / r;

  // a2 = -i (zetabar d zeta - d zetabar zeta) = 2 Im(zetabar . d zeta)
  const Eigen::Vector2cd z = k.z.spinor();
  for (int mu = 0; mu < 4; ++mu) {
    Eigen::Vector2cd dz = Eigen::Vector2cd::Zero();
    dz(mu / 2) = mu % 2 == 0 ? cd(1.0) : kI;
    const Eigen::Vector2cd dzeta = dz / r - z * x(mu) / (r2 * r);
    out.a2(mu) = 2.0 * out.zeta.dot(dzeta).imag();
  }
  const Eigen::Matrix4d j = rotation_generator();
  const Eigen::Vector4d jx = j * x;
  Eigen::Matrix4d da2;  // d_mu a2_nu
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) da2(mu, nu) = 2.0 * j(nu, mu) / r2 - 4.0 * jx(nu) * x(mu) / (r2 * r2);

  // a1 = A^a phi^a / |phi|; the unit direction is m (or -m where f < 0)
  const double sign = s.f < 0.0 ? -1.0 : 1.0;
  const AdjointVector n = sign * md.m;
  const auto dA = gauge_field_jacobian(x, s);
  Eigen::Matrix4d da1;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      double v = 0.0;
      for (int a = 0; a < 3; ++a) v += sign * md.d(a, mu) * fs.a(a, nu) + n(a) * dA[a](mu, nu);
      da1(mu, nu) = v;
    }
  out.a1 = fs.a.transpose() * n;
  out.potential = out.a1 - out.a2;
  out.a2_curvature = exterior_derivative(da2);
  out.curvature = exterior_derivative(da1 - da2);
  return out;
}

double epsilon_contract(const Eigen::Matrix4d& f, const Eigen::Matrix4d& g) {
  double sum = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          const int e = levi_civita(a, b, c, d);
          if (e != 0) sum += e * f(a, b) * g(c, d);
        }
  return sum;
}

ThetaDensities theta_densities(const Point4& x, const RadialSample& s) {
  const FieldStrengthSample fs = field_strength_analytic(x, s);
  ThetaDensities t;
  for (int a = 0; a < 3; ++a) t.fwf += epsilon_contract(fs.real[a].matrix(), fs.real[a].matrix());
  const TwoForm4 curly = boundary_u1(x, s).curvature;
  t.curly_fwf = epsilon_contract(curly.matrix(), curly.matrix());
  return t;
}

namespace detail {

double boundary_cs_term(const Point4& x, const Eigen::Matrix<double, 4, 3>& tangents, const RadialSample& s,
                        bool include_a1) {
  const BoundaryU1Sample b = boundary_u1(x, s);
  const OneForm4 pot = include_a1 ? b.potential : OneForm4(-b.a2);
  const Eigen::Matrix4d curv = include_a1 ? b.curvature.matrix() : Eigen::Matrix4d(-b.a2_curvature.matrix());
  const Eigen::Vector3d a_u = tangents.transpose() * pot;
  const Eigen::Matrix3d f_u = tangents.transpose() * curv * tangents;
  return wedge_density(a_u, f_u);
}

}  // namespace detail

std::vector<IdentityCheck> verify_m_identities(const Point4& x) {
  const MKinematics k = m_kinematics(x);
  const MRealDerivatives md = m_real_derivatives(x);
  const Eigen::Vector2cd z = k.z.spinor();
  const double r = k.r, r2 = r * r, r4 = r2 * r2;
  const Eigen::Matrix4cd e = complex_frame();
  const Eigen::Matrix<cd, 3, 2> dm = k.dm, dbm = k.dbar_m;
  const Eigen::Vector3cd m = k.m.cast<cd>();

  // d_i dbar_j m^a and d_i d_j m^a from the real Hessian
  std::array<Eigen::Matrix2cd, 3> ddbar, dd;
  for (int a = 0; a < 3; ++a) {
    const Eigen::Matrix4cd h = e.transpose() * md.dd[a].cast<cd>() * e;
    ddbar[a] = h.block<2, 2>(0, 2);
    dd[a] = h.block<2, 2>(0, 0);
  }
  auto proj = [&](int i, int j) {
    return (r2 * kronecker(i, j) - std::conj(z(i)) * z(j)) / r4;
  };

  double dm_closed = 0, appe1 = 0, appe2 = 0, t0 = 0, t0_mixed = 0, trace = 0, t1 = 0, t3 = 0, t4 = 0;
  const Eigen::Matrix<cd, 3, 4> grad = md.d.cast<cd>() * e;  // (d_z1, d_z2, d_zb1, d_zb2) m^a
  dm_closed = std::max((grad.leftCols<2>() - dm).cwiseAbs().maxCoeff(), (grad.rightCols<2>() - dbm).cwiseAbs().maxCoeff());

  Eigen::Matrix2cd msig = Eigen::Matrix2cd::Zero();
  for (int a = 0; a < 3; ++a) msig += k.m(a) * pauli(a);
  appe2 = std::max((z - msig * z).cwiseAbs().maxCoeff(),
                   (z.conjugate().transpose() - z.conjugate().transpose() * msig).cwiseAbs().maxCoeff());

  cd tr = 0.0;
  for (int i = 0; i < 2; ++i) {
    const Eigen::Vector3cd di = dm.col(i), dbi = dbm.col(i);
    appe1 = std::max({appe1, (di + kI * adjoint_cross(m, di)).cwiseAbs().maxCoeff(), (dbi - kI * adjoint_cross(m, dbi)).cwiseAbs().maxCoeff()});
    tr += (di.array() * dbi.array()).sum();
    for (int j = 0; j < 2; ++j) {
      const Eigen::Vector3cd dj = dm.col(j), dbj = dbm.col(j);
      t0 = std::max({t0, std::abs((di.array() * dj.array()).sum()), std::abs((dbi.array() * dbj.array()).sum())});
      t0_mixed = std::max(t0_mixed, std::abs((di.array() * dbj.array()).sum() - 2.0 * proj(i, j)));
      Eigen::Vector3cd h;
      for (int a = 0; a < 3; ++a) h(a) = ddbar[a](i, j);
      t1 = std::max(t1, adjoint_cross(m, h).cwiseAbs().maxCoeff());
      t3 = std::max(t3, (h + 2.0 * proj(i, j) * m).cwiseAbs().maxCoeff());
      t4 = std::max({t4, std::abs((m.array() * adjoint_cross(di, dj).array()).sum()),
                     std::abs((m.array() * adjoint_cross(dbi, dbj).array()).sum())});
    }
  }
  trace = std::abs(tr - 2.0 / r2);

  // one more derivative of the closed form, compared with the Hessian route
  double dd_closed = 0.0;
  for (int a = 0; a < 3; ++a) {
    const Eigen::Matrix2cd s = pauli(a);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        cd v = s(j, i) / r2;
        for (int kk = 0; kk < 2; ++kk)
          v += -s(j, kk) * z(kk) * std::conj(z(i)) / r4 - s(kk, i) * z(j) * std::conj(z(kk)) / r4;
        v += 2.0 * k.m(a) * std::conj(z(i)) * z(j) / r4 - k.m(a) * kronecker(i, j) / r2;
        dd_closed = std::max(dd_closed, std::abs(v - ddbar[a](i, j)));
      }
  }

  return {{"dm-closed-form", dm_closed}, {"appe1", appe1},     {"appe2", appe2},
          {"t0", t0},                   {"t0-mixed", t0_mixed}, {"trace", trace},
          {"t1", t1},                   {"t3", t3},             {"t4", t4},
          {"d2m-closed-form", dd_closed}};
}

}  // namespace hopfsol
