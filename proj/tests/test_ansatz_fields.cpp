#include "hopfsol/ansatz_fields.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <Eigen/Geometry>

#include <numbers>

using namespace hopfsol;
using C = std::complex<double>;

namespace {

const SyntheticProfile kSmooth;

/// d m^a / d z_k and d m^a / d zbar_k from central differences of m_field.
std::pair<Eigen::Matrix<C, 3, 2>, Eigen::Matrix<C, 3, 2>> wirtinger_fd(const Point4& x, double h) {
  Eigen::Matrix<double, 3, 4> d;
  for (int mu = 0; mu < 4; ++mu) {
    Point4 xp = x, xm = x;
    xp(mu) += h;
    xm(mu) -= h;
    d.col(mu) = (m_field(xp) - m_field(xm)) / (2 * h);
  }
  Eigen::Matrix<C, 3, 2> dz, dzbar;
  for (int k = 0; k < 2; ++k) {
    dz.col(k) = 0.5 * (d.col(2 * k).cast<C>() - C(0, 1) * d.col(2 * k + 1).cast<C>());
    dzbar.col(k) = 0.5 * (d.col(2 * k).cast<C>() + C(0, 1) * d.col(2 * k + 1).cast<C>());
  }
  return {dz, dzbar};
}

/// Closed forms d_k m^a = sigma^a_jk zbar_j / r^2 - m^a zbar_k / r^2 and conjugate.
std::pair<Eigen::Matrix<C, 3, 2>, Eigen::Matrix<C, 3, 2>> dm_closed_form(const Point4& x) {
  const Eigen::Vector2cd z = ComplexPair::from_point4(x).spinor();
  const double r2 = x.squaredNorm();
  const AdjointVector m = m_field(x);
  Eigen::Matrix<C, 3, 2> dm, dbar;
  for (int a = 0; a < 3; ++a)
    for (int k = 0; k < 2; ++k) {
      C s = 0.0, t = 0.0;
      for (int j = 0; j < 2; ++j) {
        s += pauli(a)(j, k) * std::conj(z(j));
        t += pauli(a)(k, j) * z(j);
      }
      dm(a, k) = (s - m(a) * std::conj(z(k))) / r2;
      dbar(a, k) = (t - m(a) * z(k)) / r2;
    }
  return {dm, dbar};
}

/// Fields of the ansatz after a global rotation R of the adjoint index.
struct RotatedFields {
  Eigen::Matrix3d rot;
  template <RadialShape P>
  std::pair<AdjointVector, Eigen::Matrix<double, 3, 4>> at(const Point4& x, const P& p) const {
    const FieldSample s = eval_fields(x, p);
    return {rot * s.phi, rot * s.a};
  }
};

/// Covariant derivative and field strength of rotated fields by central differences.
template <RadialShape P>
std::pair<Eigen::Matrix<double, 3, 4>, std::array<Eigen::Matrix4d, 3>> rotated_fd(const RotatedFields& rf, const Point4& x,
                                                                                 const P& p, double h) {
  std::array<Eigen::Matrix<double, 3, 4>, 4> da;
  Eigen::Matrix<double, 3, 4> dphi;
  for (int mu = 0; mu < 4; ++mu) {
    Point4 xp = x, xm = x;
    xp(mu) += h;
    xm(mu) -= h;
    const auto [pp, ap] = rf.at(xp, p);
    const auto [pm, am] = rf.at(xm, p);
    dphi.col(mu) = (pp - pm) / (2 * h);
    da[mu] = (ap - am) / (2 * h);
  }
  const auto [phi, a] = rf.at(x, p);
  for (int mu = 0; mu < 4; ++mu) dphi.col(mu) += a.col(mu).cross(phi);
  std::array<Eigen::Matrix4d, 3> f;
  for (int b = 0; b < 3; ++b)
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) f[b](mu, nu) = da[mu](b, nu) - da[nu](b, mu) + a.col(mu).cross(a.col(nu))(b);
  return {dphi, f};
}

double max_relative_f_error(const Point4& x, double h) {
  const FieldStrengthSample fa = field_strength_analytic(x, kSmooth);
  const FieldStrengthSample fn = field_strength_numeric(x, kSmooth, h);
  double scale = 0.0, diff = 0.0;
  for (int a = 0; a < 3; ++a) {
    scale = std::max(scale, fa.real[a].matrix().cwiseAbs().maxCoeff());
    diff = std::max(diff, (fa.real[a].matrix() - fn.real[a].matrix()).cwiseAbs().maxCoeff());
  }
  return diff / scale;
}

}  // namespace

TEST_SUITE("ansatz_fields") {

TEST_CASE("vacuum map at coordinate points and scale invariance") {
  CHECK((m_field(Point4(1, 0, 0, 0)) - AdjointVector(0, 0, 1)).norm() < 1e-15);
  CHECK((m_field(Point4(2, 0, 0, 0)) - AdjointVector(0, 0, 1)).norm() < 1e-15);
  for (int n = 0; n < 50; ++n) {
    const Point4 x = test::random_point_in_shell(0.1, 10);
    CHECK((m_field(2 * x) - m_field(x)).norm() < 1e-15);
    CHECK(m_field(x).norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((m_field(x / x.norm()) - hopf_map(x / x.norm())).norm() < 1e-14);
    const MKinematics k1 = m_kinematics(x), k2 = m_kinematics(2 * x);
    CHECK((k2.dm * 2.0 - k1.dm).norm() < 1e-14 * (1 + k1.dm.norm()));
  }
  CHECK_THROWS_AS(m_field(Point4(0, 0, 0, 0)), OriginSingular);
  CHECK_THROWS_AS(m_field(Point4(1e-9, 0, 0, 0)), OriginSingular);
}

TEST_CASE("complex derivatives of m match closed forms and wirtinger differences") {
  for (int n = 0; n < 100; ++n) {
    const Point4 x = test::random_point_in_shell(0.5, 2);
    const MKinematics k = m_kinematics(x);
    const auto [dm, dbar] = dm_closed_form(x);
    CHECK((k.dm - dm).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((k.dbar_m - dbar).cwiseAbs().maxCoeff() < 1e-12);
    const auto [fd, fdbar] = wirtinger_fd(x, 1e-6);
    CHECK((k.dm - fd).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((k.dbar_m - fdbar).cwiseAbs().maxCoeff() < 1e-8);
    C trace = 0.0;
    for (int i = 0; i < 2; ++i) trace += adjoint_dot(k.dm.col(i), k.dbar_m.col(i));
    CHECK(std::abs(trace - 2.0 / x.squaredNorm()) < 1e-12);
  }
}

TEST_CASE("identity report at (1,0,0,0) and on shells") {
  for (const IdentityCheck& c : verify_m_identities(Point4(1, 0, 0, 0))) {
    INFO(c.name);
    CHECK(c.residual < 1e-12);
  }
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const Point4 x = random_point(test::rng(), kVerifyShells[n % 3]);
    for (const IdentityCheck& c : verify_m_identities(x)) worst = std::max(worst, c.residual);
  }
  CHECK(worst < 1e-10);
  CHECK(verify_m_identities(Point4(1, 0, 0, 0)).size() >= 7);
}

TEST_CASE("scalar field and gauge potential") {
  const ConstantProfile zero_f{0.0, 0.5};
  const Point4 x0 = test::random_point_in_shell(0.5, 2);
  CHECK(eval_fields(x0, zero_f).phi.norm() == 0.0);
  for (int n = 0; n < 100; ++n) {
    const Point4 x = test::random_point_in_shell(0.2, 5);
    const FieldSample s = eval_fields(x, kSmooth);
    const RadialSample p = kSmooth.at(x.norm());
    CHECK((s.a.transpose() * m_field(x)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((s.phi - p.f * m_field(x)).norm() < 1e-15);
    const auto [dm, dbar] = dm_closed_form(x);
    CHECK((s.a_holo - C(0, -1) * p.g * dm).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((s.a_antiholo - C(0, 1) * p.g * dbar).cwiseAbs().maxCoeff() < 1e-12);
    // A^a_mu = -g (m x d_mu m)
    const MRealDerivatives md = m_real_derivatives(x);
    for (int mu = 0; mu < 4; ++mu) CHECK((s.a_mu(mu) + p.g * md.m.cross(md.d.col(mu))).norm() < 1e-12);
  }
  CHECK_THROWS_AS(eval_fields(Point4(0, 0, 0, 0), kSmooth), OriginSingular);
}

TEST_CASE("covariant derivative") {
  const Point4 x0 = test::random_point_in_shell(0.5, 2);
  const CovariantDerivativeSample vac = covariant_derivative(x0, ConstantProfile{0.7, 1.0});
  CHECK(vac.dbar.cwiseAbs().maxCoeff() < 1e-15);
  CHECK(vac.d.cwiseAbs().maxCoeff() < 1e-15);

  for (int n = 0; n < 100; ++n) {
    const Point4 x = test::random_point_in_shell(0.3, 5);
    const double r = x.norm(), h = 1e-5 * r;
    const CovariantDerivativeSample d = covariant_derivative(x, kSmooth);
    const FieldSample s = eval_fields(x, kSmooth);
    Eigen::Matrix<double, 3, 4> numeric;
    for (int mu = 0; mu < 4; ++mu) {
      Point4 xp = x, xm = x;
      xp(mu) += h;
      xm(mu) -= h;
      numeric.col(mu) = (eval_fields(xp, kSmooth).phi - eval_fields(xm, kSmooth).phi) / (2 * h) + s.a_mu(mu).cross(s.phi);
    }
    CHECK((numeric - d.real).cwiseAbs().maxCoeff() < 1e-6);
    for (int k = 0; k < 2; ++k) {
      const Eigen::Matrix<C, 3, 1> dbar = 0.5 * (d.real.col(2 * k).cast<C>() + C(0, 1) * d.real.col(2 * k + 1).cast<C>());
      CHECK((dbar - d.dbar.col(k)).cwiseAbs().maxCoeff() < 1e-12);
    }
    const RadialSample p = kSmooth.at(r);
    const double kinetic = 8 * p.f * p.f * (1 - p.g) * (1 - p.g) / (r * r) + p.df * p.df;
    CHECK(std::abs(d.kinetic_complex().real() - kinetic) < 1e-10);
    CHECK(std::abs(d.kinetic_complex().imag()) < 1e-12);
    CHECK(std::abs(d.kinetic_real() - kinetic) < 1e-10);
  }
}

TEST_CASE("field strength of the vacuum gauge field vanishes") {
  const FieldStrengthSample f = field_strength_analytic(test::random_point_in_shell(0.5, 2), ConstantProfile{1.0, 0.0});
  for (int a = 0; a < 3; ++a) {
    CHECK(f.complex[a].cwiseAbs().maxCoeff() == 0.0);
    CHECK(f.real[a].matrix().cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("pure gauge: holomorphic components vanish with g'") {
  const FieldStrengthSample f = field_strength_analytic(test::random_point_in_shell(0.5, 2), ConstantProfile{1.0, 1.0});
  for (int a = 0; a < 3; ++a) {
    CHECK(std::abs(f.holomorphic(a, 0, 1)) < 1e-15);
    CHECK(std::abs(f.antiholomorphic(a, 0, 1)) < 1e-15);
  }
}

TEST_CASE("field strength contractions and component list") {
  for (int n = 0; n < 100; ++n) {
    const Point4 x = test::random_point_in_shell(0.3, 5);
    const double r = x.norm();
    const RadialSample p = kSmooth.at(r);
    const FieldStrengthSample f = field_strength_analytic(x, kSmooth);
    const double w = 2 * p.g - p.g * p.g;
    const C sq = f.mixed_square();
    CHECK(std::abs(sq.real() - (4 * w * w / std::pow(r, 4) + p.dg * p.dg / (r * r))) < 1e-10);
    CHECK(std::abs(sq.imag()) < 1e-12);
    CHECK(std::abs(f.holomorphic_square().imag()) < 1e-12);

    const FieldStrengthComponents c = field_strength_components(x, p);
    for (int a = 0; a < 3; ++a) {
      CHECK(std::abs(c.f12(a) - f.holomorphic(a, 0, 1)) < 1e-12);
      CHECK(std::abs(c.f1b2b(a) - f.antiholomorphic(a, 0, 1)) < 1e-12);
      CHECK(std::abs(c.f11b(a) - f.mixed(a, 0, 0)) < 1e-12);
      CHECK(std::abs(c.f12b(a) - f.mixed(a, 0, 1)) < 1e-12);
      CHECK(std::abs(c.f21b(a) - f.mixed(a, 1, 0)) < 1e-12);
      CHECK(std::abs(c.f22b(a) - f.mixed(a, 1, 1)) < 1e-12);
    }
  }
}

TEST_CASE("mixed component closed form") {
  for (int n = 0; n < 50; ++n) {
    const Point4 x = test::random_point_in_shell(0.3, 5);
    const double r = x.norm(), r2 = r * r;
    const RadialSample p = kSmooth.at(r);
    const Eigen::Vector2cd z = ComplexPair::from_point4(x).spinor();
    const AdjointVector m = m_field(x);
    const FieldStrengthSample f = field_strength_analytic(x, kSmooth);
    for (int a = 0; a < 3; ++a)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const C first = C(0, 2) * (r2 * kronecker(i, j) - std::conj(z(i)) * z(j)) / (r2 * r2) * m(a) * (p.g * p.g - 2 * p.g);
          CHECK(std::abs(f.mixed(a, i, j) - first - f.c[a](i, j) * p.dg) < 1e-12);
        }
  }
}

TEST_CASE("analytic field strength matches finite differences") {
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Point4 x = test::random_point_in_shell(0.3, 5);
    worst = std::max(worst, max_relative_f_error(x, 1e-5 * x.norm()));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("finite-difference field strength converges at second order") {
  for (int n = 0; n < 10; ++n) {
    const Point4 x = test::random_point_in_shell(0.5, 2);
    const double h = 2e-3 * x.norm();
    const double ratio = max_relative_f_error(x, h) / max_relative_f_error(x, h / 2);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.2));
  }
  CHECK_THROWS_AS(field_strength_numeric(test::random_point_in_shell(1, 2), kSmooth, 0.0), InvalidArgument);
}

TEST_CASE("global rotations leave contractions unchanged and act covariantly") {
  for (int n = 0; n < 20; ++n) {
    const Eigen::Vector3d axis = Eigen::Vector3d(test::uniform(-1, 1), test::uniform(-1, 1), test::uniform(-1, 1)).normalized();
    const RotatedFields rf{Eigen::AngleAxisd(test::uniform(0, 6.28), axis).toRotationMatrix()};
    const Point4 x = test::random_point_in_shell(0.5, 3);
    const CovariantDerivativeSample d = covariant_derivative(x, kSmooth);
    const FieldStrengthSample f = field_strength_analytic(x, kSmooth);

    const auto [dphi, frot] = rotated_fd(rf, x, kSmooth, 1e-5 * x.norm());
    CHECK((dphi - rf.rot * d.real).cwiseAbs().maxCoeff() < 1e-6);
    for (int a = 0; a < 3; ++a) {
      Eigen::Matrix4d expected = Eigen::Matrix4d::Zero();
      for (int b = 0; b < 3; ++b) expected += rf.rot(a, b) * f.real[b].matrix();
      CHECK((frot[a] - expected).cwiseAbs().maxCoeff() < 1e-6);
    }

    const Eigen::Matrix<double, 3, 4> dr = rf.rot * d.real;
    std::array<Eigen::Matrix4d, 3> fr;
    for (int a = 0; a < 3; ++a) {
      fr[a].setZero();
      for (int b = 0; b < 3; ++b) fr[a] += rf.rot(a, b) * f.real[b].matrix();
    }
    double ff = 0.0, eff = 0.0;
    for (int a = 0; a < 3; ++a) {
      ff += fr[a].squaredNorm();
      eff += epsilon_contract(fr[a], fr[a]);
    }
    CHECK(std::abs(dr.squaredNorm() - d.kinetic_real()) < 1e-10);
    CHECK(std::abs(ff - f.real_square()) < 1e-10);
    CHECK(std::abs(eff - theta_densities(x, kSmooth).fwf) < 1e-10);
  }
}

TEST_CASE("action density special cases") {
  const ModelParams params{.lambda = 0.7};
  for (double r : {0.5, 1.0, 7.0}) {
    CHECK(action_density(r, ConstantProfile{1, 1}, params) == doctest::Approx(8.0 / r).epsilon(1e-14));
    CHECK(action_density(r, ConstantProfile{0, 0}, params) == doctest::Approx(0.7 * r * r * r).epsilon(1e-14));
    const DensityBreakdown d = radial_density(r, kSmooth.at(r), params);
    CHECK(d.total == doctest::Approx(d.kinetic + d.gauge + d.potential).epsilon(1e-15));
  }
  CHECK_THROWS_AS(action_density(0.0, ConstantProfile{}, params), OriginSingular);
  CHECK(radial_density(0.0, RadialSample{}, params).total == 0.0);
}

TEST_CASE("pointwise lagrangian times r^3 is the radial density") {
  const ModelParams params{.lambda = 1.3};
  for (int n = 0; n < 50; ++n) {
    const Point4 x = test::random_point_in_shell(0.3, 5);
    const double r = x.norm();
    const RadialSample s = kSmooth.at(r);
    const PointwiseLagrangian l = pointwise_lagrangian(x, s, params);
    const DensityBreakdown d = radial_density(r, s, params);
    CHECK(r * r * r * l.total == doctest::Approx(d.total).epsilon(1e-12));
    CHECK(r * r * r * l.kinetic == doctest::Approx(d.kinetic).epsilon(1e-12));
    CHECK(r * r * r * l.gauge == doctest::Approx(d.gauge).epsilon(1e-12));
  }
}

TEST_CASE("action of the asymptotic tail grows like 8 ln r") {
  const int n = 4000;
  Eigen::VectorXd r = Eigen::VectorXd::LinSpaced(n, 1.0, 200.0);
  const RadialProfile ones(r, Eigen::VectorXd::Ones(n), Eigen::VectorXd::Ones(n));
  for (double rc : {50.0, 100.0, 200.0})
    CHECK(action_total(ones, ModelParams{}, rc, 4) == doctest::Approx(8 * std::log(rc)).epsilon(1e-9));
  CHECK_THROWS_AS(action_total(ones, ModelParams{}, 250.0), CutoffExceedsMesh);
}

TEST_CASE("unbroken U(1) on the boundary") {
  const BoundaryU1Sample b = boundary_u1(Point4(1, 0, 0, 0), ConstantProfile{});
  CHECK(std::abs(b.curvature(0, 1)) < 1e-15);
  CHECK(std::abs(std::abs(b.curvature(2, 3)) - 4.0) < 1e-14);
  CHECK(b.curvature(2, 3) == doctest::Approx(-omega2_pullback(Point4(1, 0, 0, 0))(2, 3)));

  for (int n = 0; n < 100; ++n) {
    const Point4 x = test::random_point_in_shell(0.5, 20);
    const double r = x.norm(), r4 = std::pow(r, 4);
    const BoundaryU1Sample u = boundary_u1(x, ConstantProfile{});
    // explicit components at g = 1, g' = 0, up to an overall sign convention
    Eigen::Matrix4d list = Eigen::Matrix4d::Zero();
    list(0, 1) = 4 * (x(2) * x(2) + x(3) * x(3)) / r4;
    list(0, 2) = list(1, 3) = 4 * (x(0) * x(3) - x(1) * x(2)) / r4;
    list(2, 3) = 4 * (x(0) * x(0) + x(1) * x(1)) / r4;
    list(0, 3) = -4 * (x(0) * x(2) + x(1) * x(3)) / r4;
    list(1, 2) = -list(0, 3);
    list = (list - list.transpose()).eval();
    CHECK((u.curvature.matrix() + list).cwiseAbs().maxCoeff() < 1e-12 / (r * r));
    CHECK(std::abs(theta_densities(x, ConstantProfile{}).curly_fwf - epsilon_contract(list, list)) < 1e-8);
    // at g = 1 the curvature is m . F
    const FieldStrengthSample f = field_strength_analytic(x, ConstantProfile{});
    const AdjointVector m = m_field(x);
    Eigen::Matrix4d mf = Eigen::Matrix4d::Zero();
    for (int a = 0; a < 3; ++a) mf += m(a) * f.real[a].matrix();
    CHECK((u.curvature.matrix() - mf).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(u.a1.cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("boundary curvature is minus omega_2 on tangent vectors") {
  for (int n = 0; n < 100; ++n) {
    const Point4 x = random_point(test::rng(), 1.0);
    const Eigen::Matrix<double, 4, 3> t = test::tangent_basis(x);
    const Eigen::Matrix3d lhs = t.transpose() * boundary_u1(x, kSmooth).curvature.matrix() * t;
    const Eigen::Matrix3d rhs = t.transpose() * omega2_pullback(x).matrix() * t;
    CHECK((lhs + rhs).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("boundary hopf number of the asymptotic configuration") {
  const S3Grid grid = S3Grid::cube(32);
  for (double radius : {1.0, 30.0}) {
    const BoundaryHopfNumber h = boundary_hopf_number(ConstantProfile{}, grid, radius);
    CHECK(std::abs(h.value - 1.0) < 1e-6);
    CHECK(std::abs(h.a1_contribution) < 1e-12);
  }
  CHECK_THROWS_AS(boundary_hopf_number(ConstantProfile{1.0, 0.5}, grid, 1.0), BoundaryNotAsymptotic);
  CHECK_THROWS_AS(boundary_hopf_number(ConstantProfile{}, S3Grid::cube(4), 1.0), ResolutionTooLow);
}

TEST_CASE("theta densities") {
  for (int n = 0; n < 100; ++n) {
    const Point4 x = test::random_point_in_shell(0.3, 10);
    CHECK(std::abs(theta_densities(x, kSmooth).fwf) < 1e-10);
  }
  const ThetaDensities vac = theta_densities(test::random_point_in_shell(0.5, 2), ConstantProfile{1.0, 0.0});
  CHECK(vac.fwf == 0.0);
  CHECK(std::abs(vac.curly_fwf) < 1e-12);
}

}  // TEST_SUITE
