#include "hopfsol/verification.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <map>

namespace hopfsol {

Point4 random_point(std::mt19937_64& rng, double radius) {
  std::normal_distribution<double> normal;
  Point4 x;
  do {
    for (int k = 0; k < 4; ++k) x(k) = normal(rng);
  } while (x.norm() < 1e-6);
  return radius * x / x.norm();
}

namespace {

/// Orthonormal basis of the tangent space of the sphere through x.
Eigen::Matrix<double, 4, 3> tangent_basis(const Point4& x) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.col(0) = x.normalized();
  Eigen::HouseholderQR<Eigen::Matrix4d> qr(m);
  const Eigen::Matrix4d q = qr.householderQ();
  return q.rightCols<3>();
}

template <RadialShape P>
void profile_checks(const P& profile, std::mt19937_64& rng, int points, std::map<std::string, double>& worst) {
  auto bump = [&](const std::string& name, double v) { worst[name] = std::max(worst[name], v); };
  for (int n = 0; n < points; ++n) {
    const double radius = kVerifyShells[n % 3];
    const Point4 x = random_point(rng, radius);
    const double r = x.norm();
    const RadialSample s = profile.at(r);
    const double r2 = r * r, r4 = r2 * r2;

    const FieldSample fs = eval_fields(x, profile);
    bump("phi-norm", std::abs(fs.phi.squaredNorm() - s.f * s.f));
    bump("A-perp-m", (fs.a.transpose() * m_field(x)).cwiseAbs().maxCoeff());

    const CovariantDerivativeSample dphi = covariant_derivative(x, profile);
    const double kinetic = 8.0 * s.f * s.f * (1.0 - s.g) * (1.0 - s.g) / r2 + s.df * s.df;
    bump("kinetic-contraction", std::max(std::abs(dphi.kinetic_complex() - kinetic), std::abs(dphi.kinetic_real() - kinetic)));

    const FieldStrengthSample fa = field_strength_analytic(x, profile);
    const double w = 2.0 * s.g - s.g * s.g;
    bump("F-square-contraction", std::abs(fa.mixed_square() - (4.0 * w * w / r4 + s.dg * s.dg / r2)));

    const FieldStrengthComponents comp = field_strength_components(x, s);
    double comp_res = 0.0;
    for (int a = 0; a < 3; ++a)
      comp_res = std::max({comp_res, std::abs(comp.f12(a) - fa.holomorphic(a, 0, 1)),
                           std::abs(comp.f1b2b(a) - fa.antiholomorphic(a, 0, 1)), std::abs(comp.f11b(a) - fa.mixed(a, 0, 0)),
                           std::abs(comp.f12b(a) - fa.mixed(a, 0, 1)), std::abs(comp.f21b(a) - fa.mixed(a, 1, 0)),
                           std::abs(comp.f22b(a) - fa.mixed(a, 1, 1))});
    bump("F-component-list", comp_res);

    const FieldStrengthSample fn = field_strength_numeric(x, profile, 1e-5 * r);
    double scale = 0.0, diff = 0.0;
    for (int a = 0; a < 3; ++a) {
      scale = std::max(scale, fa.real[a].matrix().cwiseAbs().maxCoeff());
      diff = std::max(diff, (fa.real[a].matrix() - fn.real[a].matrix()).cwiseAbs().maxCoeff());
    }
    if (scale > 0.0) bump("F-analytic-vs-numeric", diff / scale);

    bump("FwF", std::abs(theta_densities(x, profile).fwf));
    bump("A1-perp", boundary_u1(x, profile).a1.cwiseAbs().maxCoeff());
  }
}

}  // namespace

std::vector<VerifyRow> run_verification(const VerifyOptions& options) {
  if (options.points < 1) throw InvalidArgument("verify: points must be positive");
  std::map<std::string, double> worst;
  auto bump = [&](const std::string& name, double v) { worst[name] = std::max(worst[name], v); };

  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          const auto p1 = pauli_identity_p1(i, j, k, l);
          bump("pauli-p1", std::abs(p1.lhs - p1.rhs));
          for (int a = 0; a < 3; ++a) {
            const auto p2 = pauli_identity_p2(a, i, j, k, l);
            bump("pauli-p2", std::abs(p2.lhs - p2.rhs));
          }
        }

  std::mt19937_64 rng(options.seed);
  for (int n = 0; n < options.points; ++n) {
    const Point4 x = random_point(rng, kVerifyShells[n % 3]);
    for (const IdentityCheck& c : verify_m_identities(x)) bump("m:" + c.name, c.residual);
  }

  if (options.profile)
    profile_checks(*options.profile, rng, options.points, worst);
  else
    profile_checks(SyntheticProfile{}, rng, options.points, worst);

  // boundary field strength against -omega_2 on the unit sphere, asymptotic fields
  for (int n = 0; n < options.points; ++n) {
    const Point4 x = random_point(rng, 1.0);
    const Eigen::Matrix<double, 4, 3> t = tangent_basis(x);
    const Eigen::Matrix3d curly = t.transpose() * boundary_u1(x, ConstantProfile{}).curvature.matrix() * t;
    const Eigen::Matrix3d omega = t.transpose() * omega2_pullback(x).matrix() * t;
    bump("boundary-F-eq-minus-omega2", (curly + omega).cwiseAbs().maxCoeff());
  }

  const std::map<std::string, double> tolerance = {{"F-analytic-vs-numeric", 1e-6}, {"FwF", 1e-10},
                                                   {"boundary-F-eq-minus-omega2", 1e-10}};
  std::vector<VerifyRow> rows;
  for (const auto& [name, value] : worst) {
    const auto it = tolerance.find(name);
    rows.push_back({name, value, it == tolerance.end() ? 1e-8 : it->second});
  }
  return rows;
}

}  // namespace hopfsol
