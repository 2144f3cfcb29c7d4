#pragma once

// Fields of the radial ansatz phi^a = f(r) m^a, A^a_k = -i d_k m^a g(r) built on
// the vacuum map m^a = zbar sigma^a z / r^2, together with their covariant
// derivatives, field strengths, action density and boundary U(1) data.

#include "hopfsol/core_algebra.hpp"
#include "hopfsol/errors.hpp"
#include "hopfsol/hopf_map.hpp"
#include "hopfsol/quadrature.hpp"
#include "hopfsol/radial_profile.hpp"

#include <concepts>
#include <numbers>
#include <string>
#include <vector>

namespace hopfsol {

using cd = std::complex<double>;

/// Points closer to the origin than this are rejected; m^a is singular at 0.
inline constexpr double kOriginCutoff = 1e-8;

/// V(phi) = lambda (phi^a phi^a - v^2)^2 with v = e = 1.
struct ModelParams {
  static constexpr double v = 1.0;
  static constexpr double e = 1.0;
  double lambda = 1.0;

  /// Throws InvalidArgument unless lambda > 0.
  void validate() const;
};

/// Anything that yields f, f', g, g' at a radius.
template <typename P>
concept RadialShape = requires(const P& p, double r) {
  { p.at(r) } -> std::convertible_to<RadialSample>;
};

/// f = f0, g = g0 everywhere.
struct ConstantProfile {
  double f = 1.0;
  double g = 1.0;
  RadialSample at(double) const { return {f, 0.0, g, 0.0}; }
};

// --- vacuum map ----------------------------------------------------------------

void require_off_origin(const Point4& x, const char* where);

AdjointVector m_field(const Point4& x);

/// m^a and its complex derivatives, columns indexed by k:
///   d_k m^a    = sigma^a_jk zbar_j / r^2 - m^a zbar_k / r^2
///   dbar_k m^a = sigma^a_kj z_j / r^2 - m^a z_k / r^2
struct MKinematics {
  double r = 0.0;
  ComplexPair z;
  AdjointVector m;
  Eigen::Matrix<cd, 3, 2> dm;
  Eigen::Matrix<cd, 3, 2> dbar_m;
};

MKinematics m_kinematics(const Point4& x);

/// Real-coordinate derivatives of m^a = x^T S^a x / x^T x.
struct MRealDerivatives {
  AdjointVector m;
  Eigen::Matrix<double, 3, 4> d;          // d(a, mu) = d_mu m^a
  std::array<Eigen::Matrix4d, 3> dd;      // dd[a](mu, nu) = d_mu d_nu m^a
};

MRealDerivatives m_real_derivatives(const Point4& x);

// --- gauge and scalar fields ---------------------------------------------------

struct FieldSample {
  Point4 x;
  double r = 0.0;
  AdjointVector phi;
  Eigen::Matrix<double, 3, 4> a;          // a(a, mu) = A^a_mu
  Eigen::Matrix<cd, 3, 2> a_holo;         // A^a_k
  Eigen::Matrix<cd, 3, 2> a_antiholo;     // Abar^a_k

  AdjointVector a_mu(int mu) const { return a.col(mu); }
};

FieldSample eval_fields(const Point4& x, const RadialSample& s);

template <RadialShape P>
FieldSample eval_fields(const Point4& x, const P& profile) {
  require_off_origin(x, "eval_fields");
  return eval_fields(x, profile.at(x.norm()));
}

/// D_k phi^a and Dbar_k phi^a in complex indices and D_mu phi^a in real ones.
struct CovariantDerivativeSample {
  Eigen::Matrix<cd, 3, 2> d;
  Eigen::Matrix<cd, 3, 2> dbar;
  Eigen::Matrix<double, 3, 4> real;

  /// 4 Dbar_k phi^a D_k phi^a.
  cd kinetic_complex() const;
  /// D_mu phi^a D_mu phi^a.
  double kinetic_real() const { return real.squaredNorm(); }
};

CovariantDerivativeSample covariant_derivative(const Point4& x, const RadialSample& s);

template <RadialShape P>
CovariantDerivativeSample covariant_derivative(const Point4& x, const P& profile) {
  require_off_origin(x, "covariant_derivative");
  return covariant_derivative(x, profile.at(x.norm()));
}

/// Field strength in both index conventions. `complex[a]` is the 4x4 tensor in
/// the (z1, z2, zbar1, zbar2) basis.
struct FieldStrengthSample {
  std::array<Eigen::Matrix4cd, 3> complex;
  std::array<TwoForm4, 3> real;
  std::array<Eigen::Matrix2cd, 3> c;  // C^a_{i jbar}, coefficient of g'

  cd mixed(int a, int i, int j) const { return complex[a](i, 2 + j); }            // F_{i jbar}
  cd holomorphic(int a, int i, int j) const { return complex[a](i, j); }          // F_{ij}
  cd antiholomorphic(int a, int i, int j) const { return complex[a](2 + i, 2 + j); }  // F_{ibar jbar}

  /// F^a_{ibar j} F^a_{i jbar}.
  cd mixed_square() const;
  /// F^a_{ibar jbar} F^a_{ij}.
  cd holomorphic_square() const;
  /// F^a_{mu nu} F^a_{mu nu}.
  double real_square() const;
};

FieldStrengthSample field_strength_analytic(const Point4& x, const RadialSample& s);

template <RadialShape P>
FieldStrengthSample field_strength_analytic(const Point4& x, const P& profile) {
  require_off_origin(x, "field_strength_analytic");
  return field_strength_analytic(x, profile.at(x.norm()));
}

/// d_mu A^a_nu from the analytic derivatives of m and the profile.
std::array<Eigen::Matrix4d, 3> gauge_field_jacobian(const Point4& x, const RadialSample& s);

/// Component-by-component closed forms with delta^a = (1, i, 0).
struct FieldStrengthComponents {
  ComplexAdjoint f12, f1b2b, f11b, f12b, f21b, f22b;
};

FieldStrengthComponents field_strength_components(const Point4& x, const RadialSample& s);

FieldStrengthSample field_strength_from_real(const std::array<TwoForm4, 3>& real);

/// Central differences of the real-index A^a_mu with step h.
template <RadialShape P>
FieldStrengthSample field_strength_numeric(const Point4& x, const P& profile, double h) {
  if (!(h > 0.0)) throw InvalidArgument("field_strength_numeric: step must be positive");
  if (x.norm() < kOriginCutoff + h) throw OriginSingular("field_strength_numeric: point too close to the origin");
  std::array<Eigen::Matrix4d, 3> da;  // da[a](mu, nu) = d_mu A^a_nu
  for (int mu = 0; mu < 4; ++mu) {
    Point4 xp = x, xm = x;
    xp(mu) += h;
    xm(mu) -= h;
    const Eigen::Matrix<double, 3, 4> diff = (eval_fields(xp, profile).a - eval_fields(xm, profile).a) / (2.0 * h);
    for (int a = 0; a < 3; ++a) da[a].row(mu) = diff.row(a);
  }
  const FieldSample fs = eval_fields(x, profile);
  std::array<TwoForm4, 3> real;
  for (int a = 0; a < 3; ++a) {
    Eigen::Matrix4d f = da[a] - da[a].transpose();
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu)
        f(mu, nu) += ModelParams::e * fs.a_mu(mu).cross(fs.a_mu(nu))(a);
    real[a] = TwoForm4::from_matrix(f);
  }
  return field_strength_from_real(real);
}

// --- action --------------------------------------------------------------------

/// r^3 times each piece of the radial Lagrangian.
struct DensityBreakdown {
  double kinetic = 0.0;    // r^3 (4 f^2 (1-g)^2 / r^2 + f'^2 / 2)
  double gauge = 0.0;      // r^3 4 (2 (2g - g^2)^2 / r^4 + g'^2 / r^2)
  double potential = 0.0;  // r^3 lambda (f^2 - 1)^2
  double total = 0.0;
};

/// Valid down to r = 0; returns +inf there if g(0) != 0.
DensityBreakdown radial_density(double r, const RadialSample& s, const ModelParams& params);

double action_density(double r, const RadialSample& s, const ModelParams& params);

template <RadialShape P>
double action_density(double r, const P& profile, const ModelParams& params) {
  if (r < kOriginCutoff) throw OriginSingular("action_density: r below cutoff");
  return action_density(r, profile.at(r), params);
}

/// Pointwise 1/2 D phi D phi + 1/4 F F + V from the 4D fields.
struct PointwiseLagrangian {
  double kinetic = 0.0;
  double gauge = 0.0;
  double potential = 0.0;
  double total = 0.0;
};

PointwiseLagrangian pointwise_lagrangian(const Point4& x, const RadialSample& s, const ModelParams& params);

/// Composite Simpson over each mesh interval of [r_front, r_c], split into
/// `subdivisions` panels. Throws CutoffExceedsMesh if r_c > r_back.
double action_total(const RadialProfile& profile, const ModelParams& params, double r_c, int subdivisions = 1);

// --- unbroken U(1) on the boundary ---------------------------------------------

struct BoundaryU1Sample {
  Eigen::Vector2cd zeta;  // z_i / r
  OneForm4 a1;            // A^a_mu phi^a / |phi|
  OneForm4 a2;            // -i (zetabar d zeta - d zetabar zeta)
  OneForm4 potential;     // a1 - a2
  TwoForm4 curvature;     // d(potential)
  TwoForm4 a2_curvature;  // d(a2)
};

BoundaryU1Sample boundary_u1(const Point4& x, const RadialSample& s);

template <RadialShape P>
BoundaryU1Sample boundary_u1(const Point4& x, const P& profile) {
  require_off_origin(x, "boundary_u1");
  return boundary_u1(x, profile.at(x.norm()));
}

inline constexpr double kAsymptoticTolerance = 1e-3;

struct BoundaryHopfNumber {
  double value = 0.0;
  double a1_contribution = 0.0;  // value minus the value with A^(1) dropped
};

/// (1/32 pi^2) sum eps A F over the sphere of radius R. Throws
/// BoundaryNotAsymptotic when |g(R) - 1| > kAsymptoticTolerance.
template <RadialShape P>
BoundaryHopfNumber boundary_hopf_number(const P& profile, const S3Grid& grid, double radius, unsigned workers = 1);

struct ThetaDensities {
  double fwf = 0.0;        // eps F^a F^a
  double curly_fwf = 0.0;  // eps F F of the boundary U(1)
};

ThetaDensities theta_densities(const Point4& x, const RadialSample& s);

template <RadialShape P>
ThetaDensities theta_densities(const Point4& x, const P& profile) {
  require_off_origin(x, "theta_densities");
  return theta_densities(x, profile.at(x.norm()));
}

/// eps_{mu nu lambda rho} F_{mu nu} G_{lambda rho}.
double epsilon_contract(const Eigen::Matrix4d& f, const Eigen::Matrix4d& g);

// --- identity report -----------------------------------------------------------

struct IdentityCheck {
  std::string name;
  double residual = 0.0;  // max |lhs - rhs| over all indices
};

/// Derivative identities of m^a. Throws OriginSingular.
std::vector<IdentityCheck> verify_m_identities(const Point4& x);

// --- template definitions -----------------------------------------------------

namespace detail {
double boundary_cs_term(const Point4& x, const Eigen::Matrix<double, 4, 3>& tangents, const RadialSample& s,
                        bool include_a1);
}

template <RadialShape P>
BoundaryHopfNumber boundary_hopf_number(const P& profile, const S3Grid& grid, double radius, unsigned workers) {
  grid.require_resolution("boundary_hopf_number");
  if (!(radius >= kOriginCutoff)) throw OriginSingular("boundary_hopf_number: radius below cutoff");
  const RadialSample s = profile.at(radius);
  if (std::abs(s.g - 1.0) > kAsymptoticTolerance)
    throw BoundaryNotAsymptotic("boundary_hopf_number: |g(R) - 1| = " + std::to_string(std::abs(s.g - 1.0)));

  auto integral = [&](bool include_a1) {
    const double sum = parallel_sum(grid.size(), workers, [&](std::size_t n) {
      const auto [i, j, k] = grid.unflatten(n);
      const double eta = grid.eta(i), xi1 = grid.xi1(j), xi2 = grid.xi2(k);
      const Point4 x = hopf_chart_point(eta, xi1, xi2, radius);
      const auto t = hopf_chart_tangents(eta, xi1, xi2, grid.orientation(), radius);
      return detail::boundary_cs_term(x, t, s, include_a1) * grid.coordinate_weight(i);
    });
    return sum / (32.0 * std::numbers::pi * std::numbers::pi);
  };
  BoundaryHopfNumber out;
  out.value = integral(true);
  out.a1_contribution = out.value - integral(false);
  return out;
}

}  // namespace hopfsol
