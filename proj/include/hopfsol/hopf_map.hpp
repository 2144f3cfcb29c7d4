#pragma once

// The Hopf map S^3 -> S^2, its pulled-back forms and three numerical routes to
// the Hopf invariant: form quadrature, Chern-Simons quadrature and the Gauss
// linking number of two fibers. Also the rotating-plane map R^2 x [0,1] -> S^2.

#include "hopfsol/core_algebra.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hopfsol {

inline constexpr double kSphereTolerance = 1e-9;

/// Throws NotOnSphere when | |x| - 1 | > kSphereTolerance.
void require_on_sphere(const Point4& x, const char* where);

/// y^a = zbar_i sigma^a_ij z_j. Valid for any x; callers that need S^3 use hopf_map().
template <typename Real>
S2PointT<Real> hopf_map_unchecked(const Point4T<Real>& x) {
  return S2PointT<Real>(2 * (x(0) * x(2) + x(1) * x(3)),
                        2 * (x(0) * x(3) - x(1) * x(2)),
                        x(0) * x(0) + x(1) * x(1) - x(2) * x(2) - x(3) * x(3));
}

S2Point hopf_map(const Point4& x);

/// omega_2 = 4 (dx1^dx2 + dx3^dx4), the pullback of the S^2 area form
/// simplified with the S^3 constraint. Only meaningful on tangent vectors.
TwoForm4 omega2_pullback(const Point4& x);

/// The pullback before simplification, valid as an ambient 2-form at points of S^3.
TwoForm4 omega2_ambient(const Point4& x);

/// omega_1 = 2 (x1 dx2 - x2 dx1 + x3 dx4 - x4 dx3), d omega_1 = omega_2.
OneForm4 omega1(const Point4& x);

// --- S^3 quadrature grid -----------------------------------------------------

/// Orientation of the integration domain. `outward` is the orientation of S^3
/// as the boundary of the unit ball in R^4; `reversed` swaps the roles of xi1
/// and xi2, which flips it.
enum class Orientation { outward, reversed };

/// Hopf coordinates: z1 = cos(eta) e^{i xi1}, z2 = sin(eta) e^{i xi2}.
/// eta uses Gauss-Legendre nodes on [0, pi/2]; xi1 and xi2 use uniform midpoints
/// on [0, 2 pi), which is spectrally accurate for periodic integrands.
class S3Grid {
 public:
  static constexpr int kMinResolution = 8;

  S3Grid(int n_eta, int n_xi1, int n_xi2, Orientation orientation = Orientation::outward);
  static S3Grid cube(int n, Orientation orientation = Orientation::outward) {
    return S3Grid(n, n, n, orientation);
  }

  int n_eta() const { return n_eta_; }
  int n_xi1() const { return n_xi1_; }
  int n_xi2() const { return n_xi2_; }
  Orientation orientation() const { return orientation_; }
  std::size_t size() const { return std::size_t(n_eta_) * n_xi1_ * n_xi2_; }

  double eta(int i) const { return eta_nodes_[i]; }
  double xi1(int j) const { return (j + 0.5) * d_xi1_; }
  double xi2(int k) const { return (k + 0.5) * d_xi2_; }

  /// Coordinate measure d eta d xi1 d xi2 of node (i, j, k).
  double coordinate_weight(int i) const { return eta_weights_[i] * d_xi1_ * d_xi2_; }
  /// S^3 volume weight cos(eta) sin(eta) d eta d xi1 d xi2.
  double volume_weight(int i) const;
  double total_volume() const;

  /// Throws ResolutionTooLow below kMinResolution cells per dimension.
  void require_resolution(const char* where) const;

  /// Flat index -> (i, j, k).
  std::array<int, 3> unflatten(std::size_t n) const;

 private:
  int n_eta_, n_xi1_, n_xi2_;
  Orientation orientation_;
  std::vector<double> eta_nodes_, eta_weights_;
  double d_xi1_, d_xi2_;
};

/// Embedding of Hopf coordinates on the sphere of radius `radius`.
Point4 hopf_chart_point(double eta, double xi1, double xi2, double radius = 1.0);

/// Tangent vectors d x / d u as columns, ordered so that increasing coordinates
/// are positively oriented for the requested orientation.
Eigen::Matrix<double, 4, 3> hopf_chart_tangents(double eta, double xi1, double xi2,
                                                Orientation orientation, double radius = 1.0);

/// Same column permutation applied to a covector given in (eta, xi1, xi2) order.
Eigen::Vector3d orient_coordinates(const Eigen::Vector3d& v, Orientation orientation);

/// Maps S^3 -> S^2 the invariants can be evaluated for.
enum class S3Map { hopf, constant };

/// (1/16 pi^2) sum (omega_1 ^ omega_2)(frame) * volume weight.
double hopf_invariant_forms(const S3Grid& grid, S3Map map = S3Map::hopf, unsigned workers = 1);

/// Gradient of a gauge function chi in (eta, xi1, xi2) order.
using GaugeGradient = std::function<Eigen::Vector3d(double eta, double xi1, double xi2)>;

/// (1/32 pi^2) sum eps A F over the grid with A = -i[zbar dz - dzbar z] and
/// F = eps^{ijk} y_i dy_j dy_k, all derivatives analytic in Hopf coordinates.
double hopf_invariant_cs(const S3Grid& grid, S3Map map = S3Map::hopf,
                         const GaugeGradient& gauge = {}, unsigned workers = 1);

struct HopfCsLocal {
  Eigen::Vector3d a;  // potential components, (eta, xi1, xi2) order
  Eigen::Matrix3d f;  // eps^{ijk} y_i d y_j d y_k
  Eigen::Matrix3d f_spinor;  // -2i (d zbar_i d z_i - (mu <-> nu))
};

/// Chern-Simons integrand ingredients at one Hopf-coordinate node.
HopfCsLocal hopf_cs_local(double eta, double xi1, double xi2, S3Map map = S3Map::hopf);

// --- Fibers and linking ------------------------------------------------------

struct FiberCurve {
  S2Point base;
  std::vector<double> phi;     // n_samples + 1 phases; the last closes the loop
  std::vector<Point4> points;  // (z1 e^{i phi}, z2 e^{i phi})
};

inline constexpr int kMinFiberSamples = 16;

FiberCurve preimage_circle(const S2Point& y, int n_samples);

inline constexpr double kPoleClearance = 1e-3;
inline constexpr double kMinCurveSeparation = 1e-6;

Point4 default_pole();

/// First pole in the deterministic sequence -x4, then tilted toward x1, x2, x3
/// that keeps kPoleClearance away from both curves.
Point4 choose_pole(const FiberCurve& c1, const FiberCurve& c2);

/// Orientation-preserving stereographic projection S^3 \ {pole} -> R^3.
Eigen::Vector3d stereographic(const Point4& x, const Point4& pole);

/// (1/4 pi) double integral of (r1 - r2).(dr1 x dr2)/|r1 - r2|^3, midpoint rule
/// on closed polylines (the closing segment is implicit).
double gauss_linking_r3(const std::vector<Eigen::Vector3d>& c1, const std::vector<Eigen::Vector3d>& c2);

/// Projects both fibers from `pole` and returns their Gauss linking number.
/// Throws PoleOnCurve and CurvesIntersect.
double gauss_linking(const FiberCurve& c1, const FiberCurve& c2, const Point4& pole);

/// gauss_linking with choose_pole().
double gauss_linking(const FiberCurve& c1, const FiberCurve& c2);

/// CSV with header `phi,x1,x2,x3,x4`, 17 significant digits.
void write_fiber_csv(std::ostream& out, const FiberCurve& curve);

// --- Rotating-plane map R^2 x [0,1] -> S^2 -------------------------------------

struct DeformedMapSpec {
  std::function<double(double)> profile;             // f_d(r), f_d(0) = pi, f_d(inf) = 0
  std::function<double(double)> profile_derivative;  // f_d'(r)
  std::function<double(double)> rotation;            // a(t), monotone on [0, 1]
  std::function<double(double)> rotation_derivative; // a'(t)
  double r_max = 4000.0;
  int n_radial = 2048;
  int n_angle = 32;
  int n_time = 64;

  /// f_d(r) = 2 arctan(1/r), a(t) = 2 pi t.
  static DeformedMapSpec standard();
  /// Throws InvalidArgument when the endpoint conditions fail.
  void validate() const;
};

S2Point deformed_map(double x1, double x2, double x3, const DeformedMapSpec& spec);

struct DeformedFields {
  Eigen::Vector3d potential;   // A_mu, gauge regular at r = 0
  Eigen::Matrix3d curvature;   // F_{mu nu}
};

DeformedFields deformed_fields(double x1, double x2, double x3, const DeformedMapSpec& spec);

struct DeformedInvariant {
  double value = 0.0;      // 3D quadrature of eps A F / (16 pi^2)
  double reduction = 0.0;  // closed 1D reduction on the same disk
};

DeformedInvariant deformed_invariant(const DeformedMapSpec& spec, unsigned workers = 1);

}  // namespace hopfsol
