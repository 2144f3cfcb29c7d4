#include "hopfsol/hopf_map.hpp"

#include "hopfsol/errors.hpp"
#include "hopfsol/io.hpp"
#include "hopfsol/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

namespace hopfsol {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

// Spinor (z1, z2) and its derivatives along (eta, xi1, xi2).
struct HopfSpinor {
  cd z1, z2;
  std::array<cd, 3> dz1, dz2;
};

HopfSpinor hopf_spinor(double eta, double xi1, double xi2) {
  const cd e1 = std::polar(1.0, xi1);
  const cd e2 = std::polar(1.0, xi2);
  const double c = std::cos(eta), s = std::sin(eta);
  HopfSpinor h;
  h.z1 = c * e1;
  h.z2 = s * e2;
  h.dz1 = {-s * e1, cd(0, 1) * h.z1, cd(0)};
  h.dz2 = {c * e2, cd(0), cd(0, 1) * h.z2};
  return h;
}

Eigen::Matrix3d orient_matrix(const Eigen::Matrix3d& f, Orientation o) {
  if (o == Orientation::reversed) return f;
  Eigen::PermutationMatrix<3> p;
  p.indices() << 0, 2, 1;
  return p.transpose() * f * p;
}

}  // namespace

void require_on_sphere(const Point4& x, const char* where) {
  const double r = x.norm();
  if (!(std::abs(r - 1.0) <= kSphereTolerance))
    throw NotOnSphere(std::string(where) + ": point is not on the unit 3-sphere (|x| = " +
                      std::to_string(r) + ")");
}

S2Point hopf_map(const Point4& x) {
  require_on_sphere(x, "hopf_map");
  return hopf_map_unchecked(x);
}

TwoForm4 omega2_pullback(const Point4& x) {
  require_on_sphere(x, "omega2_pullback");
  TwoForm4 w;
  w.set(0, 1, 4.0);
  w.set(2, 3, 4.0);
  return w;
}

TwoForm4 omega2_ambient(const Point4& x) {
  require_on_sphere(x, "omega2_ambient");
  const double p = x(0) * x(3) - x(1) * x(2);
  const double q = x(0) * x(2) + x(1) * x(3);
  TwoForm4 w;
  w.set(0, 1, 4.0 * (x(2) * x(2) + x(3) * x(3)));
  w.set(0, 2, 4.0 * p);
  w.set(1, 3, 4.0 * p);
  w.set(0, 3, -4.0 * q);
  w.set(1, 2, 4.0 * q);
  w.set(2, 3, 4.0 * (x(0) * x(0) + x(1) * x(1)));
  return w;
}

OneForm4 omega1(const Point4& x) {
  require_on_sphere(x, "omega1");
  return OneForm4(-2.0 * x(1), 2.0 * x(0), -2.0 * x(3), 2.0 * x(2));
}

// --- S3Grid ------------------------------------------------------------------

S3Grid::S3Grid(int n_eta, int n_xi1, int n_xi2, Orientation orientation)
    : n_eta_(n_eta), n_xi1_(n_xi1), n_xi2_(n_xi2), orientation_(orientation) {
  if (n_eta < 1 || n_xi1 < 1 || n_xi2 < 1) throw ResolutionTooLow("S3Grid: empty grid");
  const GaussRule rule = gauss_legendre(n_eta, 0.0, kPi / 2);
  eta_nodes_ = rule.nodes;
  eta_weights_ = rule.weights;
  d_xi1_ = 2 * kPi / n_xi1;
  d_xi2_ = 2 * kPi / n_xi2;
}

double S3Grid::volume_weight(int i) const {
  const double e = eta_nodes_[i];
  return std::cos(e) * std::sin(e) * coordinate_weight(i);
}

double S3Grid::total_volume() const {
  double total = 0.0;
  for (int i = 0; i < n_eta_; ++i) total += volume_weight(i) * n_xi1_ * n_xi2_;
  return total;
}

void S3Grid::require_resolution(const char* where) const {
  if (n_eta_ < kMinResolution || n_xi1_ < kMinResolution || n_xi2_ < kMinResolution)
    throw ResolutionTooLow(std::string(where) + ": need at least " + std::to_string(kMinResolution) +
                           " cells per dimension");
}

std::array<int, 3> S3Grid::unflatten(std::size_t n) const {
  const int k = int(n % n_xi2_);
  n /= n_xi2_;
  const int j = int(n % n_xi1_);
  const int i = int(n / n_xi1_);
  return {i, j, k};
}

Point4 hopf_chart_point(double eta, double xi1, double xi2, double radius) {
  const double c = std::cos(eta), s = std::sin(eta);
  return radius * Point4(c * std::cos(xi1), c * std::sin(xi1), s * std::cos(xi2), s * std::sin(xi2));
}

Eigen::Matrix<double, 4, 3> hopf_chart_tangents(double eta, double xi1, double xi2,
                                                Orientation orientation, double radius) {
  const double c = std::cos(eta), s = std::sin(eta);
  const double c1 = std::cos(xi1), s1 = std::sin(xi1);
  const double c2 = std::cos(xi2), s2 = std::sin(xi2);
  Eigen::Matrix<double, 4, 3> t;
  t.col(0) << -s * c1, -s * s1, c * c2, c * s2;
  t.col(1) << -c * s1, c * c1, 0, 0;
  t.col(2) << 0, 0, -s * s2, s * c2;
  t *= radius;
  // (eta, xi1, xi2) is negatively oriented with respect to the outward normal.
  if (orientation == Orientation::outward) t.col(1).swap(t.col(2));
  return t;
}

Eigen::Vector3d orient_coordinates(const Eigen::Vector3d& v, Orientation orientation) {
  if (orientation == Orientation::reversed) return v;
  return Eigen::Vector3d(v(0), v(2), v(1));
}

double hopf_invariant_forms(const S3Grid& grid, S3Map map, unsigned workers) {
  grid.require_resolution("hopf_invariant_forms");
  if (map == S3Map::constant) return 0.0;
  const double sum = parallel_sum(grid.size(), workers, [&](std::size_t n) {
    const auto [i, j, k] = grid.unflatten(n);
    const double eta = grid.eta(i), xi1 = grid.xi1(j), xi2 = grid.xi2(k);
    const Point4 x = hopf_chart_point(eta, xi1, xi2);
    Eigen::Matrix<double, 4, 3> frame = hopf_chart_tangents(eta, xi1, xi2, grid.orientation());
    frame.colwise().normalize();
    const OneForm4 w1 = omega1(x);
    const TwoForm4 w2 = omega2_pullback(x);
    const auto u = frame.col(0), v = frame.col(1), w = frame.col(2);
    const double density = w1.dot(u) * w2.apply(v, w) - w1.dot(v) * w2.apply(u, w) +
                           w1.dot(w) * w2.apply(u, v);
    return density * grid.volume_weight(i);
  });
  return sum / (16.0 * kPi * kPi);
}

HopfCsLocal hopf_cs_local(double eta, double xi1, double xi2, S3Map map) {
  HopfCsLocal out;
  out.a.setZero();
  out.f.setZero();
  out.f_spinor.setZero();
  if (map == S3Map::constant) return out;

  const HopfSpinor h = hopf_spinor(eta, xi1, xi2);
  const cd w = std::conj(h.z1) * h.z2;
  const Eigen::Vector3d y(2 * w.real(), 2 * w.imag(), std::norm(h.z1) - std::norm(h.z2));
  std::array<Eigen::Vector3d, 3> dy;
  for (int mu = 0; mu < 3; ++mu) {
    out.a(mu) = 2.0 * (std::conj(h.z1) * h.dz1[mu] + std::conj(h.z2) * h.dz2[mu]).imag();
    const cd dw = std::conj(h.dz1[mu]) * h.z2 + std::conj(h.z1) * h.dz2[mu];
    dy[mu] << 2 * dw.real(), 2 * dw.imag(),
        2 * (std::conj(h.z1) * h.dz1[mu]).real() - 2 * (std::conj(h.z2) * h.dz2[mu]).real();
  }
  for (int mu = 0; mu < 3; ++mu)
    for (int nu = 0; nu < 3; ++nu) {
      out.f(mu, nu) = y.dot(dy[mu].cross(dy[nu]));
      const cd s = std::conj(h.dz1[mu]) * h.dz1[nu] + std::conj(h.dz2[mu]) * h.dz2[nu];
      // -2i (s - conj(s)) = 4 Im(s)
      out.f_spinor(mu, nu) = 4.0 * s.imag();
    }
  return out;
}

double hopf_invariant_cs(const S3Grid& grid, S3Map map, const GaugeGradient& gauge, unsigned workers) {
  grid.require_resolution("hopf_invariant_cs");
  const double sum = parallel_sum(grid.size(), workers, [&](std::size_t n) {
    const auto [i, j, k] = grid.unflatten(n);
    const double eta = grid.eta(i), xi1 = grid.xi1(j), xi2 = grid.xi2(k);
    HopfCsLocal local = hopf_cs_local(eta, xi1, xi2, map);
    if (gauge) local.a += gauge(eta, xi1, xi2);
    const Eigen::Vector3d a = orient_coordinates(local.a, grid.orientation());
    const Eigen::Matrix3d f = orient_matrix(local.f, grid.orientation());
    return wedge_density<double>(a, f) * grid.coordinate_weight(i);
  });
  return sum / (32.0 * kPi * kPi);
}

// --- Fibers ------------------------------------------------------------------

FiberCurve preimage_circle(const S2Point& y, int n_samples) {
  if (!(std::abs(y.norm() - 1.0) <= kSphereTolerance))
    throw NotOnSphere("preimage_circle: base point is not on the unit 2-sphere");
  if (n_samples < kMinFiberSamples)
    throw InvalidArgument("preimage_circle: need at least " + std::to_string(kMinFiberSamples) + " samples");
  const double theta = std::acos(std::clamp(y(2) / y.norm(), -1.0, 1.0));
  const double azimuth = std::atan2(y(1), y(0));
  const cd z1(std::cos(theta / 2), 0.0);
  const cd z2 = std::polar(std::sin(theta / 2), azimuth);

  FiberCurve c;
  c.base = y;
  c.phi.reserve(n_samples + 1);
  c.points.reserve(n_samples + 1);
  for (int k = 0; k <= n_samples; ++k) {
    const double phi = 2 * kPi * k / n_samples;
    const cd ph = std::polar(1.0, phi);
    c.phi.push_back(phi);
    c.points.push_back(ComplexPair{z1 * ph, z2 * ph}.to_point4());
  }
  // exact closure
  c.points.back() = c.points.front();
  return c;
}

Point4 default_pole() { return Point4(0, 0, 0, -1); }

namespace {

double min_distance(const FiberCurve& c, const Point4& p) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& x : c.points) d = std::min(d, (x - p).norm());
  return d;
}

std::vector<Eigen::Vector3d> project(const FiberCurve& c, const Point4& pole) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(c.points.size());
  const std::size_t n = c.points.size() > 1 ? c.points.size() - 1 : c.points.size();
  for (std::size_t i = 0; i < n; ++i) out.push_back(stereographic(c.points[i], pole));
  return out;
}

}  // namespace

Point4 choose_pole(const FiberCurve& c1, const FiberCurve& c2) {
  auto clear = [&](const Point4& p) {
    return min_distance(c1, p) > kPoleClearance && min_distance(c2, p) > kPoleClearance;
  };
  Point4 d = default_pole();
  if (clear(d)) return d;
  for (int step = 0; step < 64; ++step) {
    d(step % 3) += 0.25;
    const Point4 p = d.normalized();
    if (clear(p)) return p;
  }
  throw PoleOnCurve("choose_pole: no clear stereographic pole found");
}

Eigen::Vector3d stereographic(const Point4& x, const Point4& pole) {
  Eigen::Matrix4d q = Eigen::HouseholderQR<Eigen::Matrix<double, 4, 1>>(pole).householderQ();
  // columns 1..3 span the complement of the pole; fix their orientation so that
  // det[-pole, b1, b2, b3] > 0, which makes the projection orientation preserving.
  Eigen::Matrix4d frame;
  frame.col(0) = -pole;
  frame.rightCols<3>() = q.rightCols<3>();
  if (frame.determinant() < 0) frame.col(3) *= -1;
  const double denom = 1.0 - pole.dot(x);
  return frame.rightCols<3>().transpose() * x / denom;
}

double gauss_linking_r3(const std::vector<Eigen::Vector3d>& c1, const std::vector<Eigen::Vector3d>& c2) {
  const std::size_t n1 = c1.size(), n2 = c2.size();
  if (n1 < 3 || n2 < 3) throw InvalidArgument("gauss_linking_r3: curves need at least 3 points");
  std::vector<Eigen::Vector3d> m1(n1), d1(n1), m2(n2), d2(n2);
  for (std::size_t i = 0; i < n1; ++i) {
    const auto& a = c1[i];
    const auto& b = c1[(i + 1) % n1];
    m1[i] = 0.5 * (a + b);
    d1[i] = b - a;
  }
  for (std::size_t j = 0; j < n2; ++j) {
    const auto& a = c2[j];
    const auto& b = c2[(j + 1) % n2];
    m2[j] = 0.5 * (a + b);
    d2[j] = b - a;
  }
  double min_sep = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) {
      const Eigen::Vector3d r = m1[i] - m2[j];
      const double dist = r.norm();
      min_sep = std::min(min_sep, dist);
      sum += r.dot(d1[i].cross(d2[j])) / (dist * dist * dist);
    }
  if (!(min_sep > kMinCurveSeparation)) throw CurvesIntersect("gauss_linking: curves intersect");
  return sum / (4.0 * kPi);
}

double gauss_linking(const FiberCurve& c1, const FiberCurve& c2, const Point4& pole) {
  if (min_distance(c1, pole) <= kPoleClearance || min_distance(c2, pole) <= kPoleClearance)
    throw PoleOnCurve("gauss_linking: stereographic pole lies on a curve");
  return gauss_linking_r3(project(c1, pole), project(c2, pole));
}

double gauss_linking(const FiberCurve& c1, const FiberCurve& c2) {
  return gauss_linking(c1, c2, choose_pole(c1, c2));
}

void write_fiber_csv(std::ostream& out, const FiberCurve& curve) {
  out << "phi,x1,x2,x3,x4\n";
  for (std::size_t k = 0; k < curve.points.size(); ++k) {
    const auto& x = curve.points[k];
    out << format_double(curve.phi[k]) << ',' << format_double(x(0)) << ',' << format_double(x(1)) << ','
        << format_double(x(2)) << ',' << format_double(x(3)) << '\n';
  }
}

// --- Rotating-plane map ------------------------------------------------------

DeformedMapSpec DeformedMapSpec::standard() {
  DeformedMapSpec s;
  s.profile = [](double r) { return 2.0 * std::atan2(1.0, r); };
  s.profile_derivative = [](double r) { return -2.0 / (1.0 + r * r); };
  s.rotation = [](double t) { return 2 * kPi * t; };
  s.rotation_derivative = [](double) { return 2 * kPi; };
  return s;
}

void DeformedMapSpec::validate() const {
  if (!profile || !profile_derivative || !rotation || !rotation_derivative)
    throw InvalidArgument("DeformedMapSpec: missing function");
  if (!(r_max > 0)) throw InvalidArgument("DeformedMapSpec: r_max must be positive");
  if (std::abs(profile(0.0) - kPi) > 1e-12) throw InvalidArgument("DeformedMapSpec: f(0) must equal pi");
  if (!(std::abs(profile(r_max)) <= 1e-3))
    throw InvalidArgument("DeformedMapSpec: f(r_max) must be within 1e-3 of 0");
  double prev = rotation(0.0);
  for (int k = 1; k <= 64; ++k) {
    const double a = rotation(k / 64.0);
    if (a < prev - 1e-12) throw InvalidArgument("DeformedMapSpec: rotation schedule must be monotone");
    prev = a;
  }
}

S2Point deformed_map(double x1, double x2, double x3, const DeformedMapSpec& spec) {
  const double r = std::hypot(x1, x2);
  const double f = spec.profile(r);
  if (r == 0.0) return S2Point(0, 0, std::cos(f));
  const double a = spec.rotation(x3);
  const double s = std::sin(f) / r;
  const double ca = std::cos(a), sa = std::sin(a);
  return S2Point(s * (x1 * ca - x2 * sa), s * (x1 * sa + x2 * ca), std::cos(f));
}

DeformedFields deformed_fields(double x1, double x2, double x3, const DeformedMapSpec& spec) {
  const double r2 = x1 * x1 + x2 * x2;
  const double r = std::sqrt(r2);
  if (r == 0.0) throw OriginSingular("deformed_fields: evaluated on the axis r = 0");
  const double f = spec.profile(r);
  const double df = spec.profile_derivative(r);
  const double da = spec.rotation_derivative(x3);
  const double c = std::cos(f);
  const double sdf = std::sin(f) * df;

  DeformedFields out;
  // A = -(1 + cos f) d theta - a' cos f dx3: regular at r = 0 since f(0) = pi.
  out.potential << (1.0 + c) * x2 / r2, -(1.0 + c) * x1 / r2, -da * c;
  out.curvature.setZero();
  auto set = [&](int m, int n, double v) { out.curvature(m, n) = v; out.curvature(n, m) = -v; };
  set(0, 1, sdf / r);
  set(1, 2, x2 / r * sdf * da);
  set(2, 0, -x1 / r * sdf * da);
  return out;
}

DeformedInvariant deformed_invariant(const DeformedMapSpec& spec, unsigned workers) {
  spec.validate();
  if (spec.n_radial < S3Grid::kMinResolution || spec.n_angle < S3Grid::kMinResolution ||
      spec.n_time < S3Grid::kMinResolution)
    throw ResolutionTooLow("deformed_invariant: need at least 8 cells per dimension");

  // Radial coordinate psi = arctan(r) compactifies [0, r_max]; midpoints in psi,
  // theta and x3.
  const double psi_max = std::atan(spec.r_max);
  const double d_psi = psi_max / spec.n_radial;
  const double d_theta = 2 * kPi / spec.n_angle;
  const double d_t = 1.0 / spec.n_time;
  const std::size_t total = std::size_t(spec.n_radial) * spec.n_angle * spec.n_time;

  const double sum = parallel_sum(total, workers, [&](std::size_t n) {
    const int it = int(n % spec.n_time);
    n /= spec.n_time;
    const int ith = int(n % spec.n_angle);
    const int ir = int(n / spec.n_angle);
    const double r = std::tan((ir + 0.5) * d_psi);
    const double th = (ith + 0.5) * d_theta;
    const double t = (it + 0.5) * d_t;
    const DeformedFields fld = deformed_fields(r * std::cos(th), r * std::sin(th), t, spec);
    const double jac = r * (1.0 + r * r) * d_psi * d_theta * d_t;
    return wedge_density<double>(fld.potential, fld.curvature) * jac;
  });

  DeformedInvariant out;
  out.value = sum / (16.0 * kPi * kPi);
  const double turns = (spec.rotation(1.0) - spec.rotation(0.0)) / (2 * kPi);
  out.reduction = turns * (std::cos(spec.profile(0.0)) - std::cos(spec.profile(spec.r_max))) / 2.0;
  return out;
}

}  // namespace hopfsol
