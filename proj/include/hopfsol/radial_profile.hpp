#pragma once

#include <Eigen/Core>

#include <vector>

namespace hopfsol {

/// f, f', g, g' at one radius.
struct RadialSample {
  double f = 0.0;
  double df = 0.0;
  double g = 0.0;
  double dg = 0.0;
};

/// Natural cubic spline through (x_i, y_i); x strictly increasing.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double value(double t) const;
  double derivative(double t) const;
  double second_derivative(double t) const;

 private:
  std::size_t interval(double t) const;

  std::vector<double> x_, y_, m_;  // m_ = second derivatives at the knots
};

/// Profile functions f(r), g(r) on a radial mesh with natural-spline
/// interpolation. Beyond the last node the profile is continued as the
/// constant vacuum value with zero slope.
class RadialProfile {
 public:
  RadialProfile() = default;
  RadialProfile(Eigen::VectorXd r, Eigen::VectorXd f, Eigen::VectorXd g);

  const Eigen::VectorXd& radii() const { return r_; }
  const Eigen::VectorXd& f_values() const { return f_; }
  const Eigen::VectorXd& g_values() const { return g_; }
  Eigen::Index size() const { return r_.size(); }
  double r_front() const { return r_(0); }
  double r_back() const { return r_(r_.size() - 1); }

  RadialSample at(double r) const;

  /// f(0) = g(0) = 0 and f, g within `tol` of 1 at the last node.
  bool boundary_conditions_hold(double tol) const;

 private:
  Eigen::VectorXd r_, f_, g_;
  CubicSpline fs_, gs_;
};

}  // namespace hopfsol
