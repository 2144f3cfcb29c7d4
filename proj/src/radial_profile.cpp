#include "hopfsol/radial_profile.hpp"

#include "hopfsol/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hopfsol {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw InvalidArgument("CubicSpline: need matching knots and values");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1])) throw InvalidArgument("CubicSpline: knots must be strictly increasing");

  m_.assign(n, 0.0);
  if (n == 2) return;
  // Tridiagonal system for interior second derivatives, natural ends.
  std::vector<double> diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
    diag[i] = 2.0 * (h0 + h1);
    upper[i] = h1;
    rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
  }
  // forward sweep (lower coefficient of row i is h_{i-1} = x_i - x_{i-1})
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double lower = x_[i] - x_[i - 1];
    const double w = lower / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
    if (i == 1) break;
  }
}

std::size_t CubicSpline::interval(double t) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t i = it == x_.begin() ? 0 : std::size_t(it - x_.begin()) - 1;
  return std::min(i, x_.size() - 2);
}

double CubicSpline::value(double t) const {
  const std::size_t i = interval(t);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - t) / h, b = (t - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double t) const {
  const std::size_t i = interval(t);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - t) / h, b = (t - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h + ((1.0 - 3.0 * a * a) * m_[i] + (3.0 * b * b - 1.0) * m_[i + 1]) * h / 6.0;
}

double CubicSpline::second_derivative(double t) const {
  const std::size_t i = interval(t);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - t) / h, b = (t - x_[i]) / h;
  return a * m_[i] + b * m_[i + 1];
}

RadialProfile::RadialProfile(Eigen::VectorXd r, Eigen::VectorXd f, Eigen::VectorXd g)
    : r_(std::move(r)), f_(std::move(f)), g_(std::move(g)) {
  if (r_.size() < 4 || f_.size() != r_.size() || g_.size() != r_.size())
    throw InvalidArgument("RadialProfile: need at least 4 nodes with matching f and g");
  if (!(r_(0) >= 0.0)) throw InvalidArgument("RadialProfile: radii must be non-negative");
  if (!r_.allFinite() || !f_.allFinite() || !g_.allFinite())
    throw InvalidArgument("RadialProfile: non-finite value");
  const std::vector<double> rv(r_.data(), r_.data() + r_.size());
  fs_ = CubicSpline(rv, std::vector<double>(f_.data(), f_.data() + f_.size()));
  gs_ = CubicSpline(rv, std::vector<double>(g_.data(), g_.data() + g_.size()));
}

RadialSample RadialProfile::at(double r) const {
  if (r >= r_back()) return {f_(f_.size() - 1), 0.0, g_(g_.size() - 1), 0.0};
  return {fs_.value(r), fs_.derivative(r), gs_.value(r), gs_.derivative(r)};
}

bool RadialProfile::boundary_conditions_hold(double tol) const {
  const Eigen::Index n = r_.size() - 1;
  return r_(0) == 0.0 && f_(0) == 0.0 && g_(0) == 0.0 && std::abs(f_(n) - 1.0) <= tol &&
         std::abs(g_(n) - 1.0) <= tol;
}

}  // namespace hopfsol
