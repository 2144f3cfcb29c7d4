#pragma once

#include "hopfsol/ansatz_fields.hpp"
#include "hopfsol/bvp_solver.hpp"
#include "hopfsol/verification.hpp"

#include <Eigen/QR>

#include <random>

namespace hopfsol::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

/// Random point with |x| in [lo, hi].
inline Point4 random_point_in_shell(double lo, double hi) { return random_point(rng(), uniform(lo, hi)); }

/// Orthonormal basis of the tangent space of the sphere through x.
inline Eigen::Matrix<double, 4, 3> tangent_basis(const Point4& x) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.col(0) = x.normalized();
  const Eigen::Matrix4d q = Eigen::HouseholderQR<Eigen::Matrix4d>(m).householderQ();
  return q.rightCols<3>();
}

/// Default solve (lambda = 1, r_c = 50, N = 2000), computed once.
inline const SolveReport& default_solution() {
  static const SolveReport report = newton_solve(SolverConfig{});
  return report;
}

}  // namespace hopfsol::test
