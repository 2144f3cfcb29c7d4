#pragma once

// Radial Euler-Lagrange system for f(r), g(r) on [0, r_c]:
//   f'' + 3 f'/r - 8 f (1-g)^2 / r^2 - 4 lambda f (f^2 - 1) = 0
//   g'' +   g'/r + f^2 (1-g) - 4 (1-g)(2g - g^2) / r^2     = 0
// with f(0) = g(0) = 0 and f(r_c) = g(r_c) = 1, discretized in conservative
// flux form and solved by damped Newton iteration.

#include "hopfsol/ansatz_fields.hpp"
#include "hopfsol/radial_profile.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <string>
#include <vector>

namespace hopfsol {

enum class MeshKind { uniform, graded };
enum class GuessKind { rational, tanh };

std::string to_string(MeshKind kind);
std::string to_string(GuessKind kind);
MeshKind parse_mesh_kind(const std::string& s);
GuessKind parse_guess_kind(const std::string& s);

struct SolverConfig {
  double r_c = 50.0;
  int n = 2000;  // interior nodes
  double lambda = 1.0;
  double tolerance = 1e-10;
  int max_iterations = 100;
  int max_halvings = 10;
  MeshKind mesh = MeshKind::uniform;
  double grading = 3.0;  // graded mesh: r = r_c (e^{a t} - 1) / (e^a - 1)
  GuessKind guess = GuessKind::rational;

  /// Throws InvalidArgument.
  void validate() const;
};

/// n + 2 nodes from 0 to r_c inclusive.
Eigen::VectorXd make_mesh(double r_c, int n, MeshKind kind = MeshKind::uniform, double grading = 3.0);

/// f = g = r / (1 + r) or tanh(r) at every node.
RadialProfile initial_guess(GuessKind kind, const Eigen::VectorXd& mesh);

/// Residuals of both equations at the interior nodes 1..n.
struct ElResidual {
  Eigen::VectorXd f;
  Eigen::VectorXd g;

  double inf_norm() const;
};

/// Throws MeshMismatch when sizes disagree or the mesh is not 0 = r_0 < ... .
ElResidual el_residual(const Eigen::VectorXd& mesh, const Eigen::VectorXd& f, const Eigen::VectorXd& g,
                       const ModelParams& params);
ElResidual el_residual(const RadialProfile& profile, const ModelParams& params);

/// Discrete action whose nodal gradient is the residual:
///   dS/df_i = -w_i r_i^3 R_f,i   and   dS/dg_i = -8 w_i r_i R_g,i
/// at interior nodes, with w_i = (r_{i+1} - r_{i-1}) / 2.
template <typename Scalar>
Scalar discrete_action(const Eigen::VectorXd& mesh, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& f,
                       const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& g, const ModelParams& params) {
  const Eigen::Index last = mesh.size() - 1;
  Scalar s(0);
  for (Eigen::Index i = 0; i < last; ++i) {
    const double dr = mesh(i + 1) - mesh(i);
    const double mid = 0.5 * (mesh(i) + mesh(i + 1));
    const Scalar df = f(i + 1) - f(i), dg = g(i + 1) - g(i);
    s += mid * mid * mid * df * df / (2.0 * dr) + 4.0 * mid * dg * dg / dr;
  }
  // trapezoid weights; the end nodes are Dirichlet and only shift the value
  for (Eigen::Index i = 0; i <= last; ++i) {
    const double r = mesh(i);
    const double w = 0.5 * (mesh(std::min(i + 1, last)) - mesh(std::max<Eigen::Index>(i - 1, 0)));
    if (r == 0.0) continue;  // the potential density vanishes at r = 0 when g(0) = 0
    const Scalar u = 1.0 - g(i), v = 2.0 * g(i) - g(i) * g(i), p = f(i) * f(i) - 1.0;
    s += w * (4.0 * r * f(i) * f(i) * u * u + 8.0 * v * v / r + params.lambda * r * r * r * p * p);
  }
  return s;
}

struct SolveReport {
  RadialProfile profile;
  double residual_norm = 0.0;
  int iterations = 0;        // Newton iterations
  int relaxation_steps = 0;  // accepted action-descent steps before Newton
  bool converged = false;
  double action = 0.0;      // action_total up to r_c
  double s_f = 0.0;         // fitted small-r exponents
  double s_g = 0.0;
  double tail_slope = 0.0;  // dS/d ln r over [max(10, r_c/4), r_c]
  bool f_monotone = false;
  bool g_monotone = false;
  std::vector<double> history;  // residual norm entering Newton, then after each iteration
  SolverConfig config;
};

/// Shifted relaxation steps that lower the discrete action bring the guess into
/// the Newton basin; damped Newton then drives the residual below tolerance.
/// Throws SingularJacobian if a linear system cannot be factorized. A run that
/// stalls or hits max_iterations returns the best iterate with converged = false.
SolveReport newton_solve(const SolverConfig& config);

/// Fit window for the small-r exponents.
inline constexpr double kExponentFitLow = 0.05;
inline constexpr double kExponentFitHigh = 0.2;

/// Least-squares slope of log(values) against log(r) over the nodes in [r_lo, r_hi];
/// NaN when no two positive samples are available.
double power_law_exponent(const Eigen::VectorXd& r, const Eigen::VectorXd& values, double r_lo, double r_hi);

/// Least-squares slope of S(r) = action_total(profile, r) against ln r at
/// `samples` log-spaced radii in [r_a, r_b]. Throws WindowTooNarrow.
double tail_slope(const RadialProfile& profile, const ModelParams& params, double r_a, double r_b, int samples = 16);
double tail_slope(const SolveReport& report, double r_a, double r_b, int samples = 16);

}  // namespace hopfsol
