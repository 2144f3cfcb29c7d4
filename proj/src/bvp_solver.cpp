#include "hopfsol/bvp_solver.hpp"

#include "hopfsol/errors.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>

namespace hopfsol {

std::string to_string(MeshKind kind) { return kind == MeshKind::uniform ? "uniform" : "graded"; }
std::string to_string(GuessKind kind) { return kind == GuessKind::rational ? "rational" : "tanh"; }

MeshKind parse_mesh_kind(const std::string& s) {
  if (s == "uniform") return MeshKind::uniform;
  if (s == "graded") return MeshKind::graded;
  throw InvalidArgument("unknown mesh kind '" + s + "'");
}

GuessKind parse_guess_kind(const std::string& s) {
  if (s == "rational") return GuessKind::rational;
  if (s == "tanh") return GuessKind::tanh;
  throw InvalidArgument("unknown guess kind '" + s + "'");
}

void SolverConfig::validate() const {
  if (!(r_c > 0.0) || !std::isfinite(r_c)) throw InvalidArgument("r_c must be positive");
  if (n < 100) throw InvalidArgument("n must be at least 100");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be positive");
  if (!(tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (max_iterations < 1) throw InvalidArgument("max_iterations must be at least 1");
  if (max_halvings < 0) throw InvalidArgument("max_halvings must be non-negative");
  if (mesh == MeshKind::graded && !(grading > 0.0)) throw InvalidArgument("grading must be positive");
}

Eigen::VectorXd make_mesh(double r_c, int n, MeshKind kind, double grading) {
  if (!(r_c > 0.0) || n < 1) throw InvalidArgument("make_mesh: need r_c > 0 and n >= 1");
  Eigen::VectorXd r(n + 2);
  for (int i = 0; i <= n + 1; ++i) {
    const double t = double(i) / (n + 1);
    r(i) = kind == MeshKind::uniform ? r_c * t : r_c * std::expm1(grading * t) / std::expm1(grading);
  }
  r(n + 1) = r_c;
  return r;
}

RadialProfile initial_guess(GuessKind kind, const Eigen::VectorXd& mesh) {
  Eigen::VectorXd v(mesh.size());
  for (Eigen::Index i = 0; i < mesh.size(); ++i)
    v(i) = kind == GuessKind::rational ? mesh(i) / (1.0 + mesh(i)) : std::tanh(mesh(i));
  return RadialProfile(mesh, v, v);
}

double ElResidual::inf_norm() const {
  double n = 0.0;
  if (f.size() > 0) n = std::max(n, f.cwiseAbs().maxCoeff());
  if (g.size() > 0) n = std::max(n, g.cwiseAbs().maxCoeff());
  return n;
}

namespace {

// Relaxation phase: hand over to Newton below this residual norm.
constexpr double kRelaxSwitch = 1.0;
// The first relaxation step moves nodes by about this much.
constexpr double kRelaxFirstStep = 0.1;
constexpr int kRelaxMaxAttempts = 1000;

void require_mesh(const Eigen::VectorXd& mesh, Eigen::Index nf, Eigen::Index ng) {
  if (mesh.size() < 3 || nf != mesh.size() || ng != mesh.size())
    throw MeshMismatch("el_residual: profile values do not match the mesh");
  if (mesh(0) != 0.0) throw MeshMismatch("el_residual: mesh must start at r = 0");
  for (Eigen::Index i = 1; i < mesh.size(); ++i)
    if (!(mesh(i) > mesh(i - 1))) throw MeshMismatch("el_residual: mesh must be strictly increasing");
}

// Flux-form stencil coefficients at interior node i.
struct Stencil {
  double r, w;
  double fp, fm;  // r_{i+-1/2}^3 / dr_{+-} / (w r^3)
  double gp, gm;  // r_{i+-1/2}   / dr_{+-} / (w r)
};

Stencil stencil(const Eigen::VectorXd& mesh, Eigen::Index i) {
  const double r = mesh(i);
  const double dp = mesh(i + 1) - r, dm = r - mesh(i - 1);
  const double mp = 0.5 * (mesh(i + 1) + r), mm = 0.5 * (r + mesh(i - 1));
  const double w = 0.5 * (dp + dm);
  return {r, w, mp * mp * mp / dp / (w * r * r * r), mm * mm * mm / dm / (w * r * r * r), mp / dp / (w * r),
          mm / dm / (w * r)};
}

ElResidual residual_unchecked(const Eigen::VectorXd& mesh, const Eigen::VectorXd& f, const Eigen::VectorXd& g,
                              double lambda) {
  const Eigen::Index n = mesh.size() - 2;
  ElResidual res{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (Eigen::Index i = 1; i <= n; ++i) {
    const Stencil s = stencil(mesh, i);
    const double fi = f(i), gi = g(i), u = 1.0 - gi;
    res.f(i - 1) = s.fp * (f(i + 1) - fi) - s.fm * (fi - f(i - 1)) - 8.0 * fi * u * u / (s.r * s.r) -
                   4.0 * lambda * fi * (fi * fi - 1.0);
    res.g(i - 1) = s.gp * (g(i + 1) - gi) - s.gm * (gi - g(i - 1)) + fi * fi * u -
                   4.0 * u * (2.0 * gi - gi * gi) / (s.r * s.r);
  }
  return res;
}

// Unknowns interleaved as (f_1, g_1, f_2, g_2, ...).
Eigen::SparseMatrix<double> jacobian(const Eigen::VectorXd& mesh, const Eigen::VectorXd& f, const Eigen::VectorXd& g,
                                     double lambda) {
  const Eigen::Index n = mesh.size() - 2;
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(std::size_t(n) * 8);
  for (Eigen::Index i = 1; i <= n; ++i) {
    const Stencil s = stencil(mesh, i);
    const double fi = f(i), gi = g(i), u = 1.0 - gi, r2 = s.r * s.r;
    const Eigen::Index rf = 2 * (i - 1), rg = rf + 1;
    t.emplace_back(rf, rf, -(s.fp + s.fm) - 8.0 * u * u / r2 - 4.0 * lambda * (3.0 * fi * fi - 1.0));
    t.emplace_back(rf, rg, 16.0 * fi * u / r2);
    t.emplace_back(rg, rg, -(s.gp + s.gm) - fi * fi - 4.0 * (2.0 - 6.0 * gi + 3.0 * gi * gi) / r2);
    t.emplace_back(rg, rf, 2.0 * fi * u);
    if (i > 1) {
      t.emplace_back(rf, rf - 2, s.fm);
      t.emplace_back(rg, rg - 2, s.gm);
    }
    if (i < n) {
      t.emplace_back(rf, rf + 2, s.fp);
      t.emplace_back(rg, rg + 2, s.gp);
    }
  }
  Eigen::SparseMatrix<double> j(2 * n, 2 * n);
  j.setFromTriplets(t.begin(), t.end());
  return j;
}

Eigen::VectorXd interleave(const ElResidual& r) {
  Eigen::VectorXd v(2 * r.f.size());
  for (Eigen::Index i = 0; i < r.f.size(); ++i) {
    v(2 * i) = r.f(i);
    v(2 * i + 1) = r.g(i);
  }
  return v;
}

bool non_decreasing(const Eigen::VectorXd& v) {
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (v(i) < v(i - 1) - 1e-12) return false;
  return true;
}

}  // namespace

ElResidual el_residual(const Eigen::VectorXd& mesh, const Eigen::VectorXd& f, const Eigen::VectorXd& g,
                       const ModelParams& params) {
  params.validate();
  require_mesh(mesh, f.size(), g.size());
  return residual_unchecked(mesh, f, g, params.lambda);
}

ElResidual el_residual(const RadialProfile& profile, const ModelParams& params) {
  return el_residual(profile.radii(), profile.f_values(), profile.g_values(), params);
}

SolveReport newton_solve(const SolverConfig& config) {
  config.validate();
  const ModelParams params{.lambda = config.lambda};
  const Eigen::VectorXd mesh = make_mesh(config.r_c, config.n, config.mesh, config.grading);
  const RadialProfile guess = initial_guess(config.guess, mesh);
  Eigen::VectorXd f = guess.f_values(), g = guess.g_values();
  const Eigen::Index last = mesh.size() - 1;
  f(0) = g(0) = 0.0;
  f(last) = g(last) = 1.0;

  SolveReport report;
  report.config = config;
  ElResidual res = residual_unchecked(mesh, f, g, config.lambda);
  double norm = res.inf_norm();

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  bool analyzed = false;
  auto solve = [&](const Eigen::SparseMatrix<double>& m, const Eigen::VectorXd& rhs) {
    if (!analyzed) {
      lu.analyzePattern(m);
      analyzed = true;
    }
    lu.factorize(m);
    if (lu.info() != Eigen::Success) throw SingularJacobian("newton_solve: " + lu.lastErrorMessage());
    Eigen::VectorXd x = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !x.allFinite()) throw SingularJacobian("newton_solve: linear solve failed");
    return x;
  };
  auto trial = [&](const Eigen::VectorXd& step, double t, Eigen::VectorXd& ft, Eigen::VectorXd& gt) {
    ft = f;
    gt = g;
    for (Eigen::Index i = 1; i < last; ++i) {
      ft(i) += t * step(2 * (i - 1));
      gt(i) += t * step(2 * (i - 1) + 1);
    }
  };

  // Relaxation: shifted steps (J - mu I) d = -R, accepted only when the
  // discrete action drops. Large mu is a gradient-flow step, mu -> 0 is Newton.
  double energy = discrete_action<double>(mesh, f, g, params);
  double mu = norm / kRelaxFirstStep;
  int attempts = 0;
  while (norm > kRelaxSwitch && attempts < kRelaxMaxAttempts) {
    ++attempts;
    Eigen::SparseMatrix<double> shifted = jacobian(mesh, f, g, config.lambda);
    for (Eigen::Index k = 0; k < shifted.rows(); ++k) shifted.coeffRef(k, k) -= mu;
    const Eigen::VectorXd step = solve(shifted, -interleave(res));
    Eigen::VectorXd ft, gt;
    trial(step, 1.0, ft, gt);
    const double et = discrete_action<double>(mesh, ft, gt, params);
    if (std::isfinite(et) && et < energy) {
      f = std::move(ft);
      g = std::move(gt);
      energy = et;
      res = residual_unchecked(mesh, f, g, config.lambda);
      norm = res.inf_norm();
      ++report.relaxation_steps;
      mu *= 0.5;
    } else {
      mu *= 4.0;
    }
  }

  // Damped Newton with backtracking on the residual infinity norm.
  report.history.push_back(norm);
  int it = 0;
  while (norm > config.tolerance && it < config.max_iterations) {
    const Eigen::VectorXd step = solve(jacobian(mesh, f, g, config.lambda), -interleave(res));
    ++it;
    bool accepted = false;
    double t = 1.0;
    for (int h = 0; h <= config.max_halvings; ++h, t *= 0.5) {
      Eigen::VectorXd ft, gt;
      trial(step, t, ft, gt);
      ElResidual rt = residual_unchecked(mesh, ft, gt, config.lambda);
      const double nt = rt.inf_norm();
      if (std::isfinite(nt) && nt < norm) {
        f = std::move(ft);
        g = std::move(gt);
        res = std::move(rt);
        norm = nt;
        accepted = true;
        break;
      }
    }
    report.history.push_back(norm);
    if (!accepted) break;
  }

  report.profile = RadialProfile(mesh, f, g);
  report.residual_norm = norm;
  report.iterations = it;
  report.converged = norm <= config.tolerance;
  report.action = action_total(report.profile, params, config.r_c);
  report.s_f = power_law_exponent(mesh, f, kExponentFitLow, kExponentFitHigh);
  report.s_g = power_law_exponent(mesh, g, kExponentFitLow, kExponentFitHigh);
  const double r_a = std::max(10.0, config.r_c / 4.0);
  report.tail_slope = r_a < config.r_c ? tail_slope(report.profile, params, r_a, config.r_c)
                                       : std::numeric_limits<double>::quiet_NaN();
  report.f_monotone = non_decreasing(f);
  report.g_monotone = non_decreasing(g);
  return report;
}

double power_law_exponent(const Eigen::VectorXd& r, const Eigen::VectorXd& values, double r_lo, double r_hi) {
  // coarse meshes with fewer than two nodes in the window fall back to the first two positive nodes
  Eigen::Index in_window = 0;
  for (Eigen::Index i = 0; i < r.size(); ++i)
    if (r(i) >= r_lo && r(i) <= r_hi && r(i) > 0.0) ++in_window;
  if (in_window < 2) {
    Eigen::Index first = 0;
    while (first < r.size() && !(r(first) > 0.0)) ++first;
    if (first + 1 >= r.size()) return std::numeric_limits<double>::quiet_NaN();
    r_lo = r(first);
    r_hi = r(first + 1);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    if (r(i) < r_lo || r(i) > r_hi || !(r(i) > 0.0) || !(values(i) > 0.0)) continue;
    const double x = std::log(r(i)), y = std::log(values(i));
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double tail_slope(const RadialProfile& profile, const ModelParams& params, double r_a, double r_b, int samples) {
  if (samples < 2) throw WindowTooNarrow("tail_slope: need at least two samples");
  if (!(r_a > 0.0) || !(r_b > r_a * (1.0 + 1e-9))) throw WindowTooNarrow("tail_slope: empty window");
  if (r_b > profile.r_back() * (1.0 + 1e-12)) throw CutoffExceedsMesh("tail_slope: window beyond the mesh");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  // S(r_k) accumulated piecewise so each sample costs one segment
  double s = action_total(profile, params, r_a);
  double prev = r_a;
  const auto& mesh = profile.radii();
  auto segment = [&](double lo, double hi) {
    double sum = 0.0;
    auto density = [&](double t) { return radial_density(t, profile.at(t), params).total; };
    // Simpson on each mesh interval piece inside [lo, hi]
    double a = lo;
    while (a < hi) {
      const auto it = std::upper_bound(mesh.data(), mesh.data() + mesh.size(), a * (1.0 + 1e-15));
      double b = it == mesh.data() + mesh.size() ? hi : std::min(*it, hi);
      if (!(b > a)) b = hi;
      sum += (b - a) / 6.0 * (density(a) + 4.0 * density(0.5 * (a + b)) + density(b));
      a = b;
    }
    return sum;
  };
  for (int k = 0; k < samples; ++k) {
    const double x = std::log(r_a) + (std::log(r_b) - std::log(r_a)) * k / (samples - 1);
    const double r = k + 1 == samples ? r_b : std::exp(x);
    s += segment(prev, r);
    prev = r;
    sx += x; sy += s; sxx += x * x; sxy += x * s;
  }
  return (samples * sxy - sx * sy) / (samples * sxx - sx * sx);
}

double tail_slope(const SolveReport& report, double r_a, double r_b, int samples) {
  return tail_slope(report.profile, ModelParams{.lambda = report.config.lambda}, r_a, r_b, samples);
}

}  // namespace hopfsol
