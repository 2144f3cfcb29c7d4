// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "hopfsol/ansatz_fields.hpp"
#include "hopfsol/bvp_solver.hpp"
#include "hopfsol/hopf_map.hpp"
#include "hopfsol/verification.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace hopfsol;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, bool pass, const std::string& what) {
  std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  failures += !pass;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Eigen::Matrix<double, 4, 3> tangent_basis(const Point4& x) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.col(0) = x.normalized();
  const Eigen::Matrix4d q = Eigen::HouseholderQR<Eigen::Matrix4d>(m).householderQ();
  return q.rightCols<3>();
}

/// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  Eigen::MatrixXd a(x.size(), 2);
  Eigen::VectorXd b(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = x[i];
    b(i) = y[i];
  }
  return a.colPivHouseholderQr().solve(b)(1);
}

double max_relative_f_error(const Point4& x, const RadialProfile& p, double h) {
  const FieldStrengthSample fa = field_strength_analytic(x, p);
  const FieldStrengthSample fn = field_strength_numeric(x, p, h);
  double scale = 0.0, diff = 0.0;
  for (int a = 0; a < 3; ++a) {
    scale = std::max(scale, fa.real[a].matrix().cwiseAbs().maxCoeff());
    diff = std::max(diff, (fa.real[a].matrix() - fn.real[a].matrix()).cwiseAbs().maxCoeff());
  }
  return diff / scale;
}

void guarded(int id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  const S3Grid grid64 = S3Grid::cube(64);
  double forms = 0.0;

  guarded(1, [&] {
    const auto t0 = Clock::now();
    forms = hopf_invariant_forms(grid64, S3Map::hopf, 1);
    const double dt = seconds_since(t0);
    report(1, std::abs(forms - 1.0) < 1e-6 && dt < 30.0,
           fmt("form quadrature on 64^3: H = %.15f, |H - 1| = %.2e, %.2f s single-threaded", forms, std::abs(forms - 1.0), dt));
  });

  guarded(2, [&] {
    const double cs = hopf_invariant_cs(grid64, S3Map::hopf, {}, 1);
    report(2, std::abs(cs - 1.0) < 1e-6 && std::abs(cs - forms) < 1e-8,
           fmt("Chern-Simons quadrature on 64^3: H = %.15f, |H - 1| = %.2e, |H_cs - H_forms| = %.2e", cs, std::abs(cs - 1.0),
               std::abs(cs - forms)));
  });

  guarded(3, [&] {
    const FiberCurve a = preimage_circle(S2Point(0, 0, 1), 512);
    const FiberCurve b = preimage_circle(S2Point(0, 0, -1), 512);
    const double link = gauss_linking(a, b);
    report(3, std::abs(link - 1.0) < 1e-3, fmt("Gauss linking of polar fibers, 512 samples: %.9f", link));
  });

  guarded(4, [&] {
    const DeformedMapSpec spec = DeformedMapSpec::standard();
    const DeformedInvariant d = deformed_invariant(spec, 1);
    const double closed = (std::cos(std::numbers::pi) - std::cos(0.0)) / 2.0;  // f(0) = pi, f(inf) = 0
    report(4, std::abs(std::abs(d.value) - 1.0) < 1e-4 && std::abs(d.value - closed) < 1e-6,
           fmt("deformed map: H = %.12f, closed-form reduction %.1f, |diff| = %.2e (disk reduction %.12f)", d.value, closed,
               std::abs(d.value - closed), d.reduction));
  });

  SolveReport base;
  guarded(5, [&] {
    const auto t0 = Clock::now();
    base = newton_solve(SolverConfig{});
    const double dt = seconds_since(t0);
    const Eigen::VectorXd& f = base.profile.f_values();
    const Eigen::VectorXd& g = base.profile.g_values();
    const bool bc = f(0) == 0.0 && g(0) == 0.0 && f(f.size() - 1) == 1.0 && g(g.size() - 1) == 1.0;
    const double sg = 2.0 * std::numbers::sqrt2;
    const bool pass = base.converged && base.residual_norm <= 1e-10 && base.iterations <= 100 && dt < 10.0 && bc &&
                      std::abs(base.s_f / 2.0 - 1.0) < 0.05 && std::abs(base.s_g / sg - 1.0) < 0.05;
    report(5, pass,
           fmt("solver lambda=1 rc=50 N=2000: residual %.2e in %d Newton iterations (+%d relaxation), %.3f s, BC %s, "
               "s_f = %.4f, s_g = %.4f (2 sqrt 2 = %.4f)",
               base.residual_norm, base.iterations, base.relaxation_steps, dt, bc ? "exact" : "violated", base.s_f, base.s_g, sg));
  });

  guarded(6, [&] {
    std::vector<double> log_rc, action, synthetic;
    const int n_ones = 8000;
    const RadialProfile ones(Eigen::VectorXd::LinSpaced(n_ones, 1.0, 200.0), Eigen::VectorXd::Ones(n_ones),
                             Eigen::VectorXd::Ones(n_ones));
    bool converged = true;
    for (int k = 0; k <= 4; ++k) {
      const double rc = 50.0 * std::pow(4.0, k / 4.0);
      SolverConfig c;
      c.r_c = rc;
      c.n = int(std::lround(40.0 * rc)) - 1;  // spacing 0.025
      const SolveReport s = newton_solve(c);
      converged = converged && s.converged;
      log_rc.push_back(std::log(rc));
      action.push_back(s.action);
      synthetic.push_back(action_total(ones, ModelParams{}, rc, 4));
    }
    const double slope = ls_slope(log_rc, action);
    const double exact = ls_slope(log_rc, synthetic);
    report(6, converged && std::abs(slope / 8.0 - 1.0) < 0.02 && std::abs(exact - 8.0) < 1e-6,
           fmt("S(rc) vs ln rc over rc in [50, 200]: slope %.6f; synthetic f = g = 1 slope %.10f", slope, exact));
  });

  guarded(7, [&] {
    if (!base.converged) throw Error("no converged solution");
    const double radius = base.config.r_c;
    const BoundaryHopfNumber h = boundary_hopf_number(base.profile, S3Grid::cube(32), radius, 1);
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) {
      const Point4 x = random_point(rng, radius);
      const Eigen::Matrix<double, 4, 3> t = tangent_basis(x);
      const Eigen::Matrix3d curly = radius * radius * (t.transpose() * boundary_u1(x, base.profile).curvature.matrix() * t);
      const Eigen::Matrix3d omega = t.transpose() * omega2_pullback(x / radius).matrix() * t;
      worst = std::max(worst, (curly + omega).cwiseAbs().maxCoeff());
    }
    report(7, std::abs(h.value - 1.0) < 1e-3 && worst < 1e-10,
           fmt("boundary Hopf number at R = rc: %.12f; max |F + omega_2| on tangent vectors %.2e", h.value, worst));
  });

  guarded(8, [&] {
    VerifyOptions options;
    options.seed = 8;
    options.points = 1000;
    const std::vector<VerifyRow> rows = run_verification(options);
    const std::vector<std::string> wanted = {"pauli-p1", "pauli-p2", "m:appe1", "m:appe2", "m:t0", "m:t0-mixed", "m:t1",
                                             "m:t3", "m:t4", "kinetic-contraction", "F-square-contraction"};
    double worst = 0.0;
    std::string worst_name;
    std::size_t found = 0;
    for (const VerifyRow& row : rows)
      if (std::find(wanted.begin(), wanted.end(), row.name) != wanted.end()) {
        ++found;
        if (row.max_residual >= worst) {
          worst = row.max_residual;
          worst_name = row.name;
        }
      }
    report(8, found == wanted.size() && worst < 1e-8,
           fmt("%zu identities at 1000 seeded points: max residual %.2e (%s)", found, worst, worst_name.c_str()));
  });

  guarded(9, [&] {
    if (!base.converged) throw Error("no converged solution");
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> radius(0.1, base.config.r_c);
    double worst = 0.0;
    for (int n = 0; n < 100; ++n) worst = std::max(worst, std::abs(theta_densities(random_point(rng, radius(rng)), base.profile).fwf));
    report(9, worst < 1e-10, fmt("eps F F on the converged solution, 100 seeded points: max %.2e", worst));
  });

  guarded(10, [&] {
    if (!base.converged) throw Error("no converged solution");
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> radius(0.2, 20.0);
    double worst = 0.0;
    std::vector<double> ratios;
    for (int n = 0; n < 100; ++n) {
      const Point4 x = random_point(rng, radius(rng));
      const double r = x.norm();
      worst = std::max(worst, max_relative_f_error(x, base.profile, 1e-5 * r));
      if (n < 20) ratios.push_back(max_relative_f_error(x, base.profile, 2e-3 * r) / max_relative_f_error(x, base.profile, 1e-3 * r));
    }
    std::sort(ratios.begin(), ratios.end());
    const double median = ratios[ratios.size() / 2];
    report(10, worst < 1e-6 && std::abs(median / 4.0 - 1.0) < 0.2,
           fmt("analytic vs finite-difference F: max relative error %.2e at h = 1e-5 r; median error ratio h/(h/2) = %.3f", worst,
               median));
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
