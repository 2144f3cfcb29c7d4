#include "cli.hpp"

#include "hopfsol/ansatz_fields.hpp"
#include "hopfsol/bvp_solver.hpp"
#include "hopfsol/errors.hpp"
#include "hopfsol/hopf_map.hpp"
#include "hopfsol/io.hpp"
#include "hopfsol/verification.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>

namespace hopfsol::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr const char* kVersion = HOPFSOL_VERSION;
constexpr double kUnitTolerance = 1e-9;

struct Common {
  std::string out = ".";
  unsigned workers = 1;
  std::uint64_t seed = 12345;
};

struct Manifest {
  explicit Manifest(std::string name) : subcommand(std::move(name)) {}
  std::string subcommand;
  json parameters = json::object();
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::string> command;  // resolved arguments, without --out
};

std::string fmt(double v) { return format_double(v); }

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Output directory")->capture_default_str();
  sub->add_option("--workers", c.workers, "Quadrature worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
  sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
}

void append_common(std::vector<std::string>& cmd, const Common& c) {
  cmd.insert(cmd.end(), {"--workers", std::to_string(c.workers), "--seed", std::to_string(c.seed)});
}

/// Opens `name` inside the output directory with `\n` line endings.
std::ofstream open_output(const Common& c, const std::string& name, Manifest& m) {
  fs::create_directories(c.out);
  const fs::path path = fs::path(c.out) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + path.string());
  m.outputs.push_back(name);
  return f;
}

void write_json_file(const Common& c, const std::string& name, const json& j, Manifest& m) {
  std::ofstream f = open_output(c, name, m);
  f << j.dump(2) << '\n';
}

void write_manifest(const Common& c, Manifest& m) {
  json j;
  j["tool"] = "hopfsol";
  j["version"] = kVersion;
  j["subcommand"] = m.subcommand;
  j["parameters"] = m.parameters;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["out"] = c.out;
  j["inputs"] = m.inputs;
  j["outputs"] = m.outputs;
  j["command"] = m.command;
  fs::create_directories(c.out);
  std::ofstream f(fs::path(c.out) / "manifest.json", std::ios::binary);
  if (!f) throw InvalidArgument("cannot write manifest.json");
  f << j.dump(2) << '\n';
}

/// "x,y,z" -> unit 3-vector.
S2Point parse_unit_vector(const std::string& s, const char* flag) {
  S2Point v;
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    const std::size_t end = k < 2 ? s.find(',', pos) : s.size();
    if (end == std::string::npos) throw InvalidArgument(std::string(flag) + ": expected three comma-separated numbers");
    const char* first = s.data() + pos;
    const char* last = s.data() + end;
    const auto [ptr, ec] = std::from_chars(first, last, v(k));
    if (ec != std::errc() || ptr != last || !std::isfinite(v(k)))
      throw InvalidArgument(std::string(flag) + ": invalid number in '" + s + "'");
    pos = end + 1;
  }
  if (std::abs(v.norm() - 1.0) > kUnitTolerance) throw InvalidArgument(std::string(flag) + ": base point must be a unit vector");
  return v;
}

std::string vector_string(const S2Point& v) { return fmt(v(0)) + "," + fmt(v(1)) + "," + fmt(v(2)); }

std::pair<FiberCurve, FiberCurve> fiber_pair(const S2Point& p, const S2Point& q, int samples) {
  if ((p - q).norm() < kMinCurveSeparation) throw CurvesIntersect("base points coincide; fibers are identical");
  return {preimage_circle(p, samples), preimage_circle(q, samples)};
}

// --- solve ---------------------------------------------------------------------

struct SolveArgs {
  SolverConfig config;
  std::string guess = "rational";
  std::string mesh = "uniform";
};

void add_solver_flags(CLI::App* sub, SolveArgs& a) {
  sub->add_option("--lambda", a.config.lambda, "Higgs self-coupling")->capture_default_str();
  sub->add_option("--rc", a.config.r_c, "Cutoff radius")->capture_default_str();
  sub->add_option("--n", a.config.n, "Interior mesh nodes")->capture_default_str();
  sub->add_option("--tol", a.config.tolerance, "Residual tolerance (inf-norm)")->capture_default_str();
  sub->add_option("--max-iter", a.config.max_iterations, "Newton iteration cap")->capture_default_str();
  sub->add_option("--guess", a.guess, "Initial guess")->check(CLI::IsMember({"rational", "tanh"}))->capture_default_str();
  sub->add_option("--mesh", a.mesh, "Mesh kind")->check(CLI::IsMember({"uniform", "graded"}))->capture_default_str();
}

SolverConfig resolve(SolveArgs& a) {
  a.config.guess = parse_guess_kind(a.guess);
  a.config.mesh = parse_mesh_kind(a.mesh);
  a.config.validate();
  return a.config;
}

void record_solver(const SolverConfig& c, Manifest& m) {
  m.parameters["lambda"] = c.lambda;
  m.parameters["rc"] = c.r_c;
  m.parameters["n"] = c.n;
  m.parameters["tol"] = c.tolerance;
  m.parameters["max_iter"] = c.max_iterations;
  m.parameters["guess"] = to_string(c.guess);
  m.parameters["mesh"] = to_string(c.mesh);
  m.command.insert(m.command.end(), {"--lambda", fmt(c.lambda), "--rc", fmt(c.r_c), "--n", std::to_string(c.n), "--tol",
                                     fmt(c.tolerance), "--max-iter", std::to_string(c.max_iterations), "--guess",
                                     to_string(c.guess), "--mesh", to_string(c.mesh)});
}

int cmd_solve(SolveArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const SolverConfig config = resolve(a);
  Manifest m("solve");
  m.command.push_back("solve");
  record_solver(config, m);
  append_common(m.command, c);

  const SolveReport report = newton_solve(config);
  {
    std::ofstream f = open_output(c, "profile.csv", m);
    write_profile_csv(f, report.profile);
  }
  const json j = report_to_json(report);
  write_json_file(c, "report.json", j, m);
  write_manifest(c, m);
  out << j.dump(2) << '\n';
  if (!report.converged) {
    err << "solve: not converged, residual " << fmt(report.residual_norm) << " after " << report.iterations
        << " iterations; best iterate written\n";
    return kSolverFailure;
  }
  return kSuccess;
}

// --- invariant -----------------------------------------------------------------

struct InvariantArgs {
  int grid = 64;
  std::string map = "hopf";
  std::string profile;
  std::optional<double> radius;
};

int cmd_invariant(const InvariantArgs& a, const Common& c, std::ostream& out) {
  if (a.grid < S3Grid::kMinResolution)
    throw ResolutionTooLow("invariant: --grid " + std::to_string(a.grid) + " is below " + std::to_string(S3Grid::kMinResolution));
  Manifest m("invariant");
  m.command = {"invariant", "--grid", std::to_string(a.grid), "--map", a.map};
  m.parameters["grid"] = a.grid;
  m.parameters["map"] = a.map;
  json j;
  j["map"] = a.map;
  j["grid"] = a.grid;

  if (a.map == "deformed") {
    DeformedMapSpec spec = DeformedMapSpec::standard();
    spec.n_time = a.grid;
    spec.n_angle = std::max(S3Grid::kMinResolution, a.grid / 2);
    m.parameters["n_time"] = spec.n_time;
    m.parameters["n_angle"] = spec.n_angle;
    m.parameters["n_radial"] = spec.n_radial;
    m.parameters["r_max"] = spec.r_max;
    const DeformedInvariant d = deformed_invariant(spec, c.workers);
    j["value"] = d.value;
    j["reduction"] = d.reduction;
    j["difference"] = d.value - d.reduction;
  } else {
    const S3Grid grid = S3Grid::cube(a.grid);
    grid.require_resolution("invariant");
    const double forms = hopf_invariant_forms(grid, S3Map::hopf, c.workers);
    const double cs = hopf_invariant_cs(grid, S3Map::hopf, {}, c.workers);
    BoundaryHopfNumber boundary;
    double radius = 1.0;
    if (!a.profile.empty()) {
      const RadialProfile profile = read_profile_csv(a.profile);
      radius = a.radius.value_or(profile.r_back());
      boundary = boundary_hopf_number(profile, grid, radius, c.workers);
      m.inputs.push_back(a.profile);
      m.command.insert(m.command.end(), {"--profile", a.profile});
      m.parameters["profile"] = a.profile;
    } else {
      radius = a.radius.value_or(1.0);
      boundary = boundary_hopf_number(ConstantProfile{}, grid, radius, c.workers);
      m.parameters["profile"] = "asymptotic";
    }
    if (a.radius) m.command.insert(m.command.end(), {"--radius", fmt(*a.radius)});
    m.parameters["radius"] = radius;
    j["forms"] = forms;
    j["cs"] = cs;
    j["boundary_cs"] = boundary.value;
    j["boundary_a1"] = boundary.a1_contribution;
    j["radius"] = radius;
    j["differences"] = {{"forms_cs", forms - cs}, {"forms_boundary_cs", forms - boundary.value},
                        {"cs_boundary_cs", cs - boundary.value}};
  }
  append_common(m.command, c);
  write_json_file(c, "invariant.json", j, m);
  write_manifest(c, m);
  out << j.dump(2) << '\n';
  return kSuccess;
}

// --- link ----------------------------------------------------------------------

struct LinkArgs {
  std::string p = "0,0,1";
  std::string q = "0,0,-1";
  int samples = 512;
};

int cmd_link(const LinkArgs& a, const Common& c, std::ostream& out) {
  const S2Point p = parse_unit_vector(a.p, "--p");
  const S2Point q = parse_unit_vector(a.q, "--q");
  const auto [c1, c2] = fiber_pair(p, q, a.samples);
  const Point4 pole = choose_pole(c1, c2);
  const double link = gauss_linking(c1, c2, pole);

  Manifest m("link");
  m.command = {"link", "--p", vector_string(p), "--q", vector_string(q), "--samples", std::to_string(a.samples)};
  append_common(m.command, c);
  m.parameters = {{"p", {p(0), p(1), p(2)}}, {"q", {q(0), q(1), q(2)}}, {"samples", a.samples}};
  json j;
  j["p"] = {p(0), p(1), p(2)};
  j["q"] = {q(0), q(1), q(2)};
  j["samples"] = a.samples;
  j["pole"] = {pole(0), pole(1), pole(2), pole(3)};
  j["linking"] = link;
  write_json_file(c, "link.json", j, m);
  write_manifest(c, m);
  out << j.dump(2) << '\n';
  return kSuccess;
}

// --- verify --------------------------------------------------------------------

struct VerifyArgs {
  int points = 1000;
  std::string profile;
};

int cmd_verify(const VerifyArgs& a, const Common& c, std::ostream& out) {
  VerifyOptions options;
  options.seed = c.seed;
  options.points = a.points;
  Manifest m("verify");
  m.command = {"verify", "--points", std::to_string(a.points)};
  m.parameters["points"] = a.points;
  if (!a.profile.empty()) {
    options.profile = read_profile_csv(a.profile);
    m.inputs.push_back(a.profile);
    m.command.insert(m.command.end(), {"--profile", a.profile});
    m.parameters["profile"] = a.profile;
  } else {
    m.parameters["profile"] = "synthetic";
  }
  append_common(m.command, c);

  const std::vector<VerifyRow> rows = run_verification(options);
  json checks = json::array();
  int failed = 0;
  out << std::left << std::setw(30) << "check" << std::right << std::setw(14) << "max_residual" << std::setw(12)
      << "tolerance" << "  status\n";
  for (const VerifyRow& row : rows) {
    failed += !row.pass();
    std::ostringstream res, tol;
    res << std::scientific << std::setprecision(3) << row.max_residual;
    tol << std::scientific << std::setprecision(1) << row.tolerance;
    out << std::left << std::setw(30) << row.name << std::right << std::setw(14) << res.str() << std::setw(12) << tol.str()
        << "  " << (row.pass() ? "PASS" : "FAIL") << '\n';
    checks.push_back({{"name", row.name}, {"max_residual", row.max_residual}, {"tolerance", row.tolerance}, {"pass", row.pass()}});
  }
  if (failed == 0)
    out << "all " << rows.size() << " checks passed\n";
  else
    out << failed << " of " << rows.size() << " checks failed\n";

  json j;
  j["seed"] = c.seed;
  j["points"] = a.points;
  j["checks"] = checks;
  j["pass"] = failed == 0;
  write_json_file(c, "verify.json", j, m);
  write_manifest(c, m);
  return failed == 0 ? kSuccess : kVerifyFailure;
}

// --- export --------------------------------------------------------------------

struct ExportArgs {
  std::string what = "fg";
  std::string profile;
  double lambda = 1.0;
  LinkArgs fibers;
};

int cmd_export(const ExportArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  Manifest m("export");
  m.command = {"export", "--what", a.what};
  m.parameters["what"] = a.what;

  if (a.what == "fibers") {
    const S2Point p = parse_unit_vector(a.fibers.p, "--p");
    const S2Point q = parse_unit_vector(a.fibers.q, "--q");
    const auto [c1, c2] = fiber_pair(p, q, a.fibers.samples);
    m.command.insert(m.command.end(), {"--p", vector_string(p), "--q", vector_string(q), "--samples",
                                       std::to_string(a.fibers.samples)});
    m.parameters["p"] = {p(0), p(1), p(2)};
    m.parameters["q"] = {q(0), q(1), q(2)};
    m.parameters["samples"] = a.fibers.samples;
    {
      std::ofstream f = open_output(c, "fiber_p.csv", m);
      write_fiber_csv(f, c1);
    }
    {
      std::ofstream f = open_output(c, "fiber_q.csv", m);
      write_fiber_csv(f, c2);
    }
  } else {
    ModelParams params;
    params.lambda = a.lambda;
    params.validate();
    std::optional<RadialProfile> profile;
    if (!a.profile.empty()) {
      profile = read_profile_csv(a.profile);
      m.inputs.push_back(a.profile);
      m.command.insert(m.command.end(), {"--profile", a.profile});
      m.parameters["profile"] = a.profile;
    } else {
      SolverConfig config;
      config.lambda = a.lambda;
      const SolveReport report = newton_solve(config);
      if (!report.converged) {
        err << "export: default solve did not converge\n";
        return kSolverFailure;
      }
      profile = report.profile;
      m.parameters["profile"] = "default-solve";
    }
    m.command.insert(m.command.end(), {"--lambda", fmt(a.lambda)});
    m.parameters["lambda"] = a.lambda;
    if (a.what == "fg") {
      std::ofstream f = open_output(c, "fg_vs_r.csv", m);
      write_profile_csv(f, *profile);
    } else {
      std::ofstream f = open_output(c, "density_vs_r.csv", m);
      write_density_csv(f, *profile, params);
    }
  }
  append_common(m.command, c);
  write_manifest(c, m);
  for (const std::string& name : m.outputs) out << (fs::path(c.out) / name).string() << '\n';
  return kSuccess;
}

// --- replay --------------------------------------------------------------------

std::vector<std::string> replay_args(const std::string& path, const std::string& out_override) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot read manifest " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw InvalidArgument("malformed manifest " + path + ": " + e.what());
  }
  if (!j.contains("command") || !j["command"].is_array() || j["command"].empty())
    throw InvalidArgument("manifest " + path + " has no command");
  std::vector<std::string> args;
  for (const auto& a : j["command"]) {
    if (!a.is_string()) throw InvalidArgument("manifest " + path + ": command entries must be strings");
    args.push_back(a.get<std::string>());
  }
  const std::string out = !out_override.empty() ? out_override : j.value("out", std::string("."));
  args.insert(args.end(), {"--out", out});
  return args;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hopf soliton toolkit: radial solver, Hopf invariants, fiber linking, identity checks", "hopfsol"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(0, 1);
  std::string manifest;
  std::string replay_out;
  app.add_option("--manifest", manifest, "Replay the run recorded in a manifest");
  app.add_option("--out", replay_out, "Output directory for a replayed run");

  Common common;
  SolveArgs solve;
  InvariantArgs invariant;
  LinkArgs link;
  VerifyArgs verify;
  ExportArgs exp;

  CLI::App* s = app.add_subcommand("solve", "Solve the radial boundary value problem");
  add_solver_flags(s, solve);
  add_common(s, common);

  CLI::App* inv = app.add_subcommand("invariant", "Hopf invariant by forms, Chern-Simons, and boundary quadrature");
  inv->add_option("--grid", invariant.grid, "Cells per dimension")->capture_default_str();
  inv->add_option("--map", invariant.map, "Map")->check(CLI::IsMember({"hopf", "deformed"}))->capture_default_str();
  inv->add_option("--profile", invariant.profile, "Profile CSV for the boundary invariant");
  inv->add_option("--radius", invariant.radius, "Boundary radius (default: profile cutoff)");
  add_common(inv, common);

  CLI::App* ln = app.add_subcommand("link", "Gauss linking number of two Hopf fibers");
  ln->add_option("--p", link.p, "First base point x,y,z")->capture_default_str();
  ln->add_option("--q", link.q, "Second base point x,y,z")->capture_default_str();
  ln->add_option("--samples", link.samples, "Samples per fiber")->capture_default_str();
  add_common(ln, common);

  CLI::App* ver = app.add_subcommand("verify", "Check algebraic and analytic identities at seeded random points");
  ver->add_option("--points", verify.points, "Random points per check")->check(CLI::PositiveNumber)->capture_default_str();
  ver->add_option("--profile", verify.profile, "Profile CSV (default: synthetic tanh profile)");
  add_common(ver, common);

  CLI::App* ex = app.add_subcommand("export", "Write plot data");
  ex->add_option("--what", exp.what, "Data set")->check(CLI::IsMember({"fg", "density", "fibers"}))->capture_default_str();
  ex->add_option("--profile", exp.profile, "Profile CSV (default: solve with default settings)");
  ex->add_option("--lambda", exp.lambda, "Higgs self-coupling for densities")->capture_default_str();
  ex->add_option("--p", exp.fibers.p, "First base point x,y,z")->capture_default_str();
  ex->add_option("--q", exp.fibers.q, "Second base point x,y,z")->capture_default_str();
  ex->add_option("--samples", exp.fibers.samples, "Samples per fiber")->capture_default_str();
  add_common(ex, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (!manifest.empty()) {
      if (!app.get_subcommands().empty()) throw InvalidArgument("--manifest cannot be combined with a subcommand");
      return run(replay_args(manifest, replay_out), out, err);
    }
    if (!replay_out.empty()) throw InvalidArgument("--out belongs after the subcommand");
    if (s->parsed()) return cmd_solve(solve, common, out, err);
    if (inv->parsed()) return cmd_invariant(invariant, common, out);
    if (ln->parsed()) return cmd_link(link, common, out);
    if (ver->parsed()) return cmd_verify(verify, common, out);
    if (ex->parsed()) return cmd_export(exp, common, out, err);
    err << app.help();
    return kUsage;
  } catch (const SingularJacobian& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kUsage;
  }
}

}  // namespace hopfsol::cli
