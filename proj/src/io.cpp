#include "hopfsol/io.hpp"

#include "hopfsol/errors.hpp"

#include <fstream>
#include <iomanip>
#include <locale>
#include <sstream>
#include <vector>

namespace hopfsol {

std::string format_double(double v) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << std::setprecision(17) << v;
  return s.str();
}

void write_profile_csv(std::ostream& out, const RadialProfile& profile) {
  out << "r,f,g\n";
  for (Eigen::Index i = 0; i < profile.size(); ++i)
    out << format_double(profile.radii()(i)) << ',' << format_double(profile.f_values()(i)) << ','
        << format_double(profile.g_values()(i)) << '\n';
}

namespace {

double parse_field(const std::string& text, std::size_t line) {
  std::istringstream s(text);
  s.imbue(std::locale::classic());
  double v = 0.0;
  s >> v;
  if (s.fail() || !(s >> std::ws).eof())
    throw InvalidArgument("profile csv: bad number '" + text + "' on line " + std::to_string(line));
  return v;
}

}  // namespace

RadialProfile read_profile_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("profile csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "r,f,g") throw InvalidArgument("profile csv: expected header 'r,f,g'");

  std::vector<double> r, f, g;
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cols.push_back(cell);
    if (cols.size() != 3) throw InvalidArgument("profile csv: expected 3 columns on line " + std::to_string(n));
    r.push_back(parse_field(cols[0], n));
    f.push_back(parse_field(cols[1], n));
    g.push_back(parse_field(cols[2], n));
  }
  auto vec = [](const std::vector<double>& v) { return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(v.data(), Eigen::Index(v.size()))); };
  return RadialProfile(vec(r), vec(f), vec(g));
}

void write_density_csv(std::ostream& out, const RadialProfile& profile, const ModelParams& params) {
  out << "r,kinetic,gauge,potential,total\n";
  for (Eigen::Index i = 0; i < profile.size(); ++i) {
    const double r = profile.radii()(i);
    const DensityBreakdown d = radial_density(r, profile.at(r), params);
    out << format_double(r) << ',' << format_double(d.kinetic) << ',' << format_double(d.gauge) << ','
        << format_double(d.potential) << ',' << format_double(d.total) << '\n';
  }
}

void write_field_samples_csv(std::ostream& out, const std::vector<FieldSample>& samples) {
  out << "x1,x2,x3,x4,phi1,phi2,phi3";
  for (int mu = 1; mu <= 4; ++mu)
    for (int a = 1; a <= 3; ++a) out << ",A" << mu << a;
  out << '\n';
  for (const FieldSample& s : samples) {
    for (int k = 0; k < 4; ++k) out << (k ? "," : "") << format_double(s.x(k));
    for (int a = 0; a < 3; ++a) out << ',' << format_double(s.phi(a));
    for (int mu = 0; mu < 4; ++mu)
      for (int a = 0; a < 3; ++a) out << ',' << format_double(s.a(a, mu));
    out << '\n';
  }
}

nlohmann::ordered_json report_to_json(const SolveReport& report) {
  const SolverConfig& c = report.config;
  nlohmann::ordered_json j;
  j["residual_norm"] = report.residual_norm;
  j["iterations"] = report.iterations;
  j["action"] = report.action;
  j["s_f"] = report.s_f;
  j["s_g"] = report.s_g;
  j["tail_slope"] = report.tail_slope;
  j["converged"] = report.converged;
  j["relaxation_steps"] = report.relaxation_steps;
  j["f_monotone"] = report.f_monotone;
  j["g_monotone"] = report.g_monotone;
  j["history"] = report.history;
  j["config"] = {{"lambda", c.lambda}, {"rc", c.r_c},          {"n", c.n},
                 {"tol", c.tolerance}, {"max_iter", c.max_iterations}, {"guess", to_string(c.guess)},
                 {"mesh", to_string(c.mesh)}};
  return j;
}

RadialProfile read_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open profile '" + path + "'");
  return read_profile_csv(in);
}

}  // namespace hopfsol
