#pragma once

// Plain-text serialization: CSV with a header row, '\n' line endings and
// 17 significant digits.

#include "hopfsol/ansatz_fields.hpp"
#include "hopfsol/bvp_solver.hpp"
#include "hopfsol/radial_profile.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace hopfsol {

/// Shortest form that round-trips: 17 significant digits, '.' decimal point.
std::string format_double(double v);

/// Header `r,f,g`.
void write_profile_csv(std::ostream& out, const RadialProfile& profile);
/// Throws InvalidArgument on a missing header, malformed row or invalid profile.
RadialProfile read_profile_csv(std::istream& in);
RadialProfile read_profile_csv(const std::string& path);

/// Header `r,kinetic,gauge,potential,total`, one row per profile node.
void write_density_csv(std::ostream& out, const RadialProfile& profile, const ModelParams& params);

/// Header `x1..x4,phi1..phi3,A<mu><a>` with mu, a counted from 1.
void write_field_samples_csv(std::ostream& out, const std::vector<FieldSample>& samples);

/// Keys residual_norm, iterations, action, s_f, s_g, tail_slope, converged plus
/// relaxation_steps, monotonicity flags, residual history and the configuration.
nlohmann::ordered_json report_to_json(const SolveReport& report);

}  // namespace hopfsol
