#pragma once

// Seeded sweep of the algebraic and analytic identities behind the ansatz.

#include "hopfsol/ansatz_fields.hpp"
#include "hopfsol/radial_profile.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace hopfsol {

/// f = tanh r, g = tanh^2 r: smooth, f ~ r and g ~ r^2 at the origin.
struct SyntheticProfile {
  RadialSample at(double r) const {
    const double t = std::tanh(r), s = 1.0 - t * t;
    return {t, s, t * t, 2.0 * t * s};
  }
};

/// Uniform direction on S^3 scaled to `radius`.
Point4 random_point(std::mt19937_64& rng, double radius);

struct VerifyOptions {
  std::uint64_t seed = 12345;
  int points = 1000;
  std::optional<RadialProfile> profile;  // SyntheticProfile when empty
};

struct VerifyRow {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass() const { return max_residual <= tolerance; }
};

/// Sample radii cycle through these shells.
inline constexpr double kVerifyShells[] = {0.5, 1.0, 10.0};

std::vector<VerifyRow> run_verification(const VerifyOptions& options);

}  // namespace hopfsol
