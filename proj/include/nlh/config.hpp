// Run configuration: schema-versioned JSON with unknown-key rejection,
// field-path validation errors, canonical serialization, and helpers turning
// the declarative pieces (profile, grids) into working objects.
#pragma once
#include <stdexcept>
#include <string>
#include <vector>

#include "nlh/scattering.hpp"

namespace nlh::config {

inline constexpr int kSchemaVersion = 1;

// Parse/validation failure; the message starts with the offending field path
// (e.g. "rays[1].xi: ...") when one applies.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Uniform point set {min, min+h, ..., max} with n >= 2 points.
struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int n = 2;
};

std::vector<double> grid_points(const GridSpec& g);

// Initial profile q0 by name.  "table" reads whitespace columns x, Re q0
// [, Im q0] from table_path; the analytic kinds ignore it.  halfwidth = 0
// selects the kind-aware default truncation.
struct ProfileSpec {
  std::string kind = "gaussian";  // gaussian | sech | table
  double amplitude = 0.3;
  double width = 1.0;
  double center = 0.0;
  double halfwidth = 0.0;
  std::string table_path;
};

scattering::Profile make_profile(const ProfileSpec& p);

// One ray x = xi t with the times at which it is evaluated.
struct RaySpec {
  double xi = 0.0;
  std::vector<double> t_values;
};

// Residual budgets used by the verification report: ode bounds
// ODE-propagation residuals (unimodularity, symmetry, model equation), quad
// bounds Cauchy-integral residuals (cut jump, representation and assembly
// agreement, decay constancy), linear bounds the collocation solve residual.
struct Tolerances {
  double ode = 1e-8;
  double quad = 1e-6;
  double linear = 1e-10;
};

enum class OutputFormat { csv, json };

std::string to_string(OutputFormat f);
OutputFormat format_from_string(const std::string& s);

struct OutputSpec {
  std::string dir = ".";
  OutputFormat format = OutputFormat::csv;
};

struct RunConfig {
  int schema_version = kSchemaVersion;
  double alpha = 0.0;
  double beta = 1.0;
  ProfileSpec profile;
  GridSpec lambda_grid{-8.0, 8.0, 2001};
  std::vector<RaySpec> rays{{-3.0, {10.0, 20.0, 40.0}}};
  GridSpec x_domain{-5.0, 5.0, 201};
  Tolerances tolerances;
  // Radius of the refinement disks around the stationary points, as a
  // fraction of their half-separation, in the undeformed collocation contour.
  double eps_disk = 0.1;
  OutputSpec output;
  int threads = 0;  // 0 = hardware concurrency
};

// Structural invariants: n >= 2 in every grid, tolerances positive,
// 0 < eps_disk < 1, threads >= 0, profile fields admissible, t >= 0 on every
// ray, and alpha^2 - 3 beta xi > 0 for every ray.  Throws ConfigError with
// the field path on violation.
void validate(const RunConfig& cfg);

// JSON text -> validated config.  Requires an explicit matching
// schema_version; unknown keys anywhere are rejected; missing keys take the
// defaults above.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// Canonical JSON (fixed key order, round-trip exact numbers):
// serialize(parse_config(serialize(c))) == serialize(c).
std::string serialize(const RunConfig& cfg);

}  // namespace nlh::config
