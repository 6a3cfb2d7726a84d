#pragma once

// Command-line front end. Reports are JSON documents; every numeric verdict
// carries its residual and threshold. Exit status: 0 = pass (flat, umbilic,
// all checks below threshold), 1 = fail, 2 = error.

#include "engelcr/manifold_file.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace engelcr {

struct CliOptions
{
  /// Overrides the file's points when non-empty.
  std::vector<Point> points;
  std::optional<int> order;
  /// Overrides the file's fiber values when non-empty.
  std::vector<double> t;
  double threshold = 1e-7;
  /// Include the curvature table up to this homogeneity (invariants) or the
  /// homogeneity range of the cross-checks (check).
  std::optional<int> max_homogeneity;
};

nlohmann::json invariants_report(const ManifoldSpec& spec, const CliOptions& opt);
/// Flatness (all points) or pointwise umbilicity; "pass" holds the verdict.
nlohmann::json verdict_report(const ManifoldSpec& spec, const CliOptions& opt, bool umbilic);
nlohmann::json cohomology_json();
/// Self-consistency suite; "pass" is true iff every residual is below its threshold.
nlohmann::json check_report(const ManifoldSpec& spec, const CliOptions& opt);

/// "x,y,u1,u2;x,y,u1,u2;..."
std::vector<Point> parse_points(const std::string& text);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace engelcr
