#pragma once

#include "pathext/report.hpp"

#include "pathext/lichnerowicz.hpp"

#include <cmath>
#include <functional>

namespace pathext {

struct CheckContext {
  /// Strictly increasing temporal resolutions N; the last one is the reference resolution.
  std::vector<int> resolutions{16, 32, 64};
  std::uint64_t seed = 1;
  /// Seeded instances per check; 0 selects the check's default.
  int samples = 0;
  /// Algebras for the calculus identity checks.
  std::vector<LieAlgebraSpec> algebras;
  /// Structure group of the current checks other than the pi3 period: su2 or so3.
  std::string current_group = "su2";
  /// Spatial grid of the torus checks; 0 selects the check's default.
  int grid = 0;
  /// Exact bundle for the torus checks as alpha_x | alpha_y term lists; empty selects the default.
  std::string alpha;

  int finest() const { return resolutions.back(); }
  int samples_or(int fallback) const { return samples > 0 ? samples : fallback; }
};

/// Residual and order of one check; tolerance and pass are filled in by run_check.
using CheckFn = std::function<CheckRecord(const CheckContext&)>;

struct CheckDefinition {
  std::string id;
  std::string module;
  std::string anchor;
  /// Tolerance at the reference resolution 64; other resolutions scale it by (64 / N)^order_scaling.
  double tolerance = 0;
  double order_scaling = 2;
  /// Declared convergence order; NaN when none applies.
  double declared_order = kNaN;
  CheckFn run;

  double tolerance_at(int N) const { return tolerance * std::pow(64.0 / N, order_scaling); }
};

const std::vector<CheckDefinition>& check_catalog();
const CheckDefinition& find_check(const std::string& id);
std::vector<std::string> module_names();
std::vector<std::string> module_checks(const std::string& module);

/// Runs one check: a thrown std::exception becomes a failed record carrying the message.
CheckRecord run_check(const CheckDefinition& def, const CheckContext& ctx, double tol_scale = 1.0,
                      std::optional<double> tolerance = std::nullopt);

/// Shared settings of the torus checks: parses "kx,ky,c,s;...|kx,ky,c,s;..." (empty: the default connection).
BundleSpec parse_exact_bundle(int grid, const std::string& alpha);

/// One seeded pair (f, g) of SU(2) current paths on S^1 for the dual route check.
struct DualRouteSample {
  double order = kNaN;
  std::vector<double> errors;
};
DualRouteSample dual_route_sample(std::uint64_t seed, const std::vector<int>& resolutions);

}  // namespace pathext
