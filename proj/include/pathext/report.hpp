#pragma once

#include "pathext/lie.hpp"

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace pathext {

/// Malformed scenario or input document.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
/// Residuals at or below this level are roundoff, and the order requirement is waived.
inline constexpr double kDefaultExactFloor = 1e-12;
/// An estimated order passes when it is at least the declared order minus this slack.
inline constexpr double kOrderSlack = 0.3;

struct CheckRecord {
  std::string check_id;
  std::string paper_anchor;
  double raw_residual = kNaN;
  /// Distance to the period lattice; NaN when the check is not taken modulo a lattice.
  double lattice_distance = kNaN;
  double order_estimate = kNaN;
  double tolerance = 0;
  /// Declared convergence order; NaN when none applies.
  double declared_order = kNaN;
  double exact_floor = kDefaultExactFloor;
  /// The measured value must be at least the tolerance (a certified lower bound) instead of at most.
  bool lower_bound = false;
  std::string detail;
  bool pass = false;

  /// The quantity compared with the tolerance.
  double measured() const { return std::isnan(lattice_distance) ? raw_residual : lattice_distance; }
  /// pass <=> measured <= tolerance and (order >= declared_order - kOrderSlack, unless measured is at
  /// roundoff level);
  /// for a lower bound, pass <=> measured >= tolerance.
  void evaluate();
};

struct Report {
  std::string scenario;
  std::string module;
  std::uint64_t seed = 0;
  std::vector<int> resolutions;
  std::vector<CheckRecord> records;

  bool pass() const;
};

nlohmann::ordered_json to_json(const CheckRecord& r);
CheckRecord record_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const Report& r);
Report report_from_json(const nlohmann::ordered_json& j);

/// Serialization with every double written at 17 significant digits and non-finite values as null.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

/// {"name", "dim", "basis": [[[re, im], ...] row-major per matrix], "kappa": flat or rank-3 array,
///  "coefficient_dim", optional "kind"}.
LieAlgebraSpec algebra_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const LieAlgebraSpec& alg);
/// A shipped algebra name or the path of a JSON document.
LieAlgebraSpec load_algebra(const std::string& name_or_path);

struct Scenario {
  std::string name = "unnamed";
  std::string module = "all";
  std::vector<int> resolutions;
  std::uint64_t seed = 1;
  double tol_scale = 1.0;
  /// Seeded instances per check (0: the check's default).
  int samples = 0;
  /// Algebras for the calculus identity checks, names or JSON paths.
  std::vector<std::string> algebras;
  /// Explicit check list; absent means every check of the module.
  std::optional<std::vector<std::string>> checks;
  std::vector<std::pair<std::string, double>> tolerances;
};

/// Throws ConfigError on schema violations: unknown keys, non-increasing resolutions,
/// negative tolerances or scale.
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);
/// su(2), N = 16 against 32, five seeded instances per sampled check.
Scenario smoke_scenario();

}  // namespace pathext
