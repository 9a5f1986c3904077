#include "pathext/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace pathext {

using ojson = nlohmann::ordered_json;

void CheckRecord::evaluate()
{
  const double m = measured();
  if (lower_bound) {
    pass = std::isfinite(m) && m >= tolerance;
    return;
  }
  bool ok = std::isfinite(m) && m <= tolerance;
  if (ok && !std::isnan(declared_order) && m > exact_floor)
    ok = std::isfinite(order_estimate) && order_estimate >= declared_order - kOrderSlack;
  pass = ok;
}

bool Report::pass() const
{
  for (const auto& r : records)
    if (!r.pass) return false;
  return true;
}

namespace {

ojson number(double x) { return std::isfinite(x) ? ojson(x) : ojson(nullptr); }
double number_from(const ojson& j) { return j.is_null() ? kNaN : j.get<double>(); }

template <class J>
void write(std::ostringstream& os, const J& j, int indent, int depth)
{
  const std::string pad = indent > 0 ? "\n" + std::string(static_cast<size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(static_cast<size_t>(indent * depth), ' ') : "";
  const char* sep = indent > 0 ? ": " : ":";
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << '{';
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      os << (first ? "" : ",") << pad << J(it.key()).dump() << sep;
      write(os, it.value(), indent, depth + 1);
      first = false;
    }
    os << close << '}';
  } else if (j.is_array()) {
    if (j.empty()) {
      os << "[]";
      return;
    }
    os << '[';
    bool first = true;
    for (const auto& v : j) {
      os << (first ? "" : ",") << pad;
      write(os, v, indent, depth + 1);
      first = false;
    }
    os << close << ']';
  } else if (j.is_number_float()) {
    const double x = j.template get<double>();
    if (!std::isfinite(x)) {
      os << "null";
      return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s = buf;
    // keep it a JSON float
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    os << s;
  } else {
    os << j.dump();
  }
}

Mat matrix_from_json(const nlohmann::json& rows, int n)
{
  if (!rows.is_array() || static_cast<int>(rows.size()) != n * n)
    throw ConfigError("algebra basis matrices must be row-major arrays of n*n complex entries");
  Mat m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const auto& z = rows[static_cast<size_t>(r * n + c)];
      if (z.is_number())
        m(r, c) = Complex(z.get<double>(), 0.0);
      else if (z.is_array() && z.size() == 2)
        m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
      else
        throw ConfigError("complex entries are numbers or [re, im] pairs");
    }
  return m;
}

void flatten(const nlohmann::json& j, std::vector<double>& out)
{
  if (j.is_array())
    for (const auto& v : j) flatten(v, out);
  else if (j.is_number())
    out.push_back(j.get<double>());
  else
    throw ConfigError("kappa entries must be numbers");
}

void require_keys(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& what)
{
  if (!j.is_object()) throw ConfigError(what + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw ConfigError(what + ": unknown key '" + it.key() + "'");
}

nlohmann::json read_json_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

std::string dump_json(const ojson& j, int indent)
{
  std::ostringstream os;
  write(os, j, indent, 0);
  return os.str();
}

ojson to_json(const CheckRecord& r)
{
  ojson j;
  j["check_id"] = r.check_id;
  j["paper_anchor"] = r.paper_anchor;
  j["raw_residual"] = number(r.raw_residual);
  j["lattice_distance"] = number(r.lattice_distance);
  j["order_estimate"] = number(r.order_estimate);
  j["tolerance"] = number(r.tolerance);
  j["declared_order"] = number(r.declared_order);
  j["exact_floor"] = number(r.exact_floor);
  j["comparison"] = r.lower_bound ? ">=" : "<=";
  j["detail"] = r.detail;
  j["pass"] = r.pass;
  return j;
}

CheckRecord record_from_json(const ojson& j)
{
  CheckRecord r;
  r.check_id = j.at("check_id").get<std::string>();
  r.paper_anchor = j.at("paper_anchor").get<std::string>();
  r.raw_residual = number_from(j.at("raw_residual"));
  r.lattice_distance = number_from(j.at("lattice_distance"));
  r.order_estimate = number_from(j.at("order_estimate"));
  r.tolerance = number_from(j.at("tolerance"));
  r.declared_order = number_from(j.at("declared_order"));
  r.exact_floor = number_from(j.at("exact_floor"));
  r.lower_bound = j.at("comparison").get<std::string>() == ">=";
  r.detail = j.at("detail").get<std::string>();
  r.pass = j.at("pass").get<bool>();
  return r;
}

ojson to_json(const Report& r)
{
  ojson j;
  j["scenario"] = r.scenario;
  j["module"] = r.module;
  j["seed"] = r.seed;
  j["resolutions"] = r.resolutions;
  j["records"] = ojson::array();
  for (const auto& rec : r.records) j["records"].push_back(to_json(rec));
  j["pass"] = r.pass();
  return j;
}

Report report_from_json(const ojson& j)
{
  Report r;
  r.scenario = j.at("scenario").get<std::string>();
  r.module = j.at("module").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.resolutions = j.at("resolutions").get<std::vector<int>>();
  for (const auto& rec : j.at("records")) r.records.push_back(record_from_json(rec));
  return r;
}

LieAlgebraSpec algebra_from_json(const nlohmann::json& j)
{
  require_keys(j, {"name", "dim", "basis", "kappa", "coefficient_dim", "kind"}, "algebra");
  try {
    const int dim = j.at("dim").get<int>();
    const int vdim = j.at("coefficient_dim").get<int>();
    const auto& basis = j.at("basis");
    if (dim < 1 || vdim < 1 || !basis.is_array() || static_cast<int>(basis.size()) != dim)
      throw ConfigError("algebra: 'basis' must hold 'dim' matrices");
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(basis[0].size()))));
    if (n < 1 || n > 4) throw ConfigError("algebra: matrices must be n x n with n <= 4");
    std::vector<Mat> mats;
    for (const auto& b : basis) mats.push_back(matrix_from_json(b, n));
    std::vector<double> kappa;
    flatten(j.at("kappa"), kappa);
    if (static_cast<int>(kappa.size()) != dim * dim * vdim)
      throw ConfigError("algebra: 'kappa' must have dim * dim * coefficient_dim entries");
    const GroupKind kind = group_kind_from_string(j.value("kind", std::string("generic")));
    return LieAlgebraSpec(j.at("name").get<std::string>(), kind, std::move(mats), vdim, std::move(kappa));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("algebra: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("algebra: ") + e.what());
  }
}

ojson to_json(const LieAlgebraSpec& alg)
{
  ojson j;
  j["name"] = alg.name();
  j["kind"] = to_string(alg.kind());
  j["dim"] = alg.dim();
  j["coefficient_dim"] = alg.coefficient_dim();
  j["basis"] = ojson::array();
  for (const Mat& m : alg.basis()) {
    ojson rows = ojson::array();
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) rows.push_back({m(r, c).real(), m(r, c).imag()});
    j["basis"].push_back(rows);
  }
  j["kappa"] = alg.kappa_tensor();
  return j;
}

LieAlgebraSpec load_algebra(const std::string& name_or_path)
{
  if (std::filesystem::exists(name_or_path)) return algebra_from_json(read_json_file(name_or_path));
  try {
    return algebras::by_name(name_or_path);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

Scenario scenario_from_json(const nlohmann::json& j)
{
  require_keys(j, {"name", "module", "resolutions", "seed", "tol_scale", "samples", "algebras", "checks", "tolerances"},
               "scenario");
  Scenario s;
  try {
    s.name = j.value("name", s.name);
    s.module = j.value("module", s.module);
    s.seed = j.value("seed", s.seed);
    s.tol_scale = j.value("tol_scale", s.tol_scale);
    s.samples = j.value("samples", s.samples);
    if (j.contains("resolutions")) s.resolutions = j.at("resolutions").get<std::vector<int>>();
    if (j.contains("algebras")) s.algebras = j.at("algebras").get<std::vector<std::string>>();
    if (j.contains("checks")) s.checks = j.at("checks").get<std::vector<std::string>>();
    if (j.contains("tolerances")) {
      if (!j.at("tolerances").is_object()) throw ConfigError("scenario: 'tolerances' must map check ids to numbers");
      for (auto it = j.at("tolerances").begin(); it != j.at("tolerances").end(); ++it)
        s.tolerances.emplace_back(it.key(), it.value().get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  for (size_t k = 0; k < s.resolutions.size(); ++k) {
    if (s.resolutions[k] < 2) throw ConfigError("scenario: resolutions must be at least 2");
    if (k > 0 && s.resolutions[k] <= s.resolutions[k - 1])
      throw ConfigError("scenario: resolutions must be strictly increasing");
  }
  if (!(s.tol_scale > 0)) throw ConfigError("scenario: tol_scale must be positive");
  if (s.samples < 0) throw ConfigError("scenario: samples must be non-negative");
  for (const auto& [id, tol] : s.tolerances)
    if (!(tol >= 0)) throw ConfigError("scenario: tolerance for '" + id + "' must be non-negative");
  return s;
}

Scenario load_scenario(const std::string& path) { return scenario_from_json(read_json_file(path)); }

Scenario smoke_scenario()
{
  Scenario s;
  s.name = "smoke";
  s.module = "all";
  s.resolutions = {16, 32};
  s.algebras = {"su2"};
  s.samples = 5;
  return s;
}

}  // namespace pathext
