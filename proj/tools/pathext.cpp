// Command line driver: runs the check catalog per module and writes the residual report.
#include "pathext/checks.hpp"
#include "pathext/coupled.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

using namespace pathext;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string scenario;
  int resolution = 0;
  std::int64_t seed = -1;
  std::string json_out;
  double tol_scale = 0;
  std::vector<std::string> algebras;
  std::string manifold, group;
  int grid = 0, steps = 0;
  std::string eta;
  std::string beta_algebra;
};

std::vector<int> ladder(int finest)
{
  if (finest < 8 || finest % 4) throw ConfigError("--resolution must be a multiple of 4 and at least 8");
  return {finest / 4, finest / 2, finest};
}

void write_output(const std::string& path, const std::string& text)
{
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

std::string sci(double x)
{
  if (!std::isfinite(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string summary_line(const CheckRecord& r)
{
  std::string s = (r.pass ? "PASS " : "FAIL ") + r.check_id + "  measured=" + sci(r.measured()) +
                  (r.lower_bound ? " >= " : " <= ") + sci(r.tolerance);
  if (!std::isnan(r.declared_order)) s += "  order=" + sci(r.order_estimate);
  return s + "  " + r.detail + "\n";
}

// Checks of the current module that a manifold or group selection leaves.
std::vector<std::string> filter_current(std::vector<std::string> ids, const Options& o)
{
  std::vector<std::string> out;
  for (const auto& id : ids) {
    const bool s1 = id != "current.closed_form_t2";
    const bool t2 = id == "current.closed_form_t2";
    if (o.manifold == "s1" && !s1) continue;
    if (o.manifold == "t2" && !t2) continue;
    // the pi3 generator is an SU(2) map
    if (!o.group.empty() && o.group != "su2" && id == "current.pi3_period") continue;
    out.push_back(id);
  }
  return out;
}

int solve_beta_command(const Options& o)
{
  if (o.beta_algebra.empty()) throw ConfigError("solve-beta needs --algebra <name or spec.json>");
  const LieAlgebraSpec alg = load_algebra(o.beta_algebra);
  BetaSolution sol;
  try {
    sol = solve_beta(alg);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  nlohmann::ordered_json j;
  j["algebra"] = alg.name();
  j["exact"] = sol.exact;
  j["residual"] = sol.residual;
  j["relative_residual"] = sol.relative_residual;
  j["rank"] = sol.rank;
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  const auto& idx = sol.beta.indices();
  for (int k = 0; k < sol.beta.size(); ++k) {
    nlohmann::ordered_json t;
    t["indices"] = {idx[static_cast<size_t>(k)][0], idx[static_cast<size_t>(k)][1]};
    std::vector<double> v;
    for (int c = 0; c < sol.beta.vdim(); ++c) v.push_back(sol.beta.coefficients()(k, c));
    t["value"] = v;
    terms.push_back(t);
  }
  j["beta"] = terms;
  write_output(o.json_out, dump_json(j) + "\n");
  return 0;
}

int run(const std::string& module, const Options& o)
{
  Scenario sc;
  if (o.scenario.empty())
    sc.name = "default";
  else if (o.scenario == "smoke" && !std::filesystem::exists(o.scenario))
    sc = smoke_scenario();
  else
    sc = load_scenario(o.scenario);

  CheckContext ctx;
  if (!sc.resolutions.empty()) ctx.resolutions = sc.resolutions;
  if (o.resolution) ctx.resolutions = ladder(o.resolution);
  if (o.steps) ctx.resolutions = ladder(o.steps);
  ctx.seed = o.seed >= 0 ? static_cast<std::uint64_t>(o.seed) : sc.seed;
  if (ctx.seed < 1) throw ConfigError("--seed must be positive");
  ctx.samples = sc.samples;
  for (const auto& a : o.algebras.empty() ? sc.algebras : o.algebras) ctx.algebras.push_back(load_algebra(a));
  if (!o.group.empty()) ctx.current_group = o.group;
  ctx.grid = o.grid;
  if (!o.eta.empty()) {
    if (o.eta == "exact")
      ctx.alpha.clear();
    else if (o.eta.rfind("exact:", 0) == 0)
      ctx.alpha = o.eta.substr(6);
    else
      throw ConfigError("--eta must be 'exact' or 'exact:<alpha_x terms>|<alpha_y terms>'");
    parse_exact_bundle(ctx.grid > 0 ? ctx.grid : 32, ctx.alpha);
  }
  const double tol_scale = o.tol_scale > 0 ? o.tol_scale : sc.tol_scale;

  const std::string selected = module == "all" ? sc.module : module;
  std::vector<std::string> ids;
  if (sc.checks) {
    for (const auto& id : *sc.checks) {
      const CheckDefinition& def = find_check(id);
      if (selected != "all" && def.module != selected)
        throw ConfigError("check '" + id + "' does not belong to module '" + selected + "'");
      ids.push_back(id);
    }
  } else {
    ids = module_checks(selected);
  }
  if (selected == "current" || selected == "all") ids = filter_current(ids, o);

  std::map<std::string, double> overrides;
  for (const auto& [id, tol] : sc.tolerances) {
    if (id != "*") find_check(id);
    overrides[id] = tol;
  }

  Report report;
  report.scenario = sc.name;
  report.module = selected;
  report.seed = ctx.seed;
  report.resolutions = ctx.resolutions;
  std::string text;
  for (const auto& id : ids) {
    std::optional<double> tol;
    if (auto it = overrides.find(id); it != overrides.end())
      tol = it->second;
    else if (auto all = overrides.find("*"); all != overrides.end())
      tol = all->second;
    CheckRecord r = run_check(find_check(id), ctx, tol_scale, tol);
    text += summary_line(r);
    report.records.push_back(std::move(r));
  }
  int passed = 0;
  for (const auto& r : report.records) passed += r.pass;
  text += std::to_string(passed) + "/" + std::to_string(report.records.size()) + " checks passed\n";

  if (o.json_out == "-") {
    std::cerr << text;
    write_output("-", dump_json(to_json(report)) + "\n");
  } else {
    std::cout << text;
    if (!o.json_out.empty()) write_output(o.json_out, dump_json(to_json(report)) + "\n");
  }
  return report.pass() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Residual checks for central extensions of path groups"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--scenario", o.scenario, "Scenario JSON file, or 'smoke' for the built-in scenario");
  app.add_option("--resolution", o.resolution, "Finest resolution N; the checks use N/4, N/2, N");
  app.add_option("--seed", o.seed, "Seed of the random instances (default 1)");
  app.add_option("--json-out", o.json_out, "Write the JSON report to this file ('-' for stdout)");
  app.add_option("--tol-scale", o.tol_scale, "Multiply every default tolerance")->check(CLI::PositiveNumber);
  app.add_option("--algebra", o.algebras, "Algebra name or JSON file (appendix identities; solve-beta)");
  app.add_option("--manifold", o.manifold, "current: restrict to s1 or t2")->check(CLI::IsMember({"s1", "t2"}));
  app.add_option("--group", o.group, "current: structure group")->check(CLI::IsMember({"su2", "so3"}));
  app.add_option("--grid", o.grid, "lichnerowicz: torus grid size M");
  app.add_option("--steps", o.steps, "lichnerowicz: finest number of time steps");
  app.add_option("--eta", o.eta, "lichnerowicz: exact or exact:<kx,ky,c,s;...>|<kx,ky,c,s;...>");

  std::string command;
  bool beta = false;
  for (const std::string m : {"cocycle", "extension", "current", "coupled", "lichnerowicz", "appendix", "all"}) {
    CLI::App* sub = app.add_subcommand(m, m == "all" ? "Every module" : "Checks of the " + m + " module");
    sub->fallthrough();
    sub->callback([&command, m] { command = m; });
    sub->add_subcommand("verify", "Run the checks (default)")->fallthrough();
    if (m == "coupled") sub->add_subcommand("solve-beta", "Solve d beta = Gamma(kappa)")->fallthrough()->callback([&beta] {
      beta = true;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const bool current = command == "current", lich = command == "lichnerowicz";
    if ((!o.manifold.empty() || !o.group.empty()) && !current && command != "all")
      throw ConfigError("--manifold and --group apply to the current module");
    if ((o.grid || o.steps || !o.eta.empty()) && !lich && command != "all")
      throw ConfigError("--grid, --steps and --eta apply to the lichnerowicz module");
    if (o.grid && (o.grid < 4 || o.grid % 2)) throw ConfigError("--grid must be even and at least 4");
    if (o.resolution && o.steps) throw ConfigError("--resolution and --steps are exclusive");
    if (beta) {
      if (o.algebras.size() > 1) throw ConfigError("solve-beta takes a single --algebra");
      if (o.algebras.size() == 1) o.beta_algebra = o.algebras.front();
      return solve_beta_command(o);
    }
    return run(command, o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}
