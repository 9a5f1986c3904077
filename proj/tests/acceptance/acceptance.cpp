// Runs the ten acceptance criteria at their stated tolerances and prints one PASS/FAIL line each.
#include "pathext/appendix.hpp"
#include "pathext/checks.hpp"

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

using namespace pathext;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Part {
  std::string label;
  CheckRecord record;
  double seconds = 0;
};

Part run(const std::string& id, const CheckContext& ctx)
{
  const auto t0 = Clock::now();
  Part p{id, run_check(find_check(id), ctx), 0};
  p.seconds = seconds_since(t0);
  return p;
}

bool at_most(const Part& p, double tol) { return std::isfinite(p.record.measured()) && p.record.measured() <= tol; }

// Residuals at roundoff level carry no order; they satisfy an order requirement trivially.
bool order_at_least(const Part& p, double min_order)
{
  if (p.record.measured() <= p.record.exact_floor) return true;
  return std::isfinite(p.record.order_estimate) && p.record.order_estimate >= min_order;
}

std::string sci(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string fixed(double x, int digits)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string summary(const Part& p)
{
  std::string s = p.label + " " + sci(p.record.measured());
  if (std::isfinite(p.record.order_estimate) && p.record.measured() > p.record.exact_floor) s += " order " + fixed(p.record.order_estimate, 2);
  return s;
}

int failures = 0;

void report(int number, const std::string& title, bool pass, const std::string& detail)
{
  std::printf("%s criterion %2d %s: %s\n", pass ? "PASS" : "FAIL", number, title.c_str(), detail.c_str());
  std::fflush(stdout);
  failures += !pass;
}

}  // namespace

int main()
{
  CheckContext ctx;
  ctx.resolutions = {16, 32, 64};

  {
    const Part p = run("cocycle.dual_route", ctx);
    const bool ok = order_at_least(p, 1.7) && p.seconds < 60;
    report(1, "dual-route van Est", ok,
           "worst order " + fixed(p.record.order_estimate, 3) + " over 20 pairs, " + fixed(p.seconds, 1) + " s");
  }
  {
    const Part p = run("cocycle.identity", ctx);
    report(2, "cocycle identity", at_most(p, 1e-6) && order_at_least(p, 1.7), summary(p));
  }
  {
    const Part p = run("cocycle.strong_resolution", ctx);
    report(3, "strong resolution", at_most(p, 1e-6) && order_at_least(p, 1.7), summary(p));
  }
  {
    const Part p = run("extension.normality", ctx);
    report(4, "normality of the graph", at_most(p, 1e-6), summary(p) + " over 10 pairs");
  }
  {
    const Part p = run("current.pi3_period", ctx);
    const bool ok = at_most(p, 0.02) && order_at_least(p, 1.7) && p.seconds < 120;
    report(5, "pi3 period quantization", ok, summary(p) + ", " + fixed(p.seconds, 1) + " s");
  }
  {
    const Part s1 = run("current.closed_form_s1", ctx), t2 = run("current.closed_form_t2", ctx);
    report(6, "current closed form", at_most(s1, 1e-6) && at_most(t2, 1e-6), summary(s1) + ", " + summary(t2));
  }
  {
    const Part p = run("current.polyakov_wiegmann", ctx);
    report(7, "Polyakov-Wiegmann", at_most(p, 1e-5) && order_at_least(p, 1.7), summary(p));
  }
  {
    const Part exact = run("coupled.beta_exact", ctx), simple = run("coupled.beta_nonexact", ctx);
    const Part decomp = run("coupled.decomposition", ctx), endpoint = run("coupled.endpoint_independence", ctx);
    const Part wrap = run("coupled.wrapping_period", ctx);
    const bool ok = at_most(exact, 1e-10) && simple.record.measured() >= 0.1 && at_most(decomp, 1e-5) &&
                    at_most(endpoint, 1e-5) && at_most(wrap, 1e-5);
    report(8, "coupled cocycle", ok,
           summary(exact) + ", " + summary(simple) + ", " + summary(decomp) + ", " + summary(endpoint) + ", " +
               summary(wrap));
  }
  {
    CheckContext lich = ctx;
    lich.grid = 128;
    const Part cyclic = run("lichnerowicz.cyclic", lich), volume = run("lichnerowicz.volume", lich);
    const Part dual = run("lichnerowicz.dual_route", lich), period = run("lichnerowicz.exact_period", lich);
    const bool ok = at_most(cyclic, 1e-8) && at_most(volume, 1e-6) && order_at_least(dual, 1.5) &&
                    at_most(period, 1e-6);
    report(9, "Lichnerowicz (128^2 x 64)", ok,
           summary(cyclic) + ", " + summary(volume) + ", " + summary(dual) + ", " + summary(period));
  }
  {
    CheckContext app = ctx;
    for (const char* name : {"su2", "so3", "heisenberg3"}) app.algebras.push_back(algebras::by_name(name));
    const auto t0 = Clock::now();
    bool ok = true;
    double worst = kNaN;
    int exact = 0;
    for (int k = 0; k < kCalculusIdentities; ++k) {
      const Part p = run("appendix." + to_string(calculus_identity_from_index(k)), app);
      ok = ok && order_at_least(p, 1.9);
      if (p.record.measured() <= p.record.exact_floor)
        ++exact;
      else if (std::isnan(worst) || p.record.order_estimate < worst)
        worst = p.record.order_estimate;
    }
    const double elapsed = seconds_since(t0);
    ok = ok && elapsed < 30;
    report(10, "calculus identity suite", ok,
           std::to_string(kCalculusIdentities) + " identities on su2, so3, heisenberg3 at n = 64, 128: worst order " +
               fixed(worst, 3) + ", " + std::to_string(exact) + " exact, " + fixed(elapsed, 1) + " s");
  }

  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
