// Re-derives the su(2) kappa normalization from the pi3 generator: with kappa(X, Y) = -tr(XY),
// the period of the degree one sphere is I, so the unit-period scale is 1 / I.
#include "pathext/current.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>

using namespace pathext;

int main(int argc, char** argv)
{
  CLI::App app{"Period of the pi3 generator under kappa = -tr(XY), and the scale that makes it one"};
  int M = 32, finest = 128;
  app.add_option("--grid", M, "Circle grid size")->check(CLI::Range(8, 1024));
  app.add_option("--resolution", finest, "Finest S = N; the ladder halves it twice")->check(CLI::Range(16, 1024));
  CLI11_PARSE(app, argc, argv);

  const CurrentSpace cs = make_current_space(algebras::su2(1.0), Manifold::S1, M);
  double prev = 0, last = 0;
  for (int N = finest / 4; N <= finest; N *= 2) {
    const double period = std::abs(resolving_Lambda(pi3_generator(cs, N, N), cs.spec).Lambda_sym(0));
    std::printf("S = N = %4d  period %.10f\n", N, period);
    prev = last;
    last = period;
  }
  // second order Richardson extrapolation of the two finest levels
  const double extrapolated = (4 * last - prev) / 3;
  std::printf("extrapolated period %.10f, 8 pi^2 = %.10f, relative gap %.2e\n", extrapolated, 8 * M_PI * M_PI,
              std::abs(extrapolated / (8 * M_PI * M_PI) - 1));
  std::printf("unit-period scale 1/period %.12e, shipped %.12e\n", 1 / extrapolated, algebras::su2_unit_kappa_scale());
  return 0;
}
