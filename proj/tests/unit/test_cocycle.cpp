#include "pathext/cocycle.hpp"
#include "pathext/families.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pathext;

namespace {

std::vector<AlgebraElement> basis_elements(const Group& G)
{
  std::vector<AlgebraElement> out;
  for (int k = 0; k < G.algebra().dim(); ++k) {
    Vec c = Vec::Zero(G.algebra().dim());
    c[k] = 1.0;
    out.push_back(G.from_coords(c));
  }
  return out;
}

std::vector<CocycleSpec> all_specs()
{
  return {specs::heisenberg_central(), specs::torus_area(), specs::su2_adjoint_bracket(),
          specs::su2_trivial_exact()};
}

constexpr double kAmp = 0.4;

}  // namespace

TEST(LatticeModule, RoundingDistance)
{
  Eigen::MatrixXd gens(2, 2);
  gens << 1, 0, 0, 2;
  LatticeModule m(2, gens);
  Vec a(2);
  a << 3.1, -3.9;
  EXPECT_NEAR(m.lattice_distance(a), std::hypot(0.1, 0.1), 1e-14);
  a << 0.5, 1.0;  // midpoint of a lattice cell in both directions
  EXPECT_NEAR(m.lattice_distance(a), std::hypot(0.5, 1.0), 1e-14);
  EXPECT_EQ(LatticeModule::trivial(3).lattice_distance(Vec::Constant(3, 2.0)), std::sqrt(12.0));
}

TEST(LatticeModule, DependentGeneratorsRejected)
{
  Eigen::MatrixXd gens(2, 2);
  gens << 1, 2, 1, 2;
  EXPECT_THROW(LatticeModule(2, gens), std::invalid_argument);
}

TEST(CocycleSpec, ShippedSpecsAreCocycles)
{
  for (const auto& spec : all_specs()) {
    const auto xs = basis_elements(*spec.group);
    EXPECT_EQ(spec.antisymmetry_residual(xs), 0.0) << spec.name;
    EXPECT_LT(spec.cocycle_residual(xs), 1e-12) << spec.name;
  }
}

TEST(CocycleSpec, NonCocycleIsDetected)
{
  // omega(e1, e2) = e1 in the adjoint module: the cyclic sum on (e1, e2, e3) is [e3, e1] = e2.
  std::vector<double> w(27, 0.0);
  w[(0 * 3 + 1) * 3 + 0] = 1.0;
  w[(1 * 3 + 0) * 3 + 0] = -1.0;
  auto spec = CocycleSpec::from_tensor("bad", std::make_shared<const Group>(algebras::su2(1.0)), w,
                                       LatticeModule(3, Eigen::MatrixXd(3, 0), LatticeModule::Action::Adjoint));
  EXPECT_NEAR(spec.cocycle_residual(basis_elements(*spec.group)), 1.0, 1e-12);
}

TEST(OmegaEq, DegenerateSurfacesIntegrateToZero)
{
  const auto spec = specs::su2_adjoint_bracket();
  const auto& G = spec.group;
  const HomotopyGrid trivial = HomotopyGrid::trivial(G, 8, 8);
  EXPECT_EQ(omega_eq_integral(trivial, spec).norm(), 0.0);
  const GroupPath p = random_path(G, 7, 1.0, 8);
  const SurfaceGrid s_indep = SurfaceGrid::from_function(G, [&](double, double t) { return p.at(t); }, 8, 8);
  EXPECT_LT(omega_eq_integral(s_indep, spec).norm(), 1e-14);
}

TEST(OmegaEq, TorusAreaIsExactForLinearMaps)
{
  // sigma(s, t) = exp(s a + t b) in the torus sweeps the parallelogram spanned by a and b.
  const auto spec = specs::torus_area();
  Vec a(2), b(2);
  a << 0.3, -0.1;
  b << 0.2, 0.4;
  const SurfaceGrid sg = SurfaceGrid::from_function(
      spec.group, [&](double s, double t) { return spec.group->exp_coords(s * a + t * b); }, 4, 4);
  EXPECT_NEAR(omega_eq_integral(sg, spec)[0], a[0] * b[1] - a[1] * b[0], 1e-15);
}

TEST(VanEst, DegenerateArgumentsVanish)
{
  for (const auto& spec : all_specs()) {
    const GroupPath f = random_path(spec.group, 1, kAmp, 16);
    const GroupPath e = GroupPath::constant(spec.group, 16);
    EXPECT_LT(vanest_C(f, e, spec).norm(), 1e-15) << spec.name;
    EXPECT_LT(vanest_C(e, f, spec).norm(), 1e-15) << spec.name;
  }
}

TEST(VanEst, DualRouteConvergesAtSecondOrder)
{
  for (const auto& spec : all_specs()) {
    std::vector<int> Ns{16, 32, 64};
    std::vector<double> err;
    for (int N : Ns) {
      const GroupPath f = random_path(spec.group, 11, 2.0, N);
      const GroupPath g = random_path(spec.group, 12, 2.0, N);
      err.push_back((vanest_C(f, g, spec) - omega_eq_integral(vanest_simplex(f, g), spec)).norm());
    }
    // both rules are exact for abelian and two step nilpotent specs
    if (err.back() > 1e-12) EXPECT_GT(convergence_order(Ns, err), 1.6) << spec.name;
  }
}

TEST(VanEst, CPrimeRoutesAgree)
{
  for (const auto& spec : all_specs()) {
    std::vector<int> Ns{16, 32, 64};
    std::vector<double> err;
    for (int N : Ns) {
      const auto v = vanest_variants(random_path(spec.group, 21, 2.0, N), random_path(spec.group, 22, 2.0, N), spec);
      err.push_back((v.C_prime - v.C_prime_direct).norm());
    }
    if (err.back() > 1e-12) EXPECT_GT(convergence_order(Ns, err), 1.6) << spec.name;
  }
}

TEST(VanEst, CsymAntisymmetry)
{
  for (const auto& spec : all_specs()) {
    const GroupPath f = random_path(spec.group, 31, 2.0, 32);
    const GroupPath g = random_path(spec.group, 32, 2.0, 32);
    const Vec a = vanest_variants(f, g, spec).C_sym;
    const Vec b = vanest_variants(path_inverse(g), path_inverse(f), spec).C_sym;
    EXPECT_LT((a + b).norm(), 1e-9) << spec.name;
    EXPECT_LT(vanest_variants(f, path_inverse(f), spec).C_sym.norm(), 1e-9) << spec.name;
  }
}

TEST(PCocycle, TwoCocycleReductionMatches)
{
  const auto spec = specs::su2_adjoint_bracket();
  const GroupPath f = random_path(spec.group, 41, 1.0, 32);
  const GroupPath g = random_path(spec.group, 42, 1.0, 32);
  auto w = [&](const std::vector<AlgebraElement>& x) { return spec.omega(x[0], x[1]); };
  EXPECT_LT((vanest_p_cocycle({f, g}, w, spec) - vanest_C(f, g, spec)).norm(), 1e-12);
}

TEST(PCocycle, DegenerateAndRefinement)
{
  const auto spec = specs::su2_trivial_exact();
  const Group& G = *spec.group;
  const auto& alg = G.algebra();
  auto w3 = [&](const std::vector<AlgebraElement>& x) {
    Vec v(1);
    v[0] = alg.kappa_eval(x[0].at[0], alg.bracket(x[1].at[0], x[2].at[0]))[0];
    return v;
  };
  const GroupPath e = GroupPath::constant(spec.group, 8);
  EXPECT_EQ(vanest_p_cocycle({random_path(spec.group, 1, 1.0, 8), e, random_path(spec.group, 2, 1.0, 8)}, w3, spec).norm(),
            0.0);
  std::vector<int> Ns{8, 16, 32};
  std::vector<double> vals;
  for (int N : Ns)
    vals.push_back(vanest_p_cocycle({random_path(spec.group, 51, 2.0, N), random_path(spec.group, 52, 2.0, N),
                                     random_path(spec.group, 53, 2.0, N)},
                                    w3, spec)[0]);
  const double ref = vals[2] + (vals[2] - vals[1]) / 3.0;
  EXPECT_GT(convergence_order({8, 16}, {std::abs(vals[0] - ref), std::abs(vals[1] - ref)}), 1.7);
  EXPECT_THROW(vanest_p_cocycle({e, e, e, e}, w3, spec), std::invalid_argument);
}

TEST(Periods, FoldedSphereHasZeroPeriod)
{
  // A null-homotopy followed by its reverse: row S - i equals row i.
  for (const auto& spec : all_specs()) {
    const int N = 32;
    const HomotopyGrid h = random_loop_certificate(spec.group, 61, 1.5, N / 2, N);
    SurfaceGrid sg = SurfaceGrid::from_function(
        spec.group, [&](double, double) { return spec.group->identity(); }, N, N);
    for (int i = 0; i <= N; ++i)
      for (int j = 0; j <= N; ++j) sg.at(i, j) = h.at(i <= N / 2 ? i : N - i, j);
    EXPECT_LT(period_integral(SphereCycle(sg), spec).norm(), 1e-8) << spec.name;
  }
  const auto spec = specs::su2_adjoint_bracket();
  EXPECT_EQ(period_integral(SphereCycle(HomotopyGrid::trivial(spec.group, 4, 4).grid()), spec).norm(), 0.0);
}

TEST(Periods, SmoothSphereFamilyConvergesToZero)
{
  // tau(s, t) = exp(sin(pi s) A(t)) collapses all four edges to e; pi_2 of a Lie group vanishes.
  for (const auto& spec : all_specs()) {
    AlgebraSeries A(spec.group, 61, 1.5, AlgebraSeries::Basis::Dirichlet);
    std::vector<int> Ns{16, 32, 64};
    std::vector<double> per;
    for (int N : Ns) {
      const SurfaceGrid sg = SurfaceGrid::from_function(
          spec.group, [&](double s, double t) { return spec.group->exp(std::sin(M_PI * s) * A(t)); }, N, N);
      const Vec p = period_integral(SphereCycle(sg), spec);
      per.push_back(p.norm());
      // Lambda restricted to loops of loops is minus the period
      const HomotopyGrid h(sg, kNullHomotopyPins | kPinS1);
      EXPECT_LT((resolving_Lambda(h, spec).Lambda + p).norm(), 1e-12) << spec.name;
    }
    EXPECT_LT(per.back(), 1e-5) << spec.name;
    if (per.back() > 1e-12) EXPECT_GT(convergence_order(Ns, per), 1.7) << spec.name;
  }
}

TEST(Lambda, SymmetrizedIsOddUnderInversion)
{
  for (const auto& spec : all_specs()) {
    const HomotopyGrid h = random_loop_certificate(spec.group, 71, 2.0, 32, 32);
    const Vec a = resolving_Lambda(h, spec).Lambda_sym;
    const Vec b = resolving_Lambda(h.inverted(), spec).Lambda_sym;
    EXPECT_LT((a + b).norm(), 1e-9) << spec.name;
    EXPECT_EQ(resolving_Lambda(HomotopyGrid::trivial(spec.group, 8, 8), spec).Lambda.norm(), 0.0);
  }
}

TEST(Lambda, RejectsInvalidCertificate)
{
  const auto spec = specs::su2_trivial_exact();
  const GroupPath p = random_path(spec.group, 3, 1.0, 8);
  const HomotopyGrid h = HomotopyGrid::from_function(
      spec.group, [&](double s, double t) { return p.at(s * t); }, 8, 8, kPinS0 | kPinT0);
  EXPECT_THROW(resolving_Lambda(h, spec), InvalidCertificate);
}

TEST(Identities, CocycleIdentityIsLatticeValued)
{
  for (const auto& spec : all_specs()) {
    std::vector<int> Ns{16, 32, 64};
    std::vector<double> dist;
    for (int N : Ns) {
      const auto r = cocycle_identity_residual(random_path(spec.group, 81, kAmp, N), random_path(spec.group, 82, kAmp, N),
                                               random_path(spec.group, 83, kAmp, N), spec);
      dist.push_back(r.lattice_distance);
    }
    EXPECT_LT(dist.back(), 1e-6) << spec.name;
    if (dist.back() > 1e-12) EXPECT_GT(convergence_order(Ns, dist), 1.6) << spec.name;
  }
  const auto spec = specs::su2_adjoint_bracket();
  const GroupPath e = GroupPath::constant(spec.group, 16);
  const GroupPath f = random_path(spec.group, 1, 1.0, 16);
  EXPECT_LT(cocycle_identity_residual(e, f, f, spec).raw_norm, 1e-14);
}

TEST(Identities, StrongResolutionHoldsInModule)
{
  for (const auto& spec : all_specs()) {
    std::vector<int> Ns{16, 32, 64};
    std::vector<double> err;
    for (int N : Ns)
      err.push_back(coboundary_residual(random_loop_certificate(spec.group, 91, kAmp, N, N),
                                        random_loop_certificate(spec.group, 92, kAmp, N, N), spec)
                        .raw_norm);
    EXPECT_LT(err.back(), 1e-5) << spec.name;
    if (err.back() > 1e-12) EXPECT_GT(convergence_order(Ns, err), 1.6) << spec.name;
  }
  const auto spec = specs::su2_adjoint_bracket();
  const HomotopyGrid h = random_loop_certificate(spec.group, 5, 1.0, 16, 16);
  EXPECT_LT(coboundary_residual(HomotopyGrid::trivial(spec.group, 16, 16), h, spec).raw_norm, 1e-10);
}

TEST(Convergence, OrderOfPowerLaw)
{
  EXPECT_NEAR(convergence_order({16, 32, 64}, {1.0, 0.25, 0.0625}), 2.0, 1e-12);
  EXPECT_TRUE(std::isnan(convergence_order({16, 32}, {1.0, 0.0})));
}
