#include "pathext/lichnerowicz.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pathext;

namespace {

SpatialGridPtr torus_grid(int M) { return std::make_shared<const SpatialGrid>(Manifold::T2, M); }

BundleSpec sample_bundle(int M)
{
  TrigSeries ax{{{1, 0, 0.3, 0.1}, {0, 1, -0.2, 0.4}, {1, 1, 0.1, 0.0}}};
  TrigSeries ay{{{1, 0, 0.2, -0.3}, {1, -1, 0.0, 0.25}, {0, 2, 0.1, 0.1}}};
  return exact_bundle(torus_grid(M), ax, ay);
}

double rate(double coarse, double fine) { return std::log2(std::abs(coarse) / std::abs(fine)); }

DiffeoPath flow_of(const BundleSpec& spec, const FieldGenerator& X, int N)
{
  return flow(spec, X, N, cfl_substeps(spec, X, N));
}

}  // namespace

TEST(TrigSeries, DerivativeAndSampling)
{
  const auto grid = torus_grid(16);
  TrigSeries f{{{1, 2, 0.5, -0.3}, {0, 1, 0.0, 1.0}}};
  const Vec spectral = grid->derivative(f.sample(*grid), 0);
  EXPECT_LT((spectral - f.derivative(0).sample(*grid)).cwiseAbs().maxCoeff(), 1e-11);
  EXPECT_LT((grid->derivative(f.sample(*grid), 1) - f.derivative(1).sample(*grid)).cwiseAbs().maxCoeff(), 1e-11);

  const Vec x = Vec::Random(7), y = Vec::Random(7);
  const TrigSeries fy = f.derivative(1);
  const auto both = eval_series({&f, &fy}, x, y);
  EXPECT_LT((both[0] - f.eval(x, y)).norm(), 1e-14);
  EXPECT_LT((both[1] - fy.eval(x, y)).norm(), 1e-14);
}

TEST(Spectral, UpsampleAndInverseLaplacian)
{
  const auto grid = torus_grid(16), fine = torus_grid(32);
  TrigSeries f{{{1, -2, 0.5, -0.3}, {3, 1, 0.2, 0.7}}};
  EXPECT_LT((grid->upsample(f.sample(*grid), 2) - f.sample(*fine)).cwiseAbs().maxCoeff(), 1e-13);

  const Vec u = f.sample(*grid);
  const Vec lap = grid->derivative(grid->derivative(u, 0), 0) + grid->derivative(grid->derivative(u, 1), 1);
  EXPECT_LT((grid->inverse_laplacian(lap) - u).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DivFreeField, RoundTripAndDivergence)
{
  const auto grid = torus_grid(32);
  const auto X = random_generator(7, 0.3, 3, 1, false).at(*grid, 0.3);
  const PlaneField c = X.components(*grid);
  EXPECT_LT(divergence_residual(*grid, c), 1e-10);
  const DivFreeField back = DivFreeField::from_components(*grid, c);
  EXPECT_LT((back.stream - X.stream).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((back.harmonic - X.harmonic).norm(), 1e-12);
}

TEST(LichOmega, AlternatingAndNormalized)
{
  const auto grid = torus_grid(16);
  const BundleSpec area = closed_bundle(grid, Vec::Ones(grid->points()));
  const int P = grid->points();
  const PlaneField dx{Vec::Ones(P), Vec::Zero(P)}, dy{Vec::Zero(P), Vec::Ones(P)};
  EXPECT_NEAR(lich_omega(dx, dy, area), 1.0, 1e-15);
  EXPECT_NEAR(lich_omega(dy, dx, area), -1.0, 1e-15);

  const BundleSpec spec = sample_bundle(16);
  const auto X = random_generator(3, 0.3, 2, 1, false).at(*grid, 0.1);
  EXPECT_LT(std::abs(lich_omega(X, X, spec)), 1e-16);
  EXPECT_LT(bundle_residual(spec), 1e-12);
}

TEST(LichOmega, CyclicIdentity)
{
  const BundleSpec spec = sample_bundle(64);
  const auto& grid = *spec.grid;
  const auto X1 = random_generator(11, 0.5, 3, 1, false).at(grid, 0.2);
  const auto X2 = random_generator(12, 0.5, 3, 1, false).at(grid, 0.4);
  const auto X3 = random_generator(13, 0.5, 3, 1, false).at(grid, 0.6);
  EXPECT_LT(lich_cyclic_residual(X1, X2, X3, spec), 1e-8);
  EXPECT_LT(lich_cyclic_pointwise_residual(X1, X2, X3, spec), 1e-8);

  // the form eta = sin(2 pi x) dx ^ dy is closed but not exact
  Vec e(grid.points());
  for (int p = 0; p < grid.points(); ++p) e(p) = 1.0 + std::sin(2 * M_PI * grid.coord(p, 0));
  EXPECT_LT(lich_cyclic_residual(X1, X2, X3, closed_bundle(spec.grid, e)), 1e-8);
}

TEST(Flow, ZeroFieldIsIdentity)
{
  const BundleSpec spec = sample_bundle(16);
  const DiffeoPath p = flow(spec, FieldGenerator{}, 4);
  const DiffeoPath id = identity_path(spec, 4);
  for (int i = 0; i <= 4; ++i) {
    EXPECT_EQ((p.position[i].x - id.position[i].x).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(p.fiber[i].cwiseAbs().maxCoeff(), 0.0);
  }
  EXPECT_EQ(lich_C(p, p, spec), 0.0);
}

TEST(Flow, HarmonicFieldTranslatesRigidly)
{
  const BundleSpec spec = sample_bundle(16);
  FieldGenerator X;
  X.harmonic = {Eigen::Vector2d(0.3, -0.2)};
  const DiffeoPath p = flow(spec, X, 8, 4);
  const PlaneField D = p.displacement(8);
  EXPECT_LT((D.x.array() - 0.3).abs().maxCoeff(), 1e-14);
  EXPECT_LT((D.y.array() + 0.2).abs().maxCoeff(), 1e-14);
  EXPECT_LT(p.volume_defect(), 1e-12);
}

TEST(Flow, LoopClosesAtFourthOrder)
{
  const BundleSpec spec = sample_bundle(32);
  auto X = random_generator(4, 0.15, 2, 2, true);
  X.warp = 0.25;
  ASSERT_TRUE(X.is_loop());
  const double coarse = flow(spec, X, 8, 2).loop_defect(), fine = flow(spec, X, 8, 4).loop_defect();
  EXPECT_LT(fine, 1e-5);
  EXPECT_GT(rate(coarse, fine), 3.5);
}

TEST(Flow, StepSizeLimit)
{
  const BundleSpec spec = sample_bundle(32);
  FieldGenerator X;
  X.harmonic = {Eigen::Vector2d(4.0, 0.0)};
  EXPECT_THROW(flow(spec, X, 4, 1), StepSizeError);
  EXPECT_NO_THROW(flow(spec, X, 4, cfl_substeps(spec, X, 4)));
}

TEST(Flow, PreservesVolumeAndCoarsens)
{
  const BundleSpec spec = sample_bundle(64);
  const auto X = random_generator(1, 0.15, 2, 2, false);
  const DiffeoPath p = flow(spec, X, 16, 2 * cfl_substeps(spec, X, 16));
  EXPECT_LT(p.volume_defect(), 1e-6);
  const DiffeoPath q = flow(spec, X, 8, 4 * cfl_substeps(spec, X, 16)), c = p.coarsen(2);
  for (int i = 0; i <= 8; ++i) EXPECT_EQ((q.position[i].x - c.position[i].x).cwiseAbs().maxCoeff(), 0.0);
}

TEST(LichC, VanishesWithoutConnection)
{
  const auto grid = torus_grid(32);
  const BundleSpec flat = exact_bundle(grid, TrigSeries{}, TrigSeries{});
  const auto f = flow_of(flat, random_generator(1, 0.15, 2, 2, false), 8);
  const auto g = flow_of(flat, random_generator(2, 0.15, 2, 2, false), 8);
  EXPECT_EQ(lich_C(f, g, flat), 0.0);
  const BundleSpec spec = sample_bundle(32);
  EXPECT_THROW(lich_C(f, g, closed_bundle(grid, Vec::Ones(grid->points()))), std::invalid_argument);
  EXPECT_LT(std::abs(lich_C(identity_path(spec, 8), g, spec)), 1e-15);
}

TEST(LichC, DualRouteConverges)
{
  const BundleSpec spec = sample_bundle(32);
  const auto X = random_generator(1, 0.1, 2, 2, false), Y = random_generator(2, 0.1, 2, 2, false);
  const auto f = flow_of(spec, X, 16), g = flow_of(spec, Y, 16);
  std::vector<double> gap;
  for (int factor : {2, 1}) {
    const auto fc = f.coarsen(factor), gc = g.coarsen(factor);
    gap.push_back(lich_C(fc, gc, spec) - lich_C_simplex(fc, gc, spec));
  }
  EXPECT_LT(std::abs(gap[1]), 1e-6);
  EXPECT_GT(rate(gap[0], gap[1]), 1.5);
}

TEST(LichC, CocycleIdentity)
{
  const BundleSpec spec = sample_bundle(64);
  const auto f = flow_of(spec, random_generator(1, 0.15, 2, 2, false), 8);
  const auto g = flow_of(spec, random_generator(2, 0.15, 2, 2, false), 8);
  const auto h = flow_of(spec, random_generator(3, 0.15, 2, 2, false), 8);
  EXPECT_GT(std::abs(lich_C(f, g, spec)), 1e-5);
  EXPECT_LT(std::abs(lich_cocycle_residual(f, g, h, spec)), 1e-9);
}

TEST(LichLambda, CoboundaryConverges)
{
  const BundleSpec spec = sample_bundle(32);
  const auto LX = random_generator(4, 0.15, 2, 2, true);
  auto LY = random_generator(5, 0.15, 2, 2, true);
  LY.warp = 0.25;
  auto lin = [](double s) { return s; };
  std::vector<double> res;
  for (int N : {8, 16}) {
    const auto fb = scaled_family(spec, LX, N, N, cfl_substeps(spec, LX, N), lin);
    const auto gb = scaled_family(spec, LY, N, N, cfl_substeps(spec, LY, N), lin);
    res.push_back(lich_coboundary_residual(fb, gb, spec));
  }
  EXPECT_LT(std::abs(res[1]), 5e-6);
  EXPECT_GT(rate(res[0], res[1]), 1.7);
}

TEST(LichLambda, TrivialAndSphericalFamilies)
{
  const BundleSpec spec = sample_bundle(32);
  // constant in s: the cells are degenerate
  const auto X = random_generator(4, 0.15, 2, 2, true);
  const auto flat = scaled_family(spec, X, 4, 8, cfl_substeps(spec, X, 8), [](double) { return 1.0; });
  EXPECT_EQ(lich_Lambda(flat, spec), 0.0);

  auto c = [](double s, double t) {
    const double r = std::sin(M_PI * s) * std::sin(M_PI * t);
    return Eigen::Vector2d(0.4 * r, 0.3 * r * std::cos(2 * M_PI * t));
  };
  const auto trans = translation_family(spec, 8, 8, c);
  EXPECT_LT(family_pin_defect(trans, true), 1e-15);
  EXPECT_LT(std::abs(lich_Lambda(trans, spec)), 1e-6);

  auto Y = random_generator(5, 0.15, 2, 2, true);
  Y.warp = 0.25;
  const auto a = scaled_family(spec, X, 8, 8, cfl_substeps(spec, X, 8), [](double s) { return std::sin(M_PI * s); });
  const auto b = scaled_family(spec, Y, 8, 8, cfl_substeps(spec, Y, 8),
                               [](double s) { return std::sin(M_PI * s) * (1 + s); });
  const auto sphere = family_product(a, b, spec);
  EXPECT_LT(family_pin_defect(sphere, true), 1e-4);
  EXPECT_LT(std::abs(lich_Lambda(sphere, spec)), 1e-6);
}

TEST(Section, HorizontalLiftResiduals)
{
  const BundleSpec spec = sample_bundle(32);
  const auto X = random_generator(9, 0.3, 3, 1, false).at(*spec.grid, 0.5);
  const SectionResiduals r = section_residuals(X, spec);
  EXPECT_LT(r.theta, 1e-14);
  EXPECT_EQ(r.projection, 0.0);
  EXPECT_LT(r.divergence, 1e-10);
  EXPECT_THROW(section_residuals(X, closed_bundle(spec.grid, spec.eta)), std::invalid_argument);
}
