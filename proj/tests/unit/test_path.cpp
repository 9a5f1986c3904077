#include "pathext/path.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pathext;

namespace {

GroupPtr su2() { return std::make_shared<const Group>(algebras::su2()); }

Vec v3(double a, double b, double c)
{
  Vec v(3);
  v << a, b, c;
  return v;
}

// t -> exp(t a) exp(t^2 b)
GroupPath wiggle(const GroupPtr& G, const Vec& a, const Vec& b, int n)
{
  return GroupPath::from_function(
      G, [&](double t) { return G->multiply(G->exp_coords(t * a), G->exp_coords(t * t * b)); }, n);
}

}  // namespace

TEST(GroupPath, StartsAtIdentityAndReconstructs)
{
  auto G = su2();
  const GroupPath p = wiggle(G, v3(0.4, -0.2, 0.7), v3(0.1, 0.3, -0.5), 64);
  EXPECT_EQ(G->distance_to_identity(p.sample(0)), 0.0);
  EXPECT_LT(p.reconstruction_residual(), 1e-12);
}

TEST(GroupPath, RejectsStartOffIdentity)
{
  auto G = su2();
  EXPECT_THROW(GroupPath::from_function(G, [&](double t) { return G->exp_coords(v3(t + 0.1, 0, 0)); }, 8),
               InvalidCertificate);
}

TEST(GroupPath, OneParameterSubgroupHasConstantVelocity)
{
  auto G = su2();
  const Vec xi = v3(0.3, 1.1, -0.4);
  const GroupPath p = GroupPath::from_function(G, [&](double t) { return G->exp_coords(t * xi); }, 16);
  for (int k = 0; k < p.n(); ++k) EXPECT_LT((G->coords(p.midpoint_velocity(k)) - xi).norm(), 1e-13);
  EXPECT_LT((G->coords(p.node_velocity(0)) - xi).norm(), 1e-13);
  EXPECT_LT(G->distance(p.at(0.37), G->exp_coords(0.37 * xi)), 1e-14);
}

TEST(GroupPath, ProductWithInverseIsConstant)
{
  auto G = su2();
  const GroupPath f = wiggle(G, v3(0.4, -0.2, 0.7), v3(0.1, 0.3, -0.5), 32);
  const GroupPath e = path_product(f, path_inverse(f));
  for (int k = 0; k < e.n(); ++k) EXPECT_LT(e.midpoint_velocity(k).max_abs(), 1e-10);
  const GroupPath c = GroupPath::constant(G, 32);
  const GroupPath ef = path_product(c, f);
  for (int i = 0; i <= f.n(); ++i) EXPECT_EQ(G->distance(ef.sample(i), f.sample(i)), 0.0);
}

TEST(GroupPath, ResolutionMismatchThrows)
{
  auto G = su2();
  EXPECT_THROW(path_product(GroupPath::constant(G, 8), GroupPath::constant(G, 16)), std::invalid_argument);
}

TEST(GroupPath, GroupAxiomsNodewise)
{
  auto G = su2();
  const GroupPath f = wiggle(G, v3(0.4, -0.2, 0.7), v3(0.1, 0.3, -0.5), 32);
  const GroupPath g = wiggle(G, v3(-0.9, 0.2, 0.1), v3(0.6, 0.0, 0.2), 32);
  const GroupPath h = wiggle(G, v3(0.2, 0.5, -0.3), v3(-0.2, 0.4, 0.1), 32);
  EXPECT_LT(path_associativity_residual(f, g, h), 1e-14);
}

TEST(Resample, IdentityAndZeroWarp)
{
  auto G = su2();
  const GroupPath f = wiggle(G, v3(0.4, -0.2, 0.7), v3(0.1, 0.3, -0.5), 32);
  const GroupPath same = resample(f, [](double t) { return t; });
  for (int i = 0; i <= f.n(); ++i) EXPECT_LT(G->distance(same.sample(i), f.sample(i)), 1e-12);
  const GroupPath zero = resample(f, [](double) { return 0.0; });
  for (int i = 0; i <= f.n(); ++i) EXPECT_EQ(G->distance_to_identity(zero.sample(i)), 0.0);
}

TEST(Resample, HalfSpeedSubgroupIsExact)
{
  auto G = su2();
  const Vec xi = v3(0.9, -0.3, 0.5);
  const GroupPath p = GroupPath::from_function(G, [&](double t) { return G->exp_coords(t * xi); }, 16);
  const GroupPath q = resample(p, [](double t) { return t / 2; });
  for (int i = 0; i <= q.n(); ++i)
    EXPECT_LT(G->distance(q.sample(i), G->exp_coords((0.5 * i / q.n()) * xi)), 1e-14);
}

TEST(Resample, NonMonotoneWarpThrows)
{
  auto G = su2();
  const GroupPath p = GroupPath::constant(G, 8);
  EXPECT_THROW(resample(p, [](double t) { return t * (1 - t); }), std::invalid_argument);
}

TEST(Resample, CommutesWithProductAtSecondOrder)
{
  auto G = su2();
  auto warp = [](double t) { return t * t; };
  double err[2];
  for (int r = 0; r < 2; ++r) {
    const int n = 32 << r;
    const GroupPath f = wiggle(G, v3(0.4, -0.2, 0.7), v3(0.1, 0.3, -0.5), n);
    const GroupPath g = wiggle(G, v3(-0.9, 0.2, 0.1), v3(0.6, 0.0, 0.2), n);
    const GroupPath a = resample(path_product(f, g), warp);
    const GroupPath b = path_product(resample(f, warp), resample(g, warp));
    err[r] = 0;
    for (int i = 0; i <= n; ++i) err[r] = std::max(err[r], G->distance(a.sample(i), b.sample(i)));
  }
  EXPECT_GT(std::log2(err[0] / err[1]), 1.9);
}

TEST(HomotopyGrid, PinsAreValidatedAndSnapped)
{
  auto G = su2();
  auto fn = [&](double s, double t) { return G->exp_coords(v3(s * std::sin(M_PI * t), 0.2 * s * t * (1 - t), 0)); };
  const HomotopyGrid h = HomotopyGrid::from_function(G, fn, 8, 8, kNullHomotopyPins);
  EXPECT_EQ(G->distance_to_identity(h.at(3, 8)), 0.0);
  EXPECT_NO_THROW(h.require_null_homotopy());
  auto bad = [&](double s, double t) { return G->exp_coords(v3(s * t, 0, 0)); };
  EXPECT_THROW(HomotopyGrid::from_function(G, bad, 8, 8, kNullHomotopyPins), InvalidCertificate);
  EXPECT_THROW(HomotopyGrid::from_function(G, bad, 8, 8, kPinS0 | kPinT0).require_null_homotopy(),
               InvalidCertificate);
}

TEST(SphereCycle, RejectsNonConstantEdge)
{
  auto G = su2();
  auto fn = [&](double s, double t) { return G->exp_coords(v3(s * (1 - s) * t, 0, 0)); };
  EXPECT_THROW(SphereCycle(SurfaceGrid::from_function(G, fn, 8, 8)), InvalidCertificate);
}

TEST(VanEstSimplex, BoundaryMatchesChain)
{
  auto G = su2();
  const GroupPath f = wiggle(G, v3(0.4, -0.2, 0.7), v3(0.1, 0.3, -0.5), 32);
  const GroupPath g = wiggle(G, v3(-0.9, 0.2, 0.1), v3(0.6, 0.0, 0.2), 32);
  const HomotopyGrid sigma = vanest_simplex(f, g);
  const auto r = simplex_boundary_residual(sigma, f, g);
  EXPECT_LT(r.top, 1e-13);
  EXPECT_LT(r.right, 1e-13);
  EXPECT_LT(r.bottom, 1e-14);
}

TEST(VanEstSimplex, DegenerateFactors)
{
  auto G = su2();
  const GroupPath f = wiggle(G, v3(0.4, -0.2, 0.7), v3(0.1, 0.3, -0.5), 16);
  const GroupPath e = GroupPath::constant(G, 16);
  const HomotopyGrid a = vanest_simplex(e, f);
  const HomotopyGrid b = vanest_simplex(f, e);
  for (int i = 0; i <= 16; ++i)
    for (int j = 0; j <= 16; ++j) {
      EXPECT_LT(G->distance(a.at(i, j), f.at(i * j / 256.0)), 1e-14);
      EXPECT_LT(G->distance(b.at(i, j), f.sample(i)), 1e-14);
    }
}
