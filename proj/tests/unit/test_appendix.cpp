#include "pathext/appendix.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pathext;

namespace {

GroupPtr group_of(const LieAlgebraSpec& alg) { return std::make_shared<const Group>(alg); }

}  // namespace

TEST(CalculusIdentities, ConstantFamilyIsExact)
{
  const auto G = group_of(algebras::by_name("su2"));
  const CalculusSamples smp = sample_family(constant_calculus_family(G), 8);
  for (int k = 0; k < kCalculusIdentities; ++k)
    EXPECT_EQ(calculus_residual(smp, calculus_identity_from_index(k)), 0.0) << to_string(calculus_identity_from_index(k));
}

TEST(CalculusIdentities, AbelianProductRule)
{
  const auto G = group_of(algebras::abelian(2));
  const CalculusSamples smp = sample_family(random_calculus_family(G, 3, 1.0), 16);
  EXPECT_LT(calculus_residual(smp, CalculusIdentity::ProductRule), 1e-12);
  EXPECT_LT(calculus_residual(smp, CalculusIdentity::AdjointDerivative), 1e-12);
  EXPECT_LT(calculus_residual(smp, CalculusIdentity::MaurerCartan), 1e-10);
}

TEST(CalculusIdentities, SecondOrderOnSU2)
{
  const auto G = group_of(algebras::by_name("su2"));
  const auto checks = calculus_suite(random_calculus_family(G, 7, 1.0), 32);
  ASSERT_EQ(static_cast<int>(checks.size()), kCalculusIdentities);
  for (const auto& c : checks) {
    EXPECT_TRUE(c.pass) << to_string(c.id) << " order " << c.order;
    if (c.id == CalculusIdentity::RightLeft) {
      // log(b a^{-1}) = Ad(a) log(a^{-1} b) and Ad of the geodesic midpoint acts the same way
      EXPECT_TRUE(c.exact);
    } else {
      EXPECT_FALSE(c.exact) << to_string(c.id);
      EXPECT_NEAR(c.coarse / c.fine, 4.0, 0.4) << to_string(c.id);
    }
  }
}

TEST(CalculusIdentities, SecondOrderOnSO3AndHeisenberg)
{
  for (const char* name : {"so3", "heisenberg3"}) {
    const auto checks = calculus_suite(random_calculus_family(group_of(algebras::by_name(name)), 11, 0.8), 32);
    for (const auto& c : checks) EXPECT_TRUE(c.pass) << name << " " << to_string(c.id) << " order " << c.order;
  }
}

TEST(CalculusIdentities, HeisenbergExactnessPattern)
{
  // logarithms are polynomial on a two step nilpotent group, so the product and adjoint stencils are exact;
  // the centered and mixed stencils are not
  const auto checks = calculus_suite(random_calculus_family(group_of(algebras::heisenberg3()), 5, 1.0), 16);
  for (const auto& c : checks) {
    const bool mixed = c.id == CalculusIdentity::LeftMixedPartials || c.id == CalculusIdentity::RightMixedPartials ||
                       c.id == CalculusIdentity::RightTimeDerivative;
    EXPECT_EQ(c.exact, !mixed) << to_string(c.id);
  }
}

TEST(CalculusIdentities, ClosedFormFamilies)
{
  // g(s, t) = exp(s A) exp(t B): d^l_s = Ad(exp(t B))^{-1} A and d^l_t = B
  const auto G = group_of(algebras::by_name("su2"));
  Vec a(3), b(3);
  a << 0.7, -0.2, 0.1;
  b << 0.1, 0.5, -0.4;
  CalculusFamily fam = constant_calculus_family(G);
  fam.g = [&](double s, double t) { return G->multiply(G->exp_coords(s * a), G->exp_coords(t * b)); };
  const CalculusSamples smp = sample_family(fam, 16);
  EXPECT_LT(calculus_residual(smp, CalculusIdentity::LeftMixedPartials), 1e-3);
  // with f = g the product rule compares the left derivative of g^2 with the sum of the two terms
  fam.f = fam.g;
  const CalculusSamples sq = sample_family(fam, 16);
  EXPECT_LT(calculus_residual(sq, CalculusIdentity::ProductRule), 1e-3);
  fam.f = [&](double s, double t) { return G->inverse(fam.g(s, t)); };
  // f g = e, so d^l(fg) = 0 = d^l g + Ad(g)^{-1} d^l(g^{-1}) = d^l g - d^l g
  EXPECT_LT(calculus_residual(sample_family(fam, 16), CalculusIdentity::ProductRule), 1e-12);
}

TEST(CalculusIdentities, RejectsCoarseGrid)
{
  const auto G = group_of(algebras::by_name("su2"));
  EXPECT_THROW(sample_family(constant_calculus_family(G), 1), std::invalid_argument);
}
