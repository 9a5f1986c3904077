#include "pathext/lie.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace pathext;

namespace {

// Dense Taylor series, independent of the closed forms in the library.
Mat series_exp(const Mat& x, int terms = 30)
{
  Mat sum = Mat::Identity(x.rows(), x.cols());
  Mat term = sum;
  for (int k = 1; k < terms; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

Vec random_vec(std::mt19937_64& rng, int n, double scale)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = scale * u(rng);
  return v;
}

std::vector<LieAlgebraSpec> shipped()
{
  return {algebras::su2(), algebras::so3(), algebras::heisenberg3(), algebras::abelian(2),
          algebras::su2_semidirect()};
}

}  // namespace

TEST(LieAlgebra, ShippedAlgebrasAreValid)
{
  for (const auto& a : shipped()) {
    EXPECT_LT(a.jacobi_residual(), 1e-12) << a.name();
    EXPECT_LT(a.kappa_invariance_residual(), 1e-12) << a.name();
    for (int i = 0; i < a.dim(); ++i)
      for (int j = 0; j < a.dim(); ++j) {
        const Mat br = a.bracket(a.basis()[i], a.basis()[j]);
        Mat rebuilt = Mat::Zero(br.rows(), br.cols());
        for (int k = 0; k < a.dim(); ++k) rebuilt += a.structure(i, j, k) * a.basis()[k];
        EXPECT_LT((br - rebuilt).norm(), 1e-12) << a.name();
        for (int k = 0; k < a.dim(); ++k)
          EXPECT_NEAR(a.structure(i, j, k), -a.structure(j, i, k), 1e-12);
      }
  }
}

TEST(LieAlgebra, Su2StructureAndKappa)
{
  const auto a = algebras::su2(1.0);
  EXPECT_NEAR(a.structure(0, 1, 2), 1.0, 1e-14);
  EXPECT_NEAR(a.structure(1, 2, 0), 1.0, 1e-14);
  // -tr(e_k e_k) = 1/2 for e_k = -i sigma_k / 2
  EXPECT_NEAR(a.kappa(0, 0, 0), 0.5, 1e-14);
  EXPECT_NEAR(a.kappa(0, 1, 0), 0.0, 1e-14);
  EXPECT_NEAR(algebras::su2_unit_kappa_scale(), 1.0 / (8 * M_PI * M_PI), 1e-16);
}

TEST(LieAlgebra, RejectsNonInvariantKappa)
{
  auto a = algebras::so3();
  std::vector<double> k(27, 0.0);
  k[0] = 1.0;  // kappa = diag(1, 0, 0) is not invariant
  EXPECT_THROW(LieAlgebraSpec("bad", GroupKind::SO3, a.basis(), 1, k), std::invalid_argument);
}

TEST(LieAlgebra, CoordinateRoundTrip)
{
  std::mt19937_64 rng(3);
  for (const auto& a : shipped()) {
    const Vec c = random_vec(rng, a.dim(), 1.0);
    EXPECT_LT((a.coords(a.from_coords(c)) - c).norm(), 1e-13) << a.name();
  }
}

TEST(GroupOps, ExpOfZeroIsIdentity)
{
  for (const auto& a : shipped()) {
    Group G(a);
    EXPECT_EQ(G.distance_to_identity(G.exp(G.zero())), 0.0) << a.name();
  }
}

TEST(GroupOps, ExpAgreesWithSeries)
{
  std::mt19937_64 rng(7);
  for (const auto& a : shipped()) {
    Group G(a);
    for (int trial = 0; trial < 20; ++trial) {
      const Vec xi = random_vec(rng, a.dim(), 1.5);
      const Mat g = G.exp_coords(xi).at[0];
      EXPECT_LT((g - series_exp(a.from_coords(xi))).norm(), 1e-12) << a.name();
      EXPECT_LT(G.constraint_residual(G.exp_coords(xi)), 1e-10) << a.name();
    }
  }
}

TEST(GroupOps, LogExpRoundTrip)
{
  std::mt19937_64 rng(11);
  for (const auto& a : shipped()) {
    Group G(a);
    for (int trial = 0; trial < 20; ++trial) {
      const Vec xi = random_vec(rng, a.dim(), 1.0 / std::sqrt(a.dim()));
      const GroupElement g{{series_exp(a.from_coords(xi))}};
      EXPECT_LT((G.log_coords(g) - xi).norm(), 1e-10) << a.name();
    }
  }
}

TEST(GroupOps, Su2RotationByPi)
{
  Group G(algebras::su2());
  Vec xi = Vec::Zero(3);
  xi[2] = M_PI;
  const GroupElement g = G.exp_coords(xi);
  // exp(pi e_3) = -i sigma_3, which rotates by pi about axis 3 in the adjoint representation.
  EXPECT_NEAR(std::abs(g.at[0](0, 0) - Complex(0, -1)), 0.0, 1e-14);
  Vec x = Vec::Zero(3);
  x[0] = 1.0;
  const Vec y = G.coords(G.adjoint(g, G.from_coords(x)));
  EXPECT_NEAR(y[0], -1.0, 1e-14);
  EXPECT_LT(G.distance_to_identity(G.multiply(g, G.exp_coords(-xi))), 1e-12);
}

TEST(GroupOps, LogNearMinusIdentityIsDomainError)
{
  Group G(algebras::su2());
  Vec xi = Vec::Zero(3);
  xi[0] = 2 * M_PI - 0.01;  // close to -e
  const GroupElement g = G.exp_coords(xi);
  try {
    G.log(g);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_GT(e.distance(), 1.9);
  }
}

TEST(GroupOps, AdjointMatchesAdSeries)
{
  std::mt19937_64 rng(5);
  for (const auto& a : shipped()) {
    Group G(a);
    for (int trial = 0; trial < 10; ++trial) {
      const Vec eta = random_vec(rng, a.dim(), 1.0);
      const Vec xi = random_vec(rng, a.dim(), 1.0);
      const Vec y = G.coords(G.adjoint(G.exp_coords(eta), G.from_coords(xi)));
      Vec oracle = xi, term = xi;
      const Eigen::MatrixXd ad = a.ad_matrix(eta);
      for (int k = 1; k <= 20; ++k) {
        term = ad * term / static_cast<double>(k);
        oracle += term;
      }
      EXPECT_LT((y - oracle).norm(), 1e-10) << a.name();
    }
  }
}

TEST(GroupOps, AdjointIsHomomorphism)
{
  std::mt19937_64 rng(9);
  for (const auto& a : shipped()) {
    Group G(a);
    const GroupElement g = G.exp_coords(random_vec(rng, a.dim(), 1.2));
    const AlgebraElement x = G.from_coords(random_vec(rng, a.dim(), 1.0));
    const AlgebraElement y = G.from_coords(random_vec(rng, a.dim(), 1.0));
    const AlgebraElement lhs = G.adjoint(g, G.bracket(x, y));
    const AlgebraElement rhs = G.bracket(G.adjoint(g, x), G.adjoint(g, y));
    EXPECT_LT((lhs - rhs).max_abs(), 1e-10) << a.name();
    EXPECT_LT((G.adjoint_inverse(g, G.adjoint(g, x)) - x).max_abs(), 1e-12) << a.name();
  }
}

TEST(GroupOps, GenericKindUsesLibraryMatrixFunctions)
{
  auto base = algebras::so3();
  LieAlgebraSpec generic("so3-generic", GroupKind::Generic, base.basis(), 1,
                         std::vector<double>(base.kappa_tensor()));
  Group G(generic), R(base);
  std::mt19937_64 rng(13);
  const Vec xi = random_vec(rng, 3, 0.8);
  EXPECT_LT(G.distance(G.exp_coords(xi), R.exp_coords(xi)), 1e-12);
  EXPECT_LT((G.log_coords(G.exp_coords(xi)) - xi).norm(), 1e-11);
}

TEST(GroupOps, ProductGroupActsPointwise)
{
  Group G(algebras::su2(), 5);
  AlgebraElement x = G.zero();
  for (int p = 0; p < 5; ++p) x.at[p] = algebras::su2().from_coords(Vec::Constant(3, 0.1 * p));
  const GroupElement g = G.exp(x);
  EXPECT_LT((G.log(g) - x).max_abs(), 1e-13);
  EXPECT_LT(G.distance_to_identity(G.multiply(g, G.inverse(g))), 1e-14);
}
