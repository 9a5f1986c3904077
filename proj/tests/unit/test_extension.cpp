#include "pathext/extension.hpp"
#include "pathext/families.hpp"

#include <gtest/gtest.h>

using namespace pathext;

namespace {

std::vector<CocycleSpec> all_specs()
{
  return {specs::heisenberg_central(), specs::torus_area(), specs::su2_adjoint_bracket(),
          specs::su2_trivial_exact()};
}

ExtensionElement random_element(const CocycleSpec& spec, std::uint64_t seed, double amp, int n)
{
  Vec a = Vec::LinSpaced(spec.module.dim(), 0.1, 0.7) * static_cast<double>(seed % 7);
  return {a, random_path(spec.group, seed, amp, n)};
}

}  // namespace

TEST(Extension, IdentityAndInverse)
{
  for (const auto& spec : all_specs()) {
    const ExtensionElement x = random_element(spec, 3, 1.0, 32);
    const ExtensionElement e = ext_identity(spec, 32);
    EXPECT_LT(ext_distance(ext_multiply(e, x, spec), x, spec), 1e-14) << spec.name;
    EXPECT_LT(ext_distance(ext_multiply(x, ext_inverse(x, spec), spec), e, spec), 1e-8) << spec.name;
  }
}

TEST(Extension, AssociativityDefectIsSecondOrder)
{
  for (const auto& spec : all_specs()) {
    std::vector<int> Ns{16, 32, 64};
    std::vector<double> d;
    for (int N : Ns) {
      const auto x = random_element(spec, 4, 0.5, N), y = random_element(spec, 5, 0.5, N),
                 z = random_element(spec, 6, 0.5, N);
      d.push_back(ext_distance(ext_multiply(ext_multiply(x, y, spec), z, spec),
                               ext_multiply(x, ext_multiply(y, z, spec), spec), spec));
    }
    EXPECT_LT(d.back(), 1e-5) << spec.name;
    if (d.back() > 1e-12) EXPECT_GT(convergence_order(Ns, d), 1.6) << spec.name;
  }
}

TEST(Extension, ProjectionIsHomomorphism)
{
  const auto spec = specs::su2_adjoint_bracket();
  const auto x = random_element(spec, 1, 1.0, 16), y = random_element(spec, 2, 1.0, 16);
  const Group& G = *spec.group;
  EXPECT_LT(G.distance(ext_multiply(x, y, spec).path.endpoint(), G.multiply(x.path.endpoint(), y.path.endpoint())),
            1e-14);
  // the kernel of the projection consists of elements with loop paths
  const GraphPoint h = make_graph_point(random_loop_certificate(spec.group, 8, 1.0, 16, 16), spec);
  EXPECT_TRUE(h.element().path.is_loop());
}

TEST(Graph, ClosedUnderProduct)
{
  for (const auto& spec : all_specs()) {
    std::vector<int> Ns{16, 32, 64};
    std::vector<double> d;
    for (int N : Ns) {
      const GraphPoint h1 = make_graph_point(random_loop_certificate(spec.group, 11, 0.5, N, N), spec);
      const GraphPoint h2 = make_graph_point(random_loop_certificate(spec.group, 12, 0.5, N, N), spec);
      d.push_back(graph_closure_residual(h1, h2, spec).lattice_distance);
    }
    EXPECT_LT(d.back(), 1e-5) << spec.name;
    if (d.back() > 1e-12) EXPECT_GT(convergence_order(Ns, d), 1.6) << spec.name;
  }
}

TEST(Normality, TrivialArguments)
{
  const auto spec = specs::su2_adjoint_bracket();
  const GraphPoint h = make_graph_point(random_loop_certificate(spec.group, 13, 1.0, 16, 16), spec);
  EXPECT_LT(normality_residual(GroupPath::constant(spec.group, 16), h, spec).raw_norm, 1e-14);
  const GraphPoint e = make_graph_point(HomotopyGrid::trivial(spec.group, 16, 16), spec);
  EXPECT_LT(normality_residual(random_path(spec.group, 14, 1.0, 16), e, spec).raw_norm, 1e-14);
}

TEST(Normality, ResidualConvergesToLattice)
{
  for (const auto& spec : all_specs()) {
    std::vector<int> Ns{16, 32, 64};
    std::vector<double> d;
    for (int N : Ns) {
      const GraphPoint h = make_graph_point(random_loop_certificate(spec.group, 15, 0.5, N, N), spec);
      d.push_back(normality_residual(random_path(spec.group, 16, 0.5, N), h, spec).lattice_distance);
    }
    EXPECT_LT(d.back(), 1e-5) << spec.name;
    if (d.back() > 1e-12) EXPECT_GT(convergence_order(Ns, d), 1.6) << spec.name;
  }
}

TEST(Coset, ReflexiveWithTrivialCertificate)
{
  const auto spec = specs::su2_adjoint_bracket();
  const auto x = random_element(spec, 17, 1.0, 32);
  const CosetCheck c = coset_equivalent(x, x, HomotopyGrid::trivial(spec.group, 32, 32), spec);
  EXPECT_TRUE(c.equivalent);
  EXPECT_LT(c.group_route, 1e-12);
  EXPECT_LT(c.direct_route, 1e-12);
}

TEST(Coset, GraphTranslateIsEquivalentAndRoutesAgree)
{
  for (const auto& spec : all_specs()) {
    std::vector<int> Ns{16, 32, 64};
    std::vector<double> r1, r2;
    CosetCheck last;
    for (int N : Ns) {
      const auto x = random_element(spec, 18, 0.5, N);
      const HomotopyGrid cert = random_loop_certificate(spec.group, 19, 0.5, N, N);
      const ExtensionElement y = ext_multiply(x, make_graph_point(cert, spec).element(), spec);
      last = coset_equivalent(x, y, cert, spec);
      r1.push_back(last.group_route);
      r2.push_back(last.direct_route);
    }
    EXPECT_TRUE(last.equivalent) << spec.name;
    EXPECT_LT(r1.back(), 1e-12) << spec.name;
    EXPECT_LT(r2.back(), 1e-5) << spec.name;
    if (r2.back() > 1e-12) EXPECT_GT(convergence_order(Ns, r2), 1.6) << spec.name;
  }
}

TEST(Coset, HalfLatticeShiftIsDetected)
{
  const auto spec = specs::torus_area();
  const auto x = random_element(spec, 20, 0.5, 32);
  const HomotopyGrid cert = random_loop_certificate(spec.group, 21, 0.5, 32, 32);
  ExtensionElement y = ext_multiply(x, make_graph_point(cert, spec).element(), spec);
  EXPECT_TRUE(coset_equivalent(x, y, cert, spec).equivalent);
  y.a[0] += 1.0;  // a full lattice step is invisible
  EXPECT_TRUE(coset_equivalent(x, y, cert, spec).equivalent);
  y.a[0] += 0.5;
  const CosetCheck c = coset_equivalent(x, y, cert, spec);
  EXPECT_FALSE(c.equivalent);
  EXPECT_NEAR(c.group_route, 0.5, 1e-6);
}

TEST(Coset, EndpointMismatchIsReported)
{
  const auto spec = specs::su2_adjoint_bracket();
  const auto x = random_element(spec, 22, 1.0, 16), y = random_element(spec, 23, 1.0, 16);
  const CosetCheck c = coset_equivalent(x, y, HomotopyGrid::trivial(spec.group, 16, 16), spec);
  EXPECT_FALSE(c.equivalent);
  EXPECT_EQ(c.reason, "endpoints differ");
}
