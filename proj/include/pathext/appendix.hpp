#pragma once

#include "pathext/path.hpp"

#include <cstdint>
#include <string>

namespace pathext {

/// Smooth maps f, g: I x I -> G and xi: I x I -> g, with coordinates (s, t). The calculus
/// identities for logarithmic derivatives are checked with s playing the role of the space
/// variable x and t the time.
struct CalculusFamily {
  GroupPtr group;
  std::function<GroupElement(double, double)> f, g;
  std::function<AlgebraElement(double, double)> xi;
};

/// g, f products of exponentials of random trigonometric polynomials; xi a random polynomial.
CalculusFamily random_calculus_family(GroupPtr group, std::uint64_t seed, double amplitude);
/// f = g = e, xi = 0.
CalculusFamily constant_calculus_family(GroupPtr group);

/// Node samples on the (n + 1) x (n + 1) grid of step h = 1 / n.
struct CalculusSamples {
  SurfaceGrid f, g;
  std::vector<AlgebraElement> xi;
  int n() const { return g.N; }
};
CalculusSamples sample_family(const CalculusFamily& family, int n);

enum class CalculusIdentity {
  ProductRule,              // d^l(fg) = d^l g + Ad(g)^{-1} d^l f
  MaurerCartan,             // d d^l g + 1/2 d^l g ^[,] d^l g = 0 on (d_s, d_t)
  AdjointDerivative,        // d Ad(g) xi = Ad(g) [d xi + ad(d^l g) xi]
  MaurerCartanFields,       // (d d^l g)(X, Y) = [d^l g(Y), d^l g(X)] with X = d_s, Y = d_t
  LeftMixedPartials,        // d_x d^l_t g = d/dt d^l_x g + [d^l_t g, d^l_x g]
  RightTimeDerivative,      // d/dt d^r_x g = Ad(g) d_x d^l_t g
  RightMixedPartials,       // d_x d^r_t g = d/dt d^r_x g - [d^r_t g, d^r_x g]
  InverseAdjointDerivative, // d_x Ad(g^{-1}) xi = Ad(g^{-1}) d_x xi - [d^l_x g, Ad(g^{-1}) xi]
  RightLeft,                // d^r g = Ad(g) d^l g = -d^l(g^{-1})
};
inline constexpr int kCalculusIdentities = 9;
std::string to_string(CalculusIdentity id);
CalculusIdentity calculus_identity_from_index(int k);

/// Max-norm residual of one identity at one resolution, with second order stencils:
/// one-sided logarithms log(a^{-1} b) / h at interval midpoints, centered logarithms
/// log(a^{-1} b) / 2h at nodes, geodesic midpoints for g. The product rule, the adjoint
/// identities and the right/left relation are checked at the midpoints of both edge families;
/// the Maurer-Cartan forms at cell centers; the mixed partial identities and the right time
/// derivative at midpoints of interior t-edges, with centered differences in s.
double calculus_residual(const CalculusSamples& samples, CalculusIdentity id);

struct CalculusCheck {
  CalculusIdentity id;
  double coarse = 0, fine = 0;
  /// log2(coarse / fine); NaN when the fine residual is at roundoff level.
  double order = 0;
  /// Residual at roundoff level on both resolutions (the identity holds exactly for the stencil).
  bool exact = false;
  bool pass = false;
};
/// Residuals below kCalculusRoundoff * n^2 count as roundoff (the stencils divide by h^2 at most).
inline constexpr double kCalculusRoundoff = 5e-14;
inline double calculus_floor(int n) { return kCalculusRoundoff * n * n; }
/// Residuals at n and 2n; a check passes when it is exact or its order is at least `min_order`.
std::vector<CalculusCheck> calculus_suite(const CalculusFamily& family, int n, double min_order = 1.9);

}  // namespace pathext
