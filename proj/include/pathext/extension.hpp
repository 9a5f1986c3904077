#pragma once

#include "pathext/cocycle.hpp"

namespace pathext {

/// Element (a mod Gamma, g) of the semidirect product A x_c PG; `a` is a raw representative.
struct ExtensionElement {
  Vec a;
  GroupPath path;
};

ExtensionElement ext_identity(const CocycleSpec& spec, int n);
/// (a1, f)(a2, g) = (a1 + rho(f(1)) a2 + C(f, g), fg)
ExtensionElement ext_multiply(const ExtensionElement& x, const ExtensionElement& y, const CocycleSpec& spec);
/// (a, g)^{-1} = (-rho(g(1))^{-1} (a + C(g, g^{-1})), g^{-1})
ExtensionElement ext_inverse(const ExtensionElement& x, const CocycleSpec& spec);
/// Gamma-distance between the module parts plus the nodewise path distance.
double ext_distance(const ExtensionElement& x, const ExtensionElement& y, const CocycleSpec& spec);

/// A point (lambda(h), h) of the graph of lambda; lambda(h) is represented by Lambda of the certificate.
struct GraphPoint {
  GroupPath loop;
  HomotopyGrid certificate;
  Vec lambda_value;

  ExtensionElement element() const { return {lambda_value, loop}; }
};
GraphPoint make_graph_point(const HomotopyGrid& certificate, const CocycleSpec& spec);

/// phi(h1) phi(h2) against phi(h1 h2), the latter certified by the product grid.
LatticeResidual graph_closure_residual(const GraphPoint& h1, const GraphPoint& h2, const CocycleSpec& spec);

/// C(g,h) - C(ghg^{-1}, g) + rho(g(1)) Lambda(hbar) - Lambda(g hbar g^{-1}).
LatticeResidual normality_residual(const GroupPath& g, const GraphPoint& h, const CocycleSpec& spec);

struct CosetCheck {
  bool equivalent = false;
  std::string reason;
  double endpoint_distance = 0;
  double certificate_distance = 0;
  /// The b with x (b, h) = y lies on the graph: Gamma-distance of b - Lambda(hbar).
  double group_route = 0;
  /// a2 - a1 - int_sigma omega^eq with sigma = sigma_{g1,h} - g1(1) hbar.
  double direct_route = 0;
};
/// certificate: null-homotopy of the loop g1^{-1} g2. The direct route carries the
/// O(1/N^2) gap between the two quadratures of C, hence the default tolerance.
inline constexpr double kCosetTolerance = 1e-4;
CosetCheck coset_equivalent(const ExtensionElement& x, const ExtensionElement& y, const HomotopyGrid& certificate,
                            const CocycleSpec& spec, double tol = kCosetTolerance);

}  // namespace pathext
