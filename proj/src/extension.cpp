#include "pathext/extension.hpp"

namespace pathext {

ExtensionElement ext_identity(const CocycleSpec& spec, int n)
{
  return {Vec::Zero(spec.module.dim()), GroupPath::constant(spec.group, n)};
}

ExtensionElement ext_multiply(const ExtensionElement& x, const ExtensionElement& y, const CocycleSpec& spec)
{
  Vec a = x.a + spec.act(x.path.endpoint(), y.a) + vanest_C(x.path, y.path, spec);
  return {spec.module.reduce(a), path_product(x.path, y.path)};
}

ExtensionElement ext_inverse(const ExtensionElement& x, const CocycleSpec& spec)
{
  const GroupPath inv = path_inverse(x.path);
  const Vec b = x.a + vanest_C(x.path, inv, spec);
  return {spec.module.reduce(-spec.act(inv.endpoint(), b)), inv};
}

double ext_distance(const ExtensionElement& x, const ExtensionElement& y, const CocycleSpec& spec)
{
  double d = spec.module.lattice_distance(x.a - y.a);
  const Group& G = *spec.group;
  for (int i = 0; i <= x.path.n(); ++i) d = std::max(d, G.distance(x.path.sample(i), y.path.sample(i)));
  return d;
}

GraphPoint make_graph_point(const HomotopyGrid& certificate, const CocycleSpec& spec)
{
  return {certificate.endpoint(), certificate, resolving_Lambda(certificate, spec).Lambda};
}

LatticeResidual graph_closure_residual(const GraphPoint& h1, const GraphPoint& h2, const CocycleSpec& spec)
{
  const ExtensionElement prod = ext_multiply(h1.element(), h2.element(), spec);
  const GraphPoint h12 = make_graph_point(grid_product(h1.certificate, h2.certificate), spec);
  return make_residual(prod.a - h12.lambda_value, spec.module);
}

LatticeResidual normality_residual(const GroupPath& g, const GraphPoint& h, const CocycleSpec& spec)
{
  if (g.n() != h.loop.n()) throw std::invalid_argument("normality_residual: resolution mismatch");
  const GroupPath ghg = path_product(path_product(g, h.loop), path_inverse(g));
  const HomotopyGrid conj = h.certificate.conjugated(g);
  const Vec raw = vanest_C(g, h.loop, spec) - vanest_C(ghg, g, spec) + spec.act(g.endpoint(), h.lambda_value) -
                  resolving_Lambda(conj, spec).Lambda;
  return make_residual(raw, spec.module);
}

CosetCheck coset_equivalent(const ExtensionElement& x, const ExtensionElement& y, const HomotopyGrid& certificate,
                            const CocycleSpec& spec, double tol)
{
  const Group& G = *spec.group;
  CosetCheck out;
  out.endpoint_distance = G.distance(x.path.endpoint(), y.path.endpoint());
  if (out.endpoint_distance > kLoopTolerance) {
    out.reason = "endpoints differ";
    return out;
  }
  certificate.require_null_homotopy();
  const GroupPath h = path_product(path_inverse(x.path), y.path);
  if (certificate.N() != h.n()) throw InvalidCertificate("certificate resolution does not match the paths");
  for (int j = 0; j <= h.n(); ++j)
    out.certificate_distance = std::max(out.certificate_distance, G.distance(certificate.at(certificate.S(), j), h.sample(j)));
  if (out.certificate_distance > kLoopTolerance) throw InvalidCertificate("certificate does not end at g1^{-1} g2");

  const Vec Lambda = resolving_Lambda(certificate, spec).Lambda;
  // b with x (b, h) = y
  const Vec b = spec.act(path_inverse(x.path).endpoint(), y.a - x.a - vanest_C(x.path, h, spec));
  out.group_route = spec.module.lattice_distance(b - Lambda);

  SurfaceGrid shifted = certificate.grid();
  for (auto& p : shifted.g) p = G.multiply(x.path.endpoint(), p);
  const Vec chain = omega_eq_integral(vanest_simplex(x.path, h), spec) - omega_eq_integral(shifted, spec);
  out.direct_route = spec.module.lattice_distance(y.a - x.a - chain);

  out.equivalent = out.group_route <= tol && out.direct_route <= tol;
  if (!out.equivalent) out.reason = "module parts differ by a non-lattice amount";
  return out;
}

}  // namespace pathext
