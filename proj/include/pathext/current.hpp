#pragma once

#include "pathext/cocycle.hpp"
#include "pathext/spectral.hpp"

namespace pathext {

/// Current group C^inf(M, H) on a periodic grid, realized as the product group H^P.
///
/// A current (CurrentElement) is an AlgebraElement of `group`; a current path is a
/// GroupPath of `group`. Raw one-forms with values in V are stored with index
/// (v * dims + axis) * P + p.
struct CurrentSpace {
  SpatialGridPtr grid;
  GroupPtr group;
  /// omega(X, Y) = [kappa(X, dY) - kappa(Y, dX)]; on S^1 the class is the vector of
  /// integrals, on T^2 the form minus its exact part with Gamma spanned by dx, dy.
  CocycleSpec spec;
  /// False for spaces whose module is the full form space (no class quotient).
  bool quotient = true;

  int vdim() const { return group->algebra().coefficient_dim(); }
  int points() const { return grid->points(); }
  int form_size() const { return vdim() * grid->dims() * points(); }
  /// Class of a raw V-valued one-form, as an element of spec.module; the form itself without quotient.
  Vec form_class(const Vec& form) const;
};

CurrentSpace make_current_space(const LieAlgebraSpec& algebra, Manifold manifold, int M);

/// Coordinates of a current, one row per basis element.
Eigen::MatrixXd current_coords(const Group& G, const AlgebraElement& x);

/// The raw one-form kappa(X, dY) - kappa(Y, dX).
Vec current_omega_form(const CurrentSpace& cs, const AlgebraElement& x, const AlgebraElement& y);

/// g^{-1} d_axis g and d_axis g g^{-1} by spectral differentiation of the matrix entries.
AlgebraElement left_spatial_derivative(const CurrentSpace& cs, const GroupElement& g, int axis);
AlgebraElement right_spatial_derivative(const CurrentSpace& cs, const GroupElement& g, int axis);

/// Fiber integral over I of the wedge of the left and right logarithmic derivatives,
/// [ int_I kappa(d_t^l f, d_x^r g) - kappa(d_x^l f, d_t^r g) dt ], by the midpoint rule.
Vec current_csym_closed_form(const CurrentSpace& cs, const GroupPath& f, const GroupPath& g);

/// [ int_{I x I} gbar^* eta ] with eta(X, Y, Z) = kappa(X, [Y, Z]); the symmetric
/// resolving map is Lambda_sym = -cartan_eta_integral.
Vec cartan_eta_integral(const CurrentSpace& cs, const HomotopyGrid& gbar);

struct PolyakovWiegmann {
  Vec eta_product, eta_f, eta_g;
  /// The boundary term: integral of fbar^* theta^l wedge gbar^* theta^r over the boundary of I x I.
  Vec boundary;
  Vec residual;
  double residual_norm = 0;
};
/// Integrated Polyakov-Wiegmann identity
///   (fg)^* eta = f^* eta + g^* eta - d(f^* theta^l wedge_kappa g^* theta^r)
/// over I x I, modulo exact one-forms on M. By Stokes the d-term contributes the
/// counterclockwise boundary integral, so residual = eta_product - eta_f - eta_g + boundary.
PolyakovWiegmann polyakov_wiegmann(const CurrentSpace& cs, const HomotopyGrid& fbar, const HomotopyGrid& gbar);

/// Degree one map I x I x S^1 -> SU(2) with the whole boundary of the cube sent to e.
/// With c = (1/2, 1/2, 1/2) and r = 2|u - c| it is
///   g(u) = cos(theta) - i sin(theta) n.sigma,  n = (u - c)/|u - c|,  theta = pi (1 - w(r)),
/// where w is the odd polynomial with w' = (315/128)(1 - r^2)^4, w(1) = 1, and g = e for r >= 1.
/// Requires an su2 space over S^1.
HomotopyGrid pi3_generator(const CurrentSpace& cs, int S, int N);
/// The generator's value at (s, t, x) as a 2x2 matrix.
Mat pi3_generator_value(double s, double t, double x);

}  // namespace pathext
