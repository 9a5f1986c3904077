#pragma once

#include "pathext/path.hpp"

#include <functional>
#include <string>
#include <vector>

namespace pathext {

/// The G-module a together with a discrete subgroup Gamma of invariants.
///
/// Elements of a are coefficient vectors. For infinite dimensional quotients
/// (one-form classes) `reduce` projects a raw representative onto the
/// canonical one; it must be linear and idempotent.
class LatticeModule {
 public:
  enum class Action { Trivial, Adjoint };

  LatticeModule() = default;
  /// generators: columns spanning Gamma (may have zero columns).
  LatticeModule(int dim, Eigen::MatrixXd generators, Action action = Action::Trivial);

  static LatticeModule trivial(int dim) { return LatticeModule(dim, Eigen::MatrixXd(dim, 0)); }
  static LatticeModule integers() { return LatticeModule(1, Eigen::MatrixXd::Identity(1, 1)); }

  int dim() const { return dim_; }
  Action action() const { return action_; }
  bool is_trivial() const { return action_ == Action::Trivial; }
  const Eigen::MatrixXd& generators() const { return gens_; }

  /// rho_a(g) a. For the adjoint action a carries coordinates of the Lie algebra of g.
  Vec act(const Group& G, const GroupElement& g, const Vec& a) const;
  /// Derived action rho_a'(X) a.
  Vec act_algebra(const Group& G, const AlgebraElement& x, const Vec& a) const;

  void set_reduction(std::function<Vec(const Vec&)> reduce) { reduce_ = std::move(reduce); }
  /// sqrt(weight * sum v_i^2); the weight normalizes grid-sampled forms.
  void set_norm_weight(double w) { weight_ = w; }

  Vec reduce(const Vec& a) const { return reduce_ ? reduce_(a) : a; }
  double norm(const Vec& a) const;
  /// Nearest point of Gamma to reduce(a), by rounding generator coordinates.
  Vec nearest_lattice_point(const Vec& a) const;
  double lattice_distance(const Vec& a) const;
  /// Generator coordinates of the Gamma-part of reduce(a).
  Vec lattice_coordinates(const Vec& a) const;
  /// max |rho(g) gamma - gamma| over generators and the given samples.
  double invariance_residual(const Group& G, const std::vector<GroupElement>& samples) const;

 private:
  int dim_ = 0;
  Eigen::MatrixXd gens_;
  Eigen::MatrixXd gens_pinv_;
  Action action_ = Action::Trivial;
  std::function<Vec(const Vec&)> reduce_;
  double weight_ = 1.0;
};

/// A continuous a-valued 2-cocycle on the Lie algebra of a (product) matrix group.
struct CocycleSpec {
  using Omega = std::function<Vec(const AlgebraElement&, const AlgebraElement&)>;

  std::string name;
  GroupPtr group;
  LatticeModule module;
  /// Raw (unreduced) value of omega.
  Omega omega;

  /// omega(X, Y) = sum x_i y_j w[(i*dim + j)*adim + v] for a single-point group.
  static CocycleSpec from_tensor(std::string name, GroupPtr group, std::vector<double> w,
                                 LatticeModule module);

  Vec act(const GroupElement& g, const Vec& a) const { return module.act(*group, g, a); }

  /// max |omega(x, y) + omega(y, x)| on the given elements.
  double antisymmetry_residual(const std::vector<AlgebraElement>& xs) const;
  /// max over triples of |sum_cycl rho'(X) omega(Y,Z) - omega([X,Y],Z)|.
  double cocycle_residual(const std::vector<AlgebraElement>& xs) const;
};

/// Shipped finite dimensional specs.
namespace specs {
/// Heisenberg group, omega(x, y) = 1, trivial module R, Gamma = {0}.
CocycleSpec heisenberg_central();
/// Two-torus with the area cocycle omega(e1, e2) = 1.
CocycleSpec torus_area();
/// SU(2), module su(2) with the adjoint action, omega(X, Y) = [X, Y].
CocycleSpec su2_adjoint_bracket();
/// SU(2), trivial module R, omega(X, Y) = kappa(e3, [X, Y]).
CocycleSpec su2_trivial_exact();
}  // namespace specs

/// Left-trivialized tangents at the geodesic midpoint of one diagonal of a grid cell;
/// anti selects the diagonal from (1,0) to (0,1). Corners on the diagonal sit at exactly -c/2, c/2.
struct CellTangents {
  GroupElement center;
  AlgebraElement xs, xt;
};
CellTangents cell_tangents(const Group& G, const GroupElement& g00, const GroupElement& g10,
                           const GroupElement& g01, const GroupElement& g11, double ds, double dt, bool anti);

/// int omega^eq over a parametrized surface, orientation (d/ds, d/dt).
Vec omega_eq_integral(const SurfaceGrid& surface, const CocycleSpec& spec);
inline Vec omega_eq_integral(const HomotopyGrid& h, const CocycleSpec& spec)
{
  return omega_eq_integral(h.grid(), spec);
}

/// Van Est cocycle by the simplex quadrature t = s u.
Vec vanest_C(const GroupPath& f, const GroupPath& g, const CocycleSpec& spec);
/// C'(f, g) evaluated directly; equal to -C(g^{-1}, f^{-1}).
Vec vanest_C_prime_direct(const GroupPath& f, const GroupPath& g, const CocycleSpec& spec);

struct VanEstVariants {
  Vec C, C_prime, C_prime_direct, C_sym;
};
VanEstVariants vanest_variants(const GroupPath& f, const GroupPath& g, const CocycleSpec& spec);

/// Alternating p-linear map to the module, p in {1, 2, 3}.
using MultiCochain = std::function<Vec(const std::vector<AlgebraElement>&)>;
/// Nested simplex quadrature of the van Est p-cocycle on PG.
Vec vanest_p_cocycle(const std::vector<GroupPath>& paths, const MultiCochain& w, const CocycleSpec& spec);

Vec period_integral(const SphereCycle& tau, const CocycleSpec& spec);

struct LambdaValues {
  Vec Lambda, Lambda_prime, Lambda_sym;
};
/// Lambda = -int_hbar omega^eq, Lambda' = -Lambda(hbar^{-1}); hbar must certify a null-homotopy.
LambdaValues resolving_Lambda(const HomotopyGrid& hbar, const CocycleSpec& spec);

struct LatticeResidual {
  Vec raw;
  double raw_norm = 0;
  double lattice_distance = 0;
};
LatticeResidual make_residual(const Vec& raw, const LatticeModule& m);

/// rho(f(1)) C(g,h) - C(fg,h) + C(f,gh) - C(f,g).
LatticeResidual cocycle_identity_residual(const GroupPath& f, const GroupPath& g, const GroupPath& h,
                                          const CocycleSpec& spec);
/// C(f,g) + Lambda(fbar) + Lambda(gbar) - Lambda(fbar gbar), measured in a.
LatticeResidual coboundary_residual(const HomotopyGrid& fbar, const HomotopyGrid& gbar,
                                    const CocycleSpec& spec);

/// Least squares slope of -log(err) against log(N).
double convergence_order(const std::vector<int>& resolutions, const std::vector<double>& errors);

}  // namespace pathext
