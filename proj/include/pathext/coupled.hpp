#pragma once

#include "pathext/current.hpp"

#include <array>

namespace pathext {

/// Alternating p-linear map h^p -> V (p <= 3), stored on strictly increasing multi-indices.
class Cochain {
 public:
  using Index = std::array<int, 3>;

  Cochain() = default;
  Cochain(int degree, int dim, int vdim);

  int degree() const { return degree_; }
  int dim() const { return dim_; }
  int vdim() const { return vdim_; }
  int size() const { return static_cast<int>(indices_.size()); }
  const std::vector<Index>& indices() const { return indices_; }
  /// Position of a strictly increasing multi-index.
  int position(const Index& idx) const;

  /// Row k holds the value on e_{indices()[k]}.
  const Eigen::MatrixXd& coefficients() const { return coeffs_; }
  Eigen::MatrixXd& coefficients() { return coeffs_; }

  /// Value on basis vectors in any order: signed, zero for repeats.
  Vec on_basis(const std::vector<int>& idx) const;
  /// Value on coordinate vectors.
  Vec eval(const std::vector<Vec>& args) const;

 private:
  int degree_ = 0, dim_ = 0, vdim_ = 0;
  std::vector<Index> indices_;
  Eigen::MatrixXd coeffs_;
};

/// Matrix of d: C^p(h, R) -> C^{p+1}(h, R) for the trivial module, in the cochain bases,
///   dw(X_0..X_p) = sum_{i<j} (-1)^{i+j} w([X_i, X_j], X_0 .. ^i .. ^j .. X_p).
Eigen::MatrixXd ce_differential_matrix(const LieAlgebraSpec& alg, int p);
Cochain ce_differential(const LieAlgebraSpec& alg, const Cochain& w);

/// Gamma(kappa)(X, Y, Z) = kappa([X, Y], Z); throws std::invalid_argument for a non-invariant kappa.
Cochain cartan_map(const LieAlgebraSpec& alg);

struct BetaSolution {
  bool exact = false;
  /// Minimum norm least squares solution of d beta = Gamma(kappa).
  Cochain beta;
  /// |d beta - Gamma(kappa)|, absolute and relative to |Gamma(kappa)|.
  double residual = 0;
  double relative_residual = 0;
  int rank = 0;
};
inline constexpr double kBetaTolerance = 1e-10;
BetaSolution solve_beta(const LieAlgebraSpec& alg, double tol = kBetaTolerance);

/// Current space with the coupled cocycle
///   omega(X, Y) = kappa(X, dY) - kappa(Y, dX) - d(beta(X, Y))
/// with values in the trivial module of all V-valued one-forms (Gamma = 0, RMS norm).
struct CoupledSpace {
  CurrentSpace current;
  Cochain beta;

  const CocycleSpec& spec() const { return current.spec; }
  const GroupPtr& group() const { return current.group; }
};
CoupledSpace make_coupled_space(const LieAlgebraSpec& algebra, Manifold manifold, int M, Cochain beta);
/// Solves for beta first; throws std::invalid_argument if Gamma(kappa) is not exact.
CoupledSpace make_coupled_space(const LieAlgebraSpec& algebra, Manifold manifold, int M);

Vec coupled_omega_form(const CoupledSpace& c, const AlgebraElement& x, const AlgebraElement& y);

/// The V-valued function beta(X, Y) at each point, index v * P + p.
Vec beta_field(const CoupledSpace& c, const AlgebraElement& x, const AlgebraElement& y);

struct CoupledCsymParts {
  /// int_I d^l f wedge_kappa d^r g
  Vec wedge;
  /// C_{beta,sym}(f, g) and (1/2) int_0^1 int_0^s (m(s,t) - m(t,s)) dt ds, functions on M.
  Vec c_beta_sym, m_antisym;
  /// wedge - d(c_beta_sym + m_antisym)
  Vec total;
};
CoupledCsymParts coupled_Csym(const CoupledSpace& c, const GroupPath& f, const GroupPath& g);

/// C_beta(f, g) = int_0^1 int_0^s beta(Ad(g(t)^{-1}) d^l_s f(s), d^l_t g(t)) dt ds.
Vec coupled_C_beta(const CoupledSpace& c, const GroupPath& f, const GroupPath& g);
/// int_0^1 int_0^s m(s, t) dt ds with m(s, t) = kappa(d^r_t g(t), d^l_s f(s)); `swap` integrates m(t, s).
Vec coupled_m_integral(const CoupledSpace& c, const GroupPath& f, const GroupPath& g, bool swap = false);

/// C(f, g) - [2 int kappa(d^r_x g(s), d^l_s f(s)) ds - d(C_beta(f, g) + int int m)], with C from the engine.
LatticeResidual coupled_decomposition_residual(const CoupledSpace& c, const GroupPath& f, const GroupPath& g);

/// (1/2) int beta(d^l_x g, d^l_t g) dt - (1/2) int beta(d^r_x g, d^r_t g) dt, from the loop alone.
Vec coupled_Lambda_sym(const CoupledSpace& c, const GroupPath& loop);
/// int kappa(d^l_x g, d^l_t g) dt + int beta(d^l_x g, d^l_t g) dt.
Vec coupled_Lambda_endpoint(const CoupledSpace& c, const GroupPath& loop);

/// A spherical family for SU(2) x| su(2) currents on S^1: the degree one generator U in both
/// diagonal blocks times the unipotent factor with upper block bump * phi(s,t,x) e_3, where phi
/// vanishes on the boundary of the cube. All four edges are the identity.
HomotopyGrid coupled_wrapping_sphere(const CoupledSpace& c, int S, int N, double bump);

}  // namespace pathext
