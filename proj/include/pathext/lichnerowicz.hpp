#pragma once

#include "pathext/spectral.hpp"

#include <array>
#include <functional>
#include <stdexcept>

namespace pathext {

/// Thrown when a flow step would move a tracer by more than half a grid cell.
class StepSizeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A pair of grid functions: a vector field, or tracer positions (unwrapped coordinates).
struct PlaneField {
  Vec x, y;
};

/// Finite sum of c cos(2 pi k.x) + s sin(2 pi k.x) on T^2, evaluated exactly off the grid.
struct TrigTerm {
  int kx = 0, ky = 0;
  double c = 0, s = 0;
};

struct TrigSeries {
  std::vector<TrigTerm> terms;

  TrigSeries derivative(int axis) const;
  Vec eval(const Vec& x, const Vec& y) const;
  Vec sample(const SpatialGrid& grid) const;
};
/// Several series at the same points, sharing the exponential tables.
std::vector<Vec> eval_series(const std::vector<const TrigSeries*>& series, const Vec& x, const Vec& y);

/// Divergence free field X = (d_y psi, -d_x psi) + h on T^2 with mu = dx ^ dy, so i_X mu = d psi + i_h mu.
struct DivFreeField {
  Vec stream;
  Eigen::Vector2d harmonic = Eigen::Vector2d::Zero();

  PlaneField components(const SpatialGrid& grid) const;
  /// Projection of an arbitrary field onto the divergence free ones (the gradient part is dropped).
  static DivFreeField from_components(const SpatialGrid& grid, const PlaneField& X);
};

/// max |div X| by spectral differentiation.
double divergence_residual(const SpatialGrid& grid, const PlaneField& X);
/// Vector field bracket X.grad Y - Y.grad X, pointwise products on the grid.
PlaneField field_bracket(const SpatialGrid& grid, const PlaneField& X, const PlaneField& Y);

/// Time dependent divergence free generator. The stream function is
///   psi(t, x) = sum_m a_m(t) cos(2 pi k_m.x) + b_m(t) sin(2 pi k_m.x),
/// and every temporal coefficient is a cosine series c(t) = sum_q c_q cos(pi q t).
/// With only odd q, X(1 - t) = -X(t), so the flow is a loop that retraces itself. A nonzero `warp`
/// runs the same field along w(t) = t + warp sin(pi t), i.e. the generator is w'(t) X(w(t)); the
/// loop property survives but the retracing is no longer symmetric about t = 1/2.
struct StreamMode {
  int kx = 0, ky = 0;
  std::vector<double> a, b;
};

struct FieldGenerator {
  std::vector<StreamMode> modes;
  std::vector<Eigen::Vector2d> harmonic;
  /// |warp| < 1/pi keeps w monotone.
  double warp = 0;

  /// Unwarped stream function and harmonic part.
  TrigSeries stream_at(double t) const;
  Eigen::Vector2d harmonic_at(double t) const;
  /// X(t) on the grid (including the warp factor).
  DivFreeField at(const SpatialGrid& grid, double t) const;
  /// X(t) at arbitrary points (including the warp factor).
  PlaneField velocity(double t, const Vec& x, const Vec& y) const;
  FieldGenerator scaled(double factor) const;
  /// True when every temporal coefficient with even q vanishes.
  bool is_loop() const;
};

/// Reproducible random generator with |k| <= kmax spatial modes (spectral decay (1 + |k|)^-2)
/// and `temporal` cosine modes, odd ones only when `loop`.
FieldGenerator random_generator(std::uint64_t seed, double amplitude, int kmax, int temporal, bool loop);

/// eta = e dx ^ dy with mu = dx ^ dy of total mass 1. In the exact case eta = d alpha and the
/// circle bundle is trivial, with connection theta = dphi + q^* alpha.
struct BundleSpec {
  SpatialGridPtr grid;
  Vec eta;
  /// Integral of eta over T^2, its cohomology class.
  double eta_class = 0;
  bool exact = false;
  /// alpha = alpha[0] dx + alpha[1] dy (exact case only).
  TrigSeries alpha[2];
};
BundleSpec exact_bundle(SpatialGridPtr grid, TrigSeries alpha_x, TrigSeries alpha_y);
/// A closed form without a connection: supports lich_omega and lich_Lambda only.
BundleSpec closed_bundle(SpatialGridPtr grid, Vec eta);
/// max |d alpha - eta| with d alpha computed spectrally from the samples of alpha.
double bundle_residual(const BundleSpec& spec);

/// Volume preserving diffeotopy on the tracer grid: position[i](p) = g(t_i)(x_p),
/// velocity[i] = d/dt g(t_i) = X(t_i) o g(t_i), fiber[i] = F(t_i) with
///   d/dt F(t, x) = -alpha(X(t))(g(t)(x)),
/// so that g^hor(t)(x, phi) = (g(t)(x), phi + F(t, x)) solves d^r g^hor = (d^r g)^hor.
struct DiffeoPath {
  SpatialGridPtr grid;
  int N = 0;
  std::vector<PlaneField> position, velocity;
  std::vector<Vec> fiber;

  /// g(t_i) - id, a periodic field.
  PlaneField displacement(int i) const;
  /// Spectral Jacobian entries (J_xx, J_xy, J_yx, J_yy) of g(t_i).
  std::array<Vec, 4> jacobian(int i) const;
  /// max over nodes and points of |det J - 1|.
  double volume_defect() const;
  /// Positions at an arbitrary time by cubic Hermite interpolation of the nodes.
  PlaneField at(double t) const;
  /// Distance of g(1) from the identity (max abs).
  double loop_defect() const;
  /// Every factor-th node; a flow with N nodes and k substeps coarsens to the flow with N/factor
  /// nodes and k * factor substeps.
  DiffeoPath coarsen(int factor) const;
};

DiffeoPath identity_path(const BundleSpec& spec, int N);
/// RK4 advection of the tracers and of F with `substeps` steps per node interval.
/// Throws StepSizeError if a step moves a tracer by more than half a cell.
DiffeoPath flow(const BundleSpec& spec, const FieldGenerator& X, int N, int substeps = 1);
/// Substep count that keeps a flow of X within the step size limit, from a uniform bound on |X|.
int cfl_substeps(const BundleSpec& spec, const FieldGenerator& X, int N);
/// Nodewise f(t) o g(t), with F integrated by the trapezoid rule.
DiffeoPath compose(const DiffeoPath& f, const DiffeoPath& g, const BundleSpec& spec);
/// Path from node positions and velocities; F by the trapezoid rule.
DiffeoPath path_from_nodes(const BundleSpec& spec, std::vector<PlaneField> position, std::vector<PlaneField> velocity);

/// Values of periodic grid fields at arbitrary points: Fourier upsampling by 2, then 8-point Lagrange.
std::vector<Vec> interpolate(const SpatialGrid& grid, const std::vector<Vec>& fields, const PlaneField& points);

/// omega(X, Y) = int eta(X, Y) mu.
double lich_omega(const PlaneField& X, const PlaneField& Y, const BundleSpec& spec);
double lich_omega(const DivFreeField& X, const DivFreeField& Y, const BundleSpec& spec);
/// |sum_cycl omega([X1, X2], X3)| with the bracket computed on the grid.
double lich_cyclic_residual(const DivFreeField& X1, const DivFreeField& X2, const DivFreeField& X3,
                            const BundleSpec& spec);
/// max over M of |sum_cycl eta([X1, X2], X3) - sum_cycl X1(eta(X2, X3))|, the pointwise identity
/// behind the cyclic sum (d eta = 0); integrating the second sum gives zero for divergence free X1.
double lich_cyclic_pointwise_residual(const DivFreeField& X1, const DivFreeField& X2, const DivFreeField& X3,
                                  const BundleSpec& spec);

/// C(f, g) = int_0^1 int_M q_*(theta(g^hor(s)^* d^l f(s)^hor)) mu ds, evaluated in the trivialization as
///   (alpha - g(s)^* alpha - dF_g(s))(g(s)^* d^l f(s)); trapezoid rule in s. Requires an exact bundle.
double lich_C(const DiffeoPath& f, const DiffeoPath& g, const BundleSpec& spec);
/// Dual route: int over sigma(s, u) = f(s) o g(su) of p^* eta ^ sigma^* mu, cell midpoint rule with
/// finite difference tangents of the composed tracer positions.
double lich_C_simplex(const DiffeoPath& f, const DiffeoPath& g, const BundleSpec& spec);
/// C(g, h) - C(fg, h) + C(f, gh) - C(f, g) (trivial module, periods zero for exact eta).
double lich_cocycle_residual(const DiffeoPath& f, const DiffeoPath& g, const DiffeoPath& h, const BundleSpec& spec);

/// Two parameter family gbar(s_i, t_j), row i is the path t -> gbar(s_i, t).
struct DiffeoFamily {
  std::vector<DiffeoPath> rows;
  int S() const { return static_cast<int>(rows.size()) - 1; }
  int N() const { return rows.empty() ? 0 : rows.front().N; }
  const DiffeoPath& endpoint() const { return rows.back(); }
};
/// Rows are flows of scale(s_i) X.
DiffeoFamily scaled_family(const BundleSpec& spec, const FieldGenerator& X, int S, int N, int substeps,
                           const std::function<double(double)>& scale);
DiffeoFamily family_product(const DiffeoFamily& a, const DiffeoFamily& b, const BundleSpec& spec);
/// Rigid translations x -> x + c(s, t).
DiffeoFamily translation_family(const BundleSpec& spec, int S, int N,
                                const std::function<Eigen::Vector2d(double, double)>& c);
/// max distance from the identity over the edges s = 0, t = 0, t = 1 (and s = 1 when `sphere`).
double family_pin_defect(const DiffeoFamily& family, bool sphere);

/// Lambda(gbar) = -int_{I x I x M} p^* eta ^ ghat^* mu, cell midpoint rule.
double lich_Lambda(const DiffeoFamily& gbar, const BundleSpec& spec);
/// C(f, g) + Lambda(fbar) + Lambda(gbar) - Lambda(fbar gbar) for null homotopies of loops.
double lich_coboundary_residual(const DiffeoFamily& fbar, const DiffeoFamily& gbar, const BundleSpec& spec);

struct SectionResiduals {
  /// max |theta(X^hor)|, max |q_* X^hor - X|, max |div X^hor| with respect to theta ^ q^* mu.
  double theta = 0, projection = 0, divergence = 0;
};
/// X^hor = (X, -alpha(X)) on T^2 x T.
SectionResiduals section_residuals(const DivFreeField& X, const BundleSpec& spec);

}  // namespace pathext
