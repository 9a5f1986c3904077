#pragma once

#include "pathext/lie.hpp"

#include <functional>
#include <memory>
#include <stdexcept>

namespace pathext {

using GroupPtr = std::shared_ptr<const Group>;

class InvalidCertificate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kDefaultResolution = 64;
inline constexpr double kLoopTolerance = 1e-8;
inline constexpr double kPinTolerance = 1e-10;

/// A path g: [0,1] -> G with g(0) = e, sampled at N+1 uniform nodes.
///
/// The primary data are the N midpoint velocities v_k = N log(g_k^{-1} g_{k+1});
/// samples are cached and reproduce g_{k+1} = g_k exp(v_k / N).
class GroupPath {
 public:
  GroupPath() = default;

  static GroupPath from_samples(GroupPtr group, std::vector<GroupElement> samples);
  static GroupPath from_velocities(GroupPtr group, std::vector<AlgebraElement> midpoint_velocities);
  static GroupPath from_function(GroupPtr group, const std::function<GroupElement(double)>& g, int n);
  static GroupPath constant(GroupPtr group, int n);

  const Group& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  int n() const { return static_cast<int>(velocities_.size()); }
  double step() const { return 1.0 / n(); }

  const GroupElement& sample(int i) const { return samples_[i]; }
  const std::vector<GroupElement>& samples() const { return samples_; }
  const GroupElement& endpoint() const { return samples_.back(); }
  const AlgebraElement& midpoint_velocity(int k) const { return velocities_[k]; }
  const std::vector<AlgebraElement>& midpoint_velocities() const { return velocities_; }
  /// Left logarithmic derivative at node i; one-sided second order stencils at the ends.
  AlgebraElement node_velocity(int i) const;
  /// Geodesic midpoint of interval k.
  GroupElement midpoint_sample(int k) const;

  /// Geodesic interpolation g_k exp(tau log(g_k^{-1} g_{k+1})).
  GroupElement at(double t) const;
  /// Piecewise linear interpolation of the midpoint velocities.
  AlgebraElement velocity_at(double t) const;

  bool is_loop(double tol = kLoopTolerance) const;
  double reconstruction_residual() const;

 private:
  GroupPtr group_;
  std::vector<GroupElement> samples_;
  std::vector<AlgebraElement> velocities_;
};

GroupPath path_product(const GroupPath& f, const GroupPath& g);
GroupPath path_inverse(const GroupPath& g);
/// Samples g at warp(t_i) by geodesic interpolation; warp must be monotone with warp(0) = 0.
GroupPath resample(const GroupPath& g, const std::function<double(double)>& warp);
/// Resample onto a different number of intervals.
GroupPath resample_to(const GroupPath& g, int n);

/// (S+1) x (N+1) samples of a map I x I -> G, index (i, j) <-> (s_i, t_j).
struct SurfaceGrid {
  GroupPtr group;
  int S = 0;
  int N = 0;
  std::vector<GroupElement> g;

  const GroupElement& at(int i, int j) const { return g[static_cast<size_t>(i) * (N + 1) + j]; }
  GroupElement& at(int i, int j) { return g[static_cast<size_t>(i) * (N + 1) + j]; }

  static SurfaceGrid from_function(GroupPtr group, const std::function<GroupElement(double, double)>& fn,
                                   int S, int N);
};

/// Edges of a homotopy grid pinned to the identity.
enum Pin : unsigned {
  kPinS0 = 1u,  // g(0, .) = e
  kPinT0 = 2u,  // g(., 0) = e
  kPinT1 = 4u,  // g(., 1) = e
  kPinS1 = 8u,  // g(1, .) = e
};
inline constexpr unsigned kNullHomotopyPins = kPinS0 | kPinT0 | kPinT1;

/// A two parameter family with declared identity pins. Pinned edges are exact.
class HomotopyGrid {
 public:
  HomotopyGrid() = default;
  /// Validates the pins within kPinTolerance and snaps them to the identity.
  HomotopyGrid(SurfaceGrid grid, unsigned pins);

  static HomotopyGrid from_function(GroupPtr group,
                                    const std::function<GroupElement(double, double)>& fn, int S,
                                    int N, unsigned pins);
  /// Constant-in-s certificate for the trivial loop.
  static HomotopyGrid trivial(GroupPtr group, int S, int N);
  /// Rows t -> g(s_i, t) given by their midpoint velocities; row 0 must vanish.
  static HomotopyGrid from_row_velocities(GroupPtr group,
                                          std::vector<std::vector<AlgebraElement>> rows,
                                          unsigned pins);

  const SurfaceGrid& grid() const { return grid_; }
  const Group& group() const { return *grid_.group; }
  unsigned pins() const { return pins_; }
  int S() const { return grid_.S; }
  int N() const { return grid_.N; }
  const GroupElement& at(int i, int j) const { return grid_.at(i, j); }

  /// The path t -> g(s_i, t).
  GroupPath row(int i) const;
  /// The loop certified by this grid, t -> g(1, t).
  GroupPath endpoint() const { return row(S()); }

  /// Throws InvalidCertificate unless all null-homotopy pins hold.
  void require_null_homotopy() const;

  HomotopyGrid inverted() const;
  /// Nodewise g(t_j) hbar(s_i, t_j) g(t_j)^{-1}.
  HomotopyGrid conjugated(const GroupPath& g) const;
  /// Nodewise k hbar(s_i, t_j) k^{-1} for a constant k.
  HomotopyGrid conjugated(const GroupElement& k) const;

  /// Midpoint velocities of every row; cached verbatim when built from velocities.
  std::vector<std::vector<AlgebraElement>> row_velocities() const;

 private:
  SurfaceGrid grid_;
  unsigned pins_ = 0;
  std::vector<std::vector<AlgebraElement>> row_velocities_;
};

HomotopyGrid grid_product(const HomotopyGrid& a, const HomotopyGrid& b);

/// Spherical 2-cycle: a grid whose four edges are all the same constant.
class SphereCycle {
 public:
  explicit SphereCycle(SurfaceGrid grid, double tol = kPinTolerance);
  const SurfaceGrid& grid() const { return grid_; }

 private:
  SurfaceGrid grid_;
};

/// The van Est simplex sigma(s, t) = f(s) g(s t); s runs over the nodes of f, t over those of g.
HomotopyGrid vanest_simplex(const GroupPath& f, const GroupPath& g);

struct SimplexBoundaryResidual {
  double top = 0;    // sigma(s,1) vs (fg)(s)
  double right = 0;  // sigma(1,t) vs f(1) g(t)
  double bottom = 0; // sigma(s,0) vs f(s)
};
SimplexBoundaryResidual simplex_boundary_residual(const HomotopyGrid& sigma, const GroupPath& f,
                                                  const GroupPath& g);

/// Nodewise group-axiom residuals of PG on a triple.
double path_associativity_residual(const GroupPath& f, const GroupPath& g, const GroupPath& h);

}  // namespace pathext
