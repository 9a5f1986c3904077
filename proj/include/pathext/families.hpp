#pragma once

#include "pathext/path.hpp"

#include <cstdint>

namespace pathext {

/// Values of scalar spatial modes at each point of the product group H^P.
using PointModes = std::vector<std::vector<double>>;

/// Random band-limited algebra-valued function of t,
///   A(t) = sum_{m, q, k} c_{mqk} phi_m(t) psi_q(point) e_k.
/// Periodic uses phi = 1, cos(2 pi m t), sin(2 pi m t); Dirichlet uses
/// phi_m = sin(pi m t), which vanishes at both ends.
class AlgebraSeries {
 public:
  enum class Basis { Periodic, Dirichlet };

  AlgebraSeries(GroupPtr group, std::uint64_t seed, double amplitude, Basis basis, int time_modes = 4,
                PointModes point_modes = {});

  AlgebraElement operator()(double t) const;
  AlgebraElement derivative(double t) const;
  const GroupPtr& group() const { return group_; }

 private:
  AlgebraElement eval(double t, bool deriv) const;

  GroupPtr group_;
  Basis basis_;
  PointModes modes_;
  int tm_ = 0;
  // per time function: a point-wise list of algebra elements
  std::vector<AlgebraElement> terms_;
};

/// Solves g' = g xi(t), g(0) = e, with the fourth order Magnus method on `fine`
/// steps and samples the result at n + 1 nodes; n must divide fine.
GroupPath integrate_velocity(GroupPtr group, const std::function<AlgebraElement(double)>& xi, int n,
                             int fine = 2048);

/// Path with band-limited random left velocity (`time_modes` temporal frequencies); reproducible per seed.
GroupPath random_path(GroupPtr group, std::uint64_t seed, double amplitude, int n, PointModes point_modes = {},
                      int time_modes = 4);

/// t -> exp(A(t)); A(0) must vanish.
GroupPath exp_curve_path(GroupPtr group, const std::function<AlgebraElement(double)>& A, int n);

/// Null-homotopy certificate hbar(s, t) = exp(s A(t)) with A(0) = A(1) = 0.
HomotopyGrid exp_loop_certificate(GroupPtr group, const std::function<AlgebraElement(double)>& A, int S, int N);
/// Same with a random Dirichlet series A.
HomotopyGrid random_loop_certificate(GroupPtr group, std::uint64_t seed, double amplitude, int S, int N,
                                     PointModes point_modes = {});

}  // namespace pathext
