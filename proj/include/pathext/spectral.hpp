#pragma once

#include "pathext/families.hpp"

#include <memory>

namespace pathext {

enum class Manifold { S1, T2 };

Manifold manifold_from_string(const std::string& tag);
std::string to_string(Manifold m);

/// Uniform periodic grid on [0,1) or [0,1)^2. On T^2 the point index is p = ix * M + iy.
///
/// Transforms reuse internal FFTW buffers, so one grid must not be shared across threads.
class SpatialGrid {
 public:
  SpatialGrid(Manifold manifold, int M);
  ~SpatialGrid();
  SpatialGrid(const SpatialGrid&) = delete;
  SpatialGrid& operator=(const SpatialGrid&) = delete;

  Manifold manifold() const { return manifold_; }
  int M() const { return M_; }
  int dims() const { return manifold_ == Manifold::S1 ? 1 : 2; }
  int points() const { return manifold_ == Manifold::S1 ? M_ : M_ * M_; }
  /// Coordinate of point p along axis.
  double coord(int p, int axis) const;

  /// Spectral derivative along an axis (Nyquist mode dropped).
  Vec derivative(const Vec& f, int axis) const;
  double mean(const Vec& f) const { return f.mean(); }
  /// A one-form stored as dims() consecutive blocks of points() values.
  /// Removes the component in the range of the discrete gradient.
  Vec remove_exact(const Vec& form) const;
  /// Discrete exterior derivative of a function, as a one-form.
  Vec gradient(const Vec& f) const;

  /// Mean-free solution u of Laplace(u) = f - mean(f).
  Vec inverse_laplacian(const Vec& f) const;
  /// Trigonometric interpolant sampled on the grid refined by `factor` (Nyquist mode dropped).
  Vec upsample(const Vec& f, int factor) const;

  /// Real Fourier modes up to |k| <= kmax along each axis (constant included).
  PointModes low_modes(int kmax) const;

 private:
  struct Plans;
  Manifold manifold_;
  int M_;
  std::unique_ptr<Plans> plans_;
};

using SpatialGridPtr = std::shared_ptr<const SpatialGrid>;

}  // namespace pathext
