#include "pathext/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace pathext {

Manifold manifold_from_string(const std::string& tag)
{
  if (tag == "S1") return Manifold::S1;
  if (tag == "T2") return Manifold::T2;
  throw std::invalid_argument("unknown manifold '" + tag + "' (expected S1 or T2)");
}

std::string to_string(Manifold m) { return m == Manifold::S1 ? "S1" : "T2"; }

struct SpatialGrid::Plans {
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  int nspec = 0;

  ~Plans()
  {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    fftw_free(real);
    fftw_free(spec);
  }
};

SpatialGrid::SpatialGrid(Manifold manifold, int M) : manifold_(manifold), M_(M), plans_(std::make_unique<Plans>())
{
  if (M < 4 || M % 2) throw std::invalid_argument("SpatialGrid: M must be even and at least 4");
  const int half = M / 2 + 1;
  plans_->nspec = manifold == Manifold::S1 ? half : M * half;
  plans_->real = fftw_alloc_real(points());
  plans_->spec = fftw_alloc_complex(plans_->nspec);
  if (manifold == Manifold::S1) {
    plans_->forward = fftw_plan_dft_r2c_1d(M, plans_->real, plans_->spec, FFTW_ESTIMATE);
    plans_->backward = fftw_plan_dft_c2r_1d(M, plans_->spec, plans_->real, FFTW_ESTIMATE);
  } else {
    plans_->forward = fftw_plan_dft_r2c_2d(M, M, plans_->real, plans_->spec, FFTW_ESTIMATE);
    plans_->backward = fftw_plan_dft_c2r_2d(M, M, plans_->spec, plans_->real, FFTW_ESTIMATE);
  }
}

SpatialGrid::~SpatialGrid() = default;

double SpatialGrid::coord(int p, int axis) const
{
  if (manifold_ == Manifold::S1) return static_cast<double>(p) / M_;
  return static_cast<double>(axis == 0 ? p / M_ : p % M_) / M_;
}

namespace {

// signed wavenumber of the index along an axis, 0 for the Nyquist mode
int wavenumber(int i, int M)
{
  if (2 * i == M) return 0;
  return 2 * i < M ? i : i - M;
}

}  // namespace

Vec SpatialGrid::derivative(const Vec& f, int axis) const
{
  if (f.size() != points()) throw std::invalid_argument("SpatialGrid::derivative: size mismatch");
  if (axis < 0 || axis >= dims()) throw std::invalid_argument("SpatialGrid::derivative: bad axis");
  Plans& P = *plans_;
  std::copy(f.data(), f.data() + points(), P.real);
  fftw_execute(P.forward);
  const int half = M_ / 2 + 1;
  const double scale = 2 * M_PI / points();
  for (int idx = 0; idx < P.nspec; ++idx) {
    int k;
    if (manifold_ == Manifold::S1) k = wavenumber(idx, M_);
    else k = axis == 0 ? wavenumber(idx / half, M_) : wavenumber(idx % half, M_);
    const double re = P.spec[idx][0], im = P.spec[idx][1];
    P.spec[idx][0] = -k * scale * im;
    P.spec[idx][1] = k * scale * re;
  }
  fftw_execute(P.backward);
  return Eigen::Map<const Vec>(P.real, points());
}

Vec SpatialGrid::gradient(const Vec& f) const
{
  Vec out(dims() * points());
  for (int a = 0; a < dims(); ++a) out.segment(a * points(), points()) = derivative(f, a);
  return out;
}

Vec SpatialGrid::remove_exact(const Vec& form) const
{
  const int n = points();
  if (form.size() != dims() * n) throw std::invalid_argument("SpatialGrid::remove_exact: size mismatch");
  if (manifold_ == Manifold::S1) {
    // on the circle the closed forms modulo exact ones are the constants
    return Vec::Constant(n, form.mean());
  }
  Plans& P = *plans_;
  const int half = M_ / 2 + 1;
  std::vector<std::complex<double>> hat[2];
  for (int a = 0; a < 2; ++a) {
    std::copy(form.data() + a * n, form.data() + (a + 1) * n, P.real);
    fftw_execute(P.forward);
    hat[a].resize(P.nspec);
    for (int i = 0; i < P.nspec; ++i) hat[a][i] = {P.spec[i][0], P.spec[i][1]};
  }
  for (int i = 0; i < P.nspec; ++i) {
    const double kx = wavenumber(i / half, M_), ky = wavenumber(i % half, M_);
    const double k2 = kx * kx + ky * ky;
    if (k2 == 0) continue;
    const std::complex<double> dot = (kx * hat[0][i] + ky * hat[1][i]) / k2;
    hat[0][i] -= kx * dot;
    hat[1][i] -= ky * dot;
  }
  Vec out(2 * n);
  for (int a = 0; a < 2; ++a) {
    for (int i = 0; i < P.nspec; ++i) {
      P.spec[i][0] = hat[a][i].real();
      P.spec[i][1] = hat[a][i].imag();
    }
    fftw_execute(P.backward);
    out.segment(a * n, n) = Eigen::Map<const Vec>(P.real, n) / n;
  }
  return out;
}

Vec SpatialGrid::inverse_laplacian(const Vec& f) const
{
  if (f.size() != points()) throw std::invalid_argument("SpatialGrid::inverse_laplacian: size mismatch");
  Plans& P = *plans_;
  std::copy(f.data(), f.data() + points(), P.real);
  fftw_execute(P.forward);
  const int half = M_ / 2 + 1;
  for (int idx = 0; idx < P.nspec; ++idx) {
    double k2;
    if (manifold_ == Manifold::S1) {
      const double k = 2 * M_PI * wavenumber(idx, M_);
      k2 = k * k;
    } else {
      const double kx = 2 * M_PI * wavenumber(idx / half, M_), ky = 2 * M_PI * wavenumber(idx % half, M_);
      k2 = kx * kx + ky * ky;
    }
    const double scale = k2 == 0 ? 0.0 : -1.0 / (k2 * points());
    P.spec[idx][0] *= scale;
    P.spec[idx][1] *= scale;
  }
  fftw_execute(P.backward);
  return Eigen::Map<const Vec>(P.real, points());
}

Vec SpatialGrid::upsample(const Vec& f, int factor) const
{
  if (f.size() != points()) throw std::invalid_argument("SpatialGrid::upsample: size mismatch");
  if (factor < 1) throw std::invalid_argument("SpatialGrid::upsample: factor must be positive");
  Plans& P = *plans_;
  std::copy(f.data(), f.data() + points(), P.real);
  fftw_execute(P.forward);
  const int L = factor * M_, half = M_ / 2 + 1, bhalf = L / 2 + 1;
  const int bpoints = manifold_ == Manifold::S1 ? L : L * L;
  const int bspec = manifold_ == Manifold::S1 ? bhalf : L * bhalf;
  fftw_complex* spec = fftw_alloc_complex(bspec);
  double* real = fftw_alloc_real(bpoints);
  std::fill(&spec[0][0], &spec[0][0] + 2 * bspec, 0.0);
  auto copy = [&](int from, int to) {
    spec[to][0] = P.spec[from][0] / points();
    spec[to][1] = P.spec[from][1] / points();
  };
  if (manifold_ == Manifold::S1) {
    for (int k = 0; k < half; ++k)
      if (2 * k != M_) copy(k, k);
  } else {
    for (int ix = 0; ix < M_; ++ix) {
      if (2 * ix == M_) continue;
      const int kx = wavenumber(ix, M_), bx = kx >= 0 ? kx : kx + L;
      for (int iy = 0; iy < half; ++iy)
        if (2 * iy != M_) copy(ix * half + iy, bx * bhalf + iy);
    }
  }
  fftw_plan plan = manifold_ == Manifold::S1 ? fftw_plan_dft_c2r_1d(L, spec, real, FFTW_ESTIMATE)
                                             : fftw_plan_dft_c2r_2d(L, L, spec, real, FFTW_ESTIMATE);
  fftw_execute(plan);
  Vec out = Eigen::Map<const Vec>(real, bpoints);
  fftw_destroy_plan(plan);
  fftw_free(spec);
  fftw_free(real);
  return out;
}

PointModes SpatialGrid::low_modes(int kmax) const
{
  PointModes modes;
  const int n = points();
  auto add = [&](auto fn) {
    std::vector<double> v(n);
    for (int p = 0; p < n; ++p) v[p] = fn(p);
    modes.push_back(std::move(v));
  };
  add([](int) { return 1.0; });
  for (int a = 0; a < dims(); ++a)
    for (int k = 1; k <= kmax; ++k) {
      add([&](int p) { return std::cos(2 * M_PI * k * coord(p, a)); });
      add([&](int p) { return std::sin(2 * M_PI * k * coord(p, a)); });
    }
  if (manifold_ == Manifold::T2)
    for (int k = 1; k <= kmax; ++k) {
      add([&](int p) { return std::cos(2 * M_PI * k * (coord(p, 0) + coord(p, 1))); });
      add([&](int p) { return std::sin(2 * M_PI * k * (coord(p, 0) - coord(p, 1))); });
    }
  return modes;
}

}  // namespace pathext
