#include "pathext/lichnerowicz.hpp"

#include <cmath>
#include <complex>
#include <random>

namespace pathext {

namespace {

using cd = std::complex<double>;

const SpatialGrid& torus(const BundleSpec& spec)
{
  if (!spec.grid || spec.grid->manifold() != Manifold::T2)
    throw std::invalid_argument("Lichnerowicz: the bundle needs a T2 grid");
  return *spec.grid;
}

void require_exact(const BundleSpec& spec, const char* what)
{
  if (!spec.exact) throw std::invalid_argument(std::string(what) + ": requires an exact eta (trivial bundle)");
}

PlaneField grid_coords(const SpatialGrid& grid)
{
  const int P = grid.points();
  PlaneField out{Vec(P), Vec(P)};
  for (int p = 0; p < P; ++p) {
    out.x(p) = grid.coord(p, 0);
    out.y(p) = grid.coord(p, 1);
  }
  return out;
}

double cosine_series(const std::vector<double>& c, double t)
{
  double v = 0;
  for (size_t q = 0; q < c.size(); ++q) v += c[q] * std::cos(M_PI * static_cast<double>(q) * t);
  return v;
}

// Lagrange weights on nodes 0..7 at t, by prefix and suffix products (safe at the nodes).
void lagrange8(double t, double w[8])
{
  static const double denom[8] = {-5040, 720, -240, 144, -144, 240, -720, 5040};
  double pre[9], suf[9];
  pre[0] = 1;
  for (int k = 0; k < 8; ++k) pre[k + 1] = pre[k] * (t - k);
  suf[8] = 1;
  for (int k = 7; k >= 0; --k) suf[k] = suf[k + 1] * (t - k);
  for (int k = 0; k < 8; ++k) w[k] = pre[k] * suf[k + 1] / denom[k];
}

struct Stencil {
  int L = 0;
  // per point: 8 row offsets (times L) and 8 column indices on the fine grid, with weights
  std::vector<std::array<int, 8>> rows, cols;
  std::vector<std::array<double, 8>> wx, wy;

  Stencil(int L_, const PlaneField& pts) : L(L_)
  {
    const size_t n = static_cast<size_t>(pts.x.size());
    rows.resize(n);
    cols.resize(n);
    wx.resize(n);
    wy.resize(n);
    auto one = [&](double c, std::array<int, 8>& idx, std::array<double, 8>& w, int stride) {
      const double u = (c - std::floor(c)) * L;
      const int i0 = static_cast<int>(std::floor(u)) - 3;
      lagrange8(u - i0, w.data());
      for (int k = 0; k < 8; ++k) idx[k] = (((i0 + k) % L + L) % L) * stride;
    };
    for (size_t p = 0; p < n; ++p) {
      one(pts.x(p), rows[p], wx[p], L);
      one(pts.y(p), cols[p], wy[p], 1);
    }
  }

  Vec apply(const Vec& fine) const
  {
    const size_t n = rows.size();
    const double* f = fine.data();
    Vec out(n);
    for (size_t p = 0; p < n; ++p) {
      double acc = 0;
      for (int a = 0; a < 8; ++a) {
        const double* r = f + rows[p][a];
        double v = 0;
        for (int b = 0; b < 8; ++b) v += wy[p][b] * r[cols[p][b]];
        acc += wx[p][a] * v;
      }
      out(p) = acc;
    }
    return out;
  }
};

constexpr int kUpsample = 2;

// (J^{-1} v) for 2x2 Jacobians stored as entry fields.
PlaneField solve_jacobian(const std::array<Vec, 4>& J, const PlaneField& v)
{
  const Vec det = J[0].cwiseProduct(J[3]) - J[1].cwiseProduct(J[2]);
  return {(J[3].cwiseProduct(v.x) - J[1].cwiseProduct(v.y)).cwiseQuotient(det),
          (J[0].cwiseProduct(v.y) - J[2].cwiseProduct(v.x)).cwiseQuotient(det)};
}

PlaneField alpha_at(const BundleSpec& spec, const PlaneField& pts)
{
  auto v = eval_series({&spec.alpha[0], &spec.alpha[1]}, pts.x, pts.y);
  return {std::move(v[0]), std::move(v[1])};
}

// Cross product density of the cell tangents, integrated against eta over M.
double cell_value(const BundleSpec& spec, const PlaneField& h00, const PlaneField& h10, const PlaneField& h01,
                  const PlaneField& h11, double ds, double dt)
{
  const Vec ax = 0.5 * ((h10.x - h00.x) + (h11.x - h01.x)) / ds, ay = 0.5 * ((h10.y - h00.y) + (h11.y - h01.y)) / ds;
  const Vec bx = 0.5 * ((h01.x - h00.x) + (h11.x - h10.x)) / dt, by = 0.5 * ((h01.y - h00.y) + (h11.y - h10.y)) / dt;
  return spec.eta.cwiseProduct(ax.cwiseProduct(by) - ay.cwiseProduct(bx)).mean();
}

}  // namespace

// ---------------------------------------------------------------------------

TrigSeries TrigSeries::derivative(int axis) const
{
  TrigSeries d;
  for (const auto& t : terms) {
    const double k = 2 * M_PI * (axis == 0 ? t.kx : t.ky);
    if (k == 0) continue;
    d.terms.push_back({t.kx, t.ky, k * t.s, -k * t.c});
  }
  return d;
}

Vec TrigSeries::eval(const Vec& x, const Vec& y) const { return eval_series({this}, x, y).front(); }

std::vector<Vec> eval_series(const std::vector<const TrigSeries*>& series, const Vec& x, const Vec& y)
{
  const int n = static_cast<int>(x.size());
  std::vector<Vec> out(series.size(), Vec::Zero(n));
  int K = 0;
  for (const TrigSeries* s : series)
    for (const auto& t : s->terms) K = std::max({K, std::abs(t.kx), std::abs(t.ky)});
  std::vector<cd> ex(2 * K + 1), ey(2 * K + 1);
  for (int p = 0; p < n; ++p) {
    const cd bx = std::polar(1.0, 2 * M_PI * x(p)), by = std::polar(1.0, 2 * M_PI * y(p));
    // index K + k holds exp(2 pi i k x)
    ex[K] = ey[K] = 1.0;
    for (int k = 1; k <= K; ++k) {
      ex[K + k] = ex[K + k - 1] * bx;
      ey[K + k] = ey[K + k - 1] * by;
      ex[K - k] = std::conj(ex[K + k]);
      ey[K - k] = std::conj(ey[K + k]);
    }
    for (size_t m = 0; m < series.size(); ++m) {
      double v = 0;
      for (const auto& t : series[m]->terms) {
        const cd e = ex[K + t.kx] * ey[K + t.ky];
        v += t.c * e.real() + t.s * e.imag();
      }
      out[m](p) = v;
    }
  }
  return out;
}

Vec TrigSeries::sample(const SpatialGrid& grid) const
{
  const PlaneField c = grid_coords(grid);
  return eval(c.x, c.y);
}

// ---------------------------------------------------------------------------

PlaneField DivFreeField::components(const SpatialGrid& grid) const
{
  return {grid.derivative(stream, 1).array() + harmonic(0), (-grid.derivative(stream, 0)).array() + harmonic(1)};
}

DivFreeField DivFreeField::from_components(const SpatialGrid& grid, const PlaneField& X)
{
  DivFreeField out;
  out.harmonic = {X.x.mean(), X.y.mean()};
  // curl X = -Laplace(psi)
  const Vec curl = grid.derivative(X.y, 0) - grid.derivative(X.x, 1);
  out.stream = -grid.inverse_laplacian(curl);
  return out;
}

double divergence_residual(const SpatialGrid& grid, const PlaneField& X)
{
  return (grid.derivative(X.x, 0) + grid.derivative(X.y, 1)).cwiseAbs().maxCoeff();
}

PlaneField field_bracket(const SpatialGrid& grid, const PlaneField& X, const PlaneField& Y)
{
  auto along = [&](const PlaneField& V, const Vec& f) {
    return Vec(V.x.cwiseProduct(grid.derivative(f, 0)) + V.y.cwiseProduct(grid.derivative(f, 1)));
  };
  return {along(X, Y.x) - along(Y, X.x), along(X, Y.y) - along(Y, X.y)};
}

// ---------------------------------------------------------------------------

TrigSeries FieldGenerator::stream_at(double t) const
{
  TrigSeries s;
  for (const auto& m : modes) s.terms.push_back({m.kx, m.ky, cosine_series(m.a, t), cosine_series(m.b, t)});
  return s;
}

Eigen::Vector2d FieldGenerator::harmonic_at(double t) const
{
  Eigen::Vector2d h = Eigen::Vector2d::Zero();
  for (size_t q = 0; q < harmonic.size(); ++q) h += harmonic[q] * std::cos(M_PI * static_cast<double>(q) * t);
  return h;
}

DivFreeField FieldGenerator::at(const SpatialGrid& grid, double t) const
{
  const double w = t + warp * std::sin(M_PI * t), dw = 1 + warp * M_PI * std::cos(M_PI * t);
  return {dw * stream_at(w).sample(grid), dw * harmonic_at(w)};
}

PlaneField FieldGenerator::velocity(double t, const Vec& x, const Vec& y) const
{
  if (std::abs(warp) * M_PI >= 1) throw std::invalid_argument("FieldGenerator: |warp| must be below 1/pi");
  const double w = t + warp * std::sin(M_PI * t), dw = 1 + warp * M_PI * std::cos(M_PI * t);
  const TrigSeries psi = stream_at(w), px = psi.derivative(0), py = psi.derivative(1);
  const Eigen::Vector2d h = dw * harmonic_at(w);
  const auto d = eval_series({&py, &px}, x, y);
  return {dw * d[0].array() + h(0), (-dw * d[1]).array() + h(1)};
}

FieldGenerator FieldGenerator::scaled(double factor) const
{
  FieldGenerator out = *this;
  for (auto& m : out.modes) {
    for (double& v : m.a) v *= factor;
    for (double& v : m.b) v *= factor;
  }
  for (auto& h : out.harmonic) h *= factor;
  return out;
}

bool FieldGenerator::is_loop() const
{
  for (const auto& m : modes)
    for (size_t q = 0; q < std::max(m.a.size(), m.b.size()); q += 2)
      if ((q < m.a.size() && m.a[q] != 0) || (q < m.b.size() && m.b[q] != 0)) return false;
  for (size_t q = 0; q < harmonic.size(); q += 2)
    if (harmonic[q].norm() != 0) return false;
  return true;
}

FieldGenerator random_generator(std::uint64_t seed, double amplitude, int kmax, int temporal, bool loop)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const int Q = loop ? 2 * temporal : temporal;
  auto series = [&](double scale) {
    std::vector<double> c(Q, 0.0);
    for (int q = loop ? 1 : 0; q < Q; q += loop ? 2 : 1) c[q] = scale * normal(rng) / (1.0 + q);
    return c;
  };
  FieldGenerator g;
  for (int kx = 0; kx <= kmax; ++kx)
    for (int ky = -kmax; ky <= kmax; ++ky) {
      if (kx == 0 && ky <= 0) continue;
      const double k = std::hypot(kx, ky);
      // velocity scale amplitude / (1 + |k|)^2
      const double scale = amplitude / (2 * M_PI * k * (1 + k) * (1 + k));
      StreamMode m{kx, ky, series(scale), series(scale)};
      g.modes.push_back(std::move(m));
    }
  const std::vector<double> hx = series(0.5 * amplitude), hy = series(0.5 * amplitude);
  for (int q = 0; q < Q; ++q) g.harmonic.emplace_back(hx[q], hy[q]);
  return g;
}

// ---------------------------------------------------------------------------

BundleSpec exact_bundle(SpatialGridPtr grid, TrigSeries alpha_x, TrigSeries alpha_y)
{
  BundleSpec spec;
  spec.grid = std::move(grid);
  torus(spec);
  spec.exact = true;
  spec.eta = alpha_y.derivative(0).sample(*spec.grid) - alpha_x.derivative(1).sample(*spec.grid);
  spec.eta_class = spec.eta.mean();
  spec.alpha[0] = std::move(alpha_x);
  spec.alpha[1] = std::move(alpha_y);
  return spec;
}

BundleSpec closed_bundle(SpatialGridPtr grid, Vec eta)
{
  BundleSpec spec;
  spec.grid = std::move(grid);
  if (eta.size() != torus(spec).points()) throw std::invalid_argument("closed_bundle: eta has the wrong size");
  spec.eta_class = eta.mean();
  spec.eta = std::move(eta);
  return spec;
}

double bundle_residual(const BundleSpec& spec)
{
  require_exact(spec, "bundle_residual");
  const SpatialGrid& grid = torus(spec);
  const Vec da = grid.derivative(spec.alpha[1].sample(grid), 0) - grid.derivative(spec.alpha[0].sample(grid), 1);
  return (da - spec.eta).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

PlaneField DiffeoPath::displacement(int i) const
{
  const PlaneField c = grid_coords(*grid);
  return {position[i].x - c.x, position[i].y - c.y};
}

std::array<Vec, 4> DiffeoPath::jacobian(int i) const
{
  const PlaneField D = displacement(i);
  return {grid->derivative(D.x, 0).array() + 1.0, grid->derivative(D.x, 1), grid->derivative(D.y, 0),
          grid->derivative(D.y, 1).array() + 1.0};
}

double DiffeoPath::volume_defect() const
{
  double worst = 0;
  for (int i = 0; i <= N; ++i) {
    const auto J = jacobian(i);
    const Vec det = J[0].cwiseProduct(J[3]) - J[1].cwiseProduct(J[2]);
    worst = std::max(worst, (det.array() - 1.0).abs().maxCoeff());
  }
  return worst;
}

PlaneField DiffeoPath::at(double t) const
{
  if (t <= 0) return position.front();
  if (t >= 1) return position.back();
  const int k = std::min(static_cast<int>(std::floor(t * N)), N - 1);
  const double u = t * N - k, h = 1.0 / N;
  const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
  const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
  return {h00 * position[k].x + h10 * h * velocity[k].x + h01 * position[k + 1].x + h11 * h * velocity[k + 1].x,
          h00 * position[k].y + h10 * h * velocity[k].y + h01 * position[k + 1].y + h11 * h * velocity[k + 1].y};
}

double DiffeoPath::loop_defect() const
{
  const PlaneField D = displacement(N);
  return std::max((D.x.array() - D.x.array().round()).abs().maxCoeff(),
                  (D.y.array() - D.y.array().round()).abs().maxCoeff());
}

DiffeoPath DiffeoPath::coarsen(int factor) const
{
  if (factor < 1 || N % factor) throw std::invalid_argument("DiffeoPath::coarsen: factor must divide N");
  DiffeoPath out;
  out.grid = grid;
  out.N = N / factor;
  for (int i = 0; i <= N; i += factor) {
    out.position.push_back(position[i]);
    out.velocity.push_back(velocity[i]);
    out.fiber.push_back(fiber[i]);
  }
  return out;
}

DiffeoPath identity_path(const BundleSpec& spec, int N)
{
  const SpatialGrid& grid = torus(spec);
  const PlaneField c = grid_coords(grid);
  const PlaneField zero{Vec::Zero(grid.points()), Vec::Zero(grid.points())};
  return path_from_nodes(spec, std::vector<PlaneField>(N + 1, c), std::vector<PlaneField>(N + 1, zero));
}

DiffeoPath flow(const BundleSpec& spec, const FieldGenerator& X, int N, int substeps)
{
  const SpatialGrid& grid = torus(spec);
  if (N < 1 || substeps < 1) throw std::invalid_argument("flow: resolution must be positive");
  const int P = grid.points();
  const double h = 1.0 / (static_cast<double>(N) * substeps), limit = 0.5 / grid.M();

  DiffeoPath path;
  path.grid = spec.grid;
  path.N = N;
  PlaneField pos = grid_coords(grid);
  Vec F = Vec::Zero(P);

  // right hand side of (x, F)' = (X(t, x), -alpha_x(X(t, x)))
  auto rhs = [&](double t, const PlaneField& x, PlaneField& v, Vec& dF) {
    v = X.velocity(t, x.x, x.y);
    if (spec.exact) {
      const PlaneField a = alpha_at(spec, x);
      dF = -(a.x.cwiseProduct(v.x) + a.y.cwiseProduct(v.y));
    } else {
      dF = Vec::Zero(P);
    }
  };
  auto record = [&](double t) {
    PlaneField v;
    Vec dF;
    rhs(t, pos, v, dF);
    path.position.push_back(pos);
    path.velocity.push_back(std::move(v));
    path.fiber.push_back(F);
  };

  record(0.0);
  for (int i = 0; i < N; ++i) {
    for (int k = 0; k < substeps; ++k) {
      const double t = (static_cast<double>(i) * substeps + k) * h;
      PlaneField v1, v2, v3, v4;
      Vec f1, f2, f3, f4;
      rhs(t, pos, v1, f1);
      rhs(t + h / 2, {pos.x + h / 2 * v1.x, pos.y + h / 2 * v1.y}, v2, f2);
      rhs(t + h / 2, {pos.x + h / 2 * v2.x, pos.y + h / 2 * v2.y}, v3, f3);
      rhs(t + h, {pos.x + h * v3.x, pos.y + h * v3.y}, v4, f4);
      const Vec dx = h / 6 * (v1.x + 2 * v2.x + 2 * v3.x + v4.x);
      const Vec dy = h / 6 * (v1.y + 2 * v2.y + 2 * v3.y + v4.y);
      const double step = (dx.array().square() + dy.array().square()).sqrt().maxCoeff();
      if (step > limit)
        throw StepSizeError("flow: a step moves tracers by " + std::to_string(step) + " > half a cell (" +
                            std::to_string(limit) + "); increase substeps");
      pos.x += dx;
      pos.y += dy;
      F += h / 6 * (f1 + 2 * f2 + 2 * f3 + f4);
    }
    record(static_cast<double>(i + 1) / N);
  }
  return path;
}

int cfl_substeps(const BundleSpec& spec, const FieldGenerator& X, int N)
{
  const SpatialGrid& grid = torus(spec);
  // |X| <= max w' * (sum 2 pi |k| (|a_q| + |b_q|) + sum |h_q|), uniformly in t and x
  double bound = 0;
  for (const auto& m : X.modes) {
    double c = 0;
    for (double v : m.a) c += std::abs(v);
    for (double v : m.b) c += std::abs(v);
    bound += 2 * M_PI * std::hypot(m.kx, m.ky) * c;
  }
  for (const auto& h : X.harmonic) bound += h.norm();
  bound *= 1 + std::abs(X.warp) * M_PI;
  const double per_node = bound / N, limit = 0.5 / grid.M();
  return std::max(1, static_cast<int>(std::ceil(per_node / limit)));
}

std::vector<Vec> interpolate(const SpatialGrid& grid, const std::vector<Vec>& fields, const PlaneField& points)
{
  if (grid.manifold() != Manifold::T2) throw std::invalid_argument("interpolate: T2 grids only");
  const Stencil st(kUpsample * grid.M(), points);
  std::vector<Vec> out;
  out.reserve(fields.size());
  for (const Vec& f : fields) out.push_back(st.apply(grid.upsample(f, kUpsample)));
  return out;
}

DiffeoPath path_from_nodes(const BundleSpec& spec, std::vector<PlaneField> position, std::vector<PlaneField> velocity)
{
  const SpatialGrid& grid = torus(spec);
  if (position.size() < 2 || position.size() != velocity.size())
    throw std::invalid_argument("path_from_nodes: need matching node lists with at least two nodes");
  DiffeoPath path;
  path.grid = spec.grid;
  path.N = static_cast<int>(position.size()) - 1;
  Vec F = Vec::Zero(grid.points()), prev;
  for (int i = 0; i <= path.N; ++i) {
    Vec phi = Vec::Zero(grid.points());
    if (spec.exact) {
      const PlaneField a = alpha_at(spec, position[i]);
      phi = -(a.x.cwiseProduct(velocity[i].x) + a.y.cwiseProduct(velocity[i].y));
    }
    if (i > 0) F += 0.5 / path.N * (prev + phi);
    path.fiber.push_back(F);
    prev = std::move(phi);
  }
  path.position = std::move(position);
  path.velocity = std::move(velocity);
  return path;
}

DiffeoPath compose(const DiffeoPath& f, const DiffeoPath& g, const BundleSpec& spec)
{
  if (f.N != g.N) throw std::invalid_argument("compose: resolution mismatch");
  const SpatialGrid& grid = torus(spec);
  std::vector<PlaneField> pos, vel;
  for (int i = 0; i <= f.N; ++i) {
    const PlaneField D = f.displacement(i);
    const auto J = f.jacobian(i);
    const auto v = interpolate(grid, {D.x, D.y, f.velocity[i].x, f.velocity[i].y, J[0], J[1], J[2], J[3]},
                               g.position[i]);
    const PlaneField& gp = g.position[i];
    const PlaneField& gv = g.velocity[i];
    pos.push_back({gp.x + v[0], gp.y + v[1]});
    vel.push_back({v[2] + v[4].cwiseProduct(gv.x) + v[5].cwiseProduct(gv.y),
                   v[3] + v[6].cwiseProduct(gv.x) + v[7].cwiseProduct(gv.y)});
  }
  return path_from_nodes(spec, std::move(pos), std::move(vel));
}

// ---------------------------------------------------------------------------

double lich_omega(const PlaneField& X, const PlaneField& Y, const BundleSpec& spec)
{
  return spec.eta.cwiseProduct(X.x.cwiseProduct(Y.y) - X.y.cwiseProduct(Y.x)).mean();
}

double lich_omega(const DivFreeField& X, const DivFreeField& Y, const BundleSpec& spec)
{
  const SpatialGrid& grid = torus(spec);
  return lich_omega(X.components(grid), Y.components(grid), spec);
}

double lich_cyclic_residual(const DivFreeField& X1, const DivFreeField& X2, const DivFreeField& X3,
                            const BundleSpec& spec)
{
  const SpatialGrid& grid = torus(spec);
  const PlaneField a = X1.components(grid), b = X2.components(grid), c = X3.components(grid);
  return std::abs(lich_omega(field_bracket(grid, a, b), c, spec) + lich_omega(field_bracket(grid, b, c), a, spec) +
                  lich_omega(field_bracket(grid, c, a), b, spec));
}

double lich_cyclic_pointwise_residual(const DivFreeField& X1, const DivFreeField& X2, const DivFreeField& X3,
                                      const BundleSpec& spec)
{
  const SpatialGrid& grid = torus(spec);
  const PlaneField a = X1.components(grid), b = X2.components(grid), c = X3.components(grid);
  auto eta = [&](const PlaneField& u, const PlaneField& v) {
    return Vec(spec.eta.cwiseProduct(u.x.cwiseProduct(v.y) - u.y.cwiseProduct(v.x)));
  };
  auto along = [&](const PlaneField& u, const Vec& f) {
    return Vec(u.x.cwiseProduct(grid.derivative(f, 0)) + u.y.cwiseProduct(grid.derivative(f, 1)));
  };
  const Vec lhs = eta(field_bracket(grid, a, b), c) + eta(field_bracket(grid, b, c), a) + eta(field_bracket(grid, c, a), b);
  const Vec rhs = along(a, eta(b, c)) + along(b, eta(c, a)) + along(c, eta(a, b));
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

double lich_C(const DiffeoPath& f, const DiffeoPath& g, const BundleSpec& spec)
{
  require_exact(spec, "lich_C");
  if (f.N != g.N) throw std::invalid_argument("lich_C: resolution mismatch");
  const SpatialGrid& grid = torus(spec);
  const PlaneField alpha = {spec.alpha[0].sample(grid), spec.alpha[1].sample(grid)};
  const int N = f.N;
  double total = 0;
  for (int i = 0; i <= N; ++i) {
    // Y = d^l f(s) = Tf^{-1} (X_f o f), then Z = g^* Y = Tg^{-1} Y(g(x))
    const PlaneField Y = solve_jacobian(f.jacobian(i), f.velocity[i]);
    const auto Yg = interpolate(grid, {Y.x, Y.y}, g.position[i]);
    const PlaneField Z = solve_jacobian(g.jacobian(i), {Yg[0], Yg[1]});
    const PlaneField ag = alpha_at(spec, g.position[i]);
    const Vec Fx = grid.derivative(g.fiber[i], 0), Fy = grid.derivative(g.fiber[i], 1);
    const Vec integrand = (alpha.x - Fx).cwiseProduct(Z.x) + (alpha.y - Fy).cwiseProduct(Z.y) -
                          ag.x.cwiseProduct(Yg[0]) - ag.y.cwiseProduct(Yg[1]);
    const double w = (i == 0 || i == N) ? 0.5 : 1.0;
    total += w * integrand.mean();
  }
  return total / N;
}

double lich_C_simplex(const DiffeoPath& f, const DiffeoPath& g, const BundleSpec& spec)
{
  if (f.N != g.N) throw std::invalid_argument("lich_C_simplex: resolution mismatch");
  const SpatialGrid& grid = torus(spec);
  const int N = f.N;
  const int L = kUpsample * grid.M();
  // row i holds sigma(s_i, u_j) = f(s_i)(g(s_i u_j)(x)) for all j
  auto row = [&](int i) {
    const double s = static_cast<double>(i) / N;
    const PlaneField D = f.displacement(i);
    const Vec Dx = grid.upsample(D.x, kUpsample), Dy = grid.upsample(D.y, kUpsample);
    std::vector<PlaneField> out;
    out.reserve(N + 1);
    for (int j = 0; j <= N; ++j) {
      const PlaneField gp = g.at(s * j / N);
      const Stencil st(L, gp);
      out.push_back({gp.x + st.apply(Dx), gp.y + st.apply(Dy)});
    }
    return out;
  };
  const double h = 1.0 / N;
  double total = 0;
  std::vector<PlaneField> lo = row(0);
  for (int i = 0; i < N; ++i) {
    std::vector<PlaneField> hi = row(i + 1);
    for (int j = 0; j < N; ++j) total += cell_value(spec, lo[j], hi[j], lo[j + 1], hi[j + 1], h, h);
    lo = std::move(hi);
  }
  return total * h * h;
}

double lich_cocycle_residual(const DiffeoPath& f, const DiffeoPath& g, const DiffeoPath& h, const BundleSpec& spec)
{
  const DiffeoPath fg = compose(f, g, spec), gh = compose(g, h, spec);
  return lich_C(g, h, spec) - lich_C(fg, h, spec) + lich_C(f, gh, spec) - lich_C(f, g, spec);
}

// ---------------------------------------------------------------------------

DiffeoFamily scaled_family(const BundleSpec& spec, const FieldGenerator& X, int S, int N, int substeps,
                           const std::function<double(double)>& scale)
{
  if (S < 1) throw std::invalid_argument("scaled_family: S must be positive");
  DiffeoFamily fam;
  for (int i = 0; i <= S; ++i) fam.rows.push_back(flow(spec, X.scaled(scale(static_cast<double>(i) / S)), N, substeps));
  return fam;
}

DiffeoFamily family_product(const DiffeoFamily& a, const DiffeoFamily& b, const BundleSpec& spec)
{
  if (a.S() != b.S() || a.N() != b.N()) throw std::invalid_argument("family_product: resolution mismatch");
  DiffeoFamily out;
  for (int i = 0; i <= a.S(); ++i) out.rows.push_back(compose(a.rows[i], b.rows[i], spec));
  return out;
}

DiffeoFamily translation_family(const BundleSpec& spec, int S, int N,
                                const std::function<Eigen::Vector2d(double, double)>& c)
{
  const SpatialGrid& grid = torus(spec);
  const PlaneField x0 = grid_coords(grid);
  const int P = grid.points();
  const double eps = 1e-5;
  DiffeoFamily fam;
  for (int i = 0; i <= S; ++i) {
    const double s = static_cast<double>(i) / S;
    std::vector<PlaneField> pos, vel;
    for (int j = 0; j <= N; ++j) {
      const double t = static_cast<double>(j) / N;
      const Eigen::Vector2d v = c(s, t), dv = (c(s, t + eps) - c(s, t - eps)) / (2 * eps);
      pos.push_back({x0.x.array() + v(0), x0.y.array() + v(1)});
      vel.push_back({Vec::Constant(P, dv(0)), Vec::Constant(P, dv(1))});
    }
    fam.rows.push_back(path_from_nodes(spec, std::move(pos), std::move(vel)));
  }
  return fam;
}

double family_pin_defect(const DiffeoFamily& family, bool sphere)
{
  double worst = 0;
  auto defect = [&](const DiffeoPath& p, int j) {
    const PlaneField D = p.displacement(j);
    return std::max((D.x.array() - D.x.array().round()).abs().maxCoeff(),
                    (D.y.array() - D.y.array().round()).abs().maxCoeff());
  };
  for (int i = 0; i <= family.S(); ++i) {
    const DiffeoPath& r = family.rows[i];
    worst = std::max({worst, defect(r, 0), defect(r, r.N)});
    if (i == 0 || (sphere && i == family.S()))
      for (int j = 0; j <= r.N; ++j) worst = std::max(worst, defect(r, j));
  }
  return worst;
}

double lich_Lambda(const DiffeoFamily& gbar, const BundleSpec& spec)
{
  torus(spec);
  const int S = gbar.S(), N = gbar.N();
  if (S < 1 || N < 1) throw std::invalid_argument("lich_Lambda: empty family");
  const double ds = 1.0 / S, dt = 1.0 / N;
  double total = 0;
  for (int i = 0; i < S; ++i) {
    const auto& lo = gbar.rows[i].position;
    const auto& hi = gbar.rows[i + 1].position;
    for (int j = 0; j < N; ++j) total += cell_value(spec, lo[j], hi[j], lo[j + 1], hi[j + 1], ds, dt);
  }
  return -total * ds * dt;
}

double lich_coboundary_residual(const DiffeoFamily& fbar, const DiffeoFamily& gbar, const BundleSpec& spec)
{
  return lich_C(fbar.endpoint(), gbar.endpoint(), spec) + lich_Lambda(fbar, spec) + lich_Lambda(gbar, spec) -
         lich_Lambda(family_product(fbar, gbar, spec), spec);
}

// ---------------------------------------------------------------------------

SectionResiduals section_residuals(const DivFreeField& X, const BundleSpec& spec)
{
  require_exact(spec, "section_residuals");
  const SpatialGrid& grid = torus(spec);
  const PlaneField v = X.components(grid);
  const PlaneField a = {spec.alpha[0].sample(grid), spec.alpha[1].sample(grid)};
  const Vec alpha_X = a.x.cwiseProduct(v.x) + a.y.cwiseProduct(v.y);
  // X^hor in (x, y, phi) components; theta = dphi + alpha, mu~ = dphi ^ dx ^ dy
  const PlaneField base = v;
  const Vec fiber = -alpha_X;
  SectionResiduals r;
  r.theta = (fiber + a.x.cwiseProduct(base.x) + a.y.cwiseProduct(base.y)).cwiseAbs().maxCoeff();
  r.projection = std::max((base.x - v.x).cwiseAbs().maxCoeff(), (base.y - v.y).cwiseAbs().maxCoeff());
  // the phi component does not depend on phi
  r.divergence = divergence_residual(grid, base);
  return r;
}

}  // namespace pathext
