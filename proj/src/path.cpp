#include "pathext/path.hpp"

#include <cmath>

namespace pathext {

namespace {

void snap_identity(const Group& group, GroupElement& g, double tol, const char* what)
{
  const double d = group.distance_to_identity(g);
  if (d > tol)
    throw InvalidCertificate(std::string(what) + " is not the identity (distance " +
                             std::to_string(d) + ")");
  g = group.identity();
}

}  // namespace

GroupPath GroupPath::from_samples(GroupPtr group, std::vector<GroupElement> samples)
{
  if (samples.size() < 2) throw std::invalid_argument("a path needs at least two nodes");
  GroupPath p;
  p.group_ = std::move(group);
  snap_identity(*p.group_, samples[0], kPinTolerance, "path start");
  const int n = static_cast<int>(samples.size()) - 1;
  p.velocities_.reserve(n);
  for (int k = 0; k < n; ++k) {
    AlgebraElement v = p.group_->log(p.group_->left_quotient(samples[k], samples[k + 1]));
    v *= n;
    p.velocities_.push_back(std::move(v));
  }
  p.samples_ = std::move(samples);
  return p;
}

GroupPath GroupPath::from_velocities(GroupPtr group, std::vector<AlgebraElement> midpoint_velocities)
{
  if (midpoint_velocities.empty()) throw std::invalid_argument("a path needs at least one interval");
  GroupPath p;
  p.group_ = std::move(group);
  const int n = static_cast<int>(midpoint_velocities.size());
  p.samples_.reserve(n + 1);
  p.samples_.push_back(p.group_->identity());
  for (int k = 0; k < n; ++k) {
    if (midpoint_velocities[k].at.size() != static_cast<size_t>(p.group_->points()))
      throw std::invalid_argument("velocity has the wrong number of points");
    p.samples_.push_back(
        p.group_->multiply(p.samples_.back(), p.group_->exp((1.0 / n) * midpoint_velocities[k])));
  }
  p.velocities_ = std::move(midpoint_velocities);
  return p;
}

GroupPath GroupPath::from_function(GroupPtr group, const std::function<GroupElement(double)>& g, int n)
{
  if (n < 1) throw std::invalid_argument("resolution must be positive");
  std::vector<GroupElement> s;
  s.reserve(n + 1);
  for (int i = 0; i <= n; ++i) s.push_back(g(static_cast<double>(i) / n));
  return from_samples(std::move(group), std::move(s));
}

GroupPath GroupPath::constant(GroupPtr group, int n)
{
  std::vector<AlgebraElement> v(n, group->zero());
  return from_velocities(std::move(group), std::move(v));
}

AlgebraElement GroupPath::node_velocity(int i) const
{
  const int N = n();
  if (N == 1) return velocities_[0];
  if (i == 0) return 1.5 * velocities_[0] - 0.5 * velocities_[1];
  if (i == N) return 1.5 * velocities_[N - 1] - 0.5 * velocities_[N - 2];
  return 0.5 * (velocities_[i - 1] + velocities_[i]);
}

GroupElement GroupPath::midpoint_sample(int k) const
{
  return group_->multiply(samples_[k], group_->exp((0.5 / n()) * velocities_[k]));
}

GroupElement GroupPath::at(double t) const
{
  const int N = n();
  if (t <= 0.0) return samples_[0];
  if (t >= 1.0) return samples_[N];
  const double u = t * N;
  const int k = std::min(static_cast<int>(std::floor(u)), N - 1);
  const double tau = u - k;
  if (tau == 0.0) return samples_[k];
  return group_->multiply(samples_[k], group_->exp((tau / N) * velocities_[k]));
}

AlgebraElement GroupPath::velocity_at(double t) const
{
  const int N = n();
  if (N == 1) return velocities_[0];
  const double u = t * N - 0.5;
  const int k = std::clamp(static_cast<int>(std::floor(u)), 0, N - 2);
  const double w = u - k;
  return (1.0 - w) * velocities_[k] + w * velocities_[k + 1];
}

bool GroupPath::is_loop(double tol) const { return group_->distance_to_identity(samples_.back()) <= tol; }

double GroupPath::reconstruction_residual() const
{
  GroupElement g = group_->identity();
  double worst = 0.0;
  for (int k = 0; k < n(); ++k) {
    g = group_->multiply(g, group_->exp((1.0 / n()) * velocities_[k]));
    worst = std::max(worst, group_->distance(g, samples_[k + 1]));
  }
  return worst;
}

GroupPath path_product(const GroupPath& f, const GroupPath& g)
{
  if (f.n() != g.n()) throw std::invalid_argument("path_product: resolution mismatch");
  std::vector<GroupElement> s;
  s.reserve(f.n() + 1);
  for (int i = 0; i <= f.n(); ++i) s.push_back(f.group().multiply(f.sample(i), g.sample(i)));
  return GroupPath::from_samples(f.group_ptr(), std::move(s));
}

GroupPath path_inverse(const GroupPath& g)
{
  std::vector<GroupElement> s;
  s.reserve(g.n() + 1);
  for (const auto& x : g.samples()) s.push_back(g.group().inverse(x));
  return GroupPath::from_samples(g.group_ptr(), std::move(s));
}

GroupPath resample(const GroupPath& g, const std::function<double(double)>& warp)
{
  const int N = g.n();
  std::vector<GroupElement> s;
  s.reserve(N + 1);
  double prev = 0.0;
  for (int i = 0; i <= N; ++i) {
    const double w = warp(static_cast<double>(i) / N);
    if (!std::isfinite(w) || w < -1e-15 || w > 1.0 + 1e-15)
      throw std::invalid_argument("resample: warp leaves [0, 1]");
    if (i == 0 && std::abs(w) > 1e-15) throw std::invalid_argument("resample: warp(0) != 0");
    if (w < prev - 1e-15) throw std::invalid_argument("resample: warp is not monotone");
    prev = w;
    s.push_back(g.at(w));
  }
  return GroupPath::from_samples(g.group_ptr(), std::move(s));
}

GroupPath resample_to(const GroupPath& g, int n)
{
  std::vector<GroupElement> s;
  s.reserve(n + 1);
  for (int i = 0; i <= n; ++i) s.push_back(g.at(static_cast<double>(i) / n));
  return GroupPath::from_samples(g.group_ptr(), std::move(s));
}

// ---------------------------------------------------------------------------

SurfaceGrid SurfaceGrid::from_function(GroupPtr group,
                                       const std::function<GroupElement(double, double)>& fn, int S,
                                       int N)
{
  SurfaceGrid sg;
  sg.group = std::move(group);
  sg.S = S;
  sg.N = N;
  sg.g.reserve(static_cast<size_t>(S + 1) * (N + 1));
  for (int i = 0; i <= S; ++i)
    for (int j = 0; j <= N; ++j) sg.g.push_back(fn(static_cast<double>(i) / S, static_cast<double>(j) / N));
  return sg;
}

HomotopyGrid::HomotopyGrid(SurfaceGrid grid, unsigned pins) : grid_(std::move(grid)), pins_(pins)
{
  const Group& G = *grid_.group;
  if (pins_ & kPinS0)
    for (int j = 0; j <= N(); ++j) snap_identity(G, grid_.at(0, j), kPinTolerance, "edge s = 0");
  if (pins_ & kPinS1)
    for (int j = 0; j <= N(); ++j) snap_identity(G, grid_.at(S(), j), kPinTolerance, "edge s = 1");
  if (pins_ & kPinT0)
    for (int i = 0; i <= S(); ++i) snap_identity(G, grid_.at(i, 0), kPinTolerance, "edge t = 0");
  if (pins_ & kPinT1)
    for (int i = 0; i <= S(); ++i) snap_identity(G, grid_.at(i, N()), kPinTolerance, "edge t = 1");
}

HomotopyGrid HomotopyGrid::from_function(GroupPtr group,
                                         const std::function<GroupElement(double, double)>& fn,
                                         int S, int N, unsigned pins)
{
  return HomotopyGrid(SurfaceGrid::from_function(std::move(group), fn, S, N), pins);
}

HomotopyGrid HomotopyGrid::trivial(GroupPtr group, int S, int N)
{
  SurfaceGrid sg;
  sg.S = S;
  sg.N = N;
  sg.g.assign(static_cast<size_t>(S + 1) * (N + 1), group->identity());
  sg.group = std::move(group);
  return HomotopyGrid(std::move(sg), kNullHomotopyPins);
}

HomotopyGrid HomotopyGrid::from_row_velocities(GroupPtr group,
                                               std::vector<std::vector<AlgebraElement>> rows,
                                               unsigned pins)
{
  if (rows.size() < 2) throw std::invalid_argument("homotopy grid needs at least two rows");
  SurfaceGrid sg;
  sg.group = group;
  sg.S = static_cast<int>(rows.size()) - 1;
  sg.N = static_cast<int>(rows[0].size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != sg.N) throw std::invalid_argument("ragged homotopy rows");
    GroupPath p = GroupPath::from_velocities(group, r);
    for (const auto& x : p.samples()) sg.g.push_back(x);
  }
  HomotopyGrid h(std::move(sg), pins | kPinT0);
  h.pins_ = pins;
  h.row_velocities_ = std::move(rows);
  return h;
}

GroupPath HomotopyGrid::row(int i) const
{
  std::vector<GroupElement> s;
  s.reserve(N() + 1);
  for (int j = 0; j <= N(); ++j) s.push_back(at(i, j));
  return GroupPath::from_samples(grid_.group, std::move(s));
}

std::vector<std::vector<AlgebraElement>> HomotopyGrid::row_velocities() const
{
  if (!row_velocities_.empty()) return row_velocities_;
  std::vector<std::vector<AlgebraElement>> rows;
  for (int i = 0; i <= S(); ++i) rows.push_back(row(i).midpoint_velocities());
  return rows;
}

void HomotopyGrid::require_null_homotopy() const
{
  if ((pins_ & kNullHomotopyPins) != kNullHomotopyPins)
    throw InvalidCertificate("grid does not declare the null-homotopy boundary pins");
}

HomotopyGrid HomotopyGrid::inverted() const
{
  SurfaceGrid sg = grid_;
  for (auto& x : sg.g) x = grid_.group->inverse(x);
  return HomotopyGrid(std::move(sg), pins_);
}

HomotopyGrid HomotopyGrid::conjugated(const GroupPath& g) const
{
  const Group& G = *grid_.group;
  std::vector<GroupElement> gt, gti;
  for (int j = 0; j <= N(); ++j) {
    gt.push_back(g.at(static_cast<double>(j) / N()));
    gti.push_back(G.inverse(gt.back()));
  }
  SurfaceGrid sg = grid_;
  for (int i = 0; i <= S(); ++i)
    for (int j = 0; j <= N(); ++j) sg.at(i, j) = G.multiply(G.multiply(gt[j], grid_.at(i, j)), gti[j]);
  return HomotopyGrid(std::move(sg), pins_);
}

HomotopyGrid HomotopyGrid::conjugated(const GroupElement& k) const
{
  const Group& G = *grid_.group;
  const GroupElement ki = G.inverse(k);
  SurfaceGrid sg = grid_;
  for (auto& g : sg.g) g = G.multiply(G.multiply(k, g), ki);
  return HomotopyGrid(std::move(sg), pins_);
}

HomotopyGrid grid_product(const HomotopyGrid& a, const HomotopyGrid& b)
{
  if (a.S() != b.S() || a.N() != b.N()) throw std::invalid_argument("grid_product: resolution mismatch");
  SurfaceGrid sg = a.grid();
  for (int i = 0; i <= a.S(); ++i)
    for (int j = 0; j <= a.N(); ++j) sg.at(i, j) = a.group().multiply(a.at(i, j), b.at(i, j));
  return HomotopyGrid(std::move(sg), a.pins() & b.pins());
}

SphereCycle::SphereCycle(SurfaceGrid grid, double tol) : grid_(std::move(grid))
{
  const Group& G = *grid_.group;
  const GroupElement c = grid_.at(0, 0);
  auto check = [&](GroupElement& x) {
    if (G.distance(x, c) > tol) throw InvalidCertificate("sphere cycle edge is not constant");
    x = c;
  };
  for (int j = 0; j <= grid_.N; ++j) {
    check(grid_.at(0, j));
    check(grid_.at(grid_.S, j));
  }
  for (int i = 0; i <= grid_.S; ++i) {
    check(grid_.at(i, 0));
    check(grid_.at(i, grid_.N));
  }
}

HomotopyGrid vanest_simplex(const GroupPath& f, const GroupPath& g)
{
  const Group& G = f.group();
  SurfaceGrid sg;
  sg.group = f.group_ptr();
  sg.S = f.n();
  sg.N = g.n();
  sg.g.reserve(static_cast<size_t>(sg.S + 1) * (sg.N + 1));
  for (int i = 0; i <= sg.S; ++i) {
    const double s = static_cast<double>(i) / sg.S;
    for (int j = 0; j <= sg.N; ++j) {
      const double t = static_cast<double>(j) / sg.N;
      sg.g.push_back(G.multiply(f.sample(i), g.at(s * t)));
    }
  }
  return HomotopyGrid(std::move(sg), kPinS0);
}

SimplexBoundaryResidual simplex_boundary_residual(const HomotopyGrid& sigma, const GroupPath& f,
                                                  const GroupPath& g)
{
  const Group& G = f.group();
  SimplexBoundaryResidual r;
  for (int i = 0; i <= sigma.S(); ++i) {
    const double s = static_cast<double>(i) / sigma.S();
    r.top = std::max(r.top, G.distance(sigma.at(i, sigma.N()), G.multiply(f.at(s), g.at(s))));
    r.bottom = std::max(r.bottom, G.distance(sigma.at(i, 0), f.at(s)));
  }
  for (int j = 0; j <= sigma.N(); ++j) {
    const double t = static_cast<double>(j) / sigma.N();
    r.right = std::max(r.right, G.distance(sigma.at(sigma.S(), j), G.multiply(f.endpoint(), g.at(t))));
  }
  return r;
}

double path_associativity_residual(const GroupPath& f, const GroupPath& g, const GroupPath& h)
{
  const Group& G = f.group();
  double w = 0.0;
  for (int i = 0; i <= f.n(); ++i) {
    const GroupElement a = G.multiply(G.multiply(f.sample(i), g.sample(i)), h.sample(i));
    const GroupElement b = G.multiply(f.sample(i), G.multiply(g.sample(i), h.sample(i)));
    w = std::max(w, G.distance(a, b));
  }
  return w;
}

}  // namespace pathext
