#include "pathext/cocycle.hpp"

#include <cmath>
#include <limits>

namespace pathext {

LatticeModule::LatticeModule(int dim, Eigen::MatrixXd generators, Action action)
    : dim_(dim), gens_(std::move(generators)), action_(action)
{
  if (gens_.rows() != dim_) throw std::invalid_argument("lattice generators have the wrong dimension");
  if (gens_.cols() > 0) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(gens_);
    if (qr.rank() < gens_.cols()) throw std::invalid_argument("lattice generators are linearly dependent");
    gens_pinv_ = (gens_.transpose() * gens_).ldlt().solve(gens_.transpose());
  }
}

Vec LatticeModule::act(const Group& G, const GroupElement& g, const Vec& a) const
{
  if (action_ == Action::Trivial) return a;
  const LieAlgebraSpec& alg = G.algebra();
  return alg.coords(g.at[0] * alg.from_coords(a) * G.inverse(g).at[0]);
}

Vec LatticeModule::act_algebra(const Group& G, const AlgebraElement& x, const Vec& a) const
{
  if (action_ == Action::Trivial) return Vec::Zero(a.size());
  const LieAlgebraSpec& alg = G.algebra();
  return alg.coords(alg.bracket(x.at[0], alg.from_coords(a)));
}

double LatticeModule::norm(const Vec& a) const { return std::sqrt(weight_ * a.squaredNorm()); }

Vec LatticeModule::lattice_coordinates(const Vec& a) const
{
  if (gens_.cols() == 0) return Vec(0);
  return gens_pinv_ * reduce(a);
}

Vec LatticeModule::nearest_lattice_point(const Vec& a) const
{
  if (gens_.cols() == 0) return Vec::Zero(dim_);
  const Vec c = lattice_coordinates(a).array().round().matrix();
  return gens_ * c;
}

double LatticeModule::lattice_distance(const Vec& a) const
{
  const Vec r = reduce(a);
  return norm(r - nearest_lattice_point(r));
}

double LatticeModule::invariance_residual(const Group& G, const std::vector<GroupElement>& samples) const
{
  double worst = 0;
  for (const auto& g : samples)
    for (int k = 0; k < gens_.cols(); ++k) {
      const Vec gk = gens_.col(k);
      worst = std::max(worst, (act(G, g, gk) - gk).norm());
    }
  return worst;
}

// ---------------------------------------------------------------------------

CocycleSpec CocycleSpec::from_tensor(std::string name, GroupPtr group, std::vector<double> w,
                                     LatticeModule module)
{
  const int d = group->algebra().dim();
  const int m = module.dim();
  if (static_cast<int>(w.size()) != d * d * m) throw std::invalid_argument("omega tensor has the wrong size");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int v = 0; v < m; ++v)
        if (w[(i * d + j) * m + v] != -w[(j * d + i) * m + v])
          throw std::invalid_argument("omega tensor is not antisymmetric");
  CocycleSpec spec;
  spec.name = std::move(name);
  spec.module = std::move(module);
  std::vector<Eigen::MatrixXd> slices(m, Eigen::MatrixXd::Zero(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int v = 0; v < m; ++v) slices[v](i, j) = w[(i * d + j) * m + v];
  const LieAlgebraSpec alg = group->algebra();
  spec.omega = [slices, alg, m](const AlgebraElement& x, const AlgebraElement& y) {
    const Vec a = alg.coords(x.at[0]);
    const Vec b = alg.coords(y.at[0]);
    Vec out(m);
    for (int v = 0; v < m; ++v) out[v] = a.dot(slices[v] * b);
    return out;
  };
  spec.group = std::move(group);
  return spec;
}

double CocycleSpec::antisymmetry_residual(const std::vector<AlgebraElement>& xs) const
{
  double worst = 0;
  for (const auto& x : xs)
    for (const auto& y : xs) worst = std::max(worst, module.norm(omega(x, y) + omega(y, x)));
  return worst;
}

double CocycleSpec::cocycle_residual(const std::vector<AlgebraElement>& xs) const
{
  const Group& G = *group;
  double worst = 0;
  auto term = [&](const AlgebraElement& x, const AlgebraElement& y, const AlgebraElement& z) -> Vec {
    return module.act_algebra(G, x, omega(y, z)) - omega(G.bracket(x, y), z);
  };
  for (const auto& x : xs)
    for (const auto& y : xs)
      for (const auto& z : xs) {
        const Vec r = term(x, y, z) + term(y, z, x) + term(z, x, y);
        worst = std::max(worst, module.norm(module.reduce(r)));
      }
  return worst;
}

namespace specs {

namespace {
GroupPtr make_group(LieAlgebraSpec a) { return std::make_shared<const Group>(std::move(a)); }
}  // namespace

CocycleSpec heisenberg_central()
{
  std::vector<double> w(9, 0.0);
  w[0 * 3 + 1] = 1.0;
  w[1 * 3 + 0] = -1.0;
  return CocycleSpec::from_tensor("heisenberg-central", make_group(algebras::heisenberg3()), w,
                                  LatticeModule::trivial(1));
}

CocycleSpec torus_area()
{
  std::vector<double> w(4, 0.0);
  w[0 * 2 + 1] = 1.0;
  w[1 * 2 + 0] = -1.0;
  return CocycleSpec::from_tensor("torus-area", make_group(algebras::abelian(2)), w, LatticeModule::integers());
}

CocycleSpec su2_adjoint_bracket()
{
  const auto alg = algebras::su2(1.0);
  std::vector<double> w(27, 0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) w[(i * 3 + j) * 3 + k] = alg.structure(i, j, k);
  return CocycleSpec::from_tensor("su2-adjoint-bracket", make_group(alg), w,
                                  LatticeModule(3, Eigen::MatrixXd(3, 0), LatticeModule::Action::Adjoint));
}

CocycleSpec su2_trivial_exact()
{
  const auto alg = algebras::su2(1.0);
  std::vector<double> w(9, 0.0);
  // kappa(e3, [e_i, e_j]) = sum_k c_ij^k kappa(e3, e_k)
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) w[i * 3 + j] += alg.structure(i, j, k) * alg.kappa(2, k, 0);
  return CocycleSpec::from_tensor("su2-trivial-exact", make_group(alg), w, LatticeModule::trivial(1));
}

}  // namespace specs

// ---------------------------------------------------------------------------

namespace {

void require_same_resolution(const GroupPath& f, const GroupPath& g, const char* what)
{
  if (f.n() != g.n()) throw std::invalid_argument(std::string(what) + ": resolution mismatch");
}

void require_finite(const Vec& v, const char* what, int i, int j)
{
  if (!v.allFinite())
    throw NumericFailure(std::string(what) + ": non-finite value in cell (" + std::to_string(i) + ", " +
                         std::to_string(j) + ")");
}

}  // namespace

CellTangents cell_tangents(const Group& G, const GroupElement& g00, const GroupElement& g10,
                           const GroupElement& g01, const GroupElement& g11, double ds, double dt, bool anti)
{
  const GroupElement& p = anti ? g10 : g00;
  const GroupElement& q = anti ? g01 : g11;
  const AlgebraElement c = G.log(G.left_quotient(p, q));
  CellTangents out;
  out.center = G.multiply(p, G.exp(0.5 * c));
  const GroupElement gci = G.inverse(out.center);
  AlgebraElement a00, a10, a01, a11;
  if (anti) {
    a10 = -0.5 * c;
    a01 = 0.5 * c;
    a00 = G.log(G.multiply(gci, g00));
    a11 = G.log(G.multiply(gci, g11));
  } else {
    a00 = -0.5 * c;
    a11 = 0.5 * c;
    a10 = G.log(G.multiply(gci, g10));
    a01 = G.log(G.multiply(gci, g01));
  }
  out.xs = (0.5 / ds) * ((a10 - a00) + (a11 - a01));
  out.xt = (0.5 / dt) * ((a01 - a00) + (a11 - a10));
  return out;
}

Vec omega_eq_integral(const SurfaceGrid& sg, const CocycleSpec& spec)
{
  const Group& G = *sg.group;
  if (sg.S < 1 || sg.N < 1) throw std::invalid_argument("omega_eq_integral: empty grid");
  const double ds = 1.0 / sg.S, dt = 1.0 / sg.N;

  auto cell = [&](const GroupElement& g00, const GroupElement& g10, const GroupElement& g01,
                  const GroupElement& g11, bool anti) -> Vec {
    const CellTangents c = cell_tangents(G, g00, g10, g01, g11, ds, dt, anti);
    Vec w = spec.omega(c.xs, c.xt);
    if (!spec.module.is_trivial()) w = spec.act(c.center, w);
    return w;
  };

  Vec total = Vec::Zero(spec.module.dim());
  for (int i = 0; i < sg.S; ++i)
    for (int j = 0; j < sg.N; ++j) {
      const GroupElement& g00 = sg.at(i, j);
      const GroupElement& g10 = sg.at(i + 1, j);
      const GroupElement& g01 = sg.at(i, j + 1);
      const GroupElement& g11 = sg.at(i + 1, j + 1);
      try {
        // both diagonals: the rule is odd under s -> -s and t -> -t
        const Vec w = 0.5 * (cell(g00, g10, g01, g11, false) + cell(g00, g10, g01, g11, true));
        require_finite(w, "omega_eq_integral", i, j);
        total += w;
      } catch (const DomainError& e) {
        throw NumericFailure("omega_eq_integral: cell (" + std::to_string(i) + ", " + std::to_string(j) +
                             ") is too coarse: " + e.what());
      }
    }
  return spec.module.reduce(total * (ds * dt));
}

Vec vanest_C(const GroupPath& f, const GroupPath& g, const CocycleSpec& spec)
{
  require_same_resolution(f, g, "vanest_C");
  const Group& G = f.group();
  const int n = f.n();
  // Midpoint rule on the cells of the triangle t < s, half weight on the diagonal cells. Only
  // interval midpoints are used, where the velocities are exact data; sampling g between nodes
  // would pick up the kinks of the interpolants and make the O(h^2) constant erratic in n.
  std::vector<GroupElement> gm;
  for (int j = 0; j < n; ++j) gm.push_back(g.midpoint_sample(j));
  Vec total = Vec::Zero(spec.module.dim());
  for (int i = 0; i < n; ++i) {
    const GroupElement fs = f.midpoint_sample(i);
    const AlgebraElement& vf = f.midpoint_velocity(i);
    for (int j = 0; j <= i; ++j) {
      Vec w = spec.omega(G.adjoint_inverse(gm[j], vf), g.midpoint_velocity(j));
      if (!spec.module.is_trivial()) w = spec.act(G.multiply(fs, gm[j]), w);
      require_finite(w, "vanest_C", i, j);
      total += (j == i ? 0.5 : 1.0) * w;
    }
  }
  return spec.module.reduce(total / (static_cast<double>(n) * n));
}

Vec vanest_C_prime_direct(const GroupPath& f, const GroupPath& g, const CocycleSpec& spec)
{
  require_same_resolution(f, g, "vanest_C_prime_direct");
  const Group& G = f.group();
  const int n = f.n();
  Vec total = Vec::Zero(spec.module.dim());
  for (int i = 0; i < n; ++i) {
    const double s = (i + 0.5) / n;
    const GroupElement gs = g.midpoint_sample(i);
    const GroupElement gsi = G.inverse(gs);
    const AlgebraElement rg = G.adjoint(gs, g.midpoint_velocity(i));
    Vec row = Vec::Zero(spec.module.dim());
    for (int j = 0; j < n; ++j) {
      const double t = s * (j + 0.5) / n;
      const GroupElement ft = f.at(t);
      const AlgebraElement rf = G.adjoint(ft, f.velocity_at(t));
      Vec w = spec.omega(G.adjoint(ft, rg), rf);
      if (!spec.module.is_trivial()) w = spec.act(G.multiply(gsi, G.inverse(ft)), w);
      require_finite(w, "vanest_C_prime_direct", i, j);
      row += w;
    }
    total += s * row;
  }
  return spec.module.reduce(-total / (static_cast<double>(n) * n));
}

VanEstVariants vanest_variants(const GroupPath& f, const GroupPath& g, const CocycleSpec& spec)
{
  VanEstVariants v;
  v.C = vanest_C(f, g, spec);
  v.C_prime = -vanest_C(path_inverse(g), path_inverse(f), spec);
  v.C_prime_direct = vanest_C_prime_direct(f, g, spec);
  v.C_sym = 0.5 * (v.C + v.C_prime);
  return v;
}

Vec vanest_p_cocycle(const std::vector<GroupPath>& paths, const MultiCochain& w, const CocycleSpec& spec)
{
  const int p = static_cast<int>(paths.size());
  if (p < 1 || p > 3) throw std::invalid_argument("vanest_p_cocycle: only p = 1, 2, 3 are supported");
  const int n = paths[0].n();
  for (const auto& q : paths)
    if (q.n() != n) throw std::invalid_argument("vanest_p_cocycle: resolution mismatch");
  const Group& G = paths[0].group();

  // Cells of the simplex 1 > t_1 > ... > t_p > 0 on the node grid: non-increasing index tuples,
  // each run of k tied indices weighted by 1/k! (the part of the cube cell inside the simplex).
  std::vector<std::vector<GroupElement>> gm(p);
  for (int k = 0; k < p; ++k)
    for (int i = 0; i < n; ++i) gm[k].push_back(paths[k].midpoint_sample(i));
  Vec total = Vec::Zero(spec.module.dim());
  std::vector<int> idx(p, 0);
  std::vector<AlgebraElement> args(p);
  std::function<void(int)> visit = [&](int k) {
    if (k < p) {
      for (int i = 0; i <= (k == 0 ? n - 1 : idx[k - 1]); ++i) {
        idx[k] = i;
        visit(k + 1);
      }
      return;
    }
    double weight = 1.0;
    for (int k0 = 0, run = 1; k0 < p; ++k0) {
      run = (k0 > 0 && idx[k0] == idx[k0 - 1]) ? run + 1 : 1;
      weight /= run;
    }
    // Ad((g_{k+1} ... g_p)^{-1}) applied to the k-th velocity
    GroupElement tail = G.identity();
    for (int j = p - 1; j >= 0; --j) {
      args[j] = G.adjoint_inverse(tail, paths[j].midpoint_velocity(idx[j]));
      tail = G.multiply(gm[j][idx[j]], tail);
    }
    Vec val = w(args);
    if (!spec.module.is_trivial()) val = spec.act(tail, val);
    total += weight * val;
  };
  visit(0);
  return spec.module.reduce(total / std::pow(static_cast<double>(n), p));
}

Vec period_integral(const SphereCycle& tau, const CocycleSpec& spec) { return omega_eq_integral(tau.grid(), spec); }

LambdaValues resolving_Lambda(const HomotopyGrid& hbar, const CocycleSpec& spec)
{
  hbar.require_null_homotopy();
  LambdaValues out;
  out.Lambda = -omega_eq_integral(hbar, spec);
  out.Lambda_prime = omega_eq_integral(hbar.inverted(), spec);
  out.Lambda_sym = 0.5 * (out.Lambda + out.Lambda_prime);
  return out;
}

LatticeResidual make_residual(const Vec& raw, const LatticeModule& m)
{
  LatticeResidual r;
  r.raw = m.reduce(raw);
  r.raw_norm = m.norm(r.raw);
  r.lattice_distance = m.lattice_distance(r.raw);
  return r;
}

LatticeResidual cocycle_identity_residual(const GroupPath& f, const GroupPath& g, const GroupPath& h,
                                          const CocycleSpec& spec)
{
  const GroupPath fg = path_product(f, g);
  const GroupPath gh = path_product(g, h);
  const Vec raw = spec.act(f.endpoint(), vanest_C(g, h, spec)) - vanest_C(fg, h, spec) +
                  vanest_C(f, gh, spec) - vanest_C(f, g, spec);
  return make_residual(raw, spec.module);
}

LatticeResidual coboundary_residual(const HomotopyGrid& fbar, const HomotopyGrid& gbar, const CocycleSpec& spec)
{
  fbar.require_null_homotopy();
  gbar.require_null_homotopy();
  const Vec raw = vanest_C(fbar.endpoint(), gbar.endpoint(), spec) - omega_eq_integral(fbar, spec) -
                  omega_eq_integral(gbar, spec) + omega_eq_integral(grid_product(fbar, gbar), spec);
  return make_residual(raw, spec.module);
}

double convergence_order(const std::vector<int>& resolutions, const std::vector<double>& errors)
{
  if (resolutions.size() != errors.size() || resolutions.size() < 2)
    throw std::invalid_argument("convergence_order needs at least two matching samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(errors.size());
  for (size_t k = 0; k < errors.size(); ++k) {
    if (!(errors[k] > 0) || !std::isfinite(errors[k])) return std::numeric_limits<double>::quiet_NaN();
    const double x = std::log(static_cast<double>(resolutions[k]));
    const double y = std::log(errors[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return -(m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace pathext
