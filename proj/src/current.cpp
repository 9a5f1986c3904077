#include "pathext/current.hpp"

#include <cmath>
#include <stdexcept>

namespace pathext {

namespace {

// S^1: integrals per coefficient; T^2: the raw form itself (reduced by the module)
Vec form_to_module(const SpatialGrid& grid, int vdim, const Vec& form)
{
  if (grid.manifold() == Manifold::T2) return form;
  const int P = grid.points();
  Vec out(vdim);
  for (int v = 0; v < vdim; ++v) out(v) = form.segment(v * P, P).mean();
  return out;
}

Vec reduce_forms(const SpatialGrid& grid, int vdim, const Vec& a)
{
  const int block = 2 * grid.points();
  Vec out(a.size());
  for (int v = 0; v < vdim; ++v) out.segment(v * block, block) = grid.remove_exact(a.segment(v * block, block));
  return out;
}

std::vector<Mat> matrix_derivative(const SpatialGrid& grid, const std::vector<Mat>& g, int axis)
{
  const int P = grid.points();
  const int n = static_cast<int>(g[0].rows());
  std::vector<Mat> out(P, Mat::Zero(n, n));
  Vec re(P), im(P);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      for (int p = 0; p < P; ++p) {
        re(p) = g[p](r, c).real();
        im(p) = g[p](r, c).imag();
      }
      const Vec dre = grid.derivative(re, axis), dim = grid.derivative(im, axis);
      for (int p = 0; p < P; ++p) out[p](r, c) = Complex(dre(p), dim(p));
    }
  return out;
}

void require_current(const CurrentSpace& cs, const Group& G, const char* where)
{
  if (G.points() != cs.points()) throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

}  // namespace

Vec CurrentSpace::form_class(const Vec& form) const
{
  if (!quotient) return form;
  return spec.module.reduce(form_to_module(*grid, vdim(), form));
}

CurrentSpace make_current_space(const LieAlgebraSpec& algebra, Manifold manifold, int M)
{
  CurrentSpace cs;
  auto grid = std::make_shared<const SpatialGrid>(manifold, M);
  cs.grid = grid;
  cs.group = std::make_shared<const Group>(algebra, grid->points());
  const int V = algebra.coefficient_dim();
  const int P = grid->points();

  LatticeModule module;
  if (manifold == Manifold::S1) {
    module = LatticeModule(V, Eigen::MatrixXd::Identity(V, V));
  } else {
    Eigen::MatrixXd gens = Eigen::MatrixXd::Zero(2 * V * P, 2 * V);
    for (int v = 0; v < V; ++v)
      for (int a = 0; a < 2; ++a) gens.block((2 * v + a) * P, 2 * v + a, P, 1).setOnes();
    module = LatticeModule(2 * V * P, gens);
    module.set_reduction([grid, V](const Vec& a) { return reduce_forms(*grid, V, a); });
    module.set_norm_weight(1.0 / P);
  }

  cs.spec.name = "current_" + algebra.name() + "_" + to_string(manifold);
  cs.spec.group = cs.group;
  cs.spec.module = std::move(module);
  const CurrentSpace view = cs;  // grid and group only
  cs.spec.omega = [view](const AlgebraElement& x, const AlgebraElement& y) -> Vec {
    return form_to_module(*view.grid, view.vdim(), current_omega_form(view, x, y));
  };
  return cs;
}

Eigen::MatrixXd current_coords(const Group& G, const AlgebraElement& x)
{
  Eigen::MatrixXd out(G.algebra().dim(), G.points());
  for (int p = 0; p < G.points(); ++p) out.col(p) = G.coords(x, p);
  return out;
}

Vec current_omega_form(const CurrentSpace& cs, const AlgebraElement& x, const AlgebraElement& y)
{
  const Group& G = *cs.group;
  require_current(cs, G, "current_omega");
  if (static_cast<int>(x.at.size()) != cs.points() || static_cast<int>(y.at.size()) != cs.points())
    throw std::invalid_argument("current_omega: grid mismatch");
  const LieAlgebraSpec& alg = G.algebra();
  const int d = alg.dim(), V = cs.vdim(), P = cs.points(), D = cs.grid->dims();
  const Eigen::MatrixXd X = current_coords(G, x), Y = current_coords(G, y);
  Vec form = Vec::Zero(cs.form_size());
  for (int a = 0; a < D; ++a) {
    Eigen::MatrixXd dX(d, P), dY(d, P);
    for (int i = 0; i < d; ++i) {
      dX.row(i) = cs.grid->derivative(X.row(i).transpose(), a).transpose();
      dY.row(i) = cs.grid->derivative(Y.row(i).transpose(), a).transpose();
    }
    for (int p = 0; p < P; ++p) {
      const Vec w = alg.kappa_coords(X.col(p), dY.col(p)) - alg.kappa_coords(Y.col(p), dX.col(p));
      for (int v = 0; v < V; ++v) form((v * D + a) * P + p) = w(v);
    }
  }
  return form;
}

AlgebraElement left_spatial_derivative(const CurrentSpace& cs, const GroupElement& g, int axis)
{
  const Group& G = *cs.group;
  const std::vector<Mat> dg = matrix_derivative(*cs.grid, g.at, axis);
  const GroupElement gi = G.inverse(g);
  AlgebraElement out;
  out.at.resize(dg.size());
  for (size_t p = 0; p < dg.size(); ++p) out.at[p] = G.algebra().from_coords(G.algebra().coords(gi.at[p] * dg[p]));
  return out;
}

AlgebraElement right_spatial_derivative(const CurrentSpace& cs, const GroupElement& g, int axis)
{
  const Group& G = *cs.group;
  const std::vector<Mat> dg = matrix_derivative(*cs.grid, g.at, axis);
  const GroupElement gi = G.inverse(g);
  AlgebraElement out;
  out.at.resize(dg.size());
  for (size_t p = 0; p < dg.size(); ++p) out.at[p] = G.algebra().from_coords(G.algebra().coords(dg[p] * gi.at[p]));
  return out;
}

namespace {

// one-form (v, axis, p) of kappa(a1, b1[axis]) - kappa(a2[axis], b2)
void add_wedge(const CurrentSpace& cs, const AlgebraElement& a1, const std::vector<AlgebraElement>& b1,
               const std::vector<AlgebraElement>& a2, const AlgebraElement& b2, double weight, Vec& form)
{
  const LieAlgebraSpec& alg = cs.group->algebra();
  const int V = cs.vdim(), P = cs.points(), D = cs.grid->dims();
  for (int a = 0; a < D; ++a)
    for (int p = 0; p < P; ++p) {
      const Vec w = alg.kappa_eval(a1.at[p], b1[a].at[p]) - alg.kappa_eval(a2[a].at[p], b2.at[p]);
      for (int v = 0; v < V; ++v) form((v * D + a) * P + p) += weight * w(v);
    }
}

}  // namespace

Vec current_csym_closed_form(const CurrentSpace& cs, const GroupPath& f, const GroupPath& g)
{
  const Group& G = *cs.group;
  require_current(cs, f.group(), "current_csym_closed_form");
  if (f.n() != g.n()) throw std::invalid_argument("current_csym_closed_form: resolution mismatch");
  const int n = f.n(), D = cs.grid->dims();
  Vec form = Vec::Zero(cs.form_size());
  for (int k = 0; k < n; ++k) {
    const GroupElement fm = f.midpoint_sample(k), gm = g.midpoint_sample(k);
    const AlgebraElement rg = G.adjoint(gm, g.midpoint_velocity(k));
    std::vector<AlgebraElement> lx(D), rx(D);
    for (int a = 0; a < D; ++a) {
      lx[a] = left_spatial_derivative(cs, fm, a);
      rx[a] = right_spatial_derivative(cs, gm, a);
    }
    add_wedge(cs, f.midpoint_velocity(k), rx, lx, rg, 1.0 / n, form);
  }
  return cs.form_class(form);
}

Vec cartan_eta_integral(const CurrentSpace& cs, const HomotopyGrid& gbar)
{
  const Group& G = gbar.group();
  require_current(cs, G, "cartan_eta_integral");
  const LieAlgebraSpec& alg = G.algebra();
  const int S = gbar.S(), N = gbar.N(), V = cs.vdim(), P = cs.points(), D = cs.grid->dims();
  const double ds = 1.0 / S, dt = 1.0 / N;
  Vec form = Vec::Zero(cs.form_size());
  for (int i = 0; i < S; ++i)
    for (int j = 0; j < N; ++j)
      for (bool anti : {false, true}) {
        CellTangents c;
        try {
          c = cell_tangents(G, gbar.at(i, j), gbar.at(i + 1, j), gbar.at(i, j + 1), gbar.at(i + 1, j + 1), ds, dt,
                            anti);
        } catch (const DomainError& e) {
          throw NumericFailure("cartan_eta_integral: cell (" + std::to_string(i) + ", " + std::to_string(j) +
                               ") is too coarse: " + e.what());
        }
        for (int a = 0; a < D; ++a) {
          const AlgebraElement ax = left_spatial_derivative(cs, c.center, a);
          for (int p = 0; p < P; ++p) {
            const Vec w = alg.kappa_eval(c.xs.at[p], alg.bracket(c.xt.at[p], ax.at[p]));
            for (int v = 0; v < V; ++v) form((v * D + a) * P + p) += 0.5 * ds * dt * w(v);
          }
        }
      }
  return cs.form_class(form);
}

namespace {

// line integral of fbar^* theta^l wedge gbar^* theta^r along a polygon of grid nodes
void add_edge(const CurrentSpace& cs, const std::vector<GroupElement>& f, const std::vector<GroupElement>& g,
              Vec& form)
{
  const Group& G = *cs.group;
  const int K = static_cast<int>(f.size()) - 1, D = cs.grid->dims();
  for (int k = 0; k < K; ++k) {
    const AlgebraElement cf = G.log(G.left_quotient(f[k], f[k + 1]));
    const AlgebraElement cg = G.log(G.left_quotient(g[k], g[k + 1]));
    const GroupElement fm = G.multiply(f[k], G.exp(0.5 * cf));
    const GroupElement gm = G.multiply(g[k], G.exp(0.5 * cg));
    std::vector<AlgebraElement> lx(D), rx(D);
    for (int a = 0; a < D; ++a) {
      lx[a] = left_spatial_derivative(cs, fm, a);
      rx[a] = right_spatial_derivative(cs, gm, a);
    }
    // unit steps: the tangents are the log differences, the weight is 1
    add_wedge(cs, cf, rx, lx, G.adjoint(gm, cg), 1.0, form);
  }
}

}  // namespace

PolyakovWiegmann polyakov_wiegmann(const CurrentSpace& cs, const HomotopyGrid& fbar, const HomotopyGrid& gbar)
{
  if (fbar.S() != gbar.S() || fbar.N() != gbar.N())
    throw std::invalid_argument("polyakov_wiegmann: resolution mismatch");
  PolyakovWiegmann out;
  out.eta_product = cartan_eta_integral(cs, grid_product(fbar, gbar));
  out.eta_f = cartan_eta_integral(cs, fbar);
  out.eta_g = cartan_eta_integral(cs, gbar);

  const int S = fbar.S(), N = fbar.N();
  std::vector<GroupElement> fe, ge;
  auto node = [&](int i, int j) {
    fe.push_back(fbar.at(i, j));
    ge.push_back(gbar.at(i, j));
  };
  // counterclockwise in (s, t)
  for (int i = 0; i < S; ++i) node(i, 0);
  for (int j = 0; j < N; ++j) node(S, j);
  for (int i = S; i > 0; --i) node(i, N);
  for (int j = N; j >= 0; --j) node(0, j);
  Vec form = Vec::Zero(cs.form_size());
  add_edge(cs, fe, ge, form);
  out.boundary = cs.form_class(form);

  out.residual = cs.spec.module.reduce(out.eta_product - out.eta_f - out.eta_g + out.boundary);
  out.residual_norm = cs.spec.module.norm(out.residual);
  return out;
}

Mat pi3_generator_value(double s, double t, double x)
{
  const double c0 = 315.0 / 128.0;
  const Eigen::Vector3d u(s - 0.5, t - 0.5, x - 0.5);
  const double len = u.norm(), r = 2 * len;
  Mat m = Mat::Identity(2, 2);
  if (r >= 1) return m;
  const double r2 = r * r;
  const double w = c0 * r * (1 - r2 * (4.0 / 3 - r2 * (6.0 / 5 - r2 * (4.0 / 7 - r2 / 9))));
  const double theta = M_PI * (1 - w);
  const double c = std::cos(theta);
  // sin(theta) / |u| stays bounded: theta - pi is odd in r
  const double q = len > 0 ? std::sin(theta) / len : 0.0;
  m(0, 0) = Complex(c, -q * u(2));
  m(1, 1) = Complex(c, q * u(2));
  m(0, 1) = Complex(-q * u(1), -q * u(0));
  m(1, 0) = Complex(q * u(1), -q * u(0));
  return m;
}

HomotopyGrid pi3_generator(const CurrentSpace& cs, int S, int N)
{
  if (cs.group->kind() != GroupKind::SU2 || cs.grid->manifold() != Manifold::S1)
    throw std::invalid_argument("pi3_generator: needs SU(2) currents on S^1");
  const int P = cs.points();
  const SpatialGrid& grid = *cs.grid;
  auto fn = [&](double s, double t) {
    GroupElement g;
    g.at.resize(P);
    for (int p = 0; p < P; ++p) g.at[p] = pi3_generator_value(s, t, grid.coord(p, 0));
    return g;
  };
  return HomotopyGrid::from_function(cs.group, fn, S, N, kNullHomotopyPins | kPinS1);
}

}  // namespace pathext
