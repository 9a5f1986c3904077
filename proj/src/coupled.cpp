#include "pathext/coupled.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pathext {

namespace {

// sorts idx in place; returns the sign of the permutation, 0 on a repeated entry
int sort_sign(std::vector<int>& idx)
{
  int sign = 1;
  for (size_t a = 0; a < idx.size(); ++a)
    for (size_t b = 0; b + 1 < idx.size() - a; ++b) {
      if (idx[b] == idx[b + 1]) return 0;
      if (idx[b] > idx[b + 1]) {
        std::swap(idx[b], idx[b + 1]);
        sign = -sign;
      }
    }
  for (size_t a = 0; a + 1 < idx.size(); ++a)
    if (idx[a] == idx[a + 1]) return 0;
  return sign;
}

Cochain::Index to_index(const std::vector<int>& v)
{
  Cochain::Index idx{-1, -1, -1};
  std::copy(v.begin(), v.end(), idx.begin());
  return idx;
}

}  // namespace

Cochain::Cochain(int degree, int dim, int vdim) : degree_(degree), dim_(dim), vdim_(vdim)
{
  if (degree < 1 || degree > 3) throw std::invalid_argument("Cochain: degree must be 1, 2 or 3");
  for (int i = 0; i < dim; ++i) {
    if (degree == 1) {
      indices_.push_back({i, -1, -1});
      continue;
    }
    for (int j = i + 1; j < dim; ++j) {
      if (degree == 2) {
        indices_.push_back({i, j, -1});
        continue;
      }
      for (int k = j + 1; k < dim; ++k) indices_.push_back({i, j, k});
    }
  }
  coeffs_ = Eigen::MatrixXd::Zero(size(), vdim);
}

int Cochain::position(const Index& idx) const
{
  const auto it = std::lower_bound(indices_.begin(), indices_.end(), idx);
  if (it == indices_.end() || *it != idx) throw std::out_of_range("Cochain: not a strictly increasing index");
  return static_cast<int>(it - indices_.begin());
}

Vec Cochain::on_basis(const std::vector<int>& idx) const
{
  if (static_cast<int>(idx.size()) != degree_) throw std::invalid_argument("Cochain::on_basis: wrong arity");
  std::vector<int> sorted = idx;
  const int sign = sort_sign(sorted);
  if (sign == 0) return Vec::Zero(vdim_);
  return sign * coeffs_.row(position(to_index(sorted))).transpose();
}

Vec Cochain::eval(const std::vector<Vec>& args) const
{
  if (static_cast<int>(args.size()) != degree_) throw std::invalid_argument("Cochain::eval: wrong arity");
  Vec out = Vec::Zero(vdim_);
  std::vector<int> perm(degree_);
  for (int k = 0; k < size(); ++k) {
    for (int a = 0; a < degree_; ++a) perm[a] = a;
    double alt = 0;
    do {
      std::vector<int> p = perm;
      const int sign = sort_sign(p);
      double prod = sign;
      for (int a = 0; a < degree_; ++a) prod *= args[a](indices_[k][perm[a]]);
      alt += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    out += alt * coeffs_.row(k).transpose();
  }
  return out;
}

Eigen::MatrixXd ce_differential_matrix(const LieAlgebraSpec& alg, int p)
{
  const int d = alg.dim();
  const Cochain src(p, d, 1), dst(p + 1, d, 1);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(dst.size(), src.size());
  for (int r = 0; r < dst.size(); ++r) {
    const auto& J = dst.indices()[r];
    for (int a = 0; a <= p; ++a)
      for (int b = a + 1; b <= p; ++b) {
        const int sign = (a + b) % 2 ? -1 : 1;
        for (int k = 0; k < d; ++k) {
          const double c = alg.structure(J[a], J[b], k);
          if (c == 0.0) continue;
          std::vector<int> tuple{k};
          for (int q = 0; q <= p; ++q)
            if (q != a && q != b) tuple.push_back(J[q]);
          const int s2 = sort_sign(tuple);
          if (s2 == 0) continue;
          D(r, src.position(to_index(tuple))) += sign * s2 * c;
        }
      }
  }
  return D;
}

Cochain ce_differential(const LieAlgebraSpec& alg, const Cochain& w)
{
  Cochain out(w.degree() + 1, w.dim(), w.vdim());
  out.coefficients() = ce_differential_matrix(alg, w.degree()) * w.coefficients();
  return out;
}

Cochain cartan_map(const LieAlgebraSpec& alg)
{
  if (alg.kappa_invariance_residual() > 1e-12)
    throw std::invalid_argument("cartan_map: kappa is not invariant for " + alg.name());
  const int d = alg.dim(), V = alg.coefficient_dim();
  Cochain g(3, d, V);
  for (int r = 0; r < g.size(); ++r) {
    const auto& [i, j, k] = g.indices()[r];
    for (int l = 0; l < d; ++l)
      for (int v = 0; v < V; ++v) g.coefficients()(r, v) += alg.structure(i, j, l) * alg.kappa(l, k, v);
  }
  return g;
}

BetaSolution solve_beta(const LieAlgebraSpec& alg, double tol)
{
  const Cochain gamma = cartan_map(alg);
  BetaSolution out;
  out.beta = Cochain(2, alg.dim(), alg.coefficient_dim());
  if (gamma.size() > 0) {
    const Eigen::MatrixXd D = ce_differential_matrix(alg, 2);
    // absolute cutoff: structure constants derived from matrices carry roundoff
    Eigen::BDCSVD<Eigen::MatrixXd> svd(D, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vec sv = svd.singularValues();
    Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(D.cols(), gamma.vdim());
    const Eigen::MatrixXd ug = svd.matrixU().transpose() * gamma.coefficients();
    for (int k = 0; k < sv.size(); ++k) {
      if (sv(k) <= 1e-10) continue;
      ++out.rank;
      coeffs += svd.matrixV().col(k) * (ug.row(k) / sv(k));
    }
    out.beta.coefficients() = coeffs;
    out.residual = (D * out.beta.coefficients() - gamma.coefficients()).norm();
    const double scale = gamma.coefficients().norm();
    out.relative_residual = scale > 0 ? out.residual / scale : 0.0;
  }
  out.exact = out.residual <= tol;
  return out;
}

namespace {

// beta as one dense antisymmetric matrix per coefficient
std::vector<Eigen::MatrixXd> dense_beta(const Cochain& beta)
{
  const int d = beta.dim();
  std::vector<Eigen::MatrixXd> B(beta.vdim(), Eigen::MatrixXd::Zero(d, d));
  for (int r = 0; r < beta.size(); ++r) {
    const int i = beta.indices()[r][0], j = beta.indices()[r][1];
    for (int v = 0; v < beta.vdim(); ++v) {
      B[v](i, j) = beta.coefficients()(r, v);
      B[v](j, i) = -beta.coefficients()(r, v);
    }
  }
  return B;
}

Vec beta_field_dense(const CurrentSpace& cs, const std::vector<Eigen::MatrixXd>& B, const AlgebraElement& x,
                     const AlgebraElement& y)
{
  const Group& G = *cs.group;
  const int P = cs.points(), V = cs.vdim();
  const Eigen::MatrixXd X = current_coords(G, x), Y = current_coords(G, y);
  Vec out(V * P);
  for (int v = 0; v < V; ++v)
    for (int p = 0; p < P; ++p) out(v * P + p) = X.col(p).dot(B[v] * Y.col(p));
  return out;
}

// d of a V-valued function (index v * P + p) as a form
Vec function_gradient(const CurrentSpace& cs, const Vec& fn)
{
  const int P = cs.points(), D = cs.grid->dims();
  Vec out(cs.form_size());
  for (int v = 0; v < cs.vdim(); ++v) out.segment(v * D * P, D * P) = cs.grid->gradient(fn.segment(v * P, P));
  return out;
}

Vec kappa_field(const CurrentSpace& cs, const AlgebraElement& x, const AlgebraElement& y)
{
  const LieAlgebraSpec& alg = cs.group->algebra();
  const int P = cs.points(), V = cs.vdim();
  Vec out(V * P);
  for (int p = 0; p < P; ++p) {
    const Vec w = alg.kappa_eval(x.at[p], y.at[p]);
    for (int v = 0; v < V; ++v) out(v * P + p) = w(v);
  }
  return out;
}

// adds weight * fn(v, p) into the (v, axis, p) entries of a form
void add_component(const CurrentSpace& cs, const Vec& fn, int axis, double weight, Vec& form)
{
  const int P = cs.points(), D = cs.grid->dims();
  for (int v = 0; v < cs.vdim(); ++v) form.segment((v * D + axis) * P, P) += weight * fn.segment(v * P, P);
}

void require_resolution(const GroupPath& f, const GroupPath& g, const char* where)
{
  if (f.n() != g.n()) throw std::invalid_argument(std::string(where) + ": resolution mismatch");
}

}  // namespace

CoupledSpace make_coupled_space(const LieAlgebraSpec& algebra, Manifold manifold, int M, Cochain beta)
{
  if (beta.degree() != 2 || beta.dim() != algebra.dim() || beta.vdim() != algebra.coefficient_dim())
    throw std::invalid_argument("make_coupled_space: beta does not match the algebra");
  CoupledSpace c;
  c.beta = std::move(beta);
  c.current = make_current_space(algebra, manifold, M);
  CurrentSpace& cs = c.current;
  cs.quotient = false;
  cs.spec.name = "coupled_" + algebra.name() + "_" + to_string(manifold);
  cs.spec.module = LatticeModule::trivial(cs.form_size());
  cs.spec.module.set_norm_weight(1.0 / cs.points());
  CurrentSpace view = cs;
  view.spec = CocycleSpec{};
  const auto B = dense_beta(c.beta);
  cs.spec.omega = [view, B](const AlgebraElement& x, const AlgebraElement& y) -> Vec {
    return current_omega_form(view, x, y) - function_gradient(view, beta_field_dense(view, B, x, y));
  };
  return c;
}

CoupledSpace make_coupled_space(const LieAlgebraSpec& algebra, Manifold manifold, int M)
{
  BetaSolution sol = solve_beta(algebra);
  if (!sol.exact)
    throw std::invalid_argument("make_coupled_space: Gamma(kappa) is not exact for " + algebra.name() +
                                " (relative residual " + std::to_string(sol.relative_residual) + ")");
  return make_coupled_space(algebra, manifold, M, std::move(sol.beta));
}

Vec beta_field(const CoupledSpace& c, const AlgebraElement& x, const AlgebraElement& y)
{
  return beta_field_dense(c.current, dense_beta(c.beta), x, y);
}

Vec coupled_omega_form(const CoupledSpace& c, const AlgebraElement& x, const AlgebraElement& y)
{
  return c.spec().omega(x, y);
}

Vec coupled_C_beta(const CoupledSpace& c, const GroupPath& f, const GroupPath& g)
{
  require_resolution(f, g, "coupled_C_beta");
  const Group& G = *c.group();
  const CurrentSpace& cs = c.current;
  const auto B = dense_beta(c.beta);
  const int n = f.n();
  Vec total = Vec::Zero(cs.vdim() * cs.points());
  for (int i = 0; i < n; ++i) {
    const double s = (i + 0.5) / n;
    const AlgebraElement& vf = f.midpoint_velocity(i);
    Vec row = Vec::Zero(total.size());
    for (int j = 0; j < n; ++j) {
      const double t = s * (j + 0.5) / n;
      row += beta_field_dense(cs, B, G.adjoint_inverse(g.at(t), vf), g.velocity_at(t));
    }
    total += s * row;
  }
  return total / (static_cast<double>(n) * n);
}

Vec coupled_m_integral(const CoupledSpace& c, const GroupPath& f, const GroupPath& g, bool swap)
{
  require_resolution(f, g, "coupled_m_integral");
  const Group& G = *c.group();
  const CurrentSpace& cs = c.current;
  const int n = f.n();
  Vec total = Vec::Zero(cs.vdim() * cs.points());
  for (int i = 0; i < n; ++i) {
    const double s = (i + 0.5) / n;
    Vec row = Vec::Zero(total.size());
    for (int j = 0; j < n; ++j) {
      const double t = s * (j + 0.5) / n;
      if (!swap) {
        row += kappa_field(cs, G.adjoint(g.at(t), g.velocity_at(t)), f.midpoint_velocity(i));
      } else {
        row += kappa_field(cs, G.adjoint(g.midpoint_sample(i), g.midpoint_velocity(i)), f.velocity_at(t));
      }
    }
    total += s * row;
  }
  return total / (static_cast<double>(n) * n);
}

CoupledCsymParts coupled_Csym(const CoupledSpace& c, const GroupPath& f, const GroupPath& g)
{
  CoupledCsymParts out;
  out.wedge = current_csym_closed_form(c.current, f, g);
  out.c_beta_sym = 0.5 * (coupled_C_beta(c, f, g) - coupled_C_beta(c, path_inverse(g), path_inverse(f)));
  out.m_antisym = 0.5 * (coupled_m_integral(c, f, g, false) - coupled_m_integral(c, f, g, true));
  out.total = out.wedge - function_gradient(c.current, out.c_beta_sym + out.m_antisym);
  return out;
}

LatticeResidual coupled_decomposition_residual(const CoupledSpace& c, const GroupPath& f, const GroupPath& g)
{
  require_resolution(f, g, "coupled_decomposition_residual");
  const CurrentSpace& cs = c.current;
  const int n = f.n(), D = cs.grid->dims();
  Vec rhs = Vec::Zero(cs.form_size());
  for (int k = 0; k < n; ++k) {
    const GroupElement gm = g.midpoint_sample(k);
    for (int a = 0; a < D; ++a)
      add_component(cs, kappa_field(cs, right_spatial_derivative(cs, gm, a), f.midpoint_velocity(k)), a, 2.0 / n,
                    rhs);
  }
  rhs -= function_gradient(cs, coupled_C_beta(c, f, g) + coupled_m_integral(c, f, g));
  return make_residual(vanest_C(f, g, c.spec()) - rhs, c.spec().module);
}

namespace {

Vec endpoint_integral(const CoupledSpace& c, const GroupPath& loop, bool symmetric)
{
  if (!loop.is_loop()) throw std::invalid_argument("coupled Lambda: the path is not a loop");
  const Group& G = *c.group();
  const CurrentSpace& cs = c.current;
  const auto B = dense_beta(c.beta);
  const int n = loop.n(), D = cs.grid->dims();
  Vec form = Vec::Zero(cs.form_size());
  for (int k = 0; k < n; ++k) {
    const GroupElement gm = loop.midpoint_sample(k);
    const AlgebraElement& lt = loop.midpoint_velocity(k);
    const AlgebraElement rt = G.adjoint(gm, lt);
    for (int a = 0; a < D; ++a) {
      const AlgebraElement lx = left_spatial_derivative(cs, gm, a);
      if (symmetric) {
        const AlgebraElement rx = right_spatial_derivative(cs, gm, a);
        add_component(cs, beta_field_dense(cs, B, lx, lt) - beta_field_dense(cs, B, rx, rt), a, 0.5 / n, form);
      } else {
        add_component(cs, kappa_field(cs, lx, lt) + beta_field_dense(cs, B, lx, lt), a, 1.0 / n, form);
      }
    }
  }
  return form;
}

}  // namespace

HomotopyGrid coupled_wrapping_sphere(const CoupledSpace& c, int S, int N, double bump)
{
  const CurrentSpace& cs = c.current;
  if (cs.group->kind() != GroupKind::SU2Semidirect || cs.grid->manifold() != Manifold::S1)
    throw std::invalid_argument("coupled_wrapping_sphere: needs SU(2) x| su(2) currents on S^1");
  const int P = cs.points();
  const Mat e3 = cs.group->algebra().basis()[5].block(0, 2, 2, 2);
  auto fn = [&](double s, double t) {
    GroupElement g;
    g.at.resize(P);
    for (int p = 0; p < P; ++p) {
      const double x = cs.grid->coord(p, 0);
      const Mat u = pi3_generator_value(s, t, x);
      const double phi = bump * std::sin(M_PI * s) * std::sin(M_PI * t) * (1 + std::cos(2 * M_PI * x));
      Mat m = Mat::Zero(4, 4);
      m.block(0, 0, 2, 2) = u;
      m.block(2, 2, 2, 2) = u;
      m.block(0, 2, 2, 2) = phi * (u * e3);
      g.at[p] = m;
    }
    return g;
  };
  return HomotopyGrid::from_function(cs.group, fn, S, N, kNullHomotopyPins | kPinS1);
}

Vec coupled_Lambda_sym(const CoupledSpace& c, const GroupPath& loop) { return endpoint_integral(c, loop, true); }

Vec coupled_Lambda_endpoint(const CoupledSpace& c, const GroupPath& loop)
{
  return endpoint_integral(c, loop, false);
}

}  // namespace pathext
