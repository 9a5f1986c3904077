#include "pathext/appendix.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace pathext {

namespace {

// Random algebra valued trigonometric polynomial in (s, t).
struct PlanePolynomial {
  struct Term {
    int p, q;
    double phase;
    Vec coeff;
  };
  std::vector<Term> terms;

  PlanePolynomial(const LieAlgebraSpec& alg, std::mt19937_64& rng, double amplitude)
  {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int p = 0; p <= 2; ++p)
      for (int q = -2; q <= 2; ++q) {
        Vec c(alg.dim());
        for (int k = 0; k < alg.dim(); ++k) c[k] = amplitude * u(rng) / (1.0 + p * p + q * q);
        terms.push_back({p, q, M_PI * u(rng), c});
      }
  }

  Vec operator()(double s, double t) const
  {
    Vec out = Vec::Zero(terms.front().coeff.size());
    for (const auto& term : terms) out += std::cos(M_PI * (term.p * s + term.q * t) + term.phase) * term.coeff;
    return out;
  }
};

class Stencil {
 public:
  explicit Stencil(const CalculusSamples& smp) : s_(smp), G_(*smp.g.group), n_(smp.n()), h_(1.0 / smp.n()) {}

  const GroupElement& g(int i, int j) const { return s_.g.at(i, j); }
  const GroupElement& f(int i, int j) const { return s_.f.at(i, j); }
  const AlgebraElement& xi(int i, int j) const { return s_.xi[static_cast<size_t>(i) * (n_ + 1) + j]; }

  // log(a^{-1} b) / step and log(b a^{-1}) / step
  AlgebraElement left(const GroupElement& a, const GroupElement& b, double step) const
  {
    return (1.0 / step) * G_.log(G_.left_quotient(a, b));
  }
  AlgebraElement right(const GroupElement& a, const GroupElement& b, double step) const
  {
    return (1.0 / step) * G_.log(G_.multiply(b, G_.inverse(a)));
  }
  GroupElement midpoint(const GroupElement& a, const GroupElement& b) const
  {
    return G_.multiply(a, G_.exp(0.5 * G_.log(G_.left_quotient(a, b))));
  }

  // interval derivatives of g along t (axis 1) or s (axis 0) starting at node (i, j)
  const GroupElement& next(int i, int j, int axis) const { return axis == 0 ? g(i + 1, j) : g(i, j + 1); }
  AlgebraElement left_step(int i, int j, int axis) const { return left(g(i, j), next(i, j, axis), h_); }
  AlgebraElement right_step(int i, int j, int axis) const { return right(g(i, j), next(i, j, axis), h_); }
  // centered log derivatives along s at node (i, j), 0 < i < n
  AlgebraElement left_s(int i, int j) const { return left(g(i - 1, j), g(i + 1, j), 2 * h_); }
  AlgebraElement right_s(int i, int j) const { return right(g(i - 1, j), g(i + 1, j), 2 * h_); }

  template <class Fn>
  double over_edges(Fn&& residual) const
  {
    double worst = 0;
    for (int axis = 0; axis < 2; ++axis)
      for (int i = 0; i <= n_ - (axis == 0); ++i)
        for (int j = 0; j <= n_ - (axis == 1); ++j) worst = std::max(worst, residual(i, j, axis).max_abs());
    return worst;
  }

  double product_rule() const
  {
    return over_edges([&](int i, int j, int axis) {
      const int i1 = i + (axis == 0), j1 = j + (axis == 1);
      const AlgebraElement lhs = left(G_.multiply(f(i, j), g(i, j)), G_.multiply(f(i1, j1), g(i1, j1)), h_);
      const GroupElement gm = midpoint(g(i, j), g(i1, j1));
      return lhs - left(g(i, j), g(i1, j1), h_) - G_.adjoint_inverse(gm, left(f(i, j), f(i1, j1), h_));
    });
  }

  double adjoint(bool inverse) const
  {
    return over_edges([&](int i, int j, int axis) {
      const int i1 = i + (axis == 0), j1 = j + (axis == 1);
      const GroupElement gm = midpoint(g(i, j), g(i1, j1));
      const AlgebraElement xm = 0.5 * (xi(i, j) + xi(i1, j1));
      const AlgebraElement dxi = (1.0 / h_) * (xi(i1, j1) - xi(i, j));
      const AlgebraElement dl = left_step(i, j, axis);
      if (!inverse) {
        const AlgebraElement lhs = (1.0 / h_) * (G_.adjoint(g(i1, j1), xi(i1, j1)) - G_.adjoint(g(i, j), xi(i, j)));
        return lhs - G_.adjoint(gm, dxi + G_.bracket(dl, xm));
      }
      const AlgebraElement lhs =
          (1.0 / h_) * (G_.adjoint_inverse(g(i1, j1), xi(i1, j1)) - G_.adjoint_inverse(g(i, j), xi(i, j)));
      return lhs - G_.adjoint_inverse(gm, dxi) + G_.bracket(dl, G_.adjoint_inverse(gm, xm));
    });
  }

  double right_left() const
  {
    return over_edges([&](int i, int j, int axis) {
      const int i1 = i + (axis == 0), j1 = j + (axis == 1);
      const AlgebraElement dr = right_step(i, j, axis);
      const AlgebraElement a = dr - G_.adjoint(midpoint(g(i, j), g(i1, j1)), left_step(i, j, axis));
      const AlgebraElement b = dr + left(G_.inverse(g(i, j)), G_.inverse(g(i1, j1)), h_);
      return a.max_abs() > b.max_abs() ? a : b;
    });
  }

  // cell centers: the two forms of the Maurer-Cartan equation
  double maurer_cartan(bool fields) const
  {
    double worst = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        const AlgebraElement lt0 = left_step(i, j, 1), lt1 = left_step(i + 1, j, 1);
        const AlgebraElement ls0 = left_step(i, j, 0), ls1 = left_step(i, j + 1, 0);
        const AlgebraElement lt = 0.5 * (lt0 + lt1), ls = 0.5 * (ls0 + ls1);
        // (d d^l g)(d_s, d_t) = d_s d^l_t - d_t d^l_s
        const AlgebraElement d = (1.0 / h_) * (lt1 - lt0) - (1.0 / h_) * (ls1 - ls0);
        AlgebraElement r;
        if (fields)
          r = d - G_.bracket(lt, ls);
        else
          r = d + 0.5 * (G_.bracket(ls, lt) - G_.bracket(lt, ls));
        worst = std::max(worst, r.max_abs());
      }
    return worst;
  }

  // interior t-edge midpoints (i, j + 1/2), centered differences in s
  template <class Fn>
  double over_interior_t_edges(Fn&& residual) const
  {
    double worst = 0;
    for (int i = 1; i < n_; ++i)
      for (int j = 0; j < n_; ++j) worst = std::max(worst, residual(i, j).max_abs());
    return worst;
  }

  double mixed_partials(bool right_handed) const
  {
    return over_interior_t_edges([&](int i, int j) {
      if (!right_handed) {
        const AlgebraElement dx_lt = (0.5 / h_) * (left_step(i + 1, j, 1) - left_step(i - 1, j, 1));
        const AlgebraElement lx0 = left_s(i, j), lx1 = left_s(i, j + 1);
        return dx_lt - (1.0 / h_) * (lx1 - lx0) - G_.bracket(left_step(i, j, 1), 0.5 * (lx0 + lx1));
      }
      const AlgebraElement dx_rt = (0.5 / h_) * (right_step(i + 1, j, 1) - right_step(i - 1, j, 1));
      const AlgebraElement rx0 = right_s(i, j), rx1 = right_s(i, j + 1);
      return dx_rt - (1.0 / h_) * (rx1 - rx0) + G_.bracket(right_step(i, j, 1), 0.5 * (rx0 + rx1));
    });
  }

  double right_time_derivative() const
  {
    return over_interior_t_edges([&](int i, int j) {
      const AlgebraElement dt_rx = (1.0 / h_) * (right_s(i, j + 1) - right_s(i, j));
      const AlgebraElement dx_lt = (0.5 / h_) * (left_step(i + 1, j, 1) - left_step(i - 1, j, 1));
      return dt_rx - G_.adjoint(midpoint(g(i, j), g(i, j + 1)), dx_lt);
    });
  }

 private:
  const CalculusSamples& s_;
  const Group& G_;
  int n_;
  double h_;
};

}  // namespace

std::string to_string(CalculusIdentity id)
{
  switch (id) {
    case CalculusIdentity::ProductRule: return "product_rule";
    case CalculusIdentity::MaurerCartan: return "maurer_cartan";
    case CalculusIdentity::AdjointDerivative: return "adjoint_derivative";
    case CalculusIdentity::MaurerCartanFields: return "maurer_cartan_fields";
    case CalculusIdentity::LeftMixedPartials: return "left_mixed_partials";
    case CalculusIdentity::RightTimeDerivative: return "right_time_derivative";
    case CalculusIdentity::RightMixedPartials: return "right_mixed_partials";
    case CalculusIdentity::InverseAdjointDerivative: return "inverse_adjoint_derivative";
    case CalculusIdentity::RightLeft: return "right_left";
  }
  return "unknown";
}

CalculusIdentity calculus_identity_from_index(int k)
{
  if (k < 0 || k >= kCalculusIdentities) throw std::out_of_range("calculus identity index");
  return static_cast<CalculusIdentity>(k);
}

CalculusFamily random_calculus_family(GroupPtr group, std::uint64_t seed, double amplitude)
{
  std::mt19937_64 rng(seed);
  const LieAlgebraSpec& alg = group->algebra();
  const PlanePolynomial a(alg, rng, amplitude), b(alg, rng, amplitude), c(alg, rng, amplitude),
      d(alg, rng, amplitude), x(alg, rng, amplitude);
  CalculusFamily fam;
  fam.group = group;
  const Group* G = group.get();
  fam.g = [=](double s, double t) { return G->multiply(G->exp_coords(a(s, t)), G->exp_coords(b(s, t))); };
  fam.f = [=](double s, double t) { return G->multiply(G->exp_coords(c(s, t)), G->exp_coords(d(s, t))); };
  fam.xi = [=](double s, double t) { return G->from_coords(x(s, t)); };
  return fam;
}

CalculusFamily constant_calculus_family(GroupPtr group)
{
  CalculusFamily fam;
  fam.group = group;
  const Group* G = group.get();
  fam.f = fam.g = [=](double, double) { return G->identity(); };
  fam.xi = [=](double, double) { return G->zero(); };
  return fam;
}

CalculusSamples sample_family(const CalculusFamily& family, int n)
{
  if (n < 2) throw std::invalid_argument("sample_family: need at least two intervals");
  CalculusSamples out;
  out.f = SurfaceGrid::from_function(family.group, family.f, n, n);
  out.g = SurfaceGrid::from_function(family.group, family.g, n, n);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) out.xi.push_back(family.xi(static_cast<double>(i) / n, static_cast<double>(j) / n));
  return out;
}

double calculus_residual(const CalculusSamples& samples, CalculusIdentity id)
{
  const Stencil st(samples);
  switch (id) {
    case CalculusIdentity::ProductRule: return st.product_rule();
    case CalculusIdentity::MaurerCartan: return st.maurer_cartan(false);
    case CalculusIdentity::AdjointDerivative: return st.adjoint(false);
    case CalculusIdentity::MaurerCartanFields: return st.maurer_cartan(true);
    case CalculusIdentity::LeftMixedPartials: return st.mixed_partials(false);
    case CalculusIdentity::RightTimeDerivative: return st.right_time_derivative();
    case CalculusIdentity::RightMixedPartials: return st.mixed_partials(true);
    case CalculusIdentity::InverseAdjointDerivative: return st.adjoint(true);
    case CalculusIdentity::RightLeft: return st.right_left();
  }
  throw std::invalid_argument("calculus_residual: unknown identity");
}

std::vector<CalculusCheck> calculus_suite(const CalculusFamily& family, int n, double min_order)
{
  const CalculusSamples coarse = sample_family(family, n), fine = sample_family(family, 2 * n);
  std::vector<CalculusCheck> out;
  for (int k = 0; k < kCalculusIdentities; ++k) {
    CalculusCheck c;
    c.id = calculus_identity_from_index(k);
    c.coarse = calculus_residual(coarse, c.id);
    c.fine = calculus_residual(fine, c.id);
    c.exact = c.coarse <= calculus_floor(n) && c.fine <= calculus_floor(2 * n);
    c.order = c.fine > calculus_floor(2 * n) ? std::log2(c.coarse / c.fine) : std::numeric_limits<double>::quiet_NaN();
    c.pass = c.exact || c.order >= min_order;
    out.push_back(c);
  }
  return out;
}

}  // namespace pathext
