#include "pathext/families.hpp"

#include <cmath>
#include <random>

namespace pathext {

AlgebraSeries::AlgebraSeries(GroupPtr group, std::uint64_t seed, double amplitude, Basis basis, int time_modes,
                             PointModes point_modes)
    : group_(std::move(group)), basis_(basis), modes_(std::move(point_modes))
{
  const int P = group_->points();
  if (modes_.empty()) modes_.push_back(std::vector<double>(P, 1.0));
  for (const auto& m : modes_)
    if (static_cast<int>(m.size()) != P) throw std::invalid_argument("point mode has the wrong length");
  tm_ = basis_ == Basis::Periodic ? 2 * time_modes + 1 : time_modes;

  const LieAlgebraSpec& alg = group_->algebra();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  terms_.assign(tm_, group_->zero());
  for (int m = 0; m < tm_; ++m) {
    const int freq = basis_ == Basis::Periodic ? (m + 1) / 2 : m + 1;
    const double decay = amplitude / ((1.0 + freq) * (1.0 + freq));
    for (size_t q = 0; q < modes_.size(); ++q) {
      Vec c(alg.dim());
      for (int k = 0; k < alg.dim(); ++k) c[k] = decay * u(rng) / (1.0 + q);
      const Mat x = alg.from_coords(c);
      for (int p = 0; p < P; ++p) terms_[m].at[p] += modes_[q][p] * x;
    }
  }
}

AlgebraElement AlgebraSeries::eval(double t, bool deriv) const
{
  AlgebraElement out = group_->zero();
  for (int m = 0; m < tm_; ++m) {
    double phi;
    if (basis_ == Basis::Periodic) {
      const int freq = (m + 1) / 2;
      const double w = 2 * M_PI * freq;
      if (m == 0)
        phi = deriv ? 0.0 : 1.0;
      else if (m % 2 == 1)
        phi = deriv ? -w * std::sin(w * t) : std::cos(w * t);
      else
        phi = deriv ? w * std::cos(w * t) : std::sin(w * t);
    } else {
      const double w = M_PI * (m + 1);
      phi = deriv ? w * std::cos(w * t) : std::sin(w * t);
    }
    for (size_t p = 0; p < out.at.size(); ++p) out.at[p] += phi * terms_[m].at[p];
  }
  return out;
}

AlgebraElement AlgebraSeries::operator()(double t) const { return eval(t, false); }
AlgebraElement AlgebraSeries::derivative(double t) const { return eval(t, true); }

GroupPath integrate_velocity(GroupPtr group, const std::function<AlgebraElement(double)>& xi, int n, int fine)
{
  if (n < 1 || fine % n != 0) throw std::invalid_argument("integrate_velocity: n must divide the fine step count");
  const Group& G = *group;
  const double h = 1.0 / fine;
  const double c1 = 0.5 - std::sqrt(3.0) / 6, c2 = 0.5 + std::sqrt(3.0) / 6;
  const double k = std::sqrt(3.0) / 12 * h * h;
  std::vector<GroupElement> samples{G.identity()};
  GroupElement g = G.identity();
  for (int step = 0; step < fine; ++step) {
    const double t = step * h;
    const AlgebraElement a1 = xi(t + c1 * h);
    const AlgebraElement a2 = xi(t + c2 * h);
    g = G.multiply(g, G.exp((0.5 * h) * (a1 + a2) + k * G.bracket(a1, a2)));
    if ((step + 1) % (fine / n) == 0) samples.push_back(g);
  }
  return GroupPath::from_samples(std::move(group), std::move(samples));
}

GroupPath random_path(GroupPtr group, std::uint64_t seed, double amplitude, int n, PointModes point_modes,
                      int time_modes)
{
  AlgebraSeries xi(group, seed, amplitude, AlgebraSeries::Basis::Periodic, time_modes, std::move(point_modes));
  return integrate_velocity(std::move(group), xi, n);
}

GroupPath exp_curve_path(GroupPtr group, const std::function<AlgebraElement(double)>& A, int n)
{
  const Group* G = group.get();
  return GroupPath::from_function(std::move(group), [&](double t) { return G->exp(A(t)); }, n);
}

HomotopyGrid exp_loop_certificate(GroupPtr group, const std::function<AlgebraElement(double)>& A, int S, int N)
{
  std::vector<AlgebraElement> a;
  for (int j = 0; j <= N; ++j) a.push_back(A(static_cast<double>(j) / N));
  SurfaceGrid sg;
  sg.group = group;
  sg.S = S;
  sg.N = N;
  for (int i = 0; i <= S; ++i)
    for (int j = 0; j <= N; ++j) sg.g.push_back(group->exp((static_cast<double>(i) / S) * a[j]));
  return HomotopyGrid(std::move(sg), kNullHomotopyPins);
}

HomotopyGrid random_loop_certificate(GroupPtr group, std::uint64_t seed, double amplitude, int S, int N,
                                     PointModes point_modes)
{
  AlgebraSeries A(group, seed, amplitude, AlgebraSeries::Basis::Dirichlet, 4, std::move(point_modes));
  return exp_loop_certificate(std::move(group), A, S, N);
}

}  // namespace pathext
