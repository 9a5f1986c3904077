#include "pathext/lie.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>

namespace pathext {

namespace {

constexpr double kLogRadius = 1.9;
const Complex I1(0.0, 1.0);

Mat su2_matrix(const Eigen::Vector3d& v)
{
  Mat m(2, 2);
  m(0, 0) = -I1 * v(2) / 2.0;
  m(0, 1) = (-I1 * v(0) - v(1)) / 2.0;
  m(1, 0) = (-I1 * v(0) + v(1)) / 2.0;
  m(1, 1) = I1 * v(2) / 2.0;
  return m;
}

Eigen::Vector3d su2_vector(const Mat& m)
{
  // averages the redundant entries so that slightly non-traceless input is projected
  const double v3 = (-(m(0, 0)).imag() + (m(1, 1)).imag());
  const double v1 = (-(m(0, 1)).imag() - (m(1, 0)).imag());
  const double v2 = (-(m(0, 1)).real() + (m(1, 0)).real());
  return {v1, v2, v3};
}

Mat su2_exp(const Eigen::Vector3d& v)
{
  const double theta = v.norm();
  const double half = theta / 2.0;
  const double k = theta < 1e-8 ? 1.0 - theta * theta / 24.0 : std::sin(half) / half;
  Mat g = Mat::Identity(2, 2) * std::cos(half);
  g += k * su2_matrix(v);
  return g;
}

Eigen::Vector3d su2_log(const Mat& g, bool check)
{
  const Complex a = 0.5 * (g(0, 0) + std::conj(g(1, 1)));
  const Complex b = 0.5 * (g(0, 1) - std::conj(g(1, 0)));
  if (check) {
    const double dist = std::sqrt(std::max(0.0, 2.0 - 2.0 * a.real()));
    if (!(dist < kLogRadius))
      throw DomainError("su2 log outside injectivity radius, |g - e| = " + std::to_string(dist),
                        dist);
  }
  const Eigen::Vector3d u(-b.imag(), -b.real(), -a.imag());
  const double s = u.norm();
  double factor;
  if (s < 1e-8)
    factor = 2.0 / a.real();
  else
    factor = 2.0 * std::atan2(s, a.real()) / s;
  return u * factor;
}

Eigen::Matrix3d cross_matrix(const Eigen::Vector3d& a)
{
  Eigen::Matrix3d m;
  m << 0, -a(2), a(1), a(2), 0, -a(0), -a(1), a(0), 0;
  return m;
}

// (1 - exp(-ad_a)) / ad_a on su(2) coordinates.
Eigen::Matrix3d su2_dexp_left(const Eigen::Vector3d& a)
{
  const double t = a.norm();
  double c1, c2;
  if (t < 1e-4) {
    c1 = 0.5 - t * t / 24.0;
    c2 = 1.0 / 6.0 - t * t / 120.0;
  } else {
    c1 = (1.0 - std::cos(t)) / (t * t);
    c2 = (t - std::sin(t)) / (t * t * t);
  }
  const Eigen::Matrix3d A = cross_matrix(a);
  return Eigen::Matrix3d::Identity() - c1 * A + c2 * A * A;
}

Mat semidirect_exp(const Mat& x)
{
  const Eigen::Vector3d a = su2_vector(x.block(0, 0, 2, 2));
  const Eigen::Vector3d b = su2_vector(x.block(0, 2, 2, 2));
  const Mat h = su2_exp(a);
  Mat g = Mat::Zero(4, 4);
  g.block(0, 0, 2, 2) = h;
  g.block(2, 2, 2, 2) = h;
  g.block(0, 2, 2, 2) = h * su2_matrix(su2_dexp_left(a) * b);
  return g;
}

Mat semidirect_log(const Mat& g)
{
  const Mat h = 0.5 * (g.block(0, 0, 2, 2) + g.block(2, 2, 2, 2));
  const Eigen::Vector3d a = su2_log(h, true);
  const Mat hinv = h.adjoint();
  const Eigen::Vector3d k = su2_vector(hinv * g.block(0, 2, 2, 2));
  const Eigen::Vector3d b = su2_dexp_left(a).lu().solve(k);
  Mat x = Mat::Zero(4, 4);
  x.block(0, 0, 2, 2) = su2_matrix(a);
  x.block(2, 2, 2, 2) = x.block(0, 0, 2, 2);
  x.block(0, 2, 2, 2) = su2_matrix(b);
  return x;
}

Mat so3_exp(const Mat& x)
{
  Eigen::Matrix3d X = x.real();
  const Eigen::Vector3d w(X(2, 1), X(0, 2), X(1, 0));
  const double t = w.norm();
  double a, b;
  if (t < 1e-5) {
    a = 1.0 - t * t / 6.0;
    b = 0.5 - t * t / 24.0;
  } else {
    a = std::sin(t) / t;
    b = (1.0 - std::cos(t)) / (t * t);
  }
  const Eigen::Matrix3d K = cross_matrix(w);
  const Eigen::Matrix3d R = Eigen::Matrix3d::Identity() + a * K + b * K * K;
  return R.cast<Complex>();
}

Mat so3_log(const Mat& g)
{
  const Eigen::Matrix3d R = g.real();
  const double dist = op_norm(g - Mat::Identity(3, 3));
  if (!(dist < kLogRadius))
    throw DomainError("so3 log outside injectivity radius, |g - e| = " + std::to_string(dist), dist);
  const double c = std::clamp((R.trace() - 1.0) / 2.0, -1.0, 1.0);
  const double t = std::acos(c);
  const double f = t < 1e-5 ? 0.5 + t * t / 12.0 : t / (2.0 * std::sin(t));
  const Eigen::Matrix3d W = f * (R - R.transpose());
  return W.cast<Complex>();
}

}  // namespace

double op_norm(const Mat& m)
{
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues()(0);
}

GroupKind group_kind_from_string(const std::string& tag)
{
  if (tag == "su2") return GroupKind::SU2;
  if (tag == "so3") return GroupKind::SO3;
  if (tag == "heisenberg3") return GroupKind::Heisenberg3;
  if (tag == "torus" || tag == "abelian") return GroupKind::Torus;
  if (tag == "su2_semidirect") return GroupKind::SU2Semidirect;
  if (tag == "generic") return GroupKind::Generic;
  throw std::invalid_argument("unknown group tag '" + tag + "'");
}

std::string to_string(GroupKind kind)
{
  switch (kind) {
    case GroupKind::SU2: return "su2";
    case GroupKind::SO3: return "so3";
    case GroupKind::Heisenberg3: return "heisenberg3";
    case GroupKind::Torus: return "torus";
    case GroupKind::SU2Semidirect: return "su2_semidirect";
    case GroupKind::Generic: return "generic";
  }
  return "generic";
}

Mat mat_exp(const Mat& x, GroupKind kind)
{
  if (!x.allFinite()) throw std::invalid_argument("exp of non-finite algebra element");
  switch (kind) {
    case GroupKind::SU2: return su2_exp(su2_vector(x));
    case GroupKind::SO3: return so3_exp(x);
    case GroupKind::Heisenberg3: {
      Mat g = Mat::Identity(3, 3) + x + 0.5 * x * x;
      return g;
    }
    case GroupKind::Torus: {
      Mat g = Mat::Zero(x.rows(), x.cols());
      for (Eigen::Index i = 0; i < x.rows(); ++i) g(i, i) = std::exp(x(i, i));
      return g;
    }
    case GroupKind::SU2Semidirect: return semidirect_exp(x);
    case GroupKind::Generic: {
      Eigen::MatrixXcd d = x;
      Eigen::MatrixXcd e = d.exp();
      return e;
    }
  }
  return x;
}

Mat mat_log(const Mat& g, GroupKind kind)
{
  if (!g.allFinite()) throw std::invalid_argument("log of non-finite group element");
  switch (kind) {
    case GroupKind::SU2: return su2_matrix(su2_log(g, true));
    case GroupKind::SO3: return so3_log(g);
    case GroupKind::Heisenberg3: {
      const Mat n = g - Mat::Identity(3, 3);
      return n - 0.5 * n * n;
    }
    case GroupKind::Torus: {
      Mat x = Mat::Zero(g.rows(), g.cols());
      for (Eigen::Index i = 0; i < g.rows(); ++i) {
        const double dist = std::abs(g(i, i) - 1.0);
        if (!(dist < kLogRadius))
          throw DomainError("torus log outside injectivity radius", dist);
        x(i, i) = Complex(0.0, std::arg(g(i, i)));
      }
      return x;
    }
    case GroupKind::SU2Semidirect: return semidirect_log(g);
    case GroupKind::Generic: {
      Eigen::MatrixXcd d = g;
      Eigen::MatrixXcd l = d.log();
      if (!l.allFinite()) throw NumericFailure("matrix log produced non-finite values");
      return l;
    }
  }
  return g;
}

// ---------------------------------------------------------------------------

LieAlgebraSpec::LieAlgebraSpec(std::string name, GroupKind kind, std::vector<Mat> basis,
                               int coefficient_dim, std::vector<double> kappa_values)
    : name_(std::move(name)), kind_(kind), vdim_(coefficient_dim), basis_(std::move(basis)),
      kappa_(std::move(kappa_values))
{
  const int d = dim();
  if (d == 0) throw std::invalid_argument("Lie algebra needs a non-empty basis");
  n_ = static_cast<int>(basis_[0].rows());
  for (const auto& b : basis_)
    if (b.rows() != n_ || b.cols() != n_)
      throw std::invalid_argument("basis matrices must be square of equal size");
  if (static_cast<int>(kappa_.size()) != d * d * vdim_)
    throw std::invalid_argument("kappa must have dim*dim*coefficient_dim entries");

  Eigen::MatrixXd A(2 * n_ * n_, d);
  for (int k = 0; k < d; ++k)
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) {
        A(r * n_ + c, k) = basis_[k](r, c).real();
        A(n_ * n_ + r * n_ + c, k) = basis_[k](r, c).imag();
      }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(d - 1) < 1e-10 * sv(0)) throw std::invalid_argument("basis matrices are linearly dependent");
  coord_map_ = svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().transpose();

  c_.assign(static_cast<size_t>(d * d * d), 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Mat br = bracket(basis_[i], basis_[j]);
      const Vec cc = coords(br);
      if ((from_coords(cc) - br).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("basis of '" + name_ + "' is not closed under the bracket");
      for (int k = 0; k < d; ++k) c_[(i * d + j) * d + k] = cc(k);
    }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        if (std::abs(structure(i, j, k) + structure(j, i, k)) > 1e-12)
          throw std::invalid_argument("structure constants are not antisymmetric");
  if (jacobi_residual() > 1e-12) throw std::invalid_argument("Jacobi identity fails");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int v = 0; v < vdim_; ++v)
        if (std::abs(kappa(i, j, v) - kappa(j, i, v)) > 1e-12)
          throw std::invalid_argument("kappa is not symmetric");
  if (kappa_invariance_residual() > 1e-12) throw std::invalid_argument("kappa is not invariant");
}

Vec LieAlgebraSpec::coords(const Mat& x) const
{
  Eigen::VectorXd v(2 * n_ * n_);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) {
      v(r * n_ + c) = x(r, c).real();
      v(n_ * n_ + r * n_ + c) = x(r, c).imag();
    }
  return coord_map_ * v;
}

Mat LieAlgebraSpec::from_coords(const Vec& c) const
{
  Mat m = Mat::Zero(n_, n_);
  for (int k = 0; k < dim(); ++k) m += c(k) * basis_[k];
  return m;
}

Vec LieAlgebraSpec::kappa_coords(const Vec& x, const Vec& y) const
{
  Vec out = Vec::Zero(vdim_);
  const int d = dim();
  for (int i = 0; i < d; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < d; ++j) {
      const double w = x(i) * y(j);
      if (w == 0.0) continue;
      for (int v = 0; v < vdim_; ++v) out(v) += w * kappa(i, j, v);
    }
  }
  return out;
}

Vec LieAlgebraSpec::kappa_eval(const Mat& x, const Mat& y) const
{
  return kappa_coords(coords(x), coords(y));
}

Eigen::MatrixXd LieAlgebraSpec::ad_matrix(const Vec& x) const
{
  const int d = dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) m(k, j) += x(i) * structure(i, j, k);
  return m;
}

double LieAlgebraSpec::jacobi_residual() const
{
  const int d = dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int m = 0; m < d; ++m) {
          double s = 0.0;
          for (int l = 0; l < d; ++l)
            s += structure(i, j, l) * structure(l, k, m) + structure(j, k, l) * structure(l, i, m) +
                 structure(k, i, l) * structure(l, j, m);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

double LieAlgebraSpec::kappa_invariance_residual() const
{
  // kappa([x,y],z) + kappa(y,[x,z]) on basis triples
  const int d = dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int v = 0; v < vdim_; ++v) {
          double s = 0.0;
          for (int l = 0; l < d; ++l)
            s += structure(i, j, l) * kappa(l, k, v) + structure(i, k, l) * kappa(j, l, v);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

namespace algebras {

double su2_unit_kappa_scale()
{
  return 1.0 / (8.0 * std::numbers::pi * std::numbers::pi);
}

LieAlgebraSpec su2(double kappa_scale)
{
  std::vector<Mat> basis;
  for (int k = 0; k < 3; ++k) {
    Eigen::Vector3d v = Eigen::Vector3d::Zero();
    v(k) = 1.0;
    basis.push_back(su2_matrix(v));
  }
  std::vector<double> kappa(9, 0.0);
  // -tr(e_i e_j) = delta_ij / 2
  for (int i = 0; i < 3; ++i) kappa[i * 3 + i] = kappa_scale / 2.0;
  return LieAlgebraSpec("su2", GroupKind::SU2, std::move(basis), 1, std::move(kappa));
}

LieAlgebraSpec so3()
{
  std::vector<Mat> basis(3, Mat::Zero(3, 3));
  basis[0](2, 1) = 1.0;
  basis[0](1, 2) = -1.0;
  basis[1](0, 2) = 1.0;
  basis[1](2, 0) = -1.0;
  basis[2](1, 0) = 1.0;
  basis[2](0, 1) = -1.0;
  std::vector<double> kappa(9, 0.0);
  for (int i = 0; i < 3; ++i) kappa[i * 3 + i] = 1.0;
  return LieAlgebraSpec("so3", GroupKind::SO3, std::move(basis), 1, std::move(kappa));
}

LieAlgebraSpec heisenberg3()
{
  std::vector<Mat> basis(3, Mat::Zero(3, 3));
  basis[0](0, 1) = 1.0;  // x
  basis[1](1, 2) = 1.0;  // y
  basis[2](0, 2) = 1.0;  // z = [x, y]
  std::vector<double> kappa(9, 0.0);
  kappa[0] = 1.0;
  kappa[4] = 1.0;
  return LieAlgebraSpec("heisenberg3", GroupKind::Heisenberg3, std::move(basis), 1,
                        std::move(kappa));
}

LieAlgebraSpec abelian(int n)
{
  if (n < 1 || n > 4) throw std::invalid_argument("abelian algebra dimension must be in 1..4");
  std::vector<Mat> basis(n, Mat::Zero(n, n));
  for (int k = 0; k < n; ++k) basis[k](k, k) = Complex(0.0, 1.0);
  std::vector<double> kappa(static_cast<size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) kappa[i * n + i] = 1.0;
  return LieAlgebraSpec("abelian" + std::to_string(n), GroupKind::Torus, std::move(basis), 1,
                        std::move(kappa));
}

LieAlgebraSpec su2_semidirect()
{
  std::vector<Mat> basis;
  for (int k = 0; k < 3; ++k) {
    Eigen::Vector3d v = Eigen::Vector3d::Zero();
    v(k) = 1.0;
    Mat e = Mat::Zero(4, 4);
    e.block(0, 0, 2, 2) = su2_matrix(v);
    e.block(2, 2, 2, 2) = su2_matrix(v);
    basis.push_back(e);
  }
  for (int k = 0; k < 3; ++k) {
    Eigen::Vector3d v = Eigen::Vector3d::Zero();
    v(k) = 1.0;
    Mat f = Mat::Zero(4, 4);
    f.block(0, 2, 2, 2) = su2_matrix(v);
    basis.push_back(f);
  }
  std::vector<double> kappa(36, 0.0);
  for (int k = 0; k < 3; ++k) {
    kappa[k * 6 + (k + 3)] = 1.0;
    kappa[(k + 3) * 6 + k] = 1.0;
  }
  return LieAlgebraSpec("su2_semidirect", GroupKind::SU2Semidirect, std::move(basis), 1,
                        std::move(kappa));
}

LieAlgebraSpec by_name(const std::string& name)
{
  if (name == "su2") return su2(su2_unit_kappa_scale());
  if (name == "so3") return so3();
  if (name == "heisenberg3") return heisenberg3();
  if (name == "su2_semidirect") return su2_semidirect();
  if (name.rfind("abelian", 0) == 0) {
    const int n = name.size() > 7 ? std::stoi(name.substr(7)) : 2;
    return abelian(n);
  }
  if (name == "torus") return abelian(2);
  throw std::invalid_argument("unknown shipped algebra '" + name + "'");
}

}  // namespace algebras

// ---------------------------------------------------------------------------

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o)
{
  for (size_t p = 0; p < at.size(); ++p) at[p] += o.at[p];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o)
{
  for (size_t p = 0; p < at.size(); ++p) at[p] -= o.at[p];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(double s)
{
  for (auto& m : at) m *= s;
  return *this;
}

double AlgebraElement::max_abs() const
{
  double w = 0.0;
  for (const auto& m : at) w = std::max(w, m.cwiseAbs().maxCoeff());
  return w;
}

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
AlgebraElement operator*(double s, AlgebraElement a) { return a *= s; }

Group::Group(LieAlgebraSpec algebra, int points) : alg_(std::move(algebra)), points_(points)
{
  if (points_ < 1) throw std::invalid_argument("group needs at least one point");
}

GroupElement Group::identity() const
{
  return GroupElement{std::vector<Mat>(points_, Mat::Identity(alg_.matrix_size(), alg_.matrix_size()))};
}

AlgebraElement Group::zero() const
{
  return AlgebraElement{std::vector<Mat>(points_, Mat::Zero(alg_.matrix_size(), alg_.matrix_size()))};
}

GroupElement Group::multiply(const GroupElement& a, const GroupElement& b) const
{
  GroupElement r;
  r.at.resize(points_);
  for (int p = 0; p < points_; ++p) r.at[p].noalias() = a.at[p] * b.at[p];
  return r;
}

GroupElement Group::inverse(const GroupElement& a) const
{
  GroupElement r;
  r.at.resize(points_);
  for (int p = 0; p < points_; ++p) {
    switch (kind()) {
      case GroupKind::SU2:
      case GroupKind::Torus: r.at[p] = a.at[p].adjoint(); break;
      case GroupKind::SO3: r.at[p] = a.at[p].transpose(); break;
      default: r.at[p] = a.at[p].inverse(); break;
    }
  }
  return r;
}

GroupElement Group::left_quotient(const GroupElement& a, const GroupElement& b) const
{
  return multiply(inverse(a), b);
}

GroupElement Group::exp(const AlgebraElement& x) const
{
  GroupElement r;
  r.at.resize(points_);
  for (int p = 0; p < points_; ++p) r.at[p] = mat_exp(x.at[p], kind());
  return r;
}

AlgebraElement Group::log(const GroupElement& g) const
{
  AlgebraElement r;
  r.at.resize(points_);
  for (int p = 0; p < points_; ++p) r.at[p] = mat_log(g.at[p], kind());
  return r;
}

AlgebraElement Group::adjoint(const GroupElement& g, const AlgebraElement& x) const
{
  const GroupElement gi = inverse(g);
  AlgebraElement r;
  r.at.resize(points_);
  for (int p = 0; p < points_; ++p) r.at[p] = g.at[p] * x.at[p] * gi.at[p];
  return r;
}

AlgebraElement Group::adjoint_inverse(const GroupElement& g, const AlgebraElement& x) const
{
  const GroupElement gi = inverse(g);
  AlgebraElement r;
  r.at.resize(points_);
  for (int p = 0; p < points_; ++p) r.at[p] = gi.at[p] * x.at[p] * g.at[p];
  return r;
}

AlgebraElement Group::bracket(const AlgebraElement& x, const AlgebraElement& y) const
{
  AlgebraElement r;
  r.at.resize(points_);
  for (int p = 0; p < points_; ++p) r.at[p] = x.at[p] * y.at[p] - y.at[p] * x.at[p];
  return r;
}

double Group::distance_to_identity(const GroupElement& g) const
{
  double w = 0.0;
  const Mat e = Mat::Identity(alg_.matrix_size(), alg_.matrix_size());
  for (const auto& m : g.at) w = std::max(w, op_norm(m - e));
  return w;
}

double Group::distance(const GroupElement& a, const GroupElement& b) const
{
  double w = 0.0;
  for (int p = 0; p < points_; ++p) w = std::max(w, (a.at[p] - b.at[p]).cwiseAbs().maxCoeff());
  return w;
}

double Group::constraint_residual(const GroupElement& g) const
{
  double worst = 0.0;
  for (const auto& m : g.at) {
    if (!m.allFinite()) return std::numeric_limits<double>::infinity();
    const int n = static_cast<int>(m.rows());
    const Mat e = Mat::Identity(n, n);
    double r = 0.0;
    switch (kind()) {
      case GroupKind::SU2:
        r = (m * m.adjoint() - e).cwiseAbs().maxCoeff() + std::abs(m.determinant() - 1.0);
        break;
      case GroupKind::SO3:
        r = (m * m.adjoint() - e).cwiseAbs().maxCoeff() + m.imag().cwiseAbs().maxCoeff() +
            std::abs(m.determinant() - 1.0);
        break;
      case GroupKind::Heisenberg3:
        r = std::abs(m(1, 0)) + std::abs(m(2, 0)) + std::abs(m(2, 1)) + std::abs(m(0, 0) - 1.0) +
            std::abs(m(1, 1) - 1.0) + std::abs(m(2, 2) - 1.0) + m.imag().cwiseAbs().maxCoeff();
        break;
      case GroupKind::Torus:
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            r = std::max(r, i == j ? std::abs(std::abs(m(i, i)) - 1.0) : std::abs(m(i, j)));
        break;
      case GroupKind::SU2Semidirect: {
        const Mat h = m.block(0, 0, 2, 2);
        const Mat k = h.adjoint() * m.block(0, 2, 2, 2);
        r = (h * h.adjoint() - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() +
            std::abs(h.determinant() - 1.0) + m.block(2, 0, 2, 2).cwiseAbs().maxCoeff() +
            (m.block(2, 2, 2, 2) - h).cwiseAbs().maxCoeff() + (k + k.adjoint()).cwiseAbs().maxCoeff() +
            std::abs(k.trace());
        break;
      }
      case GroupKind::Generic: break;
    }
    worst = std::max(worst, r);
  }
  return worst;
}

GroupElement Group::exp_coords(const Vec& xi) const { return exp(from_coords(xi)); }

Vec Group::log_coords(const GroupElement& g) const { return alg_.coords(log(g).at[0]); }

AlgebraElement Group::from_coords(const Vec& c) const
{
  if (!c.allFinite()) throw std::invalid_argument("non-finite algebra coefficients");
  return AlgebraElement{std::vector<Mat>(points_, alg_.from_coords(c))};
}

}  // namespace pathext
