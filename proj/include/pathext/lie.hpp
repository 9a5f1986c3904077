#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace pathext {

using Complex = std::complex<double>;
/// Small complex matrix; every shipped group fits into 4x4.
using Mat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 4, 4>;
using Vec = Eigen::VectorXd;

/// Raised when a logarithm is requested outside the injectivity radius.
class DomainError : public std::domain_error {
 public:
  DomainError(const std::string& what, double distance)
      : std::domain_error(what), distance_(distance) {}
  double distance() const { return distance_; }

 private:
  double distance_;
};

class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GroupKind { SU2, SO3, Heisenberg3, Torus, SU2Semidirect, Generic };

GroupKind group_kind_from_string(const std::string& tag);
std::string to_string(GroupKind kind);

/// Finite dimensional Lie algebra given by a faithful matrix basis.
///
/// Structure constants are derived from the basis at construction and the
/// algebra is rejected unless the bracket closes, the constants are
/// antisymmetric and satisfy Jacobi, and kappa is invariant.
class LieAlgebraSpec {
 public:
  LieAlgebraSpec() = default;
  LieAlgebraSpec(std::string name, GroupKind kind, std::vector<Mat> basis,
                 int coefficient_dim, std::vector<double> kappa);

  const std::string& name() const { return name_; }
  GroupKind kind() const { return kind_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int matrix_size() const { return n_; }
  int coefficient_dim() const { return vdim_; }
  const std::vector<Mat>& basis() const { return basis_; }

  /// [e_i, e_j] = sum_k structure(i, j, k) e_k
  double structure(int i, int j, int k) const { return c_[(i * dim() + j) * dim() + k]; }
  double kappa(int i, int j, int v) const { return kappa_[(i * dim() + j) * vdim_ + v]; }
  const std::vector<double>& kappa_tensor() const { return kappa_; }

  Vec coords(const Mat& x) const;
  Mat from_coords(const Vec& c) const;
  Mat bracket(const Mat& x, const Mat& y) const { return x * y - y * x; }
  /// V-valued invariant form on matrix representatives.
  Vec kappa_eval(const Mat& x, const Mat& y) const;
  Vec kappa_coords(const Vec& x, const Vec& y) const;
  /// dim x dim matrix of ad(x) acting on coordinates.
  Eigen::MatrixXd ad_matrix(const Vec& x) const;

  double jacobi_residual() const;
  double kappa_invariance_residual() const;

 private:
  std::string name_;
  GroupKind kind_ = GroupKind::Generic;
  int n_ = 0;
  int vdim_ = 0;
  std::vector<Mat> basis_;
  std::vector<double> c_;
  std::vector<double> kappa_;
  Eigen::MatrixXd coord_map_;
};

/// Shipped algebras.
namespace algebras {
/// su(2) with e_k = -i sigma_k / 2 and kappa(X, Y) = -scale * tr(XY).
LieAlgebraSpec su2(double kappa_scale = 1.0);
LieAlgebraSpec so3();
LieAlgebraSpec heisenberg3();
LieAlgebraSpec abelian(int n);
/// su(2) semidirect the adjoint module su(2)_ab, kappa the cross pairing.
LieAlgebraSpec su2_semidirect();
/// The normalization making the Cartan 3-form of su(2) integrate to one.
double su2_unit_kappa_scale();
LieAlgebraSpec by_name(const std::string& name);
}  // namespace algebras

Mat mat_exp(const Mat& x, GroupKind kind);
/// Principal logarithm; throws DomainError when ||g - e|| >= 1.9 for compact kinds.
Mat mat_log(const Mat& g, GroupKind kind);
double op_norm(const Mat& m);

/// A point of the product group H^P (P = 1 for an ordinary matrix group).
struct GroupElement {
  std::vector<Mat> at;
};

/// A point of the product Lie algebra h^P.
struct AlgebraElement {
  std::vector<Mat> at;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(double s);
  double max_abs() const;
};

AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b);
AlgebraElement operator*(double s, AlgebraElement a);

/// Matrix Lie group H together with its pointwise product H^P.
class Group {
 public:
  Group() = default;
  explicit Group(LieAlgebraSpec algebra, int points = 1);

  const LieAlgebraSpec& algebra() const { return alg_; }
  int points() const { return points_; }
  GroupKind kind() const { return alg_.kind(); }

  GroupElement identity() const;
  AlgebraElement zero() const;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  /// a^{-1} b
  GroupElement left_quotient(const GroupElement& a, const GroupElement& b) const;
  GroupElement exp(const AlgebraElement& x) const;
  AlgebraElement log(const GroupElement& g) const;
  AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& x) const;
  AlgebraElement adjoint_inverse(const GroupElement& g, const AlgebraElement& x) const;
  AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) const;

  /// Max over points of the operator norm of g - e.
  double distance_to_identity(const GroupElement& g) const;
  double distance(const GroupElement& a, const GroupElement& b) const;
  /// Defining constraints of the group (unitarity, orthogonality, shape).
  double constraint_residual(const GroupElement& g) const;

  /// Single point helpers in basis coordinates.
  GroupElement exp_coords(const Vec& xi) const;
  Vec log_coords(const GroupElement& g) const;
  AlgebraElement from_coords(const Vec& c) const;  // same coefficients at every point
  Vec coords(const AlgebraElement& x, int point = 0) const { return alg_.coords(x.at[point]); }

 private:
  LieAlgebraSpec alg_;
  int points_ = 1;
};

}  // namespace pathext
