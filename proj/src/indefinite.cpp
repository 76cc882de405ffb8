#include "maxrep/indefinite.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "maxrep/rng.hpp"

namespace maxrep {

namespace {
const Tolerances kDefault;

double pick(double v, double dflt) { return v > 0 ? v : dflt; }

template <typename Mat>
int numerical_rank(const Mat& m, double rank_tol) {
  if (m.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  const double cut = rank_tol * sv(0);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return r;
}

template <typename Mat>
Signature signature_impl(const IndefiniteForm& form, const Mat& vectors, double sig_tol) {
  if (vectors.rows() != form.dim())
    throw DimensionMismatch("signature_of_restriction: vectors have wrong ambient dimension");
  const int m = static_cast<int>(vectors.cols());
  if (m == 0) throw DegenerateInput("signature_of_restriction: empty input");
  if (numerical_rank(vectors, kDefault.rank_tol) < m)
    throw DegenerateInput("signature_of_restriction: rank-deficient input");

  Mat gram = vectors.adjoint() * form.sign_diagonal().template cast<typename Mat::Scalar>().asDiagonal() * vectors;
  Eigen::SelfAdjointEigenSolver<Mat> es(gram, Eigen::EigenvaluesOnly);
  const VectorXd ev = es.eigenvalues();
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  const double tol = pick(sig_tol, kDefault.sig_tol) * scale;

  Signature s;
  s.margin = 1e300;
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) > tol)
      ++s.n_plus;
    else if (ev(i) < -tol)
      ++s.n_minus;
    else
      ++s.n_zero;
    s.margin = std::min(s.margin, std::abs(std::abs(ev(i)) - tol) / scale);
  }
  return s;
}

template <typename Mat>
bool opposite_impl(const IndefiniteForm& form, const Mat& V, const Mat& W, double sig_tol) {
  if (V.cols() != W.cols()) throw DimensionMismatch("is_opposite: dimension mismatch");
  const int k = static_cast<int>(V.cols());
  Mat both(V.rows(), 2 * k);
  both << V, W;
  if (numerical_rank(both, kDefault.rank_tol) < 2 * k) return false;
  Signature s = signature_impl(form, both, sig_tol);
  return s.n_plus == k && s.n_minus == k && s.n_zero == 0;
}

template <typename Mat>
bool transverse_impl(const IndefiniteForm& form, const Mat& V, const Mat& W,
                     double rank_tol) {
  if (V.cols() != W.cols()) throw DimensionMismatch("is_transverse_maximal: dimension mismatch");
  if (static_cast<int>(V.cols()) != form.p())
    throw DimensionMismatch("is_transverse_maximal: subspaces must be maximal isotropic");
  Mat both(V.rows(), V.cols() + W.cols());
  both << V, W;
  return numerical_rank(both, pick(rank_tol, kDefault.rank_tol)) ==
         static_cast<int>(both.cols());
}

template <typename Mat>
double grassmann_impl(const Mat& V, const Mat& W) {
  if (V.rows() != W.rows() || V.cols() != W.cols())
    throw DimensionMismatch("grassmann_distance: dimension mismatch");
  Eigen::HouseholderQR<Mat> qv(V), qw(W);
  Mat Qv = qv.householderQ() * Mat::Identity(V.rows(), V.cols());
  Mat Qw = qw.householderQ() * Mat::Identity(W.rows(), W.cols());
  Eigen::JacobiSVD<Mat> svd(Qv.adjoint() * Qw);
  double acc = 0.0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    const double c = std::min(1.0, std::max(-1.0, svd.singularValues()(i)));
    const double a = std::acos(c);
    acc += a * a;
  }
  return std::sqrt(acc);
}

}  // namespace

IndefiniteForm::IndefiniteForm(int p, int q, Field field) : p_(p), q_(q), field_(field) {
  if (p < 1 || q < 1) throw InvalidSignature("IndefiniteForm: need p >= 1 and q >= 1");
}

VectorXd IndefiniteForm::sign_diagonal() const {
  VectorXd s(dim());
  s.head(p_).setOnes();
  s.tail(q_).setConstant(-1.0);
  return s;
}

MatrixXd IndefiniteForm::sign_matrix() const { return sign_diagonal().asDiagonal(); }

double IndefiniteForm::eval(const VectorXd& x, const VectorXd& y) const {
  if (x.size() != dim() || y.size() != dim())
    throw DimensionMismatch("IndefiniteForm::eval: wrong vector dimension");
  return x.dot(sign_diagonal().cwiseProduct(y));
}

std::complex<double> IndefiniteForm::eval(const VectorXcd& x, const VectorXcd& y) const {
  if (x.size() != dim() || y.size() != dim())
    throw DimensionMismatch("IndefiniteForm::eval: wrong vector dimension");
  return x.conjugate().dot(
      sign_diagonal().cast<std::complex<double>>().cwiseProduct(y));
}

IndefiniteForm make_form(int p, int q, Field field) { return IndefiniteForm(p, q, field); }

Signature signature_of_restriction(const IndefiniteForm& form, const MatrixXd& vectors,
                                   double sig_tol) {
  return signature_impl(form, vectors, sig_tol);
}

Signature signature_of_restriction(const IndefiniteForm& form, const MatrixXcd& vectors,
                                   double sig_tol) {
  return signature_impl(form, vectors, sig_tol);
}

IsotropicSubspace::IsotropicSubspace(const IndefiniteForm& form, const MatrixXd& basis,
                                     double iso_tol, double rank_tol)
    : form_(form), basis_(basis) {
  if (basis.rows() != form.dim())
    throw DimensionMismatch("IsotropicSubspace: basis has wrong ambient dimension");
  const int k = static_cast<int>(basis.cols());
  if (k < 1 || k > form.p())
    throw InvalidSignature("IsotropicSubspace: need 1 <= k <= p");
  if (numerical_rank(basis, pick(rank_tol, kDefault.rank_tol)) < k)
    throw DegenerateInput("IsotropicSubspace: basis is rank-deficient");
  const MatrixXd gram = basis.transpose() * form.sign_matrix() * basis;
  const double scale = (basis.transpose() * basis).norm();
  if (gram.norm() > pick(iso_tol, kDefault.iso_tol) * std::max(scale, 1.0))
    throw DegenerateInput("IsotropicSubspace: form does not vanish on the span");
}

bool is_opposite(const IsotropicSubspace& V, const IsotropicSubspace& W, double sig_tol) {
  if (!(V.form() == W.form()))
    throw DimensionMismatch("is_opposite: subspaces of different forms");
  return opposite_impl(V.form(), V.basis(), W.basis(), sig_tol);
}

bool is_opposite(const IndefiniteForm& form, const MatrixXcd& V, const MatrixXcd& W,
                 double sig_tol) {
  return opposite_impl(form, V, W, sig_tol);
}

bool is_transverse_maximal(const IsotropicSubspace& V, const IsotropicSubspace& W,
                           double rank_tol) {
  if (!(V.form() == W.form()))
    throw DimensionMismatch("is_transverse_maximal: subspaces of different forms");
  return transverse_impl(V.form(), V.basis(), W.basis(), rank_tol);
}

bool is_transverse_maximal(const IndefiniteForm& form, const MatrixXcd& V,
                           const MatrixXcd& W, double rank_tol) {
  return transverse_impl(form, V, W, rank_tol);
}

double grassmann_distance(const MatrixXd& V, const MatrixXd& W) {
  return grassmann_impl(V, W);
}

double grassmann_distance(const MatrixXcd& V, const MatrixXcd& W) {
  return grassmann_impl(V, W);
}

double group_residual(const IndefiniteForm& form, const MatrixXd& g) {
  const MatrixXd I = form.sign_matrix();
  return (g.transpose() * I * g - I).norm();
}

double group_residual(const IndefiniteForm& form, const MatrixXcd& g) {
  const MatrixXcd I = form.sign_matrix().cast<std::complex<double>>();
  return (g.adjoint() * I * g - I).norm();
}

GroupElement check_group_membership(const IndefiniteForm& form, const MatrixXd& g,
                                    double tol) {
  if (g.rows() != form.dim() || g.cols() != form.dim())
    throw DimensionMismatch("check_group_membership: matrix has wrong dimension");
  const double r = group_residual(form, g);
  const double scale = std::max(1.0, g.squaredNorm());
  const double t = pick(tol, kDefault.group_tol) * scale;
  if (!(r <= t))
    throw NotInGroup("check_group_membership: residual " + std::to_string(r) +
                         " exceeds tolerance " + std::to_string(t),
                     r);
  return GroupElement(form, g, r);
}

GroupElement GroupElement::inverse() const {
  // g^-1 = I g^T I for exact isometries; the residual is recomputed honestly
  const MatrixXd I = form_.sign_matrix();
  MatrixXd inv = I * mat_.transpose() * I;
  return GroupElement(form_, inv, group_residual(form_, inv));
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  if (!(form_ == o.form_)) throw DimensionMismatch("GroupElement product: forms differ");
  MatrixXd m = mat_ * o.mat_;
  return GroupElement(form_, m, group_residual(form_, m));
}

bool positive_component_indicator(const GroupElement& g) {
  if (g.form().p() != 2)
    throw UnsupportedSignature("positive_component_indicator: requires p == 2");
  const auto& m = g.matrix();
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) > 0.0;
}

MatrixXd boost_in_plane(const IndefiniteForm& form, int i, int j, double tau) {
  const VectorXd s = form.sign_diagonal();
  if (s(i) * s(j) > 0) throw InvalidSignature("boost_in_plane: plane must be mixed-sign");
  MatrixXd g = MatrixXd::Identity(form.dim(), form.dim());
  g(i, i) = std::cosh(tau);
  g(j, j) = std::cosh(tau);
  g(i, j) = std::sinh(tau);
  g(j, i) = std::sinh(tau);
  return g;
}

MatrixXd rotation_in_plane(const IndefiniteForm& form, int i, int j, double theta) {
  const VectorXd s = form.sign_diagonal();
  if (s(i) * s(j) < 0)
    throw InvalidSignature("rotation_in_plane: plane must be definite");
  MatrixXd g = MatrixXd::Identity(form.dim(), form.dim());
  g(i, i) = std::cos(theta);
  g(j, j) = std::cos(theta);
  g(i, j) = -std::sin(theta);
  g(j, i) = std::sin(theta);
  return g;
}

GroupElement random_group_element(const IndefiniteForm& form, Rng& rng, int word_len,
                                  double max_boost) {
  const int p = form.p(), d = form.dim();
  MatrixXd g = MatrixXd::Identity(d, d);
  for (int k = 0; k < word_len; ++k) {
    if (rng.uniform() < 0.5) {
      const int i = rng.uniform_int(0, p - 1);
      const int j = rng.uniform_int(p, d - 1);
      g = g * boost_in_plane(form, i, j, rng.uniform(-max_boost, max_boost));
    } else if (rng.uniform() < 0.5 && p >= 2) {
      const int i = rng.uniform_int(0, p - 1);
      int j = rng.uniform_int(0, p - 1);
      if (i == j) j = (j + 1) % p;
      g = g * rotation_in_plane(form, i, j, rng.uniform(0.0, 2.0 * M_PI));
    } else {
      const int i = rng.uniform_int(p, d - 1);
      int j = rng.uniform_int(p, d - 1);
      if (i == j) j = p + (j - p + 1) % form.q();
      g = g * rotation_in_plane(form, i, j, rng.uniform(0.0, 2.0 * M_PI));
    }
  }
  return check_group_membership(form, g, 1e-6);
}

GroupElement random_positive_component_element(const IndefiniteForm& form, Rng& rng,
                                               int word_len, double max_boost) {
  for (int tries = 0; tries < 64; ++tries) {
    GroupElement g = random_group_element(form, rng, word_len, max_boost);
    if (positive_component_indicator(g)) return g;
  }
  throw DegenerateInput("random_positive_component_element: sampling failed");
}

}  // namespace maxrep
