#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "maxrep/errors.hpp"

namespace maxrep {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

enum class Field { Real, Complex };

struct Tolerances {
  double sig_tol = 1e-9;     // relative to largest Gram eigenvalue
  double iso_tol = 1e-9;     // relative, isotropy of subspaces
  double group_tol = 1e-9;   // relative to ||g||^2
  double orient_tol = 1e-10; // orientation determinant threshold (relative)
  double fixed_tol = 1e-8;   // chart displacement for fixed lines
  double leak_tol = 1e-6;    // Fourier truncation leakage
  double rank_tol = 1e-10;   // relative smallest singular value
};

// diag(+1 x p, -1 x q) in the standard basis
class IndefiniteForm {
public:
  IndefiniteForm(int p, int q, Field field = Field::Real);

  int p() const { return p_; }
  int q() const { return q_; }
  int dim() const { return p_ + q_; }
  Field field() const { return field_; }

  VectorXd sign_diagonal() const;
  MatrixXd sign_matrix() const;

  double eval(const VectorXd& x, const VectorXd& y) const;
  // Hermitian: first argument conjugated
  std::complex<double> eval(const VectorXcd& x, const VectorXcd& y) const;

  bool operator==(const IndefiniteForm& o) const {
    return p_ == o.p_ && q_ == o.q_ && field_ == o.field_;
  }

private:
  int p_, q_;
  Field field_;
};

IndefiniteForm make_form(int p, int q, Field field = Field::Real);

struct Signature {
  int n_plus = 0, n_minus = 0, n_zero = 0;
  // distance of the nearest Gram eigenvalue to the zero threshold, relative
  double margin = 0.0;
};

Signature signature_of_restriction(const IndefiniteForm& form, const MatrixXd& vectors,
                                   double sig_tol = -1.0);
Signature signature_of_restriction(const IndefiniteForm& form, const MatrixXcd& vectors,
                                   double sig_tol = -1.0);

// k-dimensional Q-null subspace given by a basis matrix
class IsotropicSubspace {
public:
  IsotropicSubspace(const IndefiniteForm& form, const MatrixXd& basis,
                    double iso_tol = -1.0, double rank_tol = -1.0);

  const IndefiniteForm& form() const { return form_; }
  const MatrixXd& basis() const { return basis_; }
  int k() const { return static_cast<int>(basis_.cols()); }

private:
  IndefiniteForm form_;
  MatrixXd basis_;
};

bool is_opposite(const IsotropicSubspace& V, const IsotropicSubspace& W,
                 double sig_tol = -1.0);
bool is_opposite(const IndefiniteForm& form, const MatrixXcd& V, const MatrixXcd& W,
                 double sig_tol = -1.0);

bool is_transverse_maximal(const IsotropicSubspace& V, const IsotropicSubspace& W,
                           double rank_tol = -1.0);
bool is_transverse_maximal(const IndefiniteForm& form, const MatrixXcd& V,
                           const MatrixXcd& W, double rank_tol = -1.0);

// sqrt(sum of squared principal angles); inputs need not be pre-orthonormalized
double grassmann_distance(const MatrixXd& V, const MatrixXd& W);
double grassmann_distance(const MatrixXcd& V, const MatrixXcd& W);

// invertible matrix certified to preserve the form within tolerance
class GroupElement {
public:
  const IndefiniteForm& form() const { return form_; }
  const MatrixXd& matrix() const { return mat_; }
  double residual() const { return residual_; }

  GroupElement inverse() const;
  GroupElement operator*(const GroupElement& o) const;
  VectorXd apply(const VectorXd& v) const { return mat_ * v; }

  friend GroupElement check_group_membership(const IndefiniteForm&, const MatrixXd&,
                                             double);

private:
  GroupElement(IndefiniteForm f, MatrixXd m, double r)
      : form_(f), mat_(std::move(m)), residual_(r) {}
  IndefiniteForm form_;
  MatrixXd mat_;
  double residual_;
};

GroupElement check_group_membership(const IndefiniteForm& form, const MatrixXd& g,
                                    double tol = -1.0);
double group_residual(const IndefiniteForm& form, const MatrixXd& g);
double group_residual(const IndefiniteForm& form, const MatrixXcd& g);

// membership in the A-block-positive-determinant component of O(2,q)
bool positive_component_indicator(const GroupElement& g);

// elementary isometries: boost in a mixed-sign coordinate plane, rotation in a
// definite one (indices are 0-based ambient coordinates)
MatrixXd boost_in_plane(const IndefiniteForm& form, int i, int j, double tau);
MatrixXd rotation_in_plane(const IndefiniteForm& form, int i, int j, double theta);

class Rng;
// seeded word in elementary boosts and rotations
GroupElement random_group_element(const IndefiniteForm& form, Rng& rng, int word_len = 6,
                                  double max_boost = 0.8);
// same, restricted to the A-block-positive component
GroupElement random_positive_component_element(const IndefiniteForm& form, Rng& rng,
                                               int word_len = 6, double max_boost = 0.8);

}  // namespace maxrep
