#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "maxrep/errors.hpp"

namespace maxrep {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using complexd = std::complex<double>;

// Fourier truncation of L^2(S^1, R): basis order (c, e_1, f_1, e_2, f_2, ...),
// e_n = Re z^n, f_n = Im z^n, dimension 2N+1.
struct FourierTruncation {
  int N;
  explicit FourierTruncation(int n) : N(n) {
    if (n < 1) throw OutOfRange("FourierTruncation: N >= 1");
  }
  int dim() const { return 2 * N + 1; }
  int c_index() const { return 0; }
  int e_index(int n) const { return 2 * n - 1; }
  int f_index(int n) const { return 2 * n; }
};

// The displayed product: Q_s(e_n) = Q_s(f_n) = -prod_{i=0}^{n-1} (i+1/2-s)/(i-1/2+s).
// n = 0 returns the constant-function convention Q_s(c) = -1.
double qs_coefficient(double s, int n);

// Diagonal weights exactly preserved by the truncated representation:
// ratio q_{n+1}/q_n = (n+1/2-s)/(n+1/2+s), q_1 = (s-1/2)/(s+1/2), q_c = -2.
double qs_invariant_weight(double s, int n);

// disk Moebius transformation as an SU(1,1) element [[a, b], [conj b, conj a]]
struct MobiusMap {
  complexd a{1.0, 0.0};
  complexd b{0.0, 0.0};

  static MobiusMap rotation(double theta);
  static MobiusMap boost(double t);  // g_t, axis through 0 along the real direction

  MobiusMap operator*(const MobiusMap& o) const;
  MobiusMap inverse() const { return MobiusMap{std::conj(a), -b}; }
  complexd apply(complexd z) const;
  bool is_rotation(double tol = 1e-14) const { return std::abs(b) < tol; }
  double rotation_angle() const { return -2.0 * std::arg(std::conj(a)); }
};

struct PiMatrix {
  MatrixXd mat;
  double inner_leakage = 0.0;  // dropped-frequency norm, columns of frequency <= N/4
  double edge_leakage = 0.0;   // same, all columns
};

// Matrix of pi_s(g) f = Jac(g^{-1})^{1/2+s} f(g^{-1} z) in the Fourier basis,
// by circle quadrature (M samples, rounded up to a power of two, M >= 4N).
// Rotations are frequency-preserving and produced exactly.
PiMatrix pi_s_matrix(double s, const MobiusMap& g, const FourierTruncation& trunc,
                     int M = -1, double leak_tol = 1e-3);

struct QsInvarianceResidual {
  double invariant = 0.0;  // residual with qs_invariant_weight diagonal
  double formula = 0.0;    // residual with qs_coefficient diagonal
};

// || pi^T D pi - D || restricted to frequencies <= K
QsInvarianceResidual check_qs_invariance(double s, const MobiusMap& g,
                                         const FourierTruncation& trunc, int K,
                                         int M = -1);

struct TangentMatrices {
  MatrixXd A;   // [[-1, 2+2s, 0, ...], [0, 0, 2+2s, ...]]
  MatrixXd B;   // second column block negated
  MatrixXd IB;  // [[0, 0, -2-2s, ...], [1, 2+2s, 0, ...]]
};

// Tangent pattern matrices, rows (e_1, f_1), columns (c, e_2, f_2, e_3, ...).
TangentMatrices tangent_matrices(double s, int ncols = 5);

// Coefficients on (z^0 .. z^N) of (1-a^2)^{1/2+s} (z-a) (1-az)^{-(2+2s)}, a = tanh t:
// the displayed boundary-symbol action on the function z. The t-derivative at 0
// is -1 + (2+2s) z^2.
VectorXd hyperbolic_symbol_z(double s, double t, int N);

// Trace pairing of the symmetric lifts of A and IB; structurally zero because the
// per-row supports are disjoint.
double pairing_vanishes(double s);
double lift_trace_pairing(const MatrixXd& A, const MatrixXd& B);

// Finite-difference reconstruction of the two tangent vectors from pi_s_matrix,
// complex-structure application, metric pairing. Expected to vanish up to
// O(t_step) + truncation.
double toledo_density(double s, double t_step = 1e-4, int N = 128, int M = -1);

}  // namespace maxrep
