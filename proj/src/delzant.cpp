#include "maxrep/delzant.hpp"

#include <cmath>
#include <vector>

namespace maxrep {

namespace {

void check_s(double s) {
  if (!(s > 1.5 && s < 2.5))
    throw OutOfRange("delzant: s must lie in the open interval (3/2, 5/2)");
}

int next_pow2(int m) {
  int p = 1;
  while (p < m) p <<= 1;
  return p;
}

// iterative radix-2 FFT, forward: out_m = sum_j in_j exp(-2 pi i j m / M)
void fft(std::vector<complexd>& a) {
  const int n = static_cast<int>(a.size());
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * M_PI / len;
    const complexd wl(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      complexd w(1.0, 0.0);
      for (int j = 0; j < len / 2; ++j) {
        const complexd u = a[i + j];
        const complexd v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

}  // namespace

double qs_coefficient(double s, int n) {
  check_s(s);
  if (n < 0) throw OutOfRange("qs_coefficient: n >= 0");
  if (n == 0) return -1.0;  // constant-function convention, flagged in reports
  double prod = 1.0;
  for (int i = 0; i < n; ++i) prod *= (i + 0.5 - s) / (i - 0.5 + s);
  return -prod;
}

double qs_invariant_weight(double s, int n) {
  check_s(s);
  if (n < 0) throw OutOfRange("qs_invariant_weight: n >= 0");
  if (n == 0) return -2.0;
  double prod = 1.0;
  for (int i = 0; i < n; ++i) prod *= (i + 0.5 - s) / (i + 0.5 + s);
  return -prod;
}

MobiusMap MobiusMap::rotation(double theta) {
  return MobiusMap{std::polar(1.0, theta / 2.0), complexd(0.0, 0.0)};
}

MobiusMap MobiusMap::boost(double t) {
  return MobiusMap{complexd(std::cosh(t), 0.0), complexd(std::sinh(t), 0.0)};
}

MobiusMap MobiusMap::operator*(const MobiusMap& o) const {
  return MobiusMap{a * o.a + b * std::conj(o.b), a * o.b + b * std::conj(o.a)};
}

complexd MobiusMap::apply(complexd z) const {
  return (a * z + b) / (std::conj(b) * z + std::conj(a));
}

PiMatrix pi_s_matrix(double s, const MobiusMap& g, const FourierTruncation& trunc, int M,
                     double leak_tol) {
  check_s(s);
  const int N = trunc.N;
  const int dim = trunc.dim();
  PiMatrix out;
  out.mat = MatrixXd::Zero(dim, dim);

  if (g.is_rotation()) {
    // frequency-preserving: (e_n, f_n) block rotates by n*theta, c fixed
    const double theta = g.rotation_angle();
    out.mat(0, 0) = 1.0;
    for (int n = 1; n <= N; ++n) {
      // e_n o g^{-1} = Re(e^{-in theta} z^n) = cos(n theta) e_n + sin(n theta) f_n
      const double c = std::cos(n * theta), sn = std::sin(n * theta);
      out.mat(trunc.e_index(n), trunc.e_index(n)) = c;
      out.mat(trunc.f_index(n), trunc.e_index(n)) = sn;
      out.mat(trunc.e_index(n), trunc.f_index(n)) = -sn;
      out.mat(trunc.f_index(n), trunc.f_index(n)) = c;
    }
    return out;
  }

  if (M < 0) M = 8 * N;
  if (M < 4 * N) throw OutOfRange("pi_s_matrix: quadrature size must satisfy M >= 4N");
  M = next_pow2(M);

  const MobiusMap gi = g.inverse();
  std::vector<complexd> w(M);      // g^{-1}(z) on the circle
  std::vector<double> mult(M);     // Jac(g^{-1})^{1/2+s}
  for (int j = 0; j < M; ++j) {
    const complexd z = std::polar(1.0, 2.0 * M_PI * j / M);
    w[j] = gi.apply(z);
    const double jac = 1.0 / std::norm(-std::conj(g.b) * z + g.a);
    mult[j] = std::pow(jac, 0.5 + s);
  }

  std::vector<complexd> wpow(M, complexd(1.0, 0.0));
  std::vector<complexd> buf(M);

  const auto project_column = [&](int col_e, int col_f, bool paired) {
    // buf holds mult * w^n; its real part is the image of e_n, imaginary of f_n
    fft(buf);
    const double inv = 1.0 / M;
    double captured_e = 0.0, captured_f = 0.0, total_e = 0.0, total_f = 0.0;
    // assemble real-basis coefficients from two-sided spectrum
    for (int m = 0; m <= M / 2; ++m) {
      const complexd cm = buf[m] * inv;
      const complexd cneg = buf[(M - m) % M] * inv;
      double ecos, esin, fcos, fsin;
      if (m == 0) {
        ecos = cm.real();
        esin = 0.0;
        fcos = cm.imag();
        fsin = 0.0;
      } else {
        ecos = cm.real() + cneg.real();
        esin = -cm.imag() + cneg.imag();
        fcos = cm.imag() + cneg.imag();
        fsin = cm.real() - cneg.real();
      }
      const double ew = (m == 0) ? ecos * ecos : 0.5 * (ecos * ecos + esin * esin);
      const double fw = (m == 0) ? fcos * fcos : 0.5 * (fcos * fcos + fsin * fsin);
      total_e += ew;
      total_f += fw;
      if (m <= N) {
        captured_e += ew;
        captured_f += fw;
        if (m == 0) {
          out.mat(0, col_e) = ecos;
          if (paired) out.mat(0, col_f) = fcos;
        } else {
          out.mat(trunc.e_index(m), col_e) = ecos;
          out.mat(trunc.f_index(m), col_e) = esin;
          if (paired) {
            out.mat(trunc.e_index(m), col_f) = fcos;
            out.mat(trunc.f_index(m), col_f) = fsin;
          }
        }
      }
    }
    const double leak_e = std::sqrt(std::max(0.0, total_e - captured_e));
    const double leak_f = paired ? std::sqrt(std::max(0.0, total_f - captured_f)) : 0.0;
    return std::max(leak_e, leak_f);
  };

  for (int n = 0; n <= N; ++n) {
    for (int j = 0; j < M; ++j) buf[j] = mult[j] * wpow[j];
    const double leak = (n == 0)
                            ? project_column(0, 0, false)
                            : project_column(trunc.e_index(n), trunc.f_index(n), true);
    out.edge_leakage = std::max(out.edge_leakage, leak);
    if (n <= N / 4) out.inner_leakage = std::max(out.inner_leakage, leak);
    if (n < N)
      for (int j = 0; j < M; ++j) wpow[j] *= w[j];
  }

  if (out.inner_leakage > leak_tol)
    throw QuadratureTooCoarse("pi_s_matrix: inner truncation leakage exceeds leak_tol",
                              out.inner_leakage);
  return out;
}

QsInvarianceResidual check_qs_invariance(double s, const MobiusMap& g,
                                         const FourierTruncation& trunc, int K, int M) {
  if (K > trunc.N / 2) throw OutOfRange("check_qs_invariance: K <= N/2 required");
  const PiMatrix pm = pi_s_matrix(s, g, trunc, M, 1e300);
  const int dim = trunc.dim();

  VectorXd d_inv(dim), d_frm(dim);
  d_inv(0) = qs_invariant_weight(s, 0);
  d_frm(0) = qs_coefficient(s, 0);
  for (int n = 1; n <= trunc.N; ++n) {
    d_inv(trunc.e_index(n)) = d_inv(trunc.f_index(n)) = qs_invariant_weight(s, n);
    d_frm(trunc.e_index(n)) = d_frm(trunc.f_index(n)) = qs_coefficient(s, n);
  }

  std::vector<int> inner = {0};
  for (int n = 1; n <= K; ++n) {
    inner.push_back(trunc.e_index(n));
    inner.push_back(trunc.f_index(n));
  }

  const auto residual = [&](const VectorXd& d) {
    const MatrixXd R = pm.mat.transpose() * d.asDiagonal() * pm.mat - MatrixXd(d.asDiagonal());
    double mx = 0.0;
    for (int i : inner)
      for (int j : inner) mx = std::max(mx, std::abs(R(i, j)));
    return mx;
  };

  return QsInvarianceResidual{residual(d_inv), residual(d_frm)};
}

TangentMatrices tangent_matrices(double s, int ncols) {
  check_s(s);
  if (ncols < 3) throw OutOfRange("tangent_matrices: need at least columns (c, e2, f2)");
  TangentMatrices t;
  t.A = MatrixXd::Zero(2, ncols);
  t.B = MatrixXd::Zero(2, ncols);
  t.IB = MatrixXd::Zero(2, ncols);
  const double k = 2.0 + 2.0 * s;
  t.A(0, 0) = -1.0;
  t.A(0, 1) = k;
  t.A(1, 2) = k;
  t.B(0, 0) = -1.0;
  t.B(0, 1) = -k;
  t.B(1, 2) = -k;
  t.IB(0, 2) = -k;
  t.IB(1, 0) = 1.0;
  t.IB(1, 1) = k;
  return t;
}

VectorXd hyperbolic_symbol_z(double s, double t, int N) {
  check_s(s);
  const double a = std::tanh(t);
  const double c = 2.0 + 2.0 * s;
  // sigma_k: coefficients of (1 - a z)^{-c}
  VectorXd sigma(N + 2);
  sigma(0) = 1.0;
  for (int k = 0; k + 1 < sigma.size(); ++k) sigma(k + 1) = sigma(k) * a * (c + k) / (k + 1);
  VectorXd out(N + 1);
  const double scale = std::pow(1.0 - a * a, 0.5 + s);
  for (int k = 0; k <= N; ++k) {
    const double zk = (k >= 1 ? sigma(k - 1) : 0.0) - a * sigma(k);
    out(k) = scale * zk;
  }
  return out;
}

double lift_trace_pairing(const MatrixXd& A, const MatrixXd& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw DimensionMismatch("lift_trace_pairing: shape mismatch");
  const int r = static_cast<int>(A.rows()), c = static_cast<int>(A.cols());
  MatrixXd LA = MatrixXd::Zero(r + c, r + c), LB = LA;
  LA.topRightCorner(r, c) = A;
  LA.bottomLeftCorner(c, r) = A.transpose();
  LB.topRightCorner(r, c) = B;
  LB.bottomLeftCorner(c, r) = B.transpose();
  return (LA * LB).trace();
}

double pairing_vanishes(double s) {
  const TangentMatrices t = tangent_matrices(s);
  return lift_trace_pairing(t.A, t.IB);
}

double toledo_density(double s, double t_step, int N, int M) {
  check_s(s);
  const FourierTruncation trunc(N);
  const int dim = trunc.dim();

  const MatrixXd Pp = pi_s_matrix(s, MobiusMap::boost(t_step), trunc, M).mat;
  const MatrixXd Pm = pi_s_matrix(s, MobiusMap::boost(-t_step), trunc, M).mat;
  const MatrixXd Dv = (Pp - Pm) / (2.0 * t_step);

  const MatrixXd R = pi_s_matrix(s, MobiusMap::rotation(M_PI / 2.0), trunc).mat;
  const MatrixXd Rinv = pi_s_matrix(s, MobiusMap::rotation(-M_PI / 2.0), trunc).mat;
  const MatrixXd DJv = R * Dv * Rinv;

  // orthonormalize by the invariant weights and reorder (e1, f1 | c, e2, f2, ...)
  VectorXd scale(dim);
  scale(0) = std::sqrt(std::abs(qs_invariant_weight(s, 0)));
  for (int n = 1; n <= N; ++n)
    scale(trunc.e_index(n)) = scale(trunc.f_index(n)) =
        std::sqrt(std::abs(qs_invariant_weight(s, n)));

  std::vector<int> order = {trunc.e_index(1), trunc.f_index(1), 0};
  for (int n = 2; n <= N; ++n) {
    order.push_back(trunc.e_index(n));
    order.push_back(trunc.f_index(n));
  }

  const auto p_block = [&](const MatrixXd& X) {
    MatrixXd Xon(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        Xon(i, j) = scale(order[i]) * X(order[i], order[j]) / scale(order[j]);
    // A-parameter of the p-part: rows (e1, f1), columns the negative block
    MatrixXd X12 = Xon.topRightCorner(2, dim - 2);
    MatrixXd X21 = Xon.bottomLeftCorner(dim - 2, 2);
    return MatrixXd(0.5 * (X12 + X21.transpose()));
  };

  const MatrixXd Av = p_block(Dv);
  const MatrixXd AJv = p_block(DJv);
  Eigen::Matrix2d I2;
  I2 << 0, -1, 1, 0;
  const MatrixXd JAJv = I2 * AJv;
  // g(J0 df(Jv), df(v)) with the trace metric on the symmetric lifts
  return 2.0 * (JAJv.cwiseProduct(Av)).sum();
}

}  // namespace maxrep
