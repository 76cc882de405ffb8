#include "maxrep/lietriple.hpp"

#include <cmath>

#include <Eigen/LU>

namespace maxrep {

namespace {

// complex unitary via Cayley transform of a random skew-Hermitian matrix
MatrixXcd random_unitary(int m, Rng& rng) {
  MatrixXcd K(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) K(i, j) = complexd(rng.normal(), rng.normal());
  MatrixXcd S = 0.5 * (K - K.adjoint());
  MatrixXcd I = MatrixXcd::Identity(m, m);
  return (I - S) * (I + S).inverse();
}

MatrixXd random_rotation(int m, Rng& rng) {
  // product of Givens rotations, enough to mix
  MatrixXd R = MatrixXd::Identity(m, m);
  for (int k = 0; k < 2 * m; ++k) {
    const int i = rng.uniform_int(0, m - 1);
    int j = rng.uniform_int(0, m - 1);
    if (i == j) j = (j + 1) % m;
    const double a = rng.uniform(0.0, 2.0 * M_PI);
    MatrixXd G = MatrixXd::Identity(m, m);
    G(i, i) = std::cos(a);
    G(j, j) = std::cos(a);
    G(i, j) = -std::sin(a);
    G(j, i) = std::sin(a);
    R = R * G;
  }
  return R;
}

// orthogonal projection of vec(X) onto span{vec(B_i)} via normal equations
double span_residual(const std::vector<Eigen::VectorXd>& basis, const Eigen::VectorXd& x) {
  Eigen::VectorXd r = x;
  // basis is orthonormalized by construction
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) r -= b.dot(r) * b;
  return r.norm();
}

std::vector<Eigen::VectorXd> orthonormalize(const std::vector<MatrixXd>& mats,
                                            double tol) {
  std::vector<Eigen::VectorXd> basis;
  for (const auto& M : mats) {
    Eigen::VectorXd v = Eigen::VectorXd::Map(M.data(), M.size());
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v -= b.dot(v) * b;
    if (v.norm() > tol * std::max(1.0, M.norm())) basis.push_back(v / v.norm());
  }
  return basis;
}

}  // namespace

MatrixXd elementary_E(int i, int j, int d) {
  if (i < 0 || j < 0 || i >= d || j >= d) throw OutOfRange("elementary_E: bad index");
  MatrixXd m = MatrixXd::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

MatrixXd elementary_S(int i, int j, int d) {
  return elementary_E(i, j, d) + elementary_E(j, i, d);
}

MatrixXd elementary_A(int i, int j, int d) {
  return elementary_E(i, j, d) - elementary_E(j, i, d);
}

MatrixXd bracket(const MatrixXd& X, const MatrixXd& Y) {
  if (X.rows() != Y.rows() || X.cols() != Y.cols())
    throw DimensionMismatch("bracket: dimension mismatch");
  return X * Y - Y * X;
}

MatrixXcd bracket(const MatrixXcd& X, const MatrixXcd& Y) {
  if (X.rows() != Y.rows() || X.cols() != Y.cols())
    throw DimensionMismatch("bracket: dimension mismatch");
  return X * Y - Y * X;
}

LieTripleReport is_lie_triple_system(const std::vector<MatrixXd>& basis, double tol) {
  LieTripleReport rep;
  if (basis.empty()) {
    rep.closed = true;
    return rep;
  }
  const auto ortho = orthonormalize(basis, 1e-12);
  for (const auto& X : basis)
    for (const auto& Y : basis)
      for (const auto& Z : basis) {
        const MatrixXd T = bracket(X, bracket(Y, Z));
        const double scale = std::max(1.0, T.norm());
        const double r =
            span_residual(ortho, Eigen::VectorXd::Map(T.data(), T.size())) / scale;
        rep.worst_residual = std::max(rep.worst_residual, r);
      }
  rep.closed = rep.worst_residual <= tol;
  return rep;
}

GenerationReport generated_algebra_contains(const MatrixXd& v, const MatrixXd& w,
                                            const std::vector<MatrixXd>& targets,
                                            int depth, double tol) {
  GenerationReport rep;
  std::vector<Eigen::VectorXd> basis;

  // the frontier is the orthonormalized basis itself: Gram-Schmidt concentrates
  // each new ladder rung into a nearly pure basis vector, so deep rungs enter at
  // their structural 1/k^2 scale rather than with factorially small mixture weights
  const auto add = [&](const MatrixXd& M) {
    Eigen::VectorXd x = Eigen::VectorXd::Map(M.data(), M.size());
    const double n0 = x.norm();
    if (n0 < 1e-300) return false;
    x /= n0;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) x -= b.dot(x) * b;
    if (x.norm() <= tol) return false;
    basis.push_back(x / x.norm());
    return true;
  };

  add(v);
  add(w);

  const auto all_targets_in = [&]() {
    for (const auto& t : targets) {
      Eigen::VectorXd x = Eigen::VectorXd::Map(t.data(), t.size());
      if (span_residual(basis, x) > tol * std::max(1.0, x.norm())) return false;
    }
    return !targets.empty();
  };

  const int d = static_cast<int>(v.rows());
  int level = 0;
  std::size_t frontier = 0;
  for (; level < depth && !all_targets_in(); ++level) {
    const std::size_t lo = frontier, hi = basis.size();
    frontier = hi;
    bool added = false;
    for (std::size_t i = 0; i < hi; ++i)
      for (std::size_t j = std::max(lo, i); j < hi; ++j) {
        const MatrixXd A = Eigen::Map<const MatrixXd>(basis[i].data(), d, d);
        const MatrixXd B = Eigen::Map<const MatrixXd>(basis[j].data(), d, d);
        if (add(bracket(A, B))) added = true;
      }
    if (!added) break;
  }
  rep.depth_used = level;
  rep.generated_dim = static_cast<int>(basis.size());
  for (const auto& t : targets) {
    Eigen::VectorXd x = Eigen::VectorXd::Map(t.data(), t.size());
    rep.contains.push_back(span_residual(basis, x) <= tol * std::max(1.0, x.norm()));
  }
  if (level == depth &&
      std::find(rep.contains.begin(), rep.contains.end(), false) != rep.contains.end())
    throw DepthExhausted("generated_algebra_contains: depth exhausted before all targets");
  return rep;
}

MatrixXd generation_example_w(int d) {
  MatrixXd w = MatrixXd::Zero(d, d);
  for (int n = 1; n <= d - 1; ++n)
    w += elementary_S(n - 1, n, d) / double(n * n);
  return w;
}

ComplexStructureReport verify_complex_structure(HermitianSpace space, int p, int q,
                                                int samples, std::uint64_t seed,
                                                double tol) {
  Rng rng(seed);
  ComplexStructureReport rep;
  rep.samples = samples;

  // each space provides: sample_p(), J0(), sample_k_action()
  // real trace form g(X, Y) = Re tr(X Y) on the symmetric/Hermitian lifts
  const auto run_complex = [&](auto sample_A, auto J0A, auto k_action_factory, int rows,
                               int cols) {
    for (int it = 0; it < samples; ++it) {
      MatrixXcd A(rows, cols), B(rows, cols);
      sample_A(A, rng);
      sample_A(B, rng);
      const auto lift = [&](const MatrixXcd& M) {
        MatrixXcd L = MatrixXcd::Zero(rows + cols, rows + cols);
        L.topRightCorner(rows, cols) = M;
        L.bottomLeftCorner(cols, rows) = M.adjoint();
        return L;
      };
      const auto gform = [&](const MatrixXcd& X, const MatrixXcd& Y) {
        return (lift(X) * lift(Y)).trace().real();
      };
      // J0^2 = -Id
      rep.max_square_residual =
          std::max(rep.max_square_residual, (J0A(J0A(A)) + A).norm() / A.norm());
      // isometry
      rep.max_isometry_residual = std::max(
          rep.max_isometry_residual,
          std::abs(gform(J0A(A), J0A(B)) - gform(A, B)) / std::max(1.0, A.norm() * B.norm()));
      // K*-commutation
      auto act = k_action_factory(rng);
      rep.max_commute_residual =
          std::max(rep.max_commute_residual,
                   (J0A(act(A)) - act(J0A(A))).norm() / std::max(1.0, A.norm()));
    }
  };

  switch (space) {
    case HermitianSpace::XC: {
      // p x q complex blocks, J0: A -> iA, K* = U(p) x U(q)
      run_complex(
          [&](MatrixXcd& A, Rng& r) {
            for (int i = 0; i < A.rows(); ++i)
              for (int j = 0; j < A.cols(); ++j) A(i, j) = complexd(r.normal(), r.normal());
          },
          [](const MatrixXcd& A) { return MatrixXcd(complexd(0, 1) * A); },
          [&](Rng& r) {
            MatrixXcd P = random_unitary(p, r), Q = random_unitary(q, r);
            return [P, Q](const MatrixXcd& A) { return MatrixXcd(P * A * Q.adjoint()); };
          },
          p, q);
      break;
    }
    case HermitianSpace::XR2: {
      // real 2 x q blocks, J0: A -> I A, K* = SO(2) x O(q)
      Eigen::Matrix2d I2;
      I2 << 0, -1, 1, 0;
      run_complex(
          [&](MatrixXcd& A, Rng& r) {
            for (int i = 0; i < A.rows(); ++i)
              for (int j = 0; j < A.cols(); ++j) A(i, j) = complexd(r.normal(), 0.0);
          },
          [I2](const MatrixXcd& A) {
            return MatrixXcd(I2.cast<complexd>() * A);
          },
          [&](Rng& r) {
            const double a = r.uniform(0.0, 2.0 * M_PI);
            Eigen::Matrix2d P;
            P << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
            MatrixXd Q = random_rotation(q, r);
            return [P, Q](const MatrixXcd& A) {
              return MatrixXcd(P.cast<complexd>() * A * Q.cast<complexd>().transpose());
            };
          },
          2, q);
      break;
    }
    case HermitianSpace::Siegel: {
      // p = [[a, b], [b, -a]], a, b symmetric m x m; J0(M) = Z M Z^{-1}
      const int m = p;
      MatrixXd Z(2 * m, 2 * m);
      Z << MatrixXd::Identity(m, m), MatrixXd::Identity(m, m),
          -MatrixXd::Identity(m, m), MatrixXd::Identity(m, m);
      Z /= std::sqrt(2.0);
      const MatrixXd Zi = Z.transpose();  // Z is orthogonal
      for (int it = 0; it < samples; ++it) {
        const auto sample_m = [&](Rng& r) {
          MatrixXd a(m, m), b(m, m);
          for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
              a(i, j) = r.normal();
              b(i, j) = r.normal();
            }
          a = MatrixXd(0.5 * (a + a.transpose()));
          b = MatrixXd(0.5 * (b + b.transpose()));
          MatrixXd M(2 * m, 2 * m);
          M << a, b, b, -a;
          return M;
        };
        const MatrixXd X = sample_m(rng), Y = sample_m(rng);
        const auto J0 = [&](const MatrixXd& M) { return MatrixXd(Z * M * Zi); };
        rep.max_square_residual =
            std::max(rep.max_square_residual, (J0(J0(X)) + X).norm() / X.norm());
        rep.max_isometry_residual =
            std::max(rep.max_isometry_residual,
                     std::abs((J0(X) * J0(Y)).trace() - (X * Y).trace()) /
                         std::max(1.0, X.norm() * Y.norm()));
        // K* = unitary group embedded as [[A, B], [-B, A]]
        MatrixXcd U = random_unitary(m, rng);
        MatrixXd k(2 * m, 2 * m);
        k << U.real(), -U.imag(), U.imag(), U.real();
        rep.max_commute_residual =
            std::max(rep.max_commute_residual,
                     (J0(MatrixXd(k * X * k.transpose())) -
                      MatrixXd(k * J0(X) * k.transpose()))
                             .norm() /
                         std::max(1.0, X.norm()));
      }
      break;
    }
    case HermitianSpace::Ostar: {
      // p = {[[0, A], [A*, 0]] : A complex symmetric m x m}, J0: A -> iA,
      // K* = {diag(U, conj U)} acting A -> U A U^T
      const int m = p;
      run_complex(
          [&](MatrixXcd& A, Rng& r) {
            for (int i = 0; i < A.rows(); ++i)
              for (int j = 0; j < A.cols(); ++j) A(i, j) = complexd(r.normal(), r.normal());
            A = MatrixXcd(0.5 * (A + A.transpose().eval()));
          },
          [](const MatrixXcd& A) { return MatrixXcd(complexd(0, 1) * A); },
          [&](Rng& r) {
            MatrixXcd U = random_unitary(m, r);
            return [U](const MatrixXcd& A) { return MatrixXcd(U * A * U.transpose()); };
          },
          m, m);
      break;
    }
  }

  rep.pass = rep.max_square_residual <= tol && rep.max_isometry_residual <= tol &&
             rep.max_commute_residual <= tol;
  return rep;
}

}  // namespace maxrep
