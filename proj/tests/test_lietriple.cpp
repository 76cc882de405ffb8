#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "maxrep/lietriple.hpp"

using namespace maxrep;

TEST_CASE("displayed bracket identities") {
  const int d = 8;
  // [S_{1,1}, A_{1,2}] = 2 S_{1,2} (1-based indices in the display)
  CHECK((bracket(elementary_S(0, 0, d), elementary_A(0, 1, d)) -
         2.0 * elementary_S(0, 1, d))
            .norm() < 1e-12);

  // [S_ij, S_kl] = d_jk A_il + d_jl A_ik + d_ik A_jl + d_il A_jk over all tuples <= 6
  const int m = 6;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          const MatrixXd lhs = bracket(elementary_S(i, j, d), elementary_S(k, l, d));
          MatrixXd rhs = MatrixXd::Zero(d, d);
          if (j == k) rhs += elementary_A(i, l, d);
          if (j == l) rhs += elementary_A(i, k, d);
          if (i == k) rhs += elementary_A(j, l, d);
          if (i == l) rhs += elementary_A(j, k, d);
          CHECK((lhs - rhs).norm() < 1e-12);
        }

  // [X, X] = 0
  const MatrixXd X = elementary_S(1, 3, d) + 0.5 * elementary_S(2, 2, d);
  CHECK(bracket(X, X).norm() == 0.0);
}

TEST_CASE("bracket bilinearity and Jacobi identity") {
  Rng rng(3);
  const int d = 7;
  for (int trial = 0; trial < 50; ++trial) {
    MatrixXd X(d, d), Y(d, d), Z(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        X(i, j) = rng.normal();
        Y(i, j) = rng.normal();
        Z(i, j) = rng.normal();
      }
    const double a = rng.normal(), b = rng.normal();
    CHECK((bracket(MatrixXd(a * X + b * Y), Z) -
           (a * bracket(X, Z) + b * bracket(Y, Z)))
              .norm() < 1e-12 * (X.norm() + Y.norm()) * Z.norm());
    const MatrixXd jac =
        bracket(X, bracket(Y, Z)) + bracket(Y, bracket(Z, X)) + bracket(Z, bracket(X, Y));
    CHECK(jac.norm() < 1e-12 * X.norm() * Y.norm() * Z.norm());
  }
}

TEST_CASE("is_lie_triple_system") {
  const int q = 4, d = 2 + q;
  // p of X_R(2,q): matrices [[0, A], [A^T, 0]]
  std::vector<MatrixXd> basis;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < q; ++j) {
      MatrixXd M = MatrixXd::Zero(d, d);
      M(i, 2 + j) = 1.0;
      M(2 + j, i) = 1.0;
      basis.push_back(M);
    }
  auto rep = is_lie_triple_system(basis);
  CHECK(rep.closed);
  CHECK(rep.worst_residual < 1e-12);

  // a single S_{1,1}: brackets vanish
  CHECK(is_lie_triple_system({elementary_S(0, 0, 5)}).closed);

  // span{S_{1,1}, S_{1,2}} is not closed: [S12, [S12, S11]] = 2 S11 - 2 S22
  CHECK_FALSE(is_lie_triple_system({elementary_S(0, 0, 5), elementary_S(0, 1, 5)}).closed);
}

TEST_CASE("infinite-generation example reaches every S_{1,k}") {
  const int d = 8;
  const MatrixXd v = elementary_S(0, 0, d);
  const MatrixXd w = generation_example_w(d);

  // base case of the ladder: [S11, [S11, w]] = 4 S12
  CHECK((bracket(v, bracket(v, w)) - 4.0 * elementary_S(0, 1, d)).norm() < 1e-12);
  // k = 2: the S_{1,1} term self-annihilates (A_{1,1} = 0), leaving (1/2) S_{1,3}
  CHECK((bracket(v, bracket(elementary_S(0, 1, d), w)) - 0.5 * elementary_S(0, 2, d))
            .norm() < 1e-12);
  // the recursion [S11, [S1k, w]] = 2/(k-1)^2 S_{1,k-1} + 2/k^2 S_{1,k+1},
  // exact for 3 <= k <= d-2 (1-based)
  for (int k = 3; k <= d - 2; ++k) {
    const MatrixXd lhs =
        bracket(elementary_S(0, 0, d), bracket(elementary_S(0, k - 1, d), w));
    const MatrixXd rhs = 2.0 / double((k - 1) * (k - 1)) * elementary_S(0, k - 2, d) +
                         2.0 / double(k * k) * elementary_S(0, k, d);
    CHECK((lhs - rhs).norm() < 1e-12);
  }

  std::vector<MatrixXd> targets;
  for (int k = 1; k < d; ++k) targets.push_back(elementary_S(0, k, d));
  auto rep = generated_algebra_contains(v, w, targets, 12);
  for (bool c : rep.contains) CHECK(c);

  // commuting pair stays two-dimensional
  auto small = generated_algebra_contains(elementary_S(0, 0, d), elementary_S(1, 1, d),
                                          {elementary_S(0, 1, d)}, 6, 1e-9);
  CHECK(small.generated_dim == 2);
  CHECK_FALSE(small.contains[0]);
}

TEST_CASE("generation is monotone in dimension") {
  // the ladder spreads one index per round, so the depth must scale with d
  const auto dim_at = [](int d) {
    auto rep = generated_algebra_contains(elementary_S(0, 0, d), generation_example_w(d),
                                          {}, 2 * d);
    return rep.generated_dim;
  };
  const int d6 = dim_at(6), d8 = dim_at(8), d10 = dim_at(10);
  CHECK(d6 < d8);
  CHECK(d8 < d10);
}

TEST_CASE("complex structures of the four Hermitian spaces") {
  SUBCASE("XC(2, 5)") {
    auto rep = verify_complex_structure(HermitianSpace::XC, 2, 5, 100);
    CHECK(rep.pass);
    CHECK(rep.max_square_residual <= 1e-12);
    CHECK(rep.max_isometry_residual <= 1e-12);
    CHECK(rep.max_commute_residual <= 1e-12);
  }
  SUBCASE("XR(2, 5)") {
    auto rep = verify_complex_structure(HermitianSpace::XR2, 2, 5, 100);
    CHECK(rep.pass);
  }
  SUBCASE("Siegel half-dimension 4") {
    auto rep = verify_complex_structure(HermitianSpace::Siegel, 4, 4, 100);
    CHECK(rep.pass);
  }
  SUBCASE("Ostar half-dimension 4") {
    auto rep = verify_complex_structure(HermitianSpace::Ostar, 4, 4, 100);
    CHECK(rep.pass);
  }
}
