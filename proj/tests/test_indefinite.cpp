#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "maxrep/indefinite.hpp"
#include "maxrep/rng.hpp"

using namespace maxrep;
using complexd = std::complex<double>;

namespace {

VectorXd coords(const IndefiniteForm& f, std::initializer_list<double> vals) {
  VectorXd v = VectorXd::Zero(f.dim());
  int i = 0;
  for (double x : vals) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("make_form builds the standard diagonal form") {
  const IndefiniteForm f = make_form(2, 3);
  CHECK(f.dim() == 5);
  const VectorXd d = f.sign_diagonal();
  for (int i = 0; i < 5; ++i) CHECK(d(i) == (i < 2 ? 1.0 : -1.0));

  const IndefiniteForm f11 = make_form(1, 1);
  CHECK(f11.sign_diagonal()(0) == 1.0);
  CHECK(f11.sign_diagonal()(1) == -1.0);

  CHECK(make_form(2, 16).dim() == 18);
  CHECK_THROWS_AS(make_form(0, 3), InvalidSignature);
  CHECK_THROWS_AS(make_form(2, 0), InvalidSignature);
}

TEST_CASE("signature_of_restriction on hand-computed spans") {
  const IndefiniteForm f = make_form(2, 3);

  MatrixXd pos(5, 2);
  pos << 1, 0, 0, 1, 0, 0, 0, 0, 0, 0;
  auto s = signature_of_restriction(f, pos);
  CHECK(s.n_plus == 2);
  CHECK(s.n_minus == 0);
  CHECK(s.n_zero == 0);

  MatrixXd iso(5, 1);
  iso << 1, 0, 1, 0, 0;
  s = signature_of_restriction(f, iso);
  CHECK(s.n_plus == 0);
  CHECK(s.n_minus == 0);
  CHECK(s.n_zero == 1);

  // oracle: Gram of {e1+e3, -e1+e3, e2+e3} is [[0,-2,-1],[-2,0,-1],[-1,-1,0]],
  // determinant -4, trace 0 => eigen signs (+,+,-)
  MatrixXd triple(5, 3);
  triple << 1, -1, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0;
  s = signature_of_restriction(f, triple);
  CHECK(s.n_plus == 2);
  CHECK(s.n_minus == 1);
  CHECK(s.n_zero == 0);

  // same span with e2+e4 instead: Gram [[0,-2,0],[-2,0,0],[0,0,0]],
  // eigenvalues {2,-2,0}
  MatrixXd triple2(5, 3);
  triple2 << 1, -1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 0, 0, 0;
  s = signature_of_restriction(f, triple2);
  CHECK(s.n_plus == 1);
  CHECK(s.n_minus == 1);
  CHECK(s.n_zero == 1);

  MatrixXd dep(5, 2);
  dep << 1, 2, 0, 0, 1, 2, 0, 0, 0, 0;
  CHECK_THROWS_AS(signature_of_restriction(f, dep), DegenerateInput);
}

TEST_CASE("signature is invariant under basis change") {
  const IndefiniteForm f = make_form(2, 5);
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = rng.uniform_int(1, 4);
    MatrixXd basis(f.dim(), m);
    for (int j = 0; j < m; ++j) basis.col(j) = rng.normal_vector(f.dim());
    const auto s0 = signature_of_restriction(f, basis);
    MatrixXd M(m, m);
    do {
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) M(i, j) = rng.normal();
    } while (std::abs(M.determinant()) < 1e-3);
    const auto s1 = signature_of_restriction(f, MatrixXd(basis * M));
    CHECK(s0.n_plus == s1.n_plus);
    CHECK(s0.n_minus == s1.n_minus);
    CHECK(s0.n_zero == s1.n_zero);
  }
}

TEST_CASE("is_opposite on isotropic lines") {
  const IndefiniteForm f = make_form(2, 3);
  const IsotropicSubspace V(f, coords(f, {1, 0, 1, 0, 0}));
  const IsotropicSubspace W(f, coords(f, {-1, 0, 1, 0, 0}));
  const IsotropicSubspace U(f, coords(f, {0, 1, 0, 1, 0}));

  CHECK(is_opposite(V, W));
  CHECK_FALSE(is_opposite(V, V));
  CHECK_FALSE(is_opposite(V, U));  // Q(x,y) = 0: orthogonal isotropic lines
  CHECK(is_opposite(W, V));        // symmetry
}

TEST_CASE("is_opposite equivariance under the group") {
  const IndefiniteForm f = make_form(2, 4);
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    GroupElement g = random_group_element(f, rng);
    VectorXd a = coords(f, {1, 0, 1, 0, 0, 0});
    VectorXd b(f.dim());
    const double ang = rng.uniform(0.0, 2 * M_PI);
    b.setZero();
    b(0) = std::cos(ang);
    b(1) = std::sin(ang);
    b.tail(f.q()) = rng.unit_vector(f.q());
    const IsotropicSubspace V(f, a), W(f, b);
    const IsotropicSubspace gW(f, MatrixXd(g.matrix() * b));
    const IsotropicSubspace giV(f, MatrixXd(g.inverse().matrix() * a));
    CHECK(is_opposite(V, gW) == is_opposite(giV, W));
  }
}

TEST_CASE("is_transverse_maximal in (2,2)") {
  const IndefiniteForm f = make_form(2, 2);
  MatrixXd V(4, 2), W(4, 2), S(4, 2);
  V << 1, 0, 0, 1, 1, 0, 0, 1;
  W << 1, 0, 0, 1, -1, 0, 0, -1;
  S << 1, 0, 0, 1, 1, 0, 0, -1;
  const IsotropicSubspace sv(f, V), sw(f, W), ss(f, S);
  CHECK(is_transverse_maximal(sv, sw));
  CHECK_FALSE(is_transverse_maximal(sv, sv));
  CHECK_FALSE(is_transverse_maximal(sv, ss));  // shares the line e1+e3
}

TEST_CASE("grassmann_distance principal angles") {
  MatrixXd a(3, 1), b(3, 1), c(3, 1);
  a << 1, 0, 0;
  b << 0, 1, 0;
  c << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0;
  CHECK(grassmann_distance(a, a) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(grassmann_distance(a, b) == doctest::Approx(M_PI / 2).epsilon(1e-12));
  CHECK(grassmann_distance(a, c) == doctest::Approx(M_PI / 4).epsilon(1e-12));
}

TEST_CASE("grassmann_distance triangle inequality") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 6, k = 2;
    MatrixXd A(d, k), B(d, k), C(d, k);
    for (int j = 0; j < k; ++j) {
      A.col(j) = rng.normal_vector(d);
      B.col(j) = rng.normal_vector(d);
      C.col(j) = rng.normal_vector(d);
    }
    const double ab = grassmann_distance(A, B);
    const double bc = grassmann_distance(B, C);
    const double ac = grassmann_distance(A, C);
    CHECK(ac <= ab + bc + 1e-9);
  }
}

TEST_CASE("check_group_membership accepts isometries") {
  const IndefiniteForm f = make_form(2, 3);
  const GroupElement id = check_group_membership(f, MatrixXd::Identity(5, 5));
  CHECK(id.residual() == doctest::Approx(0.0));

  // rotation in the negative block
  CHECK(check_group_membership(f, rotation_in_plane(f, 2, 4, 0.7)).residual() < 1e-12);

  // diag(2, 1/2) conjugated into the (e1, e3) hyperbolic plane: a boost with
  // cosh tau = 1.25, sinh tau = 0.75
  MatrixXd g = MatrixXd::Identity(5, 5);
  g(0, 0) = 1.25;
  g(2, 2) = 1.25;
  g(0, 2) = 0.75;
  g(2, 0) = 0.75;
  const GroupElement boost = check_group_membership(f, g);
  CHECK(boost.residual() < 1e-12);

  MatrixXd bad = MatrixXd::Identity(5, 5);
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(check_group_membership(f, bad), NotInGroup);
}

TEST_CASE("products and inverses stay in the group within the stated bound") {
  const IndefiniteForm f = make_form(2, 6);
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    GroupElement g = random_group_element(f, rng);
    GroupElement h = random_group_element(f, rng);
    const double eps = std::numeric_limits<double>::epsilon();
    const double bound = 4.0 * (g.residual() + h.residual() +
                                eps * f.dim() * g.matrix().norm() * h.matrix().norm());
    CHECK((g * h).residual() <= bound);
    CHECK(g.inverse().residual() <=
          4.0 * (g.residual() + eps * f.dim() * g.matrix().norm() * g.matrix().norm()));
  }
}

TEST_CASE("positive_component_indicator") {
  const IndefiniteForm f = make_form(2, 3);
  CHECK(positive_component_indicator(check_group_membership(f, MatrixXd::Identity(5, 5))));

  VectorXd flip = VectorXd::Ones(5);
  flip(0) = -1.0;
  const GroupElement r = check_group_membership(f, MatrixXd(flip.asDiagonal()));
  CHECK_FALSE(positive_component_indicator(r));

  // the indicator is multiplicative: product of two indicator-false elements
  Rng rng(23);
  int found = 0;
  while (found < 10) {
    GroupElement a = random_group_element(f, rng);
    GroupElement b = random_group_element(f, rng);
    const GroupElement fa = r * a, fb = r * b;
    if (!positive_component_indicator(fa) && !positive_component_indicator(fb)) {
      CHECK(positive_component_indicator(fa * fb));
      ++found;
    }
  }

  const IndefiniteForm f3 = make_form(3, 3);
  CHECK_THROWS_AS(
      positive_component_indicator(check_group_membership(f3, MatrixXd::Identity(6, 6))),
      UnsupportedSignature);
}

TEST_CASE("complex field support") {
  const IndefiniteForm f = make_form(2, 3, Field::Complex);
  MatrixXcd V(5, 1), W(5, 1);
  V.setZero();
  W.setZero();
  V(0) = complexd(1, 0);
  V(2) = complexd(0, 1);  // isotropic: |1|^2 - |i|^2 = 0
  W(0) = complexd(-1, 0);
  W(2) = complexd(0, 1);
  auto s = signature_of_restriction(f, MatrixXcd(V));
  CHECK(s.n_zero == 1);
  CHECK(is_opposite(f, V, W));
  CHECK_FALSE(is_opposite(f, V, V));

  MatrixXcd u = MatrixXcd::Identity(5, 5);
  u(3, 3) = std::polar(1.0, 0.9);
  CHECK(group_residual(f, u) < 1e-14);
}
