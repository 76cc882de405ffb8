#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "maxrep/chains.hpp"
#include "maxrep/rng.hpp"

using namespace maxrep;
using complexd = std::complex<double>;

namespace {

VectorXcd cvec(std::initializer_list<complexd> vals) {
  VectorXcd v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (const auto& x : vals) v(i++) = x;
  return v;
}

HeisenbergPoint random_point(int n, Rng& rng) {
  VectorXcd z(n - 1);
  for (int i = 0; i < n - 1; ++i) z(i) = complexd(rng.normal(), rng.normal());
  return HeisenbergPoint::at(z, rng.normal());
}

}  // namespace

TEST_CASE("embedding is isotropic and unembeds") {
  Rng rng(1);
  for (int n : {2, 3, 4}) {
    for (int trial = 0; trial < 20; ++trial) {
      const HeisenbergPoint p = random_point(n, rng);
      const VectorXcd Z = heisenberg_embed(p);
      CHECK(std::abs(heisenberg_form(Z, Z)) < 1e-12 * Z.squaredNorm());
      const HeisenbergPoint back = heisenberg_unembed(Z);
      CHECK((back.zeta - p.zeta).norm() < 1e-12);
      CHECK(back.v == doctest::Approx(p.v).epsilon(1e-12));
    }
    const VectorXcd Zinf = heisenberg_embed(HeisenbergPoint::inf(n));
    CHECK(std::abs(heisenberg_form(Zinf, Zinf)) == 0.0);
    CHECK(heisenberg_unembed(Zinf).infinity);
  }
}

TEST_CASE("heisenberg translations are isometries with the twisted law") {
  Rng rng(2);
  const int n = 3;
  for (int trial = 0; trial < 20; ++trial) {
    VectorXcd tau(n - 1);
    for (int i = 0; i < n - 1; ++i) tau(i) = complexd(rng.normal(), rng.normal());
    const double s = rng.normal();
    const MatrixXcd T = heisenberg_translation(n, tau, s);

    // Q-unitary
    MatrixXcd G = MatrixXcd::Zero(n + 1, n + 1);
    G(0, n) = 1;
    G(n, 0) = 1;
    for (int j = 1; j < n; ++j) G(j, j) = 1;
    CHECK((T.adjoint() * G * T - G).norm() < 1e-12);

    // action on points: zeta + tau, v + s - 2 Im<zeta, tau>
    const HeisenbergPoint p = random_point(n, rng);
    const HeisenbergPoint q = heisenberg_unembed(T * heisenberg_embed(p));
    CHECK((q.zeta - (p.zeta + tau)).norm() < 1e-10);
    const double expected_v =
        p.v + s - 2.0 * std::imag((tau.conjugate().array() * p.zeta.array()).sum());
    CHECK(q.v == doctest::Approx(expected_v).epsilon(1e-9));
  }
}

TEST_CASE("chain through two points") {
  const int n = 2;
  SUBCASE("vertical through infinity") {
    const HeisenbergPoint y = HeisenbergPoint::at(cvec({complexd(0.4, -1.1)}), 0.7);
    const Chain c = chain_through_two(HeisenbergPoint::inf(n), y);
    CHECK(c.kind == ChainKind::Vertical);
    CHECK((c.base - y.zeta).norm() < 1e-12);
    CHECK(chain_membership_residual(c, y) < 1e-12);
    // any other point on the vertical line lies on the chain
    CHECK(chain_membership_residual(c, HeisenbergPoint::at(y.zeta, -3.0)) < 1e-12);
  }
  SUBCASE("vertical through coincident projections") {
    const VectorXcd z = cvec({complexd(1.0, 2.0)});
    const Chain c = chain_through_two(HeisenbergPoint::at(z, 0.0),
                                      HeisenbergPoint::at(z, 5.0));
    CHECK(c.kind == ChainKind::Vertical);
  }
  SUBCASE("circle chain contains both points") {
    Rng rng(5);
    for (int trial = 0; trial < 25; ++trial) {
      const HeisenbergPoint x = random_point(n, rng), y = random_point(n, rng);
      if ((x.zeta - y.zeta).norm() < 1e-3) continue;
      const Chain c = chain_through_two(x, y);
      CHECK(c.kind == ChainKind::Circle);
      CHECK(chain_membership_residual(c, x) < 1e-9);
      CHECK(chain_membership_residual(c, y) < 1e-9);
      // every parametrized point of the chain is isotropic and on the plane
      for (double phi : {0.3, 1.7, 4.4}) {
        const HeisenbergPoint p = c.point_at(phi);
        CHECK(chain_membership_residual(c, p) < 1e-9);
      }
    }
  }
  SUBCASE("symmetry and coincidence") {
    Rng rng(6);
    const HeisenbergPoint x = random_point(n, rng), y = random_point(n, rng);
    const Chain c1 = chain_through_two(x, y);
    const Chain c2 = chain_through_two(y, x);
    CHECK(std::abs(c1.center_w) == doctest::Approx(std::abs(c2.center_w)).epsilon(1e-9));
    CHECK(c1.radius == doctest::Approx(c2.radius).epsilon(1e-9));
    CHECK(chain_membership_residual(c2, x) < 1e-9);
    CHECK_THROWS_AS(chain_through_two(x, x), CoincidentPoints);
  }
}

TEST_CASE("chain_through_two is equivariant under Heisenberg translations") {
  Rng rng(8);
  const int n = 3;
  for (int trial = 0; trial < 15; ++trial) {
    const HeisenbergPoint x = random_point(n, rng), y = random_point(n, rng);
    VectorXcd tau(n - 1);
    for (int i = 0; i < n - 1; ++i) tau(i) = complexd(rng.normal(), rng.normal());
    const double s = rng.normal();
    const MatrixXcd T = heisenberg_translation(n, tau, s);
    const HeisenbergPoint tx = heisenberg_unembed(T * heisenberg_embed(x));
    const HeisenbergPoint ty = heisenberg_unembed(T * heisenberg_embed(y));
    const Chain c = chain_through_two(x, y);
    const Chain tc = chain_through_two(tx, ty);
    // translated chain contains translated chain points
    if (c.kind == ChainKind::Circle) {
      for (double phi : {0.9, 2.8}) {
        const VectorXcd img = T * heisenberg_embed(c.point_at(phi));
        CHECK(chain_membership_residual(tc, heisenberg_unembed(img)) < 1e-8);
      }
    }
  }
}

TEST_CASE("lemma71_construct reproduces the hand-computed n = 2 example") {
  // p_C = 0, S_X = {1}, y = (i, 0): circle through {0, 1, i} has center (1+i)/2,
  // radius sqrt(2)/2; lift v0 = 1; c = (0, 1); x = (1, 2)
  const HeisenbergPoint y = HeisenbergPoint::at(cvec({complexd(0, 1)}), 0.0);
  AffineSubspace sx{cvec({complexd(1, 0)}), MatrixXcd::Zero(1, 0)};
  const auto res = lemma71_construct(y, cvec({complexd(0, 0)}), sx);

  CHECK(res.chain.kind == ChainKind::Circle);
  CHECK(std::abs(res.z_y(0) - complexd(1, 0)) < 1e-12);
  CHECK(res.chain.radius == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(res.residual_y < 1e-9);
  CHECK(res.residual_c < 1e-9);
  CHECK(res.residual_x < 1e-9);

  CHECK(res.c.zeta.norm() < 1e-12);
  CHECK(res.c.v == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(res.x.zeta(0) - complexd(1, 0)) < 1e-12);
  CHECK(res.x.v == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("lemma71_construct rejects the excluded set") {
  // pi(y) on the real affine span of S_X and p_C
  const HeisenbergPoint y = HeisenbergPoint::at(cvec({complexd(0.5, 0)}), 1.0);
  AffineSubspace sx{cvec({complexd(1, 0)}), MatrixXcd::Zero(1, 0)};
  CHECK_THROWS_AS(lemma71_construct(y, cvec({complexd(0, 0)}), sx), NotInGenericSet);
}

TEST_CASE("lemma71_construct on seeded generic configurations, n = 2 and 3") {
  for (int n : {2, 3}) {
    Rng rng(100 + n);
    int ok = 0;
    for (int trial = 0; trial < 200; ++trial) {
      VectorXcd pc(n - 1), sxp(n - 1);
      for (int i = 0; i < n - 1; ++i) {
        pc(i) = complexd(rng.normal(), rng.normal());
        sxp(i) = complexd(rng.normal(), rng.normal());
      }
      MatrixXcd dirs(n - 1, n - 2);
      for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 2; ++j) dirs(i, j) = complexd(rng.normal(), rng.normal());
      const HeisenbergPoint y = random_point(n, rng);
      try {
        const auto res = lemma71_construct(y, pc, AffineSubspace{sxp, dirs});
        CHECK(res.residual_y <= 1e-9);
        CHECK(res.residual_c <= 1e-9);
        CHECK(res.residual_x <= 1e-9);
        // c lies over p_C, x over z_y in S_X
        CHECK((res.c.zeta - pc).norm() < 1e-9);
        CHECK((res.x.zeta - res.z_y).norm() < 1e-9);
        ++ok;
      } catch (const NotInGenericSet&) {
        // excluded configurations are legitimate
      }
    }
    CHECK(ok > 150);
  }
}

TEST_CASE("p_chain_span in (2,4)") {
  const IndefiniteForm f = make_form(2, 4);
  MatrixXd V(6, 2), W(6, 2);
  V << 1, 0, 0, 1, 1, 0, 0, 1, 0, 0, 0, 0;
  W << 1, 0, 0, 1, -1, 0, 0, -1, 0, 0, 0, 0;
  const IsotropicSubspace sv(f, V), sw(f, W);
  const auto span = p_chain_span(f, sv, sw);
  CHECK(span.sig.n_plus == 2);
  CHECK(span.sig.n_minus == 2);
  CHECK(span.sig.n_zero == 0);

  // the span is <e1..e4>
  MatrixXd e14 = MatrixXd::Identity(6, 6).leftCols(4);
  CHECK(p_chain_contains(span, e14));
  CHECK(p_chain_contains(span, V));  // V itself is contained

  MatrixXd U(6, 2);
  U << 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 1;  // <e1+e5, e2+e6>
  CHECK_FALSE(p_chain_contains(span, U));

  // symmetry as subspaces
  const auto span2 = p_chain_span(f, sw, sv);
  CHECK(grassmann_distance(span.basis, span2.basis) < 1e-9);

  CHECK_THROWS_AS(p_chain_span(f, sv, sv), NotTransverse);
}

TEST_CASE("p_chain_span over the complex field") {
  const IndefiniteForm f = make_form(2, 4, Field::Complex);
  MatrixXcd V = MatrixXcd::Zero(6, 2), W = MatrixXcd::Zero(6, 2);
  V(0, 0) = 1;
  V(2, 0) = complexd(0, 1);
  V(1, 1) = 1;
  V(3, 1) = 1;
  W(0, 0) = 1;
  W(2, 0) = complexd(0, -1);
  W(1, 1) = 1;
  W(3, 1) = -1;
  const auto span = p_chain_span(f, V, W);
  CHECK(span.sig.n_plus == 2);
  CHECK(span.sig.n_minus == 2);
  CHECK(p_chain_contains(span, V));
}

#include "maxrep/serialize.hpp"

TEST_CASE("complex matrices serialize with [re,im] pairs and round-trip") {
  const IndefiniteForm f = make_form(2, 2, Field::Complex);
  MatrixXcd m(2, 2);
  m << complexd(1.5, -2.25), complexd(0, 1), complexd(3, 0), complexd(-0.125, 7);
  const json j = matrix_to_json(f, m);
  CHECK(j.at("field") == "complex");
  CHECK(j.at("data")[1][1] == 1.0);
  const MatrixXcd back = cmatrix_from_json(j);
  CHECK((back - m).norm() == 0.0);

  // real round-trip is bit-exact through text
  MatrixXd r(2, 3);
  r << 0.1, 2e-17, -3.25, M_PI, -0.0, 5e300;
  const IndefiniteForm fr = make_form(2, 3);
  const std::string text = matrix_to_json(fr, r).dump();
  const MatrixXd rback = matrix_from_json(json::parse(text));
  CHECK(rback == r);
}
