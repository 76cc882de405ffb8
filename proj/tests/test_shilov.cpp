#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "maxrep/shilov.hpp"

using namespace maxrep;

namespace {

IsotropicLine circle_line(const IndefiniteForm& f, double phi) {
  VectorXd v = VectorXd::Zero(f.dim());
  v(0) = std::cos(phi);
  v(1) = std::sin(phi);
  v(2) = 1.0;
  return IsotropicLine(f, v);
}

}  // namespace

TEST_CASE("shilov_analyze on the elementary boost") {
  const IndefiniteForm f = make_form(2, 3);
  // diag(2, 1/2) on the hyperbolic plane <e1, e3>: cosh tau = 1.25, sinh tau = 0.75
  const GroupElement g = check_group_membership(f, boost_in_plane(f, 0, 2, std::log(2.0)));
  auto sd = shilov_analyze(g);
  REQUIRE(sd.has_value());
  CHECK(sd->lambda1 == doctest::Approx(2.0).epsilon(1e-12));
  VectorXd expect = VectorXd::Zero(5);
  expect(0) = 1;
  expect(2) = 1;
  CHECK((sd->attracting.rep() - expect).norm() < 1e-9);
  VectorXd expect_m = VectorXd::Zero(5);
  expect_m(0) = 1;
  expect_m(2) = -1;
  CHECK(std::min((sd->repelling.rep() - expect_m).norm(),
                 (sd->repelling.rep() + expect_m).norm()) < 1e-9);
  CHECK(std::abs(f.eval(sd->attracting.rep(), sd->repelling.rep())) > 1e-6);
}

TEST_CASE("shilov_analyze rejects rotations") {
  const IndefiniteForm f = make_form(2, 3);
  MatrixXd m = rotation_in_plane(f, 0, 1, 0.8) * rotation_in_plane(f, 2, 3, 1.1);
  CHECK_FALSE(shilov_analyze(check_group_membership(f, m)).has_value());
}

TEST_CASE("shilov_analyze of the inverse swaps the lines") {
  const IndefiniteForm f = make_form(2, 4);
  Rng rng(3);
  int done = 0;
  for (int trial = 0; trial < 30 && done < 10; ++trial) {
    GroupElement g = random_group_element(f, rng, 8, 1.2);
    std::optional<ShilovData> sd;
    try {
      sd = shilov_analyze(g);
    } catch (const SpectralGapTooSmall&) {
      continue;
    }
    if (!sd) continue;
    auto sdi = shilov_analyze(g.inverse());
    REQUIRE(sdi.has_value());
    // the lines swap; g itself acts on the attracting line of g^{-1} with the
    // inverted eigenvalue
    const auto line_dist = [](const IsotropicLine& a, const IsotropicLine& b) {
      return std::min((a.rep() - b.rep()).norm(), (a.rep() + b.rep()).norm());
    };
    CHECK(line_dist(sdi->attracting, sd->repelling) < 1e-6);
    CHECK(line_dist(sdi->repelling, sd->attracting) < 1e-6);
    const VectorXd r = sdi->attracting.rep();
    CHECK((g.matrix() * r - r / sd->lambda1).norm() < 1e-8 * r.norm());
    CHECK(std::abs(sdi->lambda1) == doctest::Approx(std::abs(sd->lambda1)).epsilon(1e-8));
    ++done;
  }
  CHECK(done >= 5);
}

TEST_CASE("shilov_analyze transports under conjugation") {
  const IndefiniteForm f = make_form(2, 4);
  const GroupElement g = check_group_membership(f, boost_in_plane(f, 0, 2, 1.0));
  Rng rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    GroupElement k = random_group_element(f, rng);
    const GroupElement gk = k * g * k.inverse();
    auto sd = shilov_analyze(g);
    auto sdk = shilov_analyze(gk);
    REQUIRE(sd.has_value());
    REQUIRE(sdk.has_value());
    const IsotropicLine moved = sd->attracting.transported(k);
    CHECK(std::min((sdk->attracting.rep() - moved.rep()).norm(),
                   (sdk->attracting.rep() + moved.rep()).norm()) < 1e-7);
  }
}

TEST_CASE("find_contraction_power on a strongly contracting boost") {
  const IndefiniteForm f = make_form(2, 3);
  const GroupElement g = check_group_membership(f, boost_in_plane(f, 0, 2, 1.6));
  auto sd = shilov_analyze(g);
  REQUIRE(sd.has_value());
  CHECK(sd->gap >= 4.0);
  const auto x = circle_line(f, -2.6), y = circle_line(f, -0.9), z = circle_line(f, 0.9),
             t = circle_line(f, 2.6);
  const int n = find_contraction_power(g, *sd, x, y, z, t, 32);
  CHECK(n <= 2);

  // n = 0 accepted when allowed and the configuration already works
  const int n0 = find_contraction_power(g, *sd, x, y, z, t, 32, true);
  CHECK(n0 >= 0);
  CHECK(n0 <= n);
}

TEST_CASE("tiny spectral gap yields NoPowerFound for small n_max") {
  const IndefiniteForm f = make_form(2, 3);
  // gap 1 + ~1e-6 against a tuple needing real contraction
  const GroupElement gw = check_group_membership(f, boost_in_plane(f, 0, 2, 1e-6));
  ShilovData sd{std::exp(1e-6), std::exp(2e-6),
                circle_line(f, 0.0), circle_line(f, M_PI)};
  const auto x = circle_line(f, -2.6), y = circle_line(f, -0.9), z = circle_line(f, 0.9),
             t = circle_line(f, 2.6);
  CHECK_THROWS_AS(find_contraction_power(gw, sd, x, y, z, t, 3), NoPowerFound);
}

TEST_CASE("contraction rate toward the attracting line") {
  const IndefiniteForm f = make_form(2, 3);
  const GroupElement g = check_group_membership(f, boost_in_plane(f, 0, 2, 1.0));
  auto sd = shilov_analyze(g);
  REQUIRE(sd.has_value());
  IsotropicLine zl = circle_line(f, 1.3);
  double prev = grassmann_distance(MatrixXd(zl.rep()), MatrixXd(sd->attracting.rep()));
  VectorXd cur = zl.rep();
  const double rate = 1.0 / sd->gap;
  for (int n = 1; n <= 10; ++n) {
    cur = g.matrix() * cur;
    IsotropicLine ln(f, cur);
    const double dist =
        grassmann_distance(MatrixXd(ln.rep()), MatrixXd(sd->attracting.rep()));
    CHECK(dist < prev);
    if (n >= 3) CHECK(dist <= 20.0 * std::pow(rate, n));
    prev = dist;
  }
}

TEST_CASE("build_dense_pair constructs a certified configuration at q = 8") {
  DensePair dp = build_dense_pair(8, 1);
  CHECK(dp.g.residual() < 1e-9);
  CHECK(dp.h.residual() < 1e-9);
  CHECK(is_maximal_tuple({dp.x, dp.h_data.attracting, dp.y, dp.g_data.attracting, dp.z,
                          dp.h_data.repelling, dp.t, dp.g_data.repelling}));
  CHECK_THROWS_AS(build_dense_pair(4, 0), ConstructionFailed);
}

TEST_CASE("irreducibility surrogate: full matrix algebra") {
  DensePair dp = build_dense_pair(8, 1);
  const int d = dp.g.form().dim();
  CHECK(generated_algebra_dimension({dp.g.matrix(), dp.h.matrix()}) == d * d);

  // commuting pair generates a small algebra
  const IndefiniteForm f = make_form(2, 8);
  const MatrixXd a = boost_in_plane(f, 0, 2, 0.5), b = boost_in_plane(f, 0, 2, 1.0);
  CHECK(generated_algebra_dimension({a, b}) < 10);
}

TEST_CASE("pingpong witness end-to-end at q = 8") {
  PingPongWitness w = build_pingpong_witness(8, 1, 64, 400);
  CHECK(w.certificate.pass);
  CHECK(w.certificate.tuple_margin > 0);
  for (const auto& c : w.certificate.containments) {
    CHECK(c.failures == 0);
    CHECK(c.min_margin > 0);
    CHECK(c.samples >= 400);
  }
  CHECK(w.certificate.algebra_dim == w.form.dim() * w.form.dim());

  // identity generator cannot contract
  PingPongWitness broken = w;
  broken.A =
      check_group_membership(w.form, MatrixXd::Identity(w.form.dim(), w.form.dim()));
  bool identity_fails;
  try {
    identity_fails = !verify_pingpong(broken, 100).pass;
  } catch (const Error&) {
    identity_fails = true;
  }
  CHECK(identity_fails);

  // swapped intervals fail
  PingPongWitness swapped = w;
  std::swap(swapped.x, swapped.z);
  bool swap_fails;
  try {
    swap_fails = !verify_pingpong(swapped, 100).pass;
  } catch (const Error&) {
    swap_fails = true;
  }
  CHECK(swap_fails);
}

TEST_CASE("witness construction handles odd q") {
  PingPongWitness w = build_pingpong_witness(7, 2, 64, 200);
  CHECK(w.certificate.pass);
  CHECK(w.certificate.algebra_dim == 9 * 9);
}

TEST_CASE("pingpong certificate survives positive-component conjugation") {
  PingPongWitness w = build_pingpong_witness(8, 1, 64, 200);
  Rng rng(4);
  const GroupElement k = random_positive_component_element(w.form, rng, 4, 0.3);
  PingPongWitness wc{w.form,
                     k * w.A * k.inverse(),
                     k * w.B * k.inverse(),
                     w.x.transported(k),
                     w.y.transported(k),
                     w.z.transported(k),
                     w.t.transported(k),
                     w.certificate};
  auto cert = verify_pingpong(wc, 200, w.certificate.seed);
  CHECK(cert.pass);
  for (int i = 0; i < 4; ++i) CHECK(cert.containments[i].min_margin > 0);
}
