#include "maxrep/shilov.hpp"

#include "maxrep/parallel.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace maxrep {

namespace {

MatrixXd boost_mat(int d, int i, int j, double tau) {
  MatrixXd g = MatrixXd::Identity(d, d);
  g(i, i) = std::cosh(tau);
  g(j, j) = std::cosh(tau);
  g(i, j) = std::sinh(tau);
  g(j, i) = std::sinh(tau);
  return g;
}

MatrixXd rot_mat(int d, int i, int j, double th) {
  MatrixXd g = MatrixXd::Identity(d, d);
  g(i, i) = std::cos(th);
  g(j, j) = std::cos(th);
  g(i, j) = -std::sin(th);
  g(j, i) = std::sin(th);
  return g;
}

// hyperbolic with prescribed isotropic axes: ap -> mu ap, am -> am/mu, identity
// on the Q-orthocomplement of span{ap, am}
MatrixXd axis_boost(const IndefiniteForm& form, const VectorXd& ap, const VectorXd& am,
                    double mu) {
  const double q = form.eval(ap, am);
  const VectorXd fam = form.sign_diagonal().cwiseProduct(am);
  const VectorXd fap = form.sign_diagonal().cwiseProduct(ap);
  MatrixXd H = MatrixXd::Identity(form.dim(), form.dim());
  H += (mu - 1.0) / q * ap * fam.transpose();
  H += (1.0 / mu - 1.0) / q * am * fap.transpose();
  return H;
}

// rotation inside a Q-definite plane spanned by Q-orthonormal c1, c2
MatrixXd plane_rot(const IndefiniteForm& form, const VectorXd& c1, const VectorXd& c2,
                   double th, double sign) {
  const VectorXd f1 = sign * form.sign_diagonal().cwiseProduct(c1);
  const VectorXd f2 = sign * form.sign_diagonal().cwiseProduct(c2);
  MatrixXd R = MatrixXd::Identity(form.dim(), form.dim());
  R += (std::cos(th) - 1.0) * (c1 * f1.transpose() + c2 * f2.transpose());
  R += std::sin(th) * (c2 * f1.transpose() - c1 * f2.transpose());
  return R;
}

double frac(double x) { return x - std::floor(x); }

VectorXd circle_line(const IndefiniteForm& form, double phi) {
  VectorXd w = VectorXd::Zero(form.dim());
  w(0) = std::cos(phi);
  w(1) = std::sin(phi);
  w(2) = 1.0;
  return w;
}

bool tuple_maximal_noexcept(const std::vector<IsotropicLine>& lines) {
  try {
    return is_maximal_tuple(lines);
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

GroupElement group_power(const GroupElement& g, int n) {
  if (n == 0) return check_group_membership(g.form(), MatrixXd::Identity(g.form().dim(), g.form().dim()));
  GroupElement base = n > 0 ? g : g.inverse();
  GroupElement acc = base;
  for (int i = 1; i < std::abs(n); ++i) acc = acc * base;
  return acc;
}

std::optional<ShilovData> shilov_analyze(const GroupElement& g, double tol) {
  const int d = g.form().dim();
  Eigen::EigenSolver<MatrixXd> es(g.matrix());
  const Eigen::VectorXcd ev = es.eigenvalues();

  int top = 0;
  for (int i = 1; i < d; ++i)
    if (std::abs(ev(i)) > std::abs(ev(top))) top = i;
  const double top_abs = std::abs(ev(top));

  if (top_abs <= 1.0 + tol) return std::nullopt;  // spectrum on the unit circle

  // second-largest modulus, excluding the top one
  double second = 0.0;
  for (int i = 0; i < d; ++i) {
    if (i == top) continue;
    second = std::max(second, std::abs(ev(i)));
  }
  if (top_abs - second < tol)
    throw SpectralGapTooSmall("shilov_analyze: modulus gap below tolerance",
                              top_abs - second);
  if (std::abs(ev(top).imag()) > tol * top_abs) return std::nullopt;  // complex dominant

  const double lambda1 = ev(top).real();

  // eigenline of lambda1^{-1}
  int bot = -1;
  double best = 1e300;
  for (int i = 0; i < d; ++i) {
    const double dist = std::abs(ev(i) - std::complex<double>(1.0 / lambda1, 0.0));
    if (dist < best) {
      best = dist;
      bot = i;
    }
  }
  if (best > 1e-6 * std::abs(lambda1)) return std::nullopt;

  VectorXd vp = es.eigenvectors().col(top).real();
  VectorXd vm = es.eigenvectors().col(bot).real();
  vp /= vp.norm();
  vm /= vm.norm();

  // eigenlines of |lambda| != 1 isometries are isotropic; reject non-isotropic noise
  if (std::abs(g.form().eval(vp, vp)) > 1e-8 || std::abs(g.form().eval(vm, vm)) > 1e-8)
    return std::nullopt;

  ShilovData sd{lambda1, top_abs / std::max(second, 1e-300),
                IsotropicLine(g.form(), vp), IsotropicLine(g.form(), vm)};

  const VectorXd rp = sd.attracting.rep();
  const VectorXd rm = sd.repelling.rep();
  if ((g.matrix() * rp - lambda1 * rp).norm() > 1e-8 * std::abs(lambda1) * rp.norm())
    return std::nullopt;
  if ((g.matrix() * rm - rm / lambda1).norm() > 1e-8 * rm.norm()) return std::nullopt;
  return sd;
}

int find_contraction_power(const GroupElement& g, const ShilovData& sd,
                           const IsotropicLine& x, const IsotropicLine& y,
                           const IsotropicLine& z, const IsotropicLine& t, int n_max,
                           bool allow_zero) {
  if (!tuple_maximal_noexcept({x, y, sd.attracting, z, t, sd.repelling}))
    throw DegenerateInput("find_contraction_power: (x,y,g+,z,t,g-) is not maximal");

  const auto ok_at = [&](int n) {
    MatrixXd gn = MatrixXd::Identity(g.form().dim(), g.form().dim());
    for (int i = 0; i < n; ++i) gn = g.matrix() * gn;
    try {
      IsotropicLine gx(g.form(), gn * x.rep());
      IsotropicLine gt(g.form(), gn * t.rep());
      return tuple_maximal_noexcept({y, gx, sd.attracting, gt, z});
    } catch (const Error&) {
      return false;
    }
  };

  for (int n = allow_zero ? 0 : 1; n <= n_max; ++n) {
    if (!ok_at(n)) continue;
    bool window = true;
    for (int m = n; m <= n + 5; ++m)
      if (!ok_at(m)) {
        window = false;
        break;
      }
    if (window) return n;
  }
  throw NoPowerFound("find_contraction_power: no admissible power up to n_max", n_max);
}

DensePair build_dense_pair(int q, std::uint64_t angle_seed) {
  if (q < 6)
    throw ConstructionFailed("build_dense_pair: q >= 6 required to host V' and rotation planes",
                             "dimension");
  const IndefiniteForm form(2, q);
  const int d = form.dim();
  Rng rng(angle_seed + 1);

  // g: boosts on the (2,2) block V = <e1,e2|e3,e4>, rotations on W pairs
  const double tau1 = 1.2, tau2 = 0.5;
  MatrixXd gm = boost_mat(d, 0, 2, tau1) * boost_mat(d, 1, 3, tau2);
  const int w_pairs = (q - 2) / 2;
  for (int i = 0; i < w_pairs; ++i)
    gm = gm * rot_mat(d, 4 + 2 * i, 5 + 2 * i, M_PI * frac(std::sqrt(2.0) * (i + 1)));

  // tuple on the canonical circle, g+ at angle 0, g- at pi
  const double jit = 0.05;
  const double th_x = -2.6 + jit * (rng.uniform() - 0.5);
  const double th_hp = -1.8 + jit * (rng.uniform() - 0.5);
  const double th_y = -0.9 + jit * (rng.uniform() - 0.5);
  const double th_z = 0.9 + jit * (rng.uniform() - 0.5);
  const double th_hm = 1.8 + jit * (rng.uniform() - 0.5);
  const double th_t = 2.6 + jit * (rng.uniform() - 0.5);

  IsotropicLine x(form, circle_line(form, th_x));
  IsotropicLine y(form, circle_line(form, th_y));
  IsotropicLine z(form, circle_line(form, th_z));
  IsotropicLine t(form, circle_line(form, th_t));
  const VectorXd hp = circle_line(form, th_hp);
  const VectorXd hm = circle_line(form, th_hm);

  // v, v' supported on every negative coordinate
  VectorXd vv = VectorXd::Zero(d), vp = VectorXd::Zero(d);
  for (int i = 0; i < q; ++i) {
    vv(2 + i) = 1.0 / (i + 1);
    vp(2 + i) = ((i % 2) ? -1.0 : 1.0) / std::sqrt(double(i + 1));
  }
  MatrixXd Vprime(d, 6);
  Vprime << MatrixXd::Identity(d, d).leftCols(4), vv, vp;

  // h0 on V': boost along (h+, h-), a rotation and a small boost on the
  // Q-complement K of span{h+, h-} inside V'
  MatrixXd h0 = axis_boost(form, hp, hm, std::exp(1.4));
  std::vector<VectorXd> cols;
  for (const VectorXd& w0 : {VectorXd((hp + hm) / 2), VectorXd((hp - hm) / 2)}) {
    VectorXd w = w0;
    for (const auto& c : cols) w -= c * (form.eval(c, w) / form.eval(c, c));
    cols.push_back(w / std::sqrt(std::abs(form.eval(w, w))));
  }
  std::vector<VectorXd> kpos, kneg;
  for (int j = 0; j < 6; ++j) {
    VectorXd w = Vprime.col(j);
    for (const auto& c : cols) w -= c * (form.eval(c, w) / form.eval(c, c));
    for (const auto& c : kpos) w -= c * (form.eval(c, w) / form.eval(c, c));
    for (const auto& c : kneg) w -= c * (form.eval(c, w) / form.eval(c, c));
    const double qw = form.eval(w, w);
    if (std::abs(qw) < 1e-10) continue;
    w /= std::sqrt(std::abs(qw));
    (qw > 0 ? kpos : kneg).push_back(w);
  }
  if (kpos.size() != 1 || kneg.size() != 3)
    throw ConstructionFailed("build_dense_pair: K-frame inside V' has wrong signature",
                             "h0-frame");
  h0 = h0 * plane_rot(form, kneg[0], kneg[1], 0.9 + 0.02 * rng.uniform(), -1.0) *
       axis_boost(form, kpos[0] + kneg[2], -kpos[0] + kneg[2], std::exp(0.3));

  // W' = Q-orthocomplement of V' (negative definite): kernel of Vprime^T Ip
  Eigen::JacobiSVD<MatrixXd> svd(Vprime.transpose() * form.sign_matrix(),
                                 Eigen::ComputeFullV);
  MatrixXd Wp = svd.matrixV().rightCols(d - 6);
  MatrixXd Gw = -(Wp.transpose() * form.sign_matrix() * Wp);
  Eigen::LLT<MatrixXd> llt(Gw);
  if (llt.info() != Eigen::Success)
    throw ConstructionFailed("build_dense_pair: W' not negative definite", "wprime");
  MatrixXd Wq = Wp * llt.matrixL().toDenseMatrix().inverse().transpose();

  // the W' basis must project non-trivially on every coordinate line of W
  // (rows 0..3 vanish identically since W' is Q-orthogonal to e1..e4);
  // mix with seeded Givens rotations until it does
  const auto supported = [&](const MatrixXd& W) {
    for (int i = 4; i < d; ++i)
      if (W.row(i).cwiseAbs().maxCoeff() < 1e-8) return false;
    return true;
  };
  Rng mix = rng.fork(17);
  for (int round = 0; round < 64 && !supported(Wq); ++round) {
    const int a = mix.uniform_int(0, d - 7), b = mix.uniform_int(0, d - 7);
    if (a == b) continue;
    const double ang = mix.uniform(0.2, 1.3);
    VectorXd ca = Wq.col(a), cb = Wq.col(b);
    Wq.col(a) = std::cos(ang) * ca + std::sin(ang) * cb;
    Wq.col(b) = -std::sin(ang) * ca + std::cos(ang) * cb;
  }
  if (!supported(Wq))
    throw ConstructionFailed("build_dense_pair: W' basis support condition failed",
                             "wprime-support");

  MatrixXd hm_mat = h0;
  const int wp_pairs = (d - 6) / 2;
  for (int i = 0; i < wp_pairs; ++i)
    hm_mat = hm_mat * plane_rot(form, Wq.col(2 * i), Wq.col(2 * i + 1),
                                M_PI * frac(std::sqrt(3.0) * (i + 1)), -1.0);

  GroupElement g = check_group_membership(form, gm, 1e-6);
  GroupElement h = check_group_membership(form, hm_mat, 1e-6);

  auto gsd = shilov_analyze(g);
  auto hsd = shilov_analyze(h);
  if (!gsd || !hsd)
    throw ConstructionFailed("build_dense_pair: generator is not Shilov-hyperbolic",
                             "shilov");

  std::vector<IsotropicLine> tuple8 = {x,
                                       hsd->attracting,
                                       y,
                                       gsd->attracting,
                                       z,
                                       hsd->repelling,
                                       t,
                                       gsd->repelling};
  if (!tuple_maximal_noexcept(tuple8))
    throw ConstructionFailed("build_dense_pair: 8-tuple is not maximal", "tuple");

  return DensePair{g, h, *gsd, *hsd, x, y, z, t};
}

int generated_algebra_dimension(const std::vector<MatrixXd>& gens, double tol) {
  if (gens.empty()) return 0;
  const int d = static_cast<int>(gens[0].rows());
  std::vector<VectorXd> basis;

  const auto add = [&](const MatrixXd& M) {
    const double nM = M.norm();
    if (nM < 1e-300) return false;
    VectorXd v = VectorXd::Map(M.data(), d * d) / nM;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v -= b.dot(v) * b;
    const double nv = v.norm();
    if (nv > tol) {
      basis.push_back(v / nv);
      return true;
    }
    return false;
  };

  std::vector<MatrixXd> ngens;
  for (const auto& g : gens) ngens.push_back(g / g.norm());
  add(MatrixXd::Identity(d, d));
  for (const auto& g : ngens) add(g);

  bool added = true;
  while (added && static_cast<int>(basis.size()) < d * d) {
    added = false;
    const auto snapshot = basis;
    for (const auto& g : ngens)
      for (const auto& b : snapshot) {
        const MatrixXd C = Eigen::Map<const MatrixXd>(b.data(), d, d);
        if (add(g * C)) added = true;
        if (static_cast<int>(basis.size()) >= d * d) return d * d;
      }
  }
  return static_cast<int>(basis.size());
}

PingPongCertificate verify_pingpong(const PingPongWitness& w, long samples,
                                    std::uint64_t seed) {
  PingPongCertificate cert;
  cert.samples = samples;
  cert.seed = seed;
  cert.power = w.certificate.power;

  auto asd = shilov_analyze(w.A);
  auto bsd = shilov_analyze(w.B);
  if (!asd || !bsd)
    throw ConstructionFailed("verify_pingpong: generator is not Shilov-hyperbolic",
                             "witness-shilov");

  // 8-tuple maximality with margins
  std::vector<IsotropicLine> tuple8 = {w.x, asd->attracting, w.y, bsd->attracting,
                                       w.z, asd->repelling, w.t, bsd->repelling};
  cert.tuple_margin = 1e300;
  bool tuple_ok = true;
  for (size_t i = 0; i < 8 && tuple_ok; ++i)
    for (size_t j = i + 1; j < 8 && tuple_ok; ++j)
      for (size_t k = j + 1; k < 8 && tuple_ok; ++k) {
        try {
          BetaValue b = bergmann_beta_full(tuple8[i], tuple8[j], tuple8[k]);
          if (b.value != 2) tuple_ok = false;
          cert.tuple_margin =
              std::min(cert.tuple_margin, std::min(b.sig_margin, b.orient_margin));
        } catch (const Error&) {
          tuple_ok = false;
        }
      }
  if (!tuple_ok) cert.tuple_margin = -1.0;

  const GroupElement Ai = w.A.inverse(), Bi = w.B.inverse();
  struct Task {
    const char* name;
    const GroupElement* M;
    const IsotropicLine *ia, *ib, *oa, *ob;
  };
  const Task tasks[4] = {
      {"A*cl(I_tz) in I_xy", &w.A, &w.t, &w.z, &w.x, &w.y},
      {"B*cl(I_xt) in I_yz", &w.B, &w.x, &w.t, &w.y, &w.z},
      {"Ainv*cl(I_yx) in I_zt", &Ai, &w.y, &w.x, &w.z, &w.t},
      {"Binv*cl(I_zy) in I_tx", &Bi, &w.z, &w.y, &w.t, &w.x},
  };

  bool all_ok = tuple_ok;
  for (int c = 0; c < 4; ++c) {
    ContainmentReport rep;
    rep.name = tasks[c].name;
    rep.min_margin = 1e300;
    const auto pts =
        sample_closed_interval(*tasks[c].ia, *tasks[c].ib, samples, seed + c);
    std::vector<double> margins(pts.size());
    parallel_for(static_cast<long>(pts.size()), [&](long i) {
      try {
        IsotropicLine img(w.form, tasks[c].M->matrix() * pts[i].rep());
        margins[i] = interval_margin(*tasks[c].oa, *tasks[c].ob, img);
      } catch (const Error&) {
        margins[i] = -1.0;
      }
    });
    for (const double m : margins) {
      ++rep.samples;
      rep.min_margin = std::min(rep.min_margin, m);
      if (m <= 0) ++rep.failures;
    }
    if (rep.failures > 0) all_ok = false;
    cert.containments[c] = rep;
  }

  cert.algebra_dim = generated_algebra_dimension({w.A.matrix(), w.B.matrix()});
  cert.pass = all_ok;
  return cert;
}

PingPongWitness build_pingpong_witness(int q, std::uint64_t seed, int n_max,
                                       long samples) {
  DensePair dp = build_dense_pair(q, seed);
  const GroupElement gi = dp.g.inverse(), hi = dp.h.inverse();
  auto gisd = shilov_analyze(gi);
  auto hisd = shilov_analyze(hi);
  if (!gisd || !hisd)
    throw ConstructionFailed("build_pingpong_witness: inverse not Shilov", "inverse");

  const int ng = find_contraction_power(dp.g, dp.g_data, dp.x, dp.y, dp.z, dp.t, n_max);
  const int ngi = find_contraction_power(gi, *gisd, dp.z, dp.t, dp.x, dp.y, n_max);
  const int nh = find_contraction_power(dp.h, dp.h_data, dp.t, dp.x, dp.y, dp.z, n_max);
  const int nhi = find_contraction_power(hi, *hisd, dp.y, dp.z, dp.t, dp.x, n_max);
  const int n = std::max(std::max(ng, ngi), std::max(nh, nhi));

  PingPongWitness w{dp.g.form(), group_power(dp.h, n), group_power(dp.g, n),
                    dp.x,        dp.y,                 dp.z,
                    dp.t,        PingPongCertificate{}};
  w.certificate.power = n;
  w.certificate = [&] {
    PingPongCertificate c = verify_pingpong(w, samples, seed + 77);
    c.power = n;
    return c;
  }();
  if (!w.certificate.pass)
    throw ConstructionFailed("build_pingpong_witness: certificate failed", "verify");
  return w;
}

}  // namespace maxrep
