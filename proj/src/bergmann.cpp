#include "maxrep/bergmann.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace maxrep {

namespace {
const Tolerances kDefault;
double pick(double v, double dflt) { return v > 0 ? v : dflt; }
}  // namespace

IsotropicLine::IsotropicLine(const IndefiniteForm& form, const VectorXd& v, double iso_tol)
    : form_(form), rep_(v), theta_(0.0) {
  if (form.p() != 2)
    throw UnsupportedSignature("IsotropicLine: the interval machinery needs p == 2");
  if (v.size() != form.dim())
    throw DimensionMismatch("IsotropicLine: wrong vector dimension");
  const double qv = form.eval(v, v);
  if (std::abs(qv) > pick(iso_tol, kDefault.iso_tol) * v.squaredNorm())
    throw DegenerateInput("IsotropicLine: vector is not isotropic");
  const double un = rep_.head<2>().norm();
  if (un < 1e-14 * rep_.norm())
    throw DegenerateInput("IsotropicLine: vanishing positive part");
  rep_ /= un;
  theta_ = std::atan2(rep_(1), rep_(0));
}

BetaValue bergmann_beta_full(const IsotropicLine& x, const IsotropicLine& y,
                             const IsotropicLine& z, double sig_tol, double orient_tol) {
  const IndefiniteForm& form = x.form();
  if (!(form == y.form()) || !(form == z.form()))
    throw DimensionMismatch("bergmann_beta: lines of different forms");

  VectorXd xb = x.rep(), yb = y.rep(), zb = z.rep();
  const double qxy = form.eval(xb, yb);
  const double qxz = form.eval(xb, zb);
  // representatives are unit-u; opposite pairs keep |Q| away from 0 relative to 2
  const double opp_tol = 1e-12;
  if (std::abs(qxy) <= opp_tol || std::abs(qxz) <= opp_tol)
    throw NotPairwiseOpposite("bergmann_beta: triple is not pairwise opposite");
  if (qxy > 0) yb = -yb;
  if (qxz > 0) zb = -zb;
  const double qyz = form.eval(yb, zb);
  if (std::abs(qyz) <= opp_tol)
    throw NotPairwiseOpposite("bergmann_beta: triple is not pairwise opposite");

  Eigen::Matrix3d gram;
  gram << 0, form.eval(xb, yb), form.eval(xb, zb),  //
      form.eval(xb, yb), 0, qyz,                    //
      form.eval(xb, zb), qyz, 0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(gram, Eigen::EigenvaluesOnly);
  const Eigen::Vector3d ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  const double tol = pick(sig_tol, kDefault.sig_tol) * scale;

  int n_plus = 0, n_minus = 0;
  double sig_margin = 1e300;
  for (int i = 0; i < 3; ++i) {
    if (ev(i) > tol)
      ++n_plus;
    else if (ev(i) < -tol)
      ++n_minus;
    else
      throw AmbiguousSignature("bergmann_beta: Gram spectrum straddles sig_tol");
    sig_margin = std::min(sig_margin, std::abs(ev(i)) / scale);
  }

  BetaValue out;
  out.sig_margin = sig_margin;
  if (n_plus == 1 && n_minus == 2) {
    out.value = 0;
    out.orient_margin = 0.0;
    return out;
  }
  // pairwise opposite triples always have a nondegenerate 3x3 Gram, so the
  // only remaining case is signature (2,1)
  const Eigen::Vector2d px = xb.head<2>(), py = yb.head<2>(), pz = zb.head<2>();
  const Eigen::Vector2d a = py - px, b = pz - px;
  const double det = a(0) * b(1) - a(1) * b(0);
  const double oscale = std::max(a.norm() * b.norm(), 1e-300);
  if (std::abs(det) < pick(orient_tol, kDefault.orient_tol) * oscale)
    throw AmbiguousOrientation("bergmann_beta: orientation determinant below threshold",
                               det);
  out.orient_margin = std::abs(det) / oscale;
  out.value = det > 0 ? 2 : -2;
  return out;
}

int bergmann_beta(const IsotropicLine& x, const IsotropicLine& y, const IsotropicLine& z,
                  double sig_tol, double orient_tol) {
  return bergmann_beta_full(x, y, z, sig_tol, orient_tol).value;
}

bool is_maximal_tuple(const std::vector<IsotropicLine>& lines, double sig_tol,
                      double orient_tol) {
  const int n = static_cast<int>(lines.size());
  if (n < 3) throw DegenerateInput("is_maximal_tuple: need at least 3 lines");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        try {
          if (bergmann_beta(lines[i], lines[j], lines[k], sig_tol, orient_tol) != 2)
            return false;
        } catch (const NotPairwiseOpposite&) {
          throw NotPairwiseOpposite("is_maximal_tuple: subtriple (" + std::to_string(i) +
                                    "," + std::to_string(j) + "," + std::to_string(k) +
                                    ") is not pairwise opposite");
        }
      }
  return true;
}

bool interval_contains(const IsotropicLine& x, const IsotropicLine& y,
                       const IsotropicLine& z, double sig_tol, double orient_tol) {
  return bergmann_beta(x, z, y, sig_tol, orient_tol) == 2;
}

double interval_margin(const IsotropicLine& x, const IsotropicLine& y,
                       const IsotropicLine& z) {
  BetaValue b = bergmann_beta_full(x, z, y);
  const double m = b.value == 0 ? b.sig_margin : std::min(b.sig_margin, b.orient_margin);
  return b.value == 2 ? m : -m;
}

IntervalChart::IntervalChart(const IsotropicLine& x, const IsotropicLine& y)
    : x_(x), y_(y), F_(x.form().dim(), x.form().dim()) {
  const IndefiniteForm& form = x.form();
  if (!(form == y.form())) throw DimensionMismatch("IntervalChart: forms differ");
  VectorXd xb = x.rep(), yb = y.rep();
  double qxy = form.eval(xb, yb);
  if (std::abs(qxy) < 1e-12) throw NotPairwiseOpposite("IntervalChart: endpoints not opposite");
  if (qxy > 0) {
    yb = -yb;
    qxy = -qxy;
  }
  const int d = form.dim();
  const double s = std::sqrt(-2.0 * qxy);
  const VectorXd f1 = (xb - yb) / s;  // Q(f1,f1) = +1
  const VectorXd f3 = (xb + yb) / s;  // Q(f3,f3) = -1

  // complete to a Q-orthonormal frame from the standard basis
  std::vector<VectorXd> cols = {f1, f3};
  std::vector<VectorXd> pos, neg;
  for (int k = 0; k < d && (pos.size() < 1 || static_cast<int>(neg.size()) < form.q() - 1);
       ++k) {
    VectorXd w = VectorXd::Unit(d, k);
    for (const auto& c : cols) w -= c * (form.eval(c, w) / form.eval(c, c));
    const double qw = form.eval(w, w);
    if (std::abs(qw) < 1e-8) continue;
    w /= std::sqrt(std::abs(qw));
    cols.push_back(w);
    (qw > 0 ? pos : neg).push_back(w);
  }
  if (pos.size() != 1 || static_cast<int>(neg.size()) != form.q() - 1)
    throw DegenerateInput("IntervalChart: frame completion failed");
  VectorXd f2 = pos[0];
  // the chart's u2 > 0 half must match the ambient orientation of beta
  if (f1(0) * f2(1) - f1(1) * f2(0) < 0) f2 = -f2;

  F_.col(0) = f1;
  F_.col(1) = f2;
  F_.col(2) = f3;
  for (int j = 0; j < form.q() - 1; ++j) F_.col(3 + j) = neg[j];
}

std::pair<double, VectorXd> IntervalChart::chart(const IsotropicLine& z, double tol) const {
  const IndefiniteForm& form = x_.form();
  // F is Q-orthogonal, so F^{-1} = Ipq F^T Ipq
  const MatrixXd I = form.sign_matrix();
  VectorXd c = I * F_.transpose() * I * z.rep();
  const double un = c.head<2>().norm();
  if (un < 1e-14) throw NotInInterval("chart: vanishing positive part in frame");
  c /= un;
  if (c(2) < 0) c = -c;  // fix scale sign by v3 > 0
  const double u1 = c(0), u2 = c(1), v3 = c(2);
  if (!(u2 > tol) || !(v3 > std::abs(u1) + tol))
    throw NotInInterval("chart: line is not in the open interval");
  VectorXd vprime = c.tail(form.q() - 1);
  return {u1, vprime};
}

IsotropicLine IntervalChart::unchart(double u1, const VectorXd& vprime) const {
  const IndefiniteForm& form = x_.form();
  if (vprime.size() != form.q() - 1)
    throw DimensionMismatch("unchart: v' has wrong dimension");
  const double r2 = u1 * u1 + vprime.squaredNorm();
  if (!(r2 < 1.0)) throw NotInInterval("unchart: u1^2 + |v'|^2 must be < 1");
  VectorXd c(form.dim());
  c(0) = u1;
  c(1) = std::sqrt(1.0 - u1 * u1);
  c(2) = std::sqrt(1.0 - vprime.squaredNorm());
  c.tail(form.q() - 1) = vprime;
  return IsotropicLine(form, F_ * c);
}

std::vector<IsotropicLine> sample_closed_interval(const IsotropicLine& a,
                                                  const IsotropicLine& b, long samples,
                                                  std::uint64_t seed) {
  IntervalChart chart(a, b);
  const int dim = chart.dim();
  std::vector<IsotropicLine> out;

  if (samples > 0) {
    const int res = static_cast<int>(std::ceil(std::pow(double(samples), 1.0 / dim)));
    double total = std::pow(double(res), dim);
    if (res >= 2 && total <= 131072.0) {
      // tensor grid, scaled to stay inside the unit ball
      const double gmax = 0.999 / std::sqrt(double(dim));
      std::vector<int> idx(dim, 0);
      VectorXd coord(dim);
      while (true) {
        for (int k = 0; k < dim; ++k)
          coord(k) = res == 1 ? 0.0 : -gmax + 2.0 * gmax * idx[k] / (res - 1);
        out.push_back(chart.unchart(coord(0), coord.tail(dim - 1)));
        int k = 0;
        while (k < dim && ++idx[k] == res) idx[k++] = 0;
        if (k == dim) break;
      }
    } else {
      // high-dimensional fallback: seeded ball sampling
      Rng rng(seed ^ 0x5eedb411ULL);
      for (long i = 0; i < samples; ++i) {
        VectorXd dir = rng.unit_vector(dim);
        const double r = 0.999 * std::pow(rng.uniform(), 1.0 / dim);
        VectorXd c = r * dir;
        out.push_back(chart.unchart(c(0), c.tail(dim - 1)));
      }
    }
  }

  // boundary ring at radius 1 - 1e-6; samples = 0 means endpoints only
  if (samples > 0) {
    Rng ring_rng(seed ^ 0xba11ad00ULL);
    const double rr = 1.0 - 1e-6;
    for (int i = 0; i < 64; ++i) {
      VectorXd dir;
      if (dim == 2) {
        const double ang = 2.0 * M_PI * i / 64.0;
        dir = VectorXd(2);
        dir << std::cos(ang), std::sin(ang);
      } else {
        dir = ring_rng.unit_vector(dim);
      }
      VectorXd c = rr * dir;
      out.push_back(chart.unchart(c(0), c.tail(dim - 1)));
    }
  }

  out.push_back(a);
  out.push_back(b);
  return out;
}

NestingReport verify_nesting(const IsotropicLine& a, const IsotropicLine& b,
                             const IsotropicLine& c, const IsotropicLine& d, long samples,
                             std::uint64_t seed) {
  if (!is_maximal_tuple({a, b, c, d}))
    throw DegenerateInput("verify_nesting: (a,b,c,d) is not maximal");
  NestingReport rep;
  rep.margin = 1e300;
  for (const auto& z : sample_closed_interval(b, c, samples, seed)) {
    const double m = interval_margin(a, d, z);
    rep.margin = std::min(rep.margin, m);
    ++rep.checked;
    if (m <= 0) ++rep.failures;
    rep.worst_margins.push_back(m);
    std::sort(rep.worst_margins.begin(), rep.worst_margins.end());
    if (rep.worst_margins.size() > 8) rep.worst_margins.resize(8);
  }
  rep.pass = rep.failures == 0;
  return rep;
}

std::vector<IsotropicLine> random_opposite_tuple(const IndefiniteForm& form, int count,
                                                 Rng& rng, int max_tries) {
  if (form.p() != 2) throw UnsupportedSignature("random_opposite_tuple: needs p == 2");
  std::vector<IsotropicLine> out;
  int tries = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++tries > max_tries * count)
      throw DegenerateInput("random_opposite_tuple: sampling failed");
    VectorXd v(form.dim());
    const double ang = rng.uniform(0.0, 2.0 * M_PI);
    v.head<2>() << std::cos(ang), std::sin(ang);
    v.tail(form.q()) = rng.unit_vector(form.q());
    IsotropicLine cand(form, v);
    bool ok = true;
    for (const auto& l : out) {
      if (std::abs(form.eval(cand.rep(), l.rep())) < 1e-6) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(cand);
  }
  return out;
}

}  // namespace maxrep
