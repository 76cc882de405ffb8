#include "maxrep/chains.hpp"

#include <cmath>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace maxrep {

namespace {

using complexd = std::complex<double>;

MatrixXcd orthonormal_cols(const MatrixXcd& M) {
  Eigen::HouseholderQR<MatrixXcd> qr(M);
  return qr.householderQ() * MatrixXcd::Identity(M.rows(), M.cols());
}

// circumcircle of three points in C; throws on collinear input
void circumcircle(complexd w1, complexd w2, complexd w3, complexd& center, double& radius,
                  double tol) {
  const double x1 = w1.real(), y1 = w1.imag();
  const double x2 = w2.real(), y2 = w2.imag();
  const double x3 = w3.real(), y3 = w3.imag();
  const double D = 2.0 * (x1 * (y2 - y3) + x2 * (y3 - y1) + x3 * (y1 - y2));
  const double scale = std::max({std::abs(w1 - w2), std::abs(w2 - w3), std::abs(w3 - w1)});
  if (std::abs(D) < tol * scale * scale)
    throw NotInGenericSet("circumcircle: the three points are collinear");
  const double s1 = x1 * x1 + y1 * y1, s2 = x2 * x2 + y2 * y2, s3 = x3 * x3 + y3 * y3;
  center = complexd((s1 * (y2 - y3) + s2 * (y3 - y1) + s3 * (y1 - y2)) / D,
                    (s1 * (x3 - x2) + s2 * (x1 - x3) + s3 * (x2 - x1)) / D);
  radius = std::abs(w1 - center);
}

// chain over the circle (center_w, radius) in the line p_perp + w dir, lifted
// through the in-line point (w_at, v_at)
Chain circle_chain(const VectorXcd& p_perp, const VectorXcd& dir, complexd center_w,
                   double radius, complexd w_at, double v_at) {
  Chain c;
  c.kind = ChainKind::Circle;
  c.p_perp = p_perp;
  c.dir = dir;
  c.center_w = center_w;
  c.radius = radius;
  const double phi = std::arg(w_at - center_w);
  c.v0 = v_at + 2.0 * radius * std::imag(std::conj(center_w) * std::polar(1.0, phi));
  // plane from two chain points
  const HeisenbergPoint a = c.point_at(phi);
  const HeisenbergPoint b = c.point_at(phi + 2.0 * M_PI / 3.0);
  MatrixXcd P(p_perp.size() + 2, 2);
  P.col(0) = heisenberg_embed(a);
  P.col(1) = heisenberg_embed(b);
  c.plane = orthonormal_cols(P);
  c.base = VectorXcd::Zero(p_perp.size());
  return c;
}

}  // namespace

VectorXcd heisenberg_embed(const HeisenbergPoint& p) {
  const int d = p.n() + 1;
  VectorXcd Z = VectorXcd::Zero(d);
  if (p.infinity) {
    Z(0) = 1.0;
    return Z;
  }
  Z(0) = complexd(-0.5 * p.zeta.squaredNorm(), 0.5 * p.v);
  Z.segment(1, p.n() - 1) = p.zeta;
  Z(d - 1) = 1.0;
  return Z;
}

HeisenbergPoint heisenbergUnembedImpl(const VectorXcd& Z, double tol) {
  const int d = static_cast<int>(Z.size());
  const int n = d - 1;
  if (std::abs(Z(d - 1)) < tol * Z.norm()) return HeisenbergPoint::inf(n);
  VectorXcd W = Z / Z(d - 1);
  HeisenbergPoint p;
  p.zeta = W.segment(1, n - 1);
  p.v = 2.0 * W(0).imag();
  return p;
}

HeisenbergPoint heisenberg_unembed(const VectorXcd& Z, double tol) {
  return heisenbergUnembedImpl(Z, tol);
}

complexd heisenberg_form(const VectorXcd& A, const VectorXcd& B) {
  const int d = static_cast<int>(A.size());
  complexd acc = A(0) * std::conj(B(d - 1)) + A(d - 1) * std::conj(B(0));
  for (int j = 1; j < d - 1; ++j) acc += A(j) * std::conj(B(j));
  return acc;
}

MatrixXcd heisenberg_translation(int n, const VectorXcd& tau, double s) {
  if (tau.size() != n - 1) throw DimensionMismatch("heisenberg_translation: tau size");
  const int d = n + 1;
  MatrixXcd T = MatrixXcd::Identity(d, d);
  // Z1 row picks up -<zeta, tau> and the central offset
  for (int j = 1; j < d - 1; ++j) T(0, j) = -std::conj(tau(j - 1));
  T(0, d - 1) = complexd(-0.5 * tau.squaredNorm(), 0.5 * s);
  for (int j = 1; j < d - 1; ++j) T(j, d - 1) = tau(j - 1);
  return T;
}

HeisenbergPoint Chain::point_at(double phi) const {
  if (kind != ChainKind::Circle)
    throw DegenerateInput("Chain::point_at: vertical chains are not parametrized by phi");
  const complexd w = center_w + std::polar(radius, phi);
  HeisenbergPoint p;
  p.zeta = p_perp + w * dir;
  p.v = v0 - 2.0 * radius * std::imag(std::conj(center_w) * std::polar(1.0, phi));
  return p;
}

double chain_membership_residual(const Chain& c, const HeisenbergPoint& p) {
  VectorXcd Z = heisenberg_embed(p);
  Z /= Z.norm();
  const VectorXcd proj = c.plane * (c.plane.adjoint() * Z);
  return (Z - proj).norm();
}

Chain chain_through_two(const HeisenbergPoint& x, const HeisenbergPoint& y, double tol) {
  if (x.n() != y.n()) throw DimensionMismatch("chain_through_two: different models");
  const int n = x.n();
  const VectorXcd Zx = heisenberg_embed(x), Zy = heisenberg_embed(y);
  if ((x.infinity && y.infinity) ||
      (!x.infinity && !y.infinity && (x.zeta - y.zeta).norm() < tol &&
       std::abs(x.v - y.v) < tol))
    throw CoincidentPoints("chain_through_two: points coincide");

  Chain c;
  if (x.infinity || y.infinity || (x.zeta - y.zeta).norm() < tol) {
    c.kind = ChainKind::Vertical;
    c.base = x.infinity ? y.zeta : x.zeta;
    MatrixXcd P(n + 1, 2);
    P.col(0) = Zx;
    P.col(1) = Zy;
    c.plane = orthonormal_cols(P);
    c.p_perp = VectorXcd::Zero(n - 1);
    c.dir = VectorXcd::Zero(n - 1);
    return c;
  }

  // third null point in the plane: Z3 = Zx - (i / conj(q)) Zy
  const complexd q = heisenberg_form(Zx, Zy);
  const VectorXcd Z3 = Zx - (complexd(0, 1) / std::conj(q)) * Zy;
  const HeisenbergPoint p3 = heisenbergUnembedImpl(Z3, 1e-12);
  if (p3.infinity)
    throw DegenerateInput("chain_through_two: degenerate auxiliary point");

  VectorXcd u = (y.zeta - x.zeta).normalized();
  // foot of the affine complex line through the two projections
  const complexd wx0 = (u.adjoint() * x.zeta)(0, 0);
  VectorXcd p_perp = x.zeta - wx0 * u;
  const auto wcoord = [&](const VectorXcd& z) { return (u.adjoint() * (z - p_perp))(0, 0); };

  complexd center;
  double radius;
  circumcircle(wcoord(x.zeta), wcoord(y.zeta), wcoord(p3.zeta), center, radius, tol);
  return circle_chain(p_perp, u, center, radius, wcoord(x.zeta), x.v);
}

Lemma71Result lemma71_construct(const HeisenbergPoint& y, const VectorXcd& p_C,
                                const AffineSubspace& S_X, double tol) {
  if (y.infinity) throw NotInGenericSet("lemma71_construct: y must be finite");
  const int n = y.n();
  const int m = n - 1;  // dim of C^{n-1}
  if (p_C.size() != m || S_X.point.size() != m || S_X.dirs.rows() != m ||
      S_X.dirs.cols() != n - 2)
    throw DimensionMismatch("lemma71_construct: inconsistent dimensions");

  // realified coordinates of C^m
  const auto realify = [m](const VectorXcd& z) {
    Eigen::VectorXd r(2 * m);
    r.head(m) = z.real();
    r.tail(m) = z.imag();
    return r;
  };

  // genericity: pi(y) must avoid the real affine span <S_X, p_C>_R
  {
    Eigen::MatrixXd Dirs(2 * m, 1 + 2 * (n - 2));
    Dirs.col(0) = realify(S_X.point - p_C);
    for (int j = 0; j < n - 2; ++j) {
      Dirs.col(1 + 2 * j) = realify(S_X.dirs.col(j));
      Dirs.col(2 + 2 * j) = realify(complexd(0, 1) * S_X.dirs.col(j));
    }
    const Eigen::VectorXd rhs = realify(y.zeta - p_C);
    const Eigen::VectorXd sol = Dirs.colPivHouseholderQr().solve(rhs);
    if ((Dirs * sol - rhs).norm() < tol * std::max(1.0, rhs.norm()))
      throw NotInGenericSet("lemma71_construct: pi(y) lies in the real affine span of S_X and p_C");
  }

  // z_y = (complex line through pi(y) and p_C) cap S_X
  VectorXcd z_y(m);
  {
    const VectorXcd Ldir = y.zeta - p_C;
    if (Ldir.norm() < tol) throw NotInGenericSet("lemma71_construct: pi(y) = p_C");
    // p_C + w Ldir = S_X.point + S_X.dirs t  (complex unknowns w, t)
    MatrixXcd Acx(m, 1 + (n - 2));
    Acx.col(0) = Ldir;
    for (int j = 0; j < n - 2; ++j) Acx.col(1 + j) = -S_X.dirs.col(j);
    const VectorXcd bcx = S_X.point - p_C;
    const VectorXcd sol = Acx.colPivHouseholderQr().solve(bcx);
    if ((Acx * sol - bcx).norm() > 1e-9 * std::max(1.0, bcx.norm()))
      throw NotInGenericSet("lemma71_construct: line misses S_X");
    z_y = p_C + sol(0) * Ldir;
  }

  // in-line coordinates on L = <pi(y), p_C>_C
  VectorXcd u = (y.zeta - p_C).normalized();
  const complexd wpc_along = (u.adjoint() * p_C)(0, 0);
  const VectorXcd p_perp = p_C - wpc_along * u;
  const auto wcoord = [&](const VectorXcd& z) { return (u.adjoint() * (z - p_perp))(0, 0); };
  const complexd w_p = wcoord(p_C), w_z = wcoord(z_y), w_y = wcoord(y.zeta);

  complexd center;
  double radius;
  circumcircle(w_p, w_z, w_y, center, radius, tol);

  Lemma71Result out{circle_chain(p_perp, u, center, radius, w_y, y.v),
                    HeisenbergPoint{},
                    HeisenbergPoint{},
                    z_y,
                    0.0,
                    0.0,
                    0.0};
  out.c = out.chain.point_at(std::arg(w_p - center));
  out.x = out.chain.point_at(std::arg(w_z - center));
  out.residual_y = chain_membership_residual(out.chain, y);
  out.residual_c = chain_membership_residual(out.chain, out.c);
  out.residual_x = chain_membership_residual(out.chain, out.x);
  return out;
}

namespace {

template <typename Mat>
Mat orthonormalized(const Mat& M) {
  Eigen::HouseholderQR<Mat> qr(M);
  return qr.householderQ() * Mat::Identity(M.rows(), M.cols());
}

template <typename Mat>
bool contains_impl(const Mat& basis, const Mat& sub, double tol) {
  const Mat proj = basis * (basis.adjoint() * sub);
  return (sub - proj).norm() <= tol * std::max(1.0, sub.norm());
}

}  // namespace

PChainSpan p_chain_span(const IndefiniteForm& form, const IsotropicSubspace& V,
                        const IsotropicSubspace& W) {
  if (!is_transverse_maximal(V, W))
    throw NotTransverse("p_chain_span: subspaces are not transverse");
  MatrixXd both(form.dim(), 2 * form.p());
  both << V.basis(), W.basis();
  PChainSpan span{orthonormalized(both), signature_of_restriction(form, both)};
  return span;
}

PChainSpanC p_chain_span(const IndefiniteForm& form, const MatrixXcd& V,
                         const MatrixXcd& W) {
  if (!is_transverse_maximal(form, V, W))
    throw NotTransverse("p_chain_span: subspaces are not transverse");
  MatrixXcd both(form.dim(), 2 * form.p());
  both << V, W;
  PChainSpanC span{orthonormalized(both), signature_of_restriction(form, both)};
  return span;
}

bool p_chain_contains(const PChainSpan& span, const MatrixXd& sub, double tol) {
  return contains_impl(span.basis, sub, tol);
}

bool p_chain_contains(const PChainSpanC& span, const MatrixXcd& sub, double tol) {
  return contains_impl(span.basis, sub, tol);
}

}  // namespace maxrep
