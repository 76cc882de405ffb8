#pragma once

#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "maxrep/errors.hpp"
#include "maxrep/indefinite.hpp"

namespace maxrep {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// Boundary of complex hyperbolic n-space in the Heisenberg model C^{n-1} x R,
// plus the point at infinity. Ambient coordinates C^{n+1} with the Hermitian
// form Q(A,B) = A_1 conj(B_d) + A_d conj(B_1) + sum_{j=2}^{n} A_j conj(B_j),
// d = n+1; a finite point embeds as Z = ((-|zeta|^2 + iv)/2, zeta, 1).
struct HeisenbergPoint {
  VectorXcd zeta;  // in C^{n-1}
  double v = 0.0;
  bool infinity = false;

  static HeisenbergPoint inf(int n) {
    HeisenbergPoint p;
    p.zeta = VectorXcd::Zero(n - 1);
    p.infinity = true;
    return p;
  }
  static HeisenbergPoint at(const VectorXcd& zeta, double v) {
    HeisenbergPoint p;
    p.zeta = zeta;
    p.v = v;
    return p;
  }
  int n() const { return static_cast<int>(zeta.size()) + 1; }
};

VectorXcd heisenberg_embed(const HeisenbergPoint& p);
HeisenbergPoint heisenberg_unembed(const VectorXcd& Z, double tol = 1e-9);
std::complex<double> heisenberg_form(const VectorXcd& A, const VectorXcd& B);

// Heisenberg translation by (tau, s) as a Q-unitary matrix on C^{n+1}
MatrixXcd heisenberg_translation(int n, const VectorXcd& tau, double s);

enum class ChainKind { Vertical, Circle };

// A chain is the set of null lines of a signature-(1,1) complex 2-plane.
struct Chain {
  ChainKind kind;
  MatrixXcd plane;  // (n+1) x 2 basis, columns orthonormalized for the ambient metric

  // vertical: projection is a point
  VectorXcd base;

  // circle: projection is a Euclidean circle in the affine complex line
  // p_perp + w * dir (p_perp the foot of the line, <p_perp, dir> = 0)
  VectorXcd p_perp;
  VectorXcd dir;
  std::complex<double> center_w{0.0, 0.0};
  double radius = 0.0;
  double v0 = 0.0;  // lift offset: v(phi) = v0 - 2 r Im(conj(center_w) e^{i phi})

  HeisenbergPoint point_at(double phi) const;  // circle chains only
};

// membership residual of a boundary point on the chain's plane
double chain_membership_residual(const Chain& c, const HeisenbergPoint& p);

Chain chain_through_two(const HeisenbergPoint& x, const HeisenbergPoint& y,
                        double tol = 1e-9);

// complex (n-2)-dimensional affine subspace of C^{n-1}
struct AffineSubspace {
  VectorXcd point;
  MatrixXcd dirs;  // (n-1) x (n-2), complex directions
};

struct Lemma71Result {
  Chain chain;
  HeisenbergPoint c;  // intersection with the vertical chain over p_C
  HeisenbergPoint x;  // intersection with the hyperchain over S_X
  VectorXcd z_y;      // (complex line through pi(y), p_C) cap S_X
  double residual_y = 0.0, residual_c = 0.0, residual_x = 0.0;
};

// The open-dense covering construction: the unique chain over the circle through
// (p_C, z_y, pi(y)) lifted through y, with its intersection points.
Lemma71Result lemma71_construct(const HeisenbergPoint& y, const VectorXcd& p_C,
                                const AffineSubspace& S_X, double tol = 1e-9);

struct PChainSpan {
  MatrixXd basis;   // d x 2p, orthonormalized
  Signature sig;    // expected (p, p, 0)
};
struct PChainSpanC {
  MatrixXcd basis;
  Signature sig;
};

PChainSpan p_chain_span(const IndefiniteForm& form, const IsotropicSubspace& V,
                        const IsotropicSubspace& W);
PChainSpanC p_chain_span(const IndefiniteForm& form, const MatrixXcd& V,
                         const MatrixXcd& W);

bool p_chain_contains(const PChainSpan& span, const MatrixXd& sub, double tol = 1e-9);
bool p_chain_contains(const PChainSpanC& span, const MatrixXcd& sub, double tol = 1e-9);

}  // namespace maxrep
