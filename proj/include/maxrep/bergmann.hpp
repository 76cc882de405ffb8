#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maxrep/indefinite.hpp"
#include "maxrep/rng.hpp"

namespace maxrep {

// Isotropic line of a (2,q) form. The stored representative has unit positive
// part u = (cos theta, sin theta), hence unit negative part by isotropy and
// total norm sqrt(2).
class IsotropicLine {
public:
  IsotropicLine(const IndefiniteForm& form, const VectorXd& v, double iso_tol = -1.0);

  const IndefiniteForm& form() const { return form_; }
  const VectorXd& rep() const { return rep_; }
  double theta() const { return theta_; }
  Eigen::Vector2d u() const { return rep_.head<2>(); }

  IsotropicLine transported(const GroupElement& g) const {
    return IsotropicLine(form_, g.matrix() * rep_);
  }

private:
  IndefiniteForm form_;
  VectorXd rep_;
  double theta_;
};

struct BetaValue {
  int value = 0;              // in {-2, 0, 2}
  double sig_margin = 0.0;    // relative distance of Gram spectrum to the threshold
  double orient_margin = 0.0; // |orientation det| / scale (0 when signature is (1,2))
};

// Explicit Bergmann cocycle on pairwise opposite triples of isotropic lines.
BetaValue bergmann_beta_full(const IsotropicLine& x, const IsotropicLine& y,
                             const IsotropicLine& z, double sig_tol = -1.0,
                             double orient_tol = -1.0);
int bergmann_beta(const IsotropicLine& x, const IsotropicLine& y, const IsotropicLine& z,
                  double sig_tol = -1.0, double orient_tol = -1.0);

// true iff beta = +2 on every increasing-index subtriple
bool is_maximal_tuple(const std::vector<IsotropicLine>& lines, double sig_tol = -1.0,
                      double orient_tol = -1.0);

// membership in I_{x,y} = { z : (x, z, y) maximal }
bool interval_contains(const IsotropicLine& x, const IsotropicLine& y,
                       const IsotropicLine& z, double sig_tol = -1.0,
                       double orient_tol = -1.0);

// signed membership margin: positive iff z in I_{x,y}, magnitude = the smaller of
// the signature and orientation margins of the deciding beta
double interval_margin(const IsotropicLine& x, const IsotropicLine& y,
                       const IsotropicLine& z);

// Convex-coordinate parametrization of I_{x,y}: a Q-orthonormal frame F with
// column signs (+,+,-,...,-), x = F(e1+e3), y = F(-e1+e3), positive block
// orientation-positive. Chart coordinates (u1, v') with u1^2 + |v'|^2 < 1.
class IntervalChart {
public:
  IntervalChart(const IsotropicLine& x, const IsotropicLine& y);

  const IsotropicLine& x() const { return x_; }
  const IsotropicLine& y() const { return y_; }
  const MatrixXd& frame() const { return F_; }
  int dim() const { return x_.form().q(); }  // chart dimension: 1 + (q-1)

  std::pair<double, VectorXd> chart(const IsotropicLine& z, double tol = 1e-9) const;
  IsotropicLine unchart(double u1, const VectorXd& vprime) const;

private:
  IsotropicLine x_, y_;
  MatrixXd F_;
};

struct NestingReport {
  bool pass = false;
  double margin = 0.0;  // minimal membership margin over all checked points
  long checked = 0;
  long failures = 0;
  std::vector<double> worst_margins;  // the few smallest per-sample margins, for audit
};

// Samples points of the closed interval I-bar_{b,c} (tensor grid + boundary ring
// + both endpoints) and checks containment in I_{a,d}.
NestingReport verify_nesting(const IsotropicLine& a, const IsotropicLine& b,
                             const IsotropicLine& c, const IsotropicLine& d,
                             long samples, std::uint64_t seed = 2024);

// Deterministic sample set of the closed interval in chart coordinates:
// tensor grid of resolution ceil(samples^(1/dim)), 64 ring points at radius
// 1 - 1e-6, plus the two endpoint lines themselves.
std::vector<IsotropicLine> sample_closed_interval(const IsotropicLine& a,
                                                  const IsotropicLine& b, long samples,
                                                  std::uint64_t seed);

// random pairwise-opposite tuple generation for the property suites
std::vector<IsotropicLine> random_opposite_tuple(const IndefiniteForm& form, int count,
                                                 Rng& rng, int max_tries = 1000);

}  // namespace maxrep
