#include "maxrep/toledo.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace maxrep {

namespace {

bool in_closed_interval(const IsotropicLine& y, const IsotropicLine& z,
                        const IsotropicLine& l) {
  // interior, or one of the endpoints
  if ((l.rep() - y.rep()).norm() < 1e-7 || (l.rep() - z.rep()).norm() < 1e-7) return true;
  try {
    return interval_margin(y, z, l) > 0;
  } catch (const Error&) {
    return false;
  }
}

// images of isotropic lines under a certified element are isotropic only up to
// the element's residual; build them with a correspondingly relaxed tolerance
constexpr double kImageIsoTol = 1e-6;

// sampled self-mapping check of C on the closed interval
bool maps_interval_into_itself(const MatrixXd& C, const IsotropicLine& y,
                               const IsotropicLine& z, std::uint64_t seed) {
  for (const auto& p : sample_closed_interval(y, z, 64, seed)) {
    try {
      IsotropicLine img(y.form(), C * p.rep(), kImageIsoTol);
      if (!in_closed_interval(y, z, img)) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

}  // namespace

double line_fixed_residual(const MatrixXd& C, const IsotropicLine& l) {
  VectorXd img = C * l.rep();
  img /= img.head<2>().norm();
  return std::min((img - l.rep()).norm(), (img + l.rep()).norm()) / l.rep().norm();
}

FixedLineResult commutator_fixed_line(const FreeGroupRep& rep, const IsotropicLine& y,
                                      const IsotropicLine& z, double tol, int max_iter) {
  const IndefiniteForm& form = rep.A.form();
  const MatrixXd Ai = rep.A.inverse().matrix();
  const MatrixXd Bi = rep.B.inverse().matrix();
  // proof convention: rho(b a b^-1 a^-1)
  const MatrixXd C = rep.B.matrix() * rep.A.matrix() * Bi * Ai;
  const MatrixXd C_statement = rep.A.matrix() * rep.B.matrix() * Ai * Bi;

  if (!maps_interval_into_itself(C, y, z, 20240))
    throw NotSelfMapping(
        "commutator_fixed_line: rho(bab^-1a^-1) does not map cl(I_yz) into itself");

  // eigenline method
  Eigen::EigenSolver<MatrixXd> es(C);
  std::optional<IsotropicLine> best;
  double best_res = 1e300;
  for (int i = 0; i < form.dim(); ++i) {
    if (std::abs(es.eigenvalues()(i).imag()) > 1e-10) continue;
    VectorXd v = es.eigenvectors().col(i).real();
    if (v.norm() < 1e-12) continue;
    v /= v.norm();
    if (std::abs(form.eval(v, v)) > 1e-8) continue;
    if (v.head<2>().norm() < 1e-10) continue;
    IsotropicLine cand(form, v);
    if (!in_closed_interval(y, z, cand)) continue;
    const double res = line_fixed_residual(C, cand);
    if (res < best_res) {
      best_res = res;
      best = cand;
    }
  }
  if (best && best_res <= tol) {
    return FixedLineResult{*best, FixedLineMethod::Eigenline, "bab^-1a^-1", best_res,
                           line_fixed_residual(C_statement, *best)};
  }

  // chart-space iteration from the origin
  IntervalChart chart(y, z);
  VectorXd vprime = VectorXd::Zero(form.q() - 1);
  double u1 = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    IsotropicLine cur = chart.unchart(u1, vprime);
    IsotropicLine img(form, C * cur.rep(), kImageIsoTol);
    auto [nu1, nvp] = chart.chart(img);
    const double disp = std::hypot(nu1 - u1, (nvp - vprime).norm());
    u1 = nu1;
    vprime = nvp;
    if (disp < tol) {
      IsotropicLine l = chart.unchart(u1, vprime);
      return FixedLineResult{l, FixedLineMethod::Iteration, "bab^-1a^-1",
                             line_fixed_residual(C, l),
                             line_fixed_residual(C_statement, l)};
    }
  }
  throw NoFixedLineFound("commutator_fixed_line: no fixed line within max_iter");
}

ToledoResult toledo_invariant(const FreeGroupRep& rep, const IsotropicLine& l,
                              bool allow_degenerate, FixedLineMethod method,
                              const std::string& word) {
  const IndefiniteForm& form = rep.A.form();
  const MatrixXd Ai = rep.A.inverse().matrix();
  const MatrixXd Bi = rep.B.inverse().matrix();

  // rho(a^-1) l, rho(ba)^-1 l = A^-1 B^-1 l, rho(b^-1) l
  const auto line_of = [&](const MatrixXd& M) {
    return IsotropicLine(form, M * l.rep(), kImageIsoTol);
  };
  const IsotropicLine la = line_of(Ai);
  const IsotropicLine lba = line_of(Ai * Bi);
  const IsotropicLine lb = line_of(Bi);

  ToledoResult out{l, 0, 0, 0.0, false, false, method, word};
  try {
    out.beta1 = bergmann_beta(l, la, lba);
  } catch (const NotPairwiseOpposite&) {
    if (!allow_degenerate) throw;
    out.beta1 = 0;
    out.degenerate1 = true;
  }
  try {
    out.beta2 = bergmann_beta(lba, lb, l);
  } catch (const NotPairwiseOpposite&) {
    if (!allow_degenerate) throw;
    out.beta2 = 0;
    out.degenerate2 = true;
  }
  out.i_rho = 0.5 * (out.beta1 + out.beta2);
  return out;
}

bool milnor_wood_check(double i_rho) { return std::abs(i_rho) <= 2.0; }

bool milnor_wood_check(const ToledoResult& r) { return milnor_wood_check(r.i_rho); }

}  // namespace maxrep
