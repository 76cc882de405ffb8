#pragma once

#include <optional>
#include <string>

#include "maxrep/bergmann.hpp"
#include "maxrep/indefinite.hpp"

namespace maxrep {

// images of the once-punctured-torus generators a, b
struct FreeGroupRep {
  GroupElement A;
  GroupElement B;
};

enum class FixedLineMethod { Eigenline, Iteration };

struct FixedLineResult {
  IsotropicLine line;
  FixedLineMethod method;
  std::string word;        // commutator word whose fixed line was used
  double residual;         // ||C l - l|| as lines
  double statement_residual;  // same for rho(a b a^-1 b^-1), provenance
};

// Fixed isotropic line of the commutator inside the closed interval I-bar_{y,z}.
// Primary method: real isotropic eigenlines of the commutator matrix charted
// inside the interval; fallback: chart-space iteration from the origin.
FixedLineResult commutator_fixed_line(const FreeGroupRep& rep, const IsotropicLine& y,
                                      const IsotropicLine& z, double tol = 1e-8,
                                      int max_iter = 4096);

struct ToledoResult {
  IsotropicLine line;
  int beta1 = 0;
  int beta2 = 0;
  double i_rho = 0.0;  // (beta1 + beta2) / 2
  bool degenerate1 = false;  // triple scored 0 under the degeneracy flag
  bool degenerate2 = false;
  FixedLineMethod method = FixedLineMethod::Eigenline;
  std::string word;
};

// 2 i_rho = beta(l, rho(a^-1) l, rho(ba)^-1 l) + beta(rho(ba)^-1 l, rho(b^-1) l, l)
ToledoResult toledo_invariant(const FreeGroupRep& rep, const IsotropicLine& l,
                              bool allow_degenerate = true,
                              FixedLineMethod method = FixedLineMethod::Eigenline,
                              const std::string& word = "bab^-1a^-1");

bool milnor_wood_check(const ToledoResult& r);
bool milnor_wood_check(double i_rho);

// fixed-line residual of a candidate line under a matrix, as lines
double line_fixed_residual(const MatrixXd& C, const IsotropicLine& l);

}  // namespace maxrep
