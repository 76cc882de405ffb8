#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "maxrep/errors.hpp"
#include "maxrep/rng.hpp"

namespace maxrep {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using complexd = std::complex<double>;

// rank-one ladder operators: E_{ij} x = <x, e_j> e_i (0-based indices)
MatrixXd elementary_E(int i, int j, int d);
MatrixXd elementary_S(int i, int j, int d);  // E_{ij} + E_{ji}
MatrixXd elementary_A(int i, int j, int d);  // E_{ij} - E_{ji}

MatrixXd bracket(const MatrixXd& X, const MatrixXd& Y);
MatrixXcd bracket(const MatrixXcd& X, const MatrixXcd& Y);

struct LieTripleReport {
  bool closed = false;
  double worst_residual = 0.0;
};

// [X, [Y, Z]] back in the span, over all basis triples
LieTripleReport is_lie_triple_system(const std::vector<MatrixXd>& basis,
                                     double tol = 1e-9);

struct GenerationReport {
  std::vector<bool> contains;   // per target
  int generated_dim = 0;
  int depth_used = 0;
};

// Iterative bracket closure of span{v, w}, containment of targets
GenerationReport generated_algebra_contains(const MatrixXd& v, const MatrixXd& w,
                                            const std::vector<MatrixXd>& targets,
                                            int depth, double tol = 1e-9);

// truncated w = sum_{n <= d-1} n^{-2} S_{n,n+1} from the infinite-generation example
MatrixXd generation_example_w(int d);

enum class HermitianSpace { XC, XR2, Siegel, Ostar };

struct ComplexStructureReport {
  bool pass = false;
  double max_square_residual = 0.0;    // ||J0^2 X + X||
  double max_isometry_residual = 0.0;  // |g(J0 X, J0 Y) - g(X, Y)|
  double max_commute_residual = 0.0;   // ||J0(k.X) - k.(J0 X)||
  int samples = 0;
};

// Builds the J0 of the chosen space and checks, on sampled Lie-triple elements:
// J0^2 = -Id, isometry for the trace form, commutation with sampled K* elements.
// Parameters: XC uses (p, q); XR2 uses (2, q); Siegel and Ostar use half-dimension m.
ComplexStructureReport verify_complex_structure(HermitianSpace space, int p, int q,
                                                int samples, std::uint64_t seed = 7,
                                                double tol = 1e-12);

}  // namespace maxrep
