#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxrep/bergmann.hpp"
#include "maxrep/indefinite.hpp"

namespace maxrep {

struct ShilovData {
  double lambda1 = 0.0;             // |lambda1| > 1, simple
  double gap = 0.0;                 // |lambda1| / |lambda2|
  IsotropicLine attracting;         // g+
  IsotropicLine repelling;          // g-, eigenline of 1/lambda1
};

// Full eigendecomposition; ShilovData when a simple real dominant eigenvalue of
// modulus > 1 with isotropic eigenline exists, nullopt otherwise.
// Throws SpectralGapTooSmall when the modulus gap is below tol (inconclusive).
std::optional<ShilovData> shilov_analyze(const GroupElement& g, double tol = 1e-8);

// Smallest n <= n_max with (y, g^n x, g+, g^n t, z) maximal, stable on the
// window [n, n+5]. Precondition: (x, y, g+, z, t, g-) maximal.
int find_contraction_power(const GroupElement& g, const ShilovData& sd,
                           const IsotropicLine& x, const IsotropicLine& y,
                           const IsotropicLine& z, const IsotropicLine& t, int n_max,
                           bool allow_zero = false);

struct DensePair {
  GroupElement g;
  GroupElement h;
  ShilovData g_data;
  ShilovData h_data;
  IsotropicLine x, y, z, t;
};

// Finite-truncation realization of the dense-pair recipe: g Shilov-hyperbolic on a
// (2,2) block and rotating every remaining negative plane by pseudo-irrational
// angles; h a hyperbolic isometry of the 6-dimensional (2,4) subspace spanned by
// the block and two everywhere-supported vectors, rotating the complement.
DensePair build_dense_pair(int q, std::uint64_t angle_seed = 0);

struct ContainmentReport {
  std::string name;
  double min_margin = 0.0;
  long samples = 0;
  long failures = 0;
};

struct PingPongCertificate {
  bool pass = false;
  double tuple_margin = 0.0;  // minimal beta margin over the 8-tuple subtriples
  std::array<ContainmentReport, 4> containments;
  int algebra_dim = 0;        // generated matrix algebra dimension (Burnside surrogate)
  int power = 0;
  long samples = 0;
  std::uint64_t seed = 0;
};

struct PingPongWitness {
  IndefiniteForm form;
  GroupElement A;  // h^n
  GroupElement B;  // g^n
  IsotropicLine x, y, z, t;
  PingPongCertificate certificate;
};

// Checks the four interval containments by pushing the closed-interval sampling
// grid through the generators, plus the 8-tuple maximality and the generated
// algebra dimension.
PingPongCertificate verify_pingpong(const PingPongWitness& w, long samples,
                                    std::uint64_t seed = 2024);

// End-to-end: dense pair, contraction powers for g, g^{-1}, h, h^{-1}, single
// common power, certificate.
PingPongWitness build_pingpong_witness(int q, std::uint64_t seed = 0, int n_max = 64,
                                       long samples = 1000);

// Dimension of the unital matrix algebra generated by the given matrices.
int generated_algebra_dimension(const std::vector<MatrixXd>& gens, double tol = 1e-7);

GroupElement group_power(const GroupElement& g, int n);

}  // namespace maxrep
