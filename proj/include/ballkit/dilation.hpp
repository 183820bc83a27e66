#pragma once

#include <cstdint>
#include <vector>

#include "ballkit/ballspace.hpp"
#include "ballkit/linalg.hpp"
#include "ballkit/optuple.hpp"

namespace ballkit {

struct DilationDiagnostics {
  // ||Pi Pi^* - I||; equals ||P_T^{N+1}(I)|| in exact arithmetic.
  double co_isometry_residual = 0.0;
  // ||Pi M_{z_i} - T_i Pi|| over the whole truncated source.
  std::vector<double> intertwining_residuals;
  // Same, restricted to source degrees < N where the compressed shift is exact.
  std::vector<double> lower_intertwining_residuals;
  // max over probes of | ||Pi^* h||^2 - (||h||^2 - <P_T^{N+1}(I) h, h>) |
  double telescoping_residual = 0.0;
  bool telescoping_checked = false;
  int probes = 0;
  // ||F (Pi^* .)(0) - D||, F the defect frame.
  double constant_block_residual = 0.0;
  // dim(source) - rank[z^k Pi^* H]; -1 when not computed.
  int minimality_rank_gap = -1;
};

struct DilationOptions {
  int probes = 8;
  std::uint64_t seed = 42;
  bool check_minimality = true;
  double rank_tol = kDefaultRankTol;
  double tol = kDefaultCommutatorTol;
};

// Pi : H^2_n(D)_N -> H with Pi(z^k eta) = T^k D eta, source in orthonormal coordinates.
struct DilationMap {
  TruncatedSpace source;
  Matrix pi;
  Matrix pi_star;
  DefectData defect;
  DilationDiagnostics diagnostics;

  int degree_cap() const { return source.degree_cap(); }
};

DilationMap build_dilation(const OperatorTuple& t, int degree_cap, const DilationOptions& opts = {});

DilationDiagnostics dilation_diagnostics(const OperatorTuple& t, const DilationMap& dm, int probes,
                                         std::uint64_t seed, bool check_minimality = true);

// Unit vectors drawn from a seeded complex Gaussian, one per column.
Matrix random_unit_vectors(Eigen::Index dim, int count, std::uint64_t seed);

}  // namespace ballkit
