#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ballkit/ballspace.hpp"
#include "ballkit/dilation.hpp"
#include "ballkit/linalg.hpp"
#include "ballkit/optuple.hpp"

namespace ballkit {

// Raised for the zero subspace, which has no factorization.
class TrivialSubspace : public InvalidArgument {
 public:
  TrivialSubspace() : InvalidArgument("non-trivial subspace required") {}
};

class NotInvariant : public PreconditionFailure {
 public:
  using PreconditionFailure::PreconditionFailure;
};

// Closed subspace S of C^d given by an orthonormal frame V; P_S = V V^*.
class Subspace {
 public:
  Subspace() = default;
  // Checks V^* V = I to 1e-12.
  explicit Subspace(Matrix frame);

  static Subspace full(Eigen::Index ambient_dim);

  Eigen::Index ambient_dim() const { return frame_.rows(); }
  Eigen::Index dim() const { return frame_.cols(); }
  const Matrix& frame() const { return frame_; }
  Matrix projector() const { return frame_ * frame_.adjoint(); }

 private:
  Matrix frame_;
};

// Orthonormal frame for the column span, keeping column order (Gram-Schmidt with
// reorthogonalization). Columns whose residual falls below rank_tol times the largest
// generator norm are dropped.
Subspace orthonormalize(const Matrix& generators, double rank_tol = kDefaultRankTol);

// Span of the basis vectors e_k (x) e_j, j < coeff_dim, for the listed monomials.
Subspace monomial_subspace(const TruncatedSpace& space, const std::vector<MultiIndex>& monomials);

// Monomials of the space lying in the ideal generated by `generators`.
std::vector<MultiIndex> ideal_monomials(const TruncatedSpace& space,
                                        const std::vector<MultiIndex>& generators);

struct InvarianceReport {
  // ||(I - P_S) T_i P_S|| per i.
  std::vector<double> residuals;
  double tol = kDefaultCommutatorTol;

  double max_residual() const;
  bool pass() const { return max_residual() <= tol; }
};

InvarianceReport check_invariant(const OperatorTuple& t, const Subspace& s,
                                 double tol = kDefaultCommutatorTol);

// (V^* T_1 V, ..., V^* T_n V); throws NotInvariant when S is not invariant.
OperatorTuple restrict_tuple(const OperatorTuple& t, const Subspace& s,
                             double tol = kDefaultCommutatorTol);

// max over probes h in S and m <= max_power of <P^m_{T|S}(I) h, h> - <P^m_T(I) V h, V h>.
// Non-positive up to rounding for every invariant S.
double purity_domination_gap(const OperatorTuple& t, const Subspace& s, int max_power, int probes,
                             std::uint64_t seed);

struct InvariantDiagnostics {
  double projection_residual = 0.0;  // ||Pi Pi^* - P_S||
  std::vector<double> intertwining_residuals;  // ||T_i Pi - Pi M_{z_i}||
  double singular_value_gap = 0.0;  // max distance of a singular value from {0, 1}
  int rank = 0;
  // ||(I - P_ran) T_i P_ran|| maximized over i, with ran = ran Pi.
  double range_invariance_residual = 0.0;
};

struct InvariantFactor {
  Matrix pi;
  TruncatedSpace source;
  Subspace subspace;
  DilationMap restricted;
  PurityVerdict ambient_purity = PurityVerdict::undetermined;
  InvariantDiagnostics diagnostics;

  int degree_cap() const { return source.degree_cap(); }
  int coeff_dim() const { return source.coeff_dim(); }
  // Every diagnostic within tol and rank(Pi) == dim S.
  bool certified(double tol) const;
};

// Pi = V Pi_S with Pi_S the dilation of T|_S. Without a degree cap, uses the nilpotency
// order of T minus one; throws InvalidArgument if T is not nilpotent.
InvariantFactor factor_invariant_subspace(const OperatorTuple& t, const Subspace& s,
                                          std::optional<int> degree_cap = std::nullopt,
                                          double tol = kDefaultCommutatorTol);

InvariantDiagnostics invariant_diagnostics(const OperatorTuple& t, const Subspace& s,
                                           const TruncatedSpace& source, const Matrix& pi);

}  // namespace ballkit
