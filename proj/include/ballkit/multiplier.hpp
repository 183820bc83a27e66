#pragma once

#include <optional>
#include <vector>

#include "ballkit/ballspace.hpp"
#include "ballkit/invariant.hpp"
#include "ballkit/linalg.hpp"
#include "ballkit/optuple.hpp"

namespace ballkit {

struct AnalyticReport {
  std::vector<double> shift_norms;
  double min_defect_eigenvalue = 0.0;
  double max_commutator_norm = 0.0;
  PurityReport purity;
  double tol = kDefaultCommutatorTol;

  bool row_contractive() const { return min_defect_eigenvalue >= -tol; }
  bool commuting() const { return max_commutator_norm <= tol; }
  bool pass() const { return row_contractive() && commuting() && purity.is_pure(); }
};

// Boundedness, row contractivity and purity of the compressed shift tuple.
AnalyticReport verify_analytic(const TruncatedSpace& space, double tol = kDefaultCommutatorTol);

class NotAnalytic : public Error {
 public:
  explicit NotAnalytic(AnalyticReport report);
  const AnalyticReport& report() const { return report_; }

 private:
  AnalyticReport report_;
};

struct JointEigenspace {
  int dim = 0;
  // Orthonormal-coordinate basis of the joint eigenspace, one column per vector.
  Matrix basis;
  RealVector singular_values;
};

// Joint kernel of the adjoints (S_i - w_i)^*, with the top-degree rows dropped because the
// compression annihilates that band. The truncated kernel function K_N(., w) zeta lies in it
// exactly, so the dimension is coeff_dim for every w in the ball.
JointEigenspace joint_eigenspace(const TruncatedSpace& space, const BallPoint& w, double tol = 1e-10);
int joint_eigenspace_dim(const TruncatedSpace& space, const BallPoint& w, double tol = 1e-10);

struct IntertwinerCheck {
  // ||X S_i - T_i X|| with S_i source shifts and T_i target shifts.
  std::vector<double> residuals;
  double tol = kDefaultCommutatorTol;

  double max_residual() const;
  bool pass() const { return max_residual() <= tol; }
};

// X maps source orthonormal coordinates to target orthonormal coordinates.
IntertwinerCheck check_intertwining(const Matrix& x, const TruncatedSpace& source,
                                    const TruncatedSpace& target, double tol = kDefaultCommutatorTol);

class SymbolError : public PreconditionFailure {
 public:
  using PreconditionFailure::PreconditionFailure;
};

// Theta(w) from X^*(K_target(., w) (x) zeta) = K_source(., w) (x) Theta(w)^* zeta, read off the
// constant block. `kernel_scale` multiplies the kernel vector before X^* and is divided out.
Matrix extract_symbol(const Matrix& x, const TruncatedSpace& source, const TruncatedSpace& target,
                      const BallPoint& w, double tol = kDefaultCommutatorTol,
                      Complex kernel_scale = Complex(1.0, 0.0));

// Taylor blocks Theta_k (dim E_* x dim E), indexed like the target basis.
struct SymbolCoefficients {
  MultiIndexSet basis;
  std::vector<Matrix> blocks;

  Matrix evaluate(const BallPoint& w) const;
  // Largest |k| with a block above tol, or -1 for the zero symbol.
  int degree(double tol = 1e-13) const;
};

SymbolCoefficients symbol_coefficients(const Matrix& x, const TruncatedSpace& source,
                                       const TruncatedSpace& target,
                                       double tol = kDefaultCommutatorTol);

// Deterministic grid: radii {0, 0.2, 0.4, 0.6, 0.8} times five unit directions.
std::vector<BallPoint> symbol_grid(int n);

struct MultiplierDiagnostics {
  double projection_residual = 0.0;  // ||M_Theta M_Theta^* - P_S||
  double singular_value_gap = 0.0;
  int rank = 0;
  // max over the grid of |sum_k Theta_k w^k - extract_symbol(w)|
  double symbol_consistency_residual = 0.0;
  // max over k, eta of ||X(z^k eta) - P_N(z^k Theta eta)|| in the target norm
  double multiplier_action_residual = 0.0;
  std::vector<double> intertwining_residuals;
};

struct MultiplierFactor {
  TruncatedSpace source;
  TruncatedSpace target;
  Subspace subspace;
  SymbolCoefficients symbol;
  Matrix m_theta;
  AnalyticReport analytic;
  MultiplierDiagnostics diagnostics;

  bool certified(double tol) const;
};

// Residual of the multiplier action against the truncated coefficient convolution.
double multiplier_action_residual(const Matrix& x, const TruncatedSpace& source,
                                  const TruncatedSpace& target, const SymbolCoefficients& symbol);

// Factors an invariant subspace of the target through H^2_n (x) E. Throws NotAnalytic if the
// target fails verify_analytic and NotInvariant if S is not shift invariant.
MultiplierFactor factor_to_multiplier(const TruncatedSpace& target, const Subspace& s,
                                      std::optional<int> degree_cap = std::nullopt,
                                      double tol = kDefaultCommutatorTol);

MultiplierDiagnostics multiplier_diagnostics(const Matrix& x, const TruncatedSpace& source,
                                             const TruncatedSpace& target, const Subspace& s,
                                             const SymbolCoefficients& symbol, double tol);

}  // namespace ballkit
