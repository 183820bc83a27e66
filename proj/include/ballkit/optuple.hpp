#pragma once

#include <optional>
#include <vector>

#include "ballkit/linalg.hpp"
#include "ballkit/multiindex.hpp"

namespace ballkit {

inline constexpr double kDefaultCommutatorTol = 1e-10;
inline constexpr double kDefaultRankTol = 1e-10;
inline constexpr int kDefaultPurityIterations = 500;
inline constexpr double kDefaultPurityTol = 1e-10;

// n matrices acting on a shared finite-dimensional space.
class OperatorTuple {
 public:
  OperatorTuple() = default;
  explicit OperatorTuple(std::vector<Matrix> matrices);

  // The zero tuple of arity n on C^dim.
  static OperatorTuple zero(int n, Eigen::Index dim);

  int arity() const { return static_cast<int>(matrices_.size()); }
  Eigen::Index dim() const { return dim_; }
  const Matrix& operator[](int i) const { return matrices_[i]; }
  const std::vector<Matrix>& matrices() const { return matrices_; }

  // sum_i T_i T_i^*
  Matrix row_gram() const;
  // T^k = T_1^{k_1} ... T_n^{k_n}
  Matrix power(const MultiIndex& k) const;

 private:
  std::vector<Matrix> matrices_;
  Eigen::Index dim_ = 0;
};

class NotRowContraction : public PreconditionFailure {
 public:
  using PreconditionFailure::PreconditionFailure;
};

struct TupleValidation {
  double max_commutator_norm = 0.0;
  // Smallest eigenvalue of I - sum T_i T_i^*.
  double min_defect_eigenvalue = 0.0;
  double tol = kDefaultCommutatorTol;

  bool commuting() const { return max_commutator_norm <= tol; }
  bool row_contractive() const { return min_defect_eigenvalue >= -tol; }
  bool pass() const { return commuting() && row_contractive(); }
};

TupleValidation validate_tuple(const OperatorTuple& t, double tol = kDefaultCommutatorTol);

// Throws NotRowContraction or PreconditionFailure when validate_tuple fails.
void require_valid_tuple(const OperatorTuple& t, double tol = kDefaultCommutatorTol);

struct DefectData {
  // D = (I - sum T_i T_i^*)^{1/2}
  Matrix D;
  int rank = 0;
  // dim x rank orthonormal columns spanning ran D.
  Matrix frame;
  // Eigenvalues of I - sum T_i T_i^*, descending, after clamping.
  RealVector eigenvalues;
};

// Negative eigenvalues down to -tol are clamped to zero; below that the tuple is rejected.
// The frame is ordered by eigenvalue descending; inside a degenerate cluster it is obtained
// by pivoted Gram-Schmidt on the cluster projector, and each column's first nonzero
// coordinate is made real positive.
DefectData defect(const OperatorTuple& t, double rank_tol = kDefaultRankTol,
                  double tol = kDefaultCommutatorTol);

// P_T(X) = sum_i T_i X T_i^*
Matrix cp_apply(const OperatorTuple& t, const Matrix& x);
// P_T^m(X) by repeated application.
Matrix cp_iterate(const OperatorTuple& t, const Matrix& x, int m);
// P_T^m(I) = sum_{|k| = m} gamma_k T^k T^{*k}
Matrix cp_power_multinomial(const OperatorTuple& t, int m);

enum class PurityVerdict { pure, not_pure, undetermined };

const char* to_string(PurityVerdict v);

struct PurityReport {
  int iterations = 0;
  // ||P_T^m(I)|| for m = 0..iterations.
  std::vector<double> residual_norms;
  PurityVerdict verdict = PurityVerdict::undetermined;
  // Last iterate; the finite-step estimate of P_inf(T).
  Matrix p_inf_estimate;
  // min over m of the smallest eigenvalue of P^m(I) - P^{m+1}(I).
  double min_monotone_gap = 0.0;

  bool is_pure() const { return verdict == PurityVerdict::pure; }
};

// Iterates X <- P_T(X) from I. Stops as pure once ||X|| <= tol, as not pure once the
// iterates reach a nonzero fixed point, and reports undetermined after max_iter steps.
PurityReport purity_report(const OperatorTuple& t, int max_iter = kDefaultPurityIterations,
                           double tol = kDefaultPurityTol);

// Smallest m <= dim + 1 with ||P_T^m(I)|| <= tol, if any.
std::optional<int> nilpotency_order(const OperatorTuple& t, double tol = 1e-12);

}  // namespace ballkit
