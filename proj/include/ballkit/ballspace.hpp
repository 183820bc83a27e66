#pragma once

#include <optional>
#include <vector>

#include "ballkit/linalg.hpp"
#include "ballkit/multiindex.hpp"
#include "ballkit/optuple.hpp"

namespace ballkit {

// Taylor coefficients c_0..c_max_order of (1 - t)^{-lambda}. Requires lambda >= 1.
std::vector<double> kernel_coefficients(double lambda, int max_order);

// Radial kernel K(z, w) = sum_m c_m <z, w>^m on the ball in C^n.
class KernelFamily {
 public:
  KernelFamily() = default;

  // (1 - <z, w>)^{-lambda}; lambda = 1 Drury-Arveson, n Hardy, n + 1 Bergman.
  static KernelFamily power(int n, double lambda, int max_order);
  // User-supplied positive coefficients with c_0 = 1.
  static KernelFamily from_coefficients(int n, std::vector<double> coeffs);

  int arity() const { return n_; }
  // Present for the (1 - <z, w>)^{-lambda} family.
  std::optional<double> lambda() const { return lambda_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  int max_order() const { return static_cast<int>(coeffs_.size()) - 1; }

 private:
  int n_ = 0;
  std::optional<double> lambda_;
  std::vector<double> coeffs_;
};

// A point of the open unit ball.
class BallPoint {
 public:
  explicit BallPoint(Vector w);
  BallPoint(std::initializer_list<Complex> w);

  int arity() const { return static_cast<int>(w_.size()); }
  const Vector& coords() const { return w_; }

 private:
  Vector w_;
};

// Polynomials of degree <= N with coefficients in C^coeff_dim, normed by the kernel.
//
// Vectors of the space come in two coordinate systems. Monomial coordinates hold the
// coefficient blocks a_k of f = sum_k a_k z^k. Orthonormal coordinates are with respect to
// e_k = z^k / ||z^k||; every operator matrix in the library uses these, so adjoints are
// conjugate transposes. Block k occupies entries [pos(k) * coeff_dim, (pos(k) + 1) * coeff_dim).
class TruncatedSpace {
 public:
  TruncatedSpace() = default;
  TruncatedSpace(KernelFamily kernel, int degree_cap, int coeff_dim);

  int arity() const { return kernel_.arity(); }
  int degree_cap() const { return basis_.max_degree(); }
  int coeff_dim() const { return coeff_dim_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()) * coeff_dim_; }
  const KernelFamily& kernel() const { return kernel_; }
  const MultiIndexSet& basis() const { return basis_; }

  // nu_k = ||z^k||^2 = 1 / (c_{|k|} gamma_k)
  double sq_norm(std::size_t pos) const { return sq_norms_[pos]; }
  const std::vector<double>& sq_norms() const { return sq_norms_; }
  Eigen::Index offset(std::size_t pos) const { return static_cast<Eigen::Index>(pos) * coeff_dim_; }

  Vector to_orthonormal(const Vector& monomial_coords) const;
  Vector to_monomial(const Vector& orthonormal_coords) const;

  // Weight of e_k -> e_{k + e_i} under the compressed shift M_{z_i}; 0 at the top degree.
  double shift_weight(std::size_t pos, int i) const;

 private:
  KernelFamily kernel_;
  MultiIndexSet basis_;
  int coeff_dim_ = 0;
  std::vector<double> sq_norms_;
};

TruncatedSpace make_space(int n, double lambda, int degree_cap, int coeff_dim);

// Truncation of K(., w) zeta to degree <= N, in monomial coordinates.
Vector kernel_vector(const TruncatedSpace& space, const BallPoint& w, const Vector& zeta);

// <f, g> = sum_k <a_k, b_k> nu_k, linear in f. Both in monomial coordinates.
Complex inner_product(const TruncatedSpace& space, const Vector& f, const Vector& g);

// f(w) in C^coeff_dim for f in monomial coordinates.
Vector evaluate(const TruncatedSpace& space, const Vector& f, const BallPoint& w);

// Compressed coordinate shifts (M_{z_i} (x) I_E) on the truncated space, orthonormal basis.
OperatorTuple shift_tuple(const TruncatedSpace& space);

// S_i * Z and Z * S_i for the shift S_i of `space`, without forming S_i.
Matrix shift_left(const TruncatedSpace& space, int i, const Matrix& z);
Matrix shift_right(const TruncatedSpace& space, const Matrix& z, int i);

}  // namespace ballkit
