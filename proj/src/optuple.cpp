#include "ballkit/optuple.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace ballkit {

OperatorTuple::OperatorTuple(std::vector<Matrix> matrices) : matrices_(std::move(matrices)) {
  if (matrices_.empty()) throw InvalidArgument("operator tuple needs at least one matrix");
  dim_ = matrices_.front().rows();
  if (dim_ == 0) throw InvalidArgument("operator tuple acts on a zero-dimensional space");
  for (const auto& m : matrices_)
    if (m.rows() != dim_ || m.cols() != dim_)
      throw InvalidArgument("operator tuple matrices must be square of equal size");
}

OperatorTuple OperatorTuple::zero(int n, Eigen::Index dim) {
  return OperatorTuple(std::vector<Matrix>(n, Matrix::Zero(dim, dim)));
}

Matrix OperatorTuple::row_gram() const {
  Matrix g = Matrix::Zero(dim_, dim_);
  for (const auto& m : matrices_) g.noalias() += m * m.adjoint();
  return g;
}

Matrix OperatorTuple::power(const MultiIndex& k) const {
  if (k.arity() != arity()) throw InvalidArgument("multi-index arity does not match tuple");
  Matrix r = Matrix::Identity(dim_, dim_);
  for (int i = 0; i < arity(); ++i)
    for (int p = 0; p < k[i]; ++p) r = r * matrices_[i];
  return r;
}

TupleValidation validate_tuple(const OperatorTuple& t, double tol) {
  TupleValidation v;
  v.tol = tol;
  for (int i = 0; i < t.arity(); ++i)
    for (int j = i + 1; j < t.arity(); ++j)
      v.max_commutator_norm =
          std::max(v.max_commutator_norm, spectral_norm(t[i] * t[j] - t[j] * t[i]));
  Matrix delta = Matrix::Identity(t.dim(), t.dim()) - t.row_gram();
  v.min_defect_eigenvalue = min_hermitian_eigenvalue(delta);
  return v;
}

void require_valid_tuple(const OperatorTuple& t, double tol) {
  const auto v = validate_tuple(t, tol);
  if (!v.commuting())
    throw PreconditionFailure("tuple does not commute: commutator norm " +
                                  std::to_string(v.max_commutator_norm),
                              v.max_commutator_norm);
  if (!v.row_contractive())
    throw NotRowContraction("tuple is not a row contraction: min eigenvalue of I - sum T T^* is " +
                                std::to_string(v.min_defect_eigenvalue),
                            v.min_defect_eigenvalue);
}

namespace {

void fix_phase(Eigen::Ref<Vector> v) {
  const double scale = v.norm();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12 * scale) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = Complex(v(i).real(), 0.0);
      return;
    }
  }
}

// Orthonormal basis of ran(P) for a Hermitian projector P of known rank, picking the
// largest remaining column at each step (first index wins ties).
Matrix pivoted_range_basis(const Matrix& projector, int rank) {
  Matrix work = projector;
  Matrix basis(projector.rows(), rank);
  for (int c = 0; c < rank; ++c) {
    Eigen::Index best = 0;
    double best_norm = -1.0;
    for (Eigen::Index j = 0; j < work.cols(); ++j) {
      const double nrm = work.col(j).norm();
      if (nrm > best_norm * (1.0 + 1e-10)) {
        best = j;
        best_norm = nrm;
      }
    }
    Vector q = work.col(best) / best_norm;
    for (int pass = 0; pass < 2; ++pass)
      for (int prev = 0; prev < c; ++prev) q -= basis.col(prev) * basis.col(prev).dot(q);
    q.normalize();
    basis.col(c) = q;
    work -= q * (q.adjoint() * work);
  }
  return basis;
}

}  // namespace

DefectData defect(const OperatorTuple& t, double rank_tol, double tol) {
  require_valid_tuple(t, tol);
  const Eigen::Index d = t.dim();
  Matrix delta = hermitian_part(Matrix::Identity(d, d) - t.row_gram());
  Eigen::SelfAdjointEigenSolver<Matrix> es(delta);
  // Eigen returns ascending order; flip to descending.
  RealVector evals = es.eigenvalues().reverse();
  Matrix evecs = es.eigenvectors().rowwise().reverse();
  if (evals(d - 1) < -tol)
    throw NotRowContraction("defect operator has negative eigenvalue " +
                                std::to_string(evals(d - 1)),
                            evals(d - 1));
  evals = evals.cwiseMax(0.0);

  DefectData out;
  const double top = evals(0);
  const double cut = rank_tol * top;
  int rank = 0;
  if (top > 0.0)
    while (rank < d && evals(rank) > cut) ++rank;
  out.rank = rank;
  // Eigenvalues below the rank cut count as zero; their square roots would otherwise put
  // O(sqrt(eps)) mass of D outside the defect frame.
  for (Eigen::Index j = rank; j < d; ++j) evals(j) = 0.0;
  out.eigenvalues = evals;
  RealVector roots = evals.cwiseSqrt();
  out.D = evecs * roots.asDiagonal() * evecs.adjoint();
  out.D = hermitian_part(out.D);  // exact self-adjointness, not just up to rounding
  out.frame.resize(d, rank);

  const double cluster_gap = 1e-8 * std::max(top, 1.0);
  int start = 0;
  while (start < rank) {
    int stop = start + 1;
    while (stop < rank && evals(stop - 1) - evals(stop) <= cluster_gap) ++stop;
    const int width = stop - start;
    Matrix q = evecs.middleCols(start, width);
    Matrix block = pivoted_range_basis(q * q.adjoint(), width);
    for (int c = 0; c < width; ++c) {
      Vector col = block.col(c);
      fix_phase(col);
      out.frame.col(start + c) = col;
    }
    start = stop;
  }
  return out;
}

Matrix cp_apply(const OperatorTuple& t, const Matrix& x) {
  if (x.rows() != t.dim() || x.cols() != t.dim())
    throw InvalidArgument("cp_apply: matrix shape does not match tuple dimension");
  Matrix r = Matrix::Zero(t.dim(), t.dim());
  for (const auto& m : t.matrices()) r.noalias() += m * x * m.adjoint();
  return r;
}

Matrix cp_iterate(const OperatorTuple& t, const Matrix& x, int m) {
  if (m < 0) throw InvalidArgument("cp_iterate: negative power");
  Matrix r = x;
  for (int s = 0; s < m; ++s) r = cp_apply(t, r);
  return r;
}

Matrix cp_power_multinomial(const OperatorTuple& t, int m) {
  if (m < 0) throw InvalidArgument("cp_power_multinomial: negative power");
  const Eigen::Index d = t.dim();
  const int n = t.arity();
  // powers[i][p] = T_i^p
  std::vector<std::vector<Matrix>> powers(n);
  for (int i = 0; i < n; ++i) {
    powers[i].push_back(Matrix::Identity(d, d));
    for (int p = 1; p <= m; ++p) powers[i].push_back(powers[i].back() * t[i]);
  }
  Matrix r = Matrix::Zero(d, d);
  for (const auto& k : enumerate_degree(n, m)) {
    Matrix tk = Matrix::Identity(d, d);
    for (int i = 0; i < n; ++i)
      if (k[i] > 0) tk = tk * powers[i][k[i]];
    r.noalias() += gamma(k) * (tk * tk.adjoint());
  }
  return r;
}

const char* to_string(PurityVerdict v) {
  switch (v) {
    case PurityVerdict::pure: return "pure";
    case PurityVerdict::not_pure: return "not_pure";
    case PurityVerdict::undetermined: return "undetermined";
  }
  return "undetermined";
}

namespace {

double psd_norm(const Matrix& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(x), Eigen::EigenvaluesOnly);
  return std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(x.rows() - 1)));
}

}  // namespace

PurityReport purity_report(const OperatorTuple& t, int max_iter, double tol) {
  require_valid_tuple(t);
  PurityReport rep;
  Matrix x = Matrix::Identity(t.dim(), t.dim());
  rep.residual_norms.push_back(1.0);
  rep.min_monotone_gap = 0.0;
  for (int m = 1; m <= max_iter; ++m) {
    Matrix next = cp_apply(t, x);
    const Matrix step = x - next;
    rep.min_monotone_gap = std::min(rep.min_monotone_gap, min_hermitian_eigenvalue(step));
    const double nrm = psd_norm(next);
    rep.residual_norms.push_back(nrm);
    rep.iterations = m;
    const double step_norm = psd_norm(step);
    x = std::move(next);
    if (nrm <= tol) {
      rep.verdict = PurityVerdict::pure;
      break;
    }
    if (step_norm <= 1e-14 * nrm) {
      rep.verdict = PurityVerdict::not_pure;
      break;
    }
  }
  rep.p_inf_estimate = x;
  return rep;
}

std::optional<int> nilpotency_order(const OperatorTuple& t, double tol) {
  Matrix x = Matrix::Identity(t.dim(), t.dim());
  for (int m = 1; m <= t.dim() + 1; ++m) {
    x = cp_apply(t, x);
    if (max_abs_entry(x) <= tol) return m;
  }
  return std::nullopt;
}

}  // namespace ballkit
