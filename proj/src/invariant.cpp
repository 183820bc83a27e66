#include "ballkit/invariant.hpp"

#include <algorithm>
#include <cmath>

namespace ballkit {

Subspace::Subspace(Matrix frame) : frame_(std::move(frame)) {
  if (frame_.cols() == 0) throw TrivialSubspace();
  if (frame_.rows() < frame_.cols())
    throw InvalidArgument("subspace frame has more columns than rows");
  const double err = max_abs_entry(frame_.adjoint() * frame_ -
                                   Matrix::Identity(frame_.cols(), frame_.cols()));
  if (err > 1e-12)
    throw InvalidArgument("subspace frame columns are not orthonormal (error " +
                          std::to_string(err) + ")");
}

Subspace Subspace::full(Eigen::Index ambient_dim) {
  return Subspace(Matrix::Identity(ambient_dim, ambient_dim));
}

Subspace orthonormalize(const Matrix& generators, double rank_tol) {
  if (generators.cols() == 0 || generators.rows() == 0) throw TrivialSubspace();
  double scale = 0.0;
  for (Eigen::Index j = 0; j < generators.cols(); ++j)
    scale = std::max(scale, generators.col(j).norm());
  if (scale == 0.0) throw TrivialSubspace();
  std::vector<Vector> kept;
  for (Eigen::Index j = 0; j < generators.cols(); ++j) {
    Vector q = generators.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : kept) q -= b * b.dot(q);
    const double nrm = q.norm();
    if (nrm > rank_tol * scale) kept.push_back(q / nrm);
  }
  Matrix frame(generators.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) frame.col(static_cast<Eigen::Index>(c)) = kept[c];
  return Subspace(std::move(frame));
}

Subspace monomial_subspace(const TruncatedSpace& space, const std::vector<MultiIndex>& monomials) {
  const int e = space.coeff_dim();
  Matrix frame = Matrix::Zero(space.dim(), static_cast<Eigen::Index>(monomials.size()) * e);
  Eigen::Index col = 0;
  for (const auto& k : monomials) {
    auto pos = space.basis().position(k);
    if (!pos) throw InvalidArgument("monomial outside the truncated basis");
    for (int j = 0; j < e; ++j) frame(space.offset(*pos) + j, col++) = 1.0;
  }
  return Subspace(std::move(frame));
}

std::vector<MultiIndex> ideal_monomials(const TruncatedSpace& space,
                                        const std::vector<MultiIndex>& generators) {
  std::vector<MultiIndex> out;
  for (const auto& k : space.basis().indices()) {
    const bool divisible = std::any_of(generators.begin(), generators.end(), [&](const MultiIndex& g) {
      if (g.arity() != k.arity()) throw InvalidArgument("ideal generator arity mismatch");
      for (int i = 0; i < k.arity(); ++i)
        if (k[i] < g[i]) return false;
      return true;
    });
    if (divisible) out.push_back(k);
  }
  return out;
}

double InvarianceReport::max_residual() const {
  double m = 0.0;
  for (double r : residuals) m = std::max(m, r);
  return m;
}

InvarianceReport check_invariant(const OperatorTuple& t, const Subspace& s, double tol) {
  if (s.ambient_dim() != t.dim())
    throw InvalidArgument("subspace ambient dimension does not match tuple");
  InvarianceReport rep;
  rep.tol = tol;
  const Matrix& v = s.frame();
  for (int i = 0; i < t.arity(); ++i) {
    Matrix tv = t[i] * v;
    rep.residuals.push_back(spectral_norm(tv - v * (v.adjoint() * tv)));
  }
  return rep;
}

OperatorTuple restrict_tuple(const OperatorTuple& t, const Subspace& s, double tol) {
  const auto rep = check_invariant(t, s, tol);
  if (!rep.pass())
    throw NotInvariant("subspace is not invariant: residual " + std::to_string(rep.max_residual()),
                       rep.max_residual());
  std::vector<Matrix> restricted;
  for (int i = 0; i < t.arity(); ++i) restricted.push_back(s.frame().adjoint() * t[i] * s.frame());
  OperatorTuple out(std::move(restricted));
  require_valid_tuple(out, tol);
  return out;
}

double purity_domination_gap(const OperatorTuple& t, const Subspace& s, int max_power, int probes,
                             std::uint64_t seed) {
  const OperatorTuple ts = restrict_tuple(t, s);
  const Matrix h = random_unit_vectors(s.dim(), probes, seed);
  const Matrix vh = s.frame() * h;
  Matrix inner = Matrix::Identity(s.dim(), s.dim());
  Matrix outer = Matrix::Identity(t.dim(), t.dim());
  double gap = -1.0;
  for (int m = 0; m <= max_power; ++m) {
    for (int c = 0; c < probes; ++c) {
      const double lhs = h.col(c).dot(inner * h.col(c)).real();
      const double rhs = vh.col(c).dot(outer * vh.col(c)).real();
      gap = std::max(gap, lhs - rhs);
    }
    inner = cp_apply(ts, inner);
    outer = cp_apply(t, outer);
  }
  return gap;
}

InvariantDiagnostics invariant_diagnostics(const OperatorTuple& t, const Subspace& s,
                                           const TruncatedSpace& source, const Matrix& pi) {
  if (pi.rows() != t.dim() || pi.cols() != source.dim())
    throw InvalidArgument("factor shape does not match tuple and source space");
  InvariantDiagnostics diag;
  diag.projection_residual = spectral_norm(pi * pi.adjoint() - s.projector());
  for (int i = 0; i < t.arity(); ++i)
    diag.intertwining_residuals.push_back(spectral_norm(t[i] * pi - shift_right(source, pi, i)));

  Eigen::BDCSVD<Matrix> svd(pi, Eigen::ComputeThinU);
  const RealVector sv = svd.singularValues();
  for (Eigen::Index j = 0; j < sv.size(); ++j)
    diag.singular_value_gap = std::max(diag.singular_value_gap, std::min(sv(j), std::abs(sv(j) - 1.0)));
  const double cut = sv.size() > 0 ? kDefaultRankTol * sv(0) : 0.0;
  for (Eigen::Index j = 0; j < sv.size(); ++j)
    if (sv(j) > cut) ++diag.rank;

  if (diag.rank > 0) {
    const Matrix u = svd.matrixU().leftCols(diag.rank);
    for (int i = 0; i < t.arity(); ++i) {
      Matrix tu = t[i] * u;
      diag.range_invariance_residual =
          std::max(diag.range_invariance_residual, spectral_norm(tu - u * (u.adjoint() * tu)));
    }
  }
  return diag;
}

bool InvariantFactor::certified(double tol) const {
  if (diagnostics.projection_residual > tol) return false;
  if (diagnostics.singular_value_gap > tol) return false;
  if (diagnostics.range_invariance_residual > tol) return false;
  for (double r : diagnostics.intertwining_residuals)
    if (r > tol) return false;
  return diagnostics.rank == subspace.dim();
}

InvariantFactor factor_invariant_subspace(const OperatorTuple& t, const Subspace& s,
                                          std::optional<int> degree_cap, double tol) {
  require_valid_tuple(t, tol);
  if (s.ambient_dim() != t.dim())
    throw InvalidArgument("subspace ambient dimension does not match tuple");
  const OperatorTuple ts = restrict_tuple(t, s, tol);

  InvariantFactor f;
  f.subspace = s;
  if (auto order = nilpotency_order(t)) {
    f.ambient_purity = PurityVerdict::pure;
    if (!degree_cap) degree_cap = *order - 1;
  } else {
    f.ambient_purity = purity_report(t).verdict;
    if (!degree_cap)
      throw InvalidArgument("degree cap required: the tuple is not nilpotent");
  }

  DilationOptions opts;
  opts.tol = tol;
  opts.check_minimality = false;
  f.restricted = build_dilation(ts, *degree_cap, opts);
  f.source = f.restricted.source;
  f.pi = s.frame() * f.restricted.pi;
  f.diagnostics = invariant_diagnostics(t, s, f.source, f.pi);
  return f;
}

}  // namespace ballkit
