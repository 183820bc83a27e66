#include "ballkit/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ballkit {

Matrix random_unit_vectors(Eigen::Index dim, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix out(dim, count);
  for (int c = 0; c < count; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) out(r, c) = Complex(normal(rng), normal(rng));
    out.col(c).normalize();
  }
  return out;
}

DilationMap build_dilation(const OperatorTuple& t, int degree_cap, const DilationOptions& opts) {
  if (degree_cap < 0) throw InvalidArgument("degree cap must be non-negative");
  DilationMap dm;
  dm.defect = defect(t, opts.rank_tol, opts.tol);
  const int r = dm.defect.rank;
  if (r == 0) throw InvalidArgument("defect space is trivial; the tuple cannot be pure");
  dm.source = make_space(t.arity(), 1.0, degree_cap, r);

  const auto& basis = dm.source.basis();
  const Eigen::Index d = t.dim();
  dm.pi.resize(d, dm.source.dim());

  // blocks[p] = T^k D F; each index is reached from k - e_i for its first nonzero i.
  std::vector<Matrix> blocks(basis.size());
  blocks[0] = dm.defect.D * dm.defect.frame;
  for (std::size_t p = 1; p < basis.size(); ++p) {
    const MultiIndex& k = basis[p];
    int i = 0;
    while (k[i] == 0) ++i;
    const std::size_t parent = *basis.position(k.minus_unit(i));
    blocks[p] = t[i] * blocks[parent];
  }
  for (std::size_t p = 0; p < basis.size(); ++p)
    dm.pi.middleCols(dm.source.offset(p), r) = std::sqrt(basis.gamma_at(p)) * blocks[p];
  dm.pi_star = dm.pi.adjoint();
  dm.diagnostics = dilation_diagnostics(t, dm, opts.probes, opts.seed, opts.check_minimality);
  return dm;
}

DilationDiagnostics dilation_diagnostics(const OperatorTuple& t, const DilationMap& dm, int probes,
                                         std::uint64_t seed, bool check_minimality) {
  const Eigen::Index d = t.dim();
  if (dm.pi.rows() != d || dm.pi.cols() != dm.source.dim() || dm.source.arity() != t.arity())
    throw InvalidArgument("dilation map does not match tuple dimensions");
  if (probes < 0) throw InvalidArgument("probe count must be non-negative");

  DilationDiagnostics diag;
  const int n = t.arity();
  const int cap = dm.source.degree_cap();
  const int r = dm.source.coeff_dim();
  const auto& basis = dm.source.basis();

  diag.co_isometry_residual = spectral_norm(dm.pi * dm.pi_star - Matrix::Identity(d, d));

  Eigen::Index lower_cols = 0;
  for (std::size_t p = 0; p < basis.size(); ++p)
    if (basis[p].degree() < cap) lower_cols = dm.source.offset(p) + r;
  for (int i = 0; i < n; ++i) {
    Matrix diff = shift_right(dm.source, dm.pi, i) - t[i] * dm.pi;
    diag.intertwining_residuals.push_back(spectral_norm(diff));
    diag.lower_intertwining_residuals.push_back(spectral_norm(diff.leftCols(lower_cols)));
  }

  diag.probes = probes;
  diag.telescoping_checked = probes > 0;
  if (probes > 0) {
    const Matrix tail = cp_iterate(t, Matrix::Identity(d, d), cap + 1);
    const Matrix h = random_unit_vectors(d, probes, seed);
    for (int c = 0; c < probes; ++c) {
      const Vector hc = h.col(c);
      const double lhs = (dm.pi_star * hc).squaredNorm();
      const double rhs = hc.squaredNorm() - hc.dot(tail * hc).real();
      diag.telescoping_residual = std::max(diag.telescoping_residual, std::abs(lhs - rhs));
    }
  }

  // Degree-0 block of Pi^* is F^* D; lifting back through F must give D.
  diag.constant_block_residual =
      spectral_norm(dm.defect.frame * dm.pi_star.topRows(r) - dm.defect.D);

  if (check_minimality) {
    std::vector<Matrix> shifted(basis.size());
    shifted[0] = dm.pi_star;
    for (std::size_t p = 1; p < basis.size(); ++p) {
      const MultiIndex& k = basis[p];
      int i = 0;
      while (k[i] == 0) ++i;
      const std::size_t parent = *basis.position(k.minus_unit(i));
      shifted[p] = shift_left(dm.source, i, shifted[parent]);
    }
    Matrix span(dm.source.dim(), static_cast<Eigen::Index>(basis.size()) * d);
    for (std::size_t p = 0; p < basis.size(); ++p)
      span.middleCols(static_cast<Eigen::Index>(p) * d, d) = shifted[p];
    diag.minimality_rank_gap =
        static_cast<int>(dm.source.dim()) - numerical_rank(span, kDefaultRankTol);
  }
  return diag;
}

}  // namespace ballkit
