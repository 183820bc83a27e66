#include "ballkit/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ballkit {

AnalyticReport verify_analytic(const TruncatedSpace& space, double tol) {
  const OperatorTuple t = shift_tuple(space);
  AnalyticReport rep;
  rep.tol = tol;
  for (const auto& m : t.matrices()) rep.shift_norms.push_back(spectral_norm(m));
  const auto v = validate_tuple(t, tol);
  rep.min_defect_eigenvalue = v.min_defect_eigenvalue;
  rep.max_commutator_norm = v.max_commutator_norm;
  if (v.pass()) rep.purity = purity_report(t);
  return rep;
}

NotAnalytic::NotAnalytic(AnalyticReport report)
    : Error("space is not analytic: min eigenvalue of I - sum M M^* is " +
            std::to_string(report.min_defect_eigenvalue) + ", purity " +
            to_string(report.purity.verdict)),
      report_(std::move(report)) {}

JointEigenspace joint_eigenspace(const TruncatedSpace& space, const BallPoint& w, double tol) {
  if (w.arity() != space.arity()) throw InvalidArgument("point dimension does not match space");
  const int n = space.arity();
  const Eigen::Index d = space.dim();
  Eigen::Index lower = 0;
  for (std::size_t p = 0; p < space.basis().size(); ++p)
    if (space.basis()[p].degree() < space.degree_cap()) lower = space.offset(p) + space.coeff_dim();

  JointEigenspace out;
  if (lower == 0) {
    out.dim = static_cast<int>(d);
    out.basis = Matrix::Identity(d, d);
    return out;
  }
  const OperatorTuple t = shift_tuple(space);
  Matrix stacked(n * lower, d);
  for (int i = 0; i < n; ++i) {
    Matrix adj = t[i].adjoint() - std::conj(w.coords()(i)) * Matrix::Identity(d, d);
    stacked.middleRows(i * lower, lower) = adj.topRows(lower);
  }
  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
  out.singular_values = svd.singularValues();
  int above = 0;
  for (Eigen::Index j = 0; j < out.singular_values.size(); ++j)
    if (out.singular_values(j) > tol) ++above;
  out.dim = static_cast<int>(d) - above;
  out.basis = svd.matrixV().rightCols(out.dim);
  return out;
}

int joint_eigenspace_dim(const TruncatedSpace& space, const BallPoint& w, double tol) {
  return joint_eigenspace(space, w, tol).dim;
}

double IntertwinerCheck::max_residual() const {
  double m = 0.0;
  for (double r : residuals) m = std::max(m, r);
  return m;
}

IntertwinerCheck check_intertwining(const Matrix& x, const TruncatedSpace& source,
                                    const TruncatedSpace& target, double tol) {
  if (source.arity() != target.arity())
    throw InvalidArgument("source and target live over balls of different dimension");
  if (x.rows() != target.dim() || x.cols() != source.dim())
    throw InvalidArgument("operator shape does not match source and target spaces");
  IntertwinerCheck chk;
  chk.tol = tol;
  for (int i = 0; i < source.arity(); ++i)
    chk.residuals.push_back(spectral_norm(shift_right(source, x, i) - shift_left(target, i, x)));
  return chk;
}

namespace {

void require_intertwiner(const Matrix& x, const TruncatedSpace& source, const TruncatedSpace& target,
                         double tol) {
  const auto chk = check_intertwining(x, source, target, tol);
  if (!chk.pass())
    throw SymbolError("operator does not intertwine the shifts (residual " +
                          std::to_string(chk.max_residual()) + "); symbol is undefined",
                      chk.max_residual());
}

}  // namespace

Matrix extract_symbol(const Matrix& x, const TruncatedSpace& source, const TruncatedSpace& target,
                      const BallPoint& w, double tol, Complex kernel_scale) {
  require_intertwiner(x, source, target, tol);
  if (kernel_scale == Complex(0.0, 0.0)) throw InvalidArgument("kernel scale must be nonzero");
  const int eig_dim = joint_eigenspace_dim(source, w);
  if (eig_dim != source.coeff_dim())
    throw SymbolError("joint eigenspace of the source has dimension " + std::to_string(eig_dim) +
                          ", expected " + std::to_string(source.coeff_dim()),
                      static_cast<double>(eig_dim));
  const int e_src = source.coeff_dim();
  const int e_tgt = target.coeff_dim();
  Matrix theta_adj(e_src, e_tgt);
  for (int j = 0; j < e_tgt; ++j) {
    Vector zeta = Vector::Zero(e_tgt);
    zeta(j) = 1.0;
    const Vector kv = kernel_scale * target.to_orthonormal(kernel_vector(target, w, zeta));
    const Vector pulled = source.to_monomial(x.adjoint() * kv);
    // The source kernel has constant term 1, so the degree-0 block is Theta(w)^* zeta.
    theta_adj.col(j) = pulled.head(e_src) / kernel_scale;
  }
  return theta_adj.adjoint();
}

Matrix SymbolCoefficients::evaluate(const BallPoint& w) const {
  if (blocks.empty()) throw InvalidArgument("empty symbol");
  if (w.arity() != basis.arity()) throw InvalidArgument("point dimension does not match symbol");
  Matrix r = Matrix::Zero(blocks[0].rows(), blocks[0].cols());
  for (std::size_t p = 0; p < blocks.size(); ++p) r += basis[p].monomial(w.coords()) * blocks[p];
  return r;
}

int SymbolCoefficients::degree(double tol) const {
  int deg = -1;
  for (std::size_t p = 0; p < blocks.size(); ++p)
    if (max_abs_entry(blocks[p]) > tol) deg = std::max(deg, basis[p].degree());
  return deg;
}

SymbolCoefficients symbol_coefficients(const Matrix& x, const TruncatedSpace& source,
                                       const TruncatedSpace& target, double tol) {
  require_intertwiner(x, source, target, tol);
  const int e_src = source.coeff_dim();
  const int e_tgt = target.coeff_dim();
  SymbolCoefficients sym;
  sym.basis = target.basis();
  sym.blocks.assign(target.basis().size(), Matrix::Zero(e_tgt, e_src));
  for (int j = 0; j < e_src; ++j) {
    // 1 (x) eta_j: ||1|| = 1, so orthonormal and monomial coordinates agree.
    const Vector image = target.to_monomial(x.col(j));
    for (std::size_t p = 0; p < sym.blocks.size(); ++p)
      sym.blocks[p].col(j) = image.segment(target.offset(p), e_tgt);
  }
  return sym;
}

std::vector<BallPoint> symbol_grid(int n) {
  if (n < 1) throw InvalidArgument("ball dimension must be at least 1");
  std::vector<BallPoint> grid;
  for (int a = 0; a < 5; ++a) {
    const double radius = 0.8 * (a + 1) / 5.0;
    for (int b = 0; b < 5; ++b) {
      Vector u(n);
      for (int j = 0; j < n; ++j) {
        const double phase = 2.0 * std::numbers::pi * (b + 1) * (j + 1) / (5.0 * n);
        u(j) = (1.0 + 0.5 * j + 0.25 * b) * std::polar(1.0, phase);
      }
      u.normalize();
      grid.emplace_back(Vector(radius * u));
    }
  }
  return grid;
}

double multiplier_action_residual(const Matrix& x, const TruncatedSpace& source,
                                  const TruncatedSpace& target, const SymbolCoefficients& symbol) {
  const int e_src = source.coeff_dim();
  const int e_tgt = target.coeff_dim();
  const auto& tb = target.basis();
  double worst = 0.0;
  for (std::size_t q = 0; q < source.basis().size(); ++q) {
    const MultiIndex& k = source.basis()[q];
    for (int j = 0; j < e_src; ++j) {
      const Vector actual = std::sqrt(source.sq_norm(q)) * x.col(source.offset(q) + j);
      Vector expected = Vector::Zero(target.dim());
      for (std::size_t p = 0; p < tb.size(); ++p) {
        if (tb[p].degree() + k.degree() > target.degree_cap()) continue;
        const std::size_t dest = *tb.position(tb[p] + k);
        expected.segment(target.offset(dest), e_tgt) += symbol.blocks[p].col(j);
      }
      worst = std::max(worst, (actual - target.to_orthonormal(expected)).norm());
    }
  }
  return worst;
}

MultiplierDiagnostics multiplier_diagnostics(const Matrix& x, const TruncatedSpace& source,
                                             const TruncatedSpace& target, const Subspace& s,
                                             const SymbolCoefficients& symbol, double tol) {
  MultiplierDiagnostics diag;
  const OperatorTuple t = shift_tuple(target);
  const auto inv = invariant_diagnostics(t, s, source, x);
  diag.projection_residual = inv.projection_residual;
  diag.singular_value_gap = inv.singular_value_gap;
  diag.rank = inv.rank;
  diag.intertwining_residuals = inv.intertwining_residuals;
  for (const auto& w : symbol_grid(source.arity())) {
    const Matrix direct = extract_symbol(x, source, target, w, tol);
    diag.symbol_consistency_residual =
        std::max(diag.symbol_consistency_residual, spectral_norm(symbol.evaluate(w) - direct));
  }
  diag.multiplier_action_residual = multiplier_action_residual(x, source, target, symbol);
  return diag;
}

bool MultiplierFactor::certified(double tol) const {
  if (!analytic.pass()) return false;
  if (diagnostics.projection_residual > tol || diagnostics.singular_value_gap > tol) return false;
  if (diagnostics.symbol_consistency_residual > tol) return false;
  if (diagnostics.multiplier_action_residual > tol) return false;
  for (double r : diagnostics.intertwining_residuals)
    if (r > tol) return false;
  return diagnostics.rank == subspace.dim();
}

MultiplierFactor factor_to_multiplier(const TruncatedSpace& target, const Subspace& s,
                                      std::optional<int> degree_cap, double tol) {
  MultiplierFactor mf;
  mf.analytic = verify_analytic(target, tol);
  if (!mf.analytic.pass()) throw NotAnalytic(mf.analytic);
  const OperatorTuple t = shift_tuple(target);
  const InvariantFactor inv =
      factor_invariant_subspace(t, s, degree_cap.value_or(target.degree_cap()), tol);
  mf.source = inv.source;
  mf.target = target;
  mf.subspace = s;
  mf.m_theta = inv.pi;
  mf.symbol = symbol_coefficients(mf.m_theta, mf.source, mf.target, tol);
  mf.diagnostics = multiplier_diagnostics(mf.m_theta, mf.source, mf.target, s, mf.symbol, tol);
  return mf;
}

}  // namespace ballkit
