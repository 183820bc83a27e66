#include "ballkit/ballspace.hpp"

#include <cmath>
#include <string>

namespace ballkit {

std::vector<double> kernel_coefficients(double lambda, int max_order) {
  if (!(lambda >= 1.0)) throw InvalidArgument("lambda must be >= 1");
  if (max_order < 0) throw InvalidArgument("kernel order must be non-negative");
  std::vector<double> c(max_order + 1);
  c[0] = 1.0;
  for (int m = 1; m <= max_order; ++m) c[m] = c[m - 1] * (lambda + m - 1) / m;
  return c;
}

KernelFamily KernelFamily::power(int n, double lambda, int max_order) {
  if (n < 1) throw InvalidArgument("ball dimension must be at least 1");
  KernelFamily k;
  k.n_ = n;
  k.lambda_ = lambda;
  k.coeffs_ = kernel_coefficients(lambda, max_order);
  return k;
}

KernelFamily KernelFamily::from_coefficients(int n, std::vector<double> coeffs) {
  if (n < 1) throw InvalidArgument("ball dimension must be at least 1");
  if (coeffs.empty()) throw InvalidArgument("kernel needs at least one coefficient");
  if (coeffs[0] != 1.0) throw InvalidArgument("kernel coefficient c_0 must equal 1");
  for (double c : coeffs)
    if (!(c > 0.0) || !std::isfinite(c))
      throw InvalidArgument("kernel coefficients must be positive and finite");
  KernelFamily k;
  k.n_ = n;
  k.coeffs_ = std::move(coeffs);
  return k;
}

BallPoint::BallPoint(Vector w) : w_(std::move(w)) {
  if (w_.size() == 0) throw InvalidArgument("ball point needs at least one coordinate");
  if (!(w_.squaredNorm() < 1.0)) throw InvalidArgument("point must lie in the open unit ball");
}

BallPoint::BallPoint(std::initializer_list<Complex> w)
    : BallPoint(Vector(Eigen::Map<const Vector>(w.begin(), static_cast<Eigen::Index>(w.size())))) {}

TruncatedSpace::TruncatedSpace(KernelFamily kernel, int degree_cap, int coeff_dim)
    : kernel_(std::move(kernel)), coeff_dim_(coeff_dim) {
  if (degree_cap < 0) throw InvalidArgument("degree cap must be non-negative");
  if (coeff_dim < 1) throw InvalidArgument("coefficient dimension must be at least 1");
  if (kernel_.max_order() < degree_cap)
    throw InvalidArgument("kernel has " + std::to_string(kernel_.max_order() + 1) +
                          " coefficients; degree cap " + std::to_string(degree_cap) +
                          " needs more");
  basis_ = MultiIndexSet(kernel_.arity(), degree_cap);
  sq_norms_.reserve(basis_.size());
  for (std::size_t p = 0; p < basis_.size(); ++p)
    sq_norms_.push_back(1.0 / (kernel_.coeffs()[basis_[p].degree()] * basis_.gamma_at(p)));
}

Vector TruncatedSpace::to_orthonormal(const Vector& f) const {
  if (f.size() != dim()) throw InvalidArgument("vector length does not match space");
  Vector r(f.size());
  for (std::size_t p = 0; p < basis_.size(); ++p)
    r.segment(offset(p), coeff_dim_) = std::sqrt(sq_norms_[p]) * f.segment(offset(p), coeff_dim_);
  return r;
}

Vector TruncatedSpace::to_monomial(const Vector& f) const {
  if (f.size() != dim()) throw InvalidArgument("vector length does not match space");
  Vector r(f.size());
  for (std::size_t p = 0; p < basis_.size(); ++p)
    r.segment(offset(p), coeff_dim_) = f.segment(offset(p), coeff_dim_) / std::sqrt(sq_norms_[p]);
  return r;
}

double TruncatedSpace::shift_weight(std::size_t pos, int i) const {
  auto up = basis_.raised(pos, i);
  if (!up) return 0.0;
  return std::sqrt(sq_norms_[*up] / sq_norms_[pos]);
}

TruncatedSpace make_space(int n, double lambda, int degree_cap, int coeff_dim) {
  if (degree_cap < 0) throw InvalidArgument("degree cap must be non-negative");
  return TruncatedSpace(KernelFamily::power(n, lambda, degree_cap), degree_cap, coeff_dim);
}

Vector kernel_vector(const TruncatedSpace& space, const BallPoint& w, const Vector& zeta) {
  if (w.arity() != space.arity()) throw InvalidArgument("point dimension does not match space");
  if (zeta.size() != space.coeff_dim())
    throw InvalidArgument("coefficient vector length does not match space");
  const auto& basis = space.basis();
  const auto& c = space.kernel().coeffs();
  Vector r(space.dim());
  for (std::size_t p = 0; p < basis.size(); ++p) {
    const Complex weight = c[basis[p].degree()] * basis.gamma_at(p) * basis[p].conj_monomial(w.coords());
    r.segment(space.offset(p), space.coeff_dim()) = weight * zeta;
  }
  return r;
}

Complex inner_product(const TruncatedSpace& space, const Vector& f, const Vector& g) {
  if (f.size() != space.dim() || g.size() != space.dim())
    throw InvalidArgument("inner_product: vector length does not match space");
  Complex acc(0.0, 0.0);
  const int e = space.coeff_dim();
  for (std::size_t p = 0; p < space.basis().size(); ++p)
    acc += space.sq_norm(p) * g.segment(space.offset(p), e).dot(f.segment(space.offset(p), e));
  return acc;
}

Vector evaluate(const TruncatedSpace& space, const Vector& f, const BallPoint& w) {
  if (f.size() != space.dim()) throw InvalidArgument("evaluate: vector length does not match space");
  if (w.arity() != space.arity()) throw InvalidArgument("point dimension does not match space");
  Vector r = Vector::Zero(space.coeff_dim());
  for (std::size_t p = 0; p < space.basis().size(); ++p)
    r += space.basis()[p].monomial(w.coords()) * f.segment(space.offset(p), space.coeff_dim());
  return r;
}

OperatorTuple shift_tuple(const TruncatedSpace& space) {
  const Eigen::Index d = space.dim();
  const int e = space.coeff_dim();
  std::vector<Matrix> shifts;
  for (int i = 0; i < space.arity(); ++i) {
    Matrix s = Matrix::Zero(d, d);
    for (std::size_t p = 0; p < space.basis().size(); ++p) {
      auto up = space.basis().raised(p, i);
      if (!up) continue;
      const double wgt = space.shift_weight(p, i);
      for (int j = 0; j < e; ++j) s(space.offset(*up) + j, space.offset(p) + j) = wgt;
    }
    shifts.push_back(std::move(s));
  }
  return OperatorTuple(std::move(shifts));
}

Matrix shift_left(const TruncatedSpace& space, int i, const Matrix& z) {
  if (z.rows() != space.dim()) throw InvalidArgument("shift_left: row count does not match space");
  const int e = space.coeff_dim();
  Matrix r = Matrix::Zero(z.rows(), z.cols());
  for (std::size_t p = 0; p < space.basis().size(); ++p) {
    auto up = space.basis().raised(p, i);
    if (!up) continue;
    r.middleRows(space.offset(*up), e) = space.shift_weight(p, i) * z.middleRows(space.offset(p), e);
  }
  return r;
}

Matrix shift_right(const TruncatedSpace& space, const Matrix& z, int i) {
  if (z.cols() != space.dim()) throw InvalidArgument("shift_right: column count does not match space");
  const int e = space.coeff_dim();
  Matrix r = Matrix::Zero(z.rows(), z.cols());
  for (std::size_t p = 0; p < space.basis().size(); ++p) {
    auto up = space.basis().raised(p, i);
    if (!up) continue;
    r.middleCols(space.offset(p), e) = space.shift_weight(p, i) * z.middleCols(space.offset(*up), e);
  }
  return r;
}

}  // namespace ballkit
