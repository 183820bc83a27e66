#include "ballkit/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace ballkit {

RealVector singular_values(const Matrix& m) {
  if (m.size() == 0) return RealVector();
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues();
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

int numerical_rank(const Matrix& m, double rel_tol) {
  RealVector s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cut = rel_tol * s(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++rank;
  return rank;
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

double min_hermitian_eigenvalue(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_abs_entry(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

}  // namespace ballkit
