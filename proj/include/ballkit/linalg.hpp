#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ballkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed parameters, shapes, or documents. The CLI maps these to exit 2.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A numerical precondition failed; carries the offending residual.
class PreconditionFailure : public Error {
 public:
  PreconditionFailure(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Largest singular value; 0 for empty matrices.
double spectral_norm(const Matrix& m);

// Singular values in descending order.
RealVector singular_values(const Matrix& m);

// Number of singular values above rel_tol * largest singular value.
int numerical_rank(const Matrix& m, double rel_tol);

// Smallest eigenvalue of the Hermitian part of m.
double min_hermitian_eigenvalue(const Matrix& m);

// Largest absolute entry of m; 0 for empty matrices.
double max_abs_entry(const Matrix& m);

Matrix hermitian_part(const Matrix& m);

}  // namespace ballkit
