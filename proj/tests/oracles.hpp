#pragma once

// Test-only reference computations. None of these go through the library's own code paths.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;

inline long double factorial(int m) {
  long double r = 1.0L;
  for (int j = 2; j <= m; ++j) r *= j;
  return r;
}

// |k|! / prod k_i! by direct factorials.
inline double multinomial(const std::vector<int>& k) {
  int total = 0;
  long double denom = 1.0L;
  for (int e : k) {
    total += e;
    denom *= factorial(e);
  }
  return static_cast<double>(factorial(total) / denom);
}

// Number of k in [0, cap]^n with |k| <= cap, by visiting the whole cube.
inline std::size_t count_indices(int n, int cap) {
  std::vector<int> k(n, 0);
  std::size_t count = 0;
  while (true) {
    int deg = 0;
    for (int e : k) deg += e;
    if (deg <= cap) ++count;
    int i = 0;
    while (i < n && ++k[i] > cap) k[i++] = 0;
    if (i == n) break;
  }
  return count;
}

inline double binomial(int a, int b) {
  return static_cast<double>(factorial(a) / (factorial(b) * factorial(a - b)));
}

// Taylor coefficient of (1 - t)^{-lambda} through the Gamma function.
inline double series_coefficient(double lambda, int m) {
  return std::exp(std::lgamma(lambda + m) - std::lgamma(lambda) - std::lgamma(m + 1.0));
}

// sum_{m <= cap} c_m s^m: the truncated kernel K_N(v, w) with s = <v, w>.
inline Complex truncated_kernel(double lambda, int cap, Complex s) {
  Complex acc = 0.0, pw = 1.0;
  for (int m = 0; m <= cap; ++m) {
    acc += series_coefficient(lambda, m) * pw;
    pw *= s;
  }
  return acc;
}

// Commuting contractive tuple U diag(lambda_i) U^* with sum_i |lambda_ij|^2 <= radius^2.
inline std::vector<Eigen::MatrixXcd> normal_tuple(int n, int d, double radius, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.0, radius);
  Eigen::MatrixXcd g(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) g(r, c) = Complex(normal(rng), normal(rng));
  Eigen::MatrixXcd u = Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
  std::vector<Eigen::VectorXcd> diag(n, Eigen::VectorXcd(d));
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(normal(rng), normal(rng));
    v *= unif(rng) / v.norm();
    for (int i = 0; i < n; ++i) diag[i](j) = v(i);
  }
  std::vector<Eigen::MatrixXcd> out;
  for (int i = 0; i < n; ++i) out.push_back(u * diag[i].asDiagonal() * u.adjoint());
  return out;
}

inline Eigen::VectorXcd random_point(int n, double radius, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::VectorXcd w(n);
  for (int i = 0; i < n; ++i) w(i) = Complex(normal(rng), normal(rng));
  return (radius * unif(rng) / w.norm()) * w;
}

}  // namespace oracle
