#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ballkit/linalg.hpp"

namespace ballkit {

// Exponent tuple k = (k_1, ..., k_n) with non-negative entries.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);

  static MultiIndex zero(int n) { return MultiIndex(std::vector<int>(n, 0)); }
  static MultiIndex unit(int n, int i);

  int arity() const { return static_cast<int>(entries_.size()); }
  int degree() const { return degree_; }
  int operator[](int i) const { return entries_[i]; }
  const std::vector<int>& entries() const { return entries_; }

  MultiIndex plus_unit(int i) const;
  // k - e_i; requires k_i >= 1.
  MultiIndex minus_unit(int i) const;
  MultiIndex operator+(const MultiIndex& other) const;

  // w^k = prod_i w_i^{k_i}.
  Complex monomial(const Vector& w) const;
  Complex conj_monomial(const Vector& w) const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  // Graded order: degree ascending, then k_1 descending, then k_2 descending...
  friend bool operator<(const MultiIndex& a, const MultiIndex& b);

 private:
  std::vector<int> entries_;
  int degree_ = 0;
};

class DegreeLimitError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

inline constexpr int kMaxExactDegree = 40;

// gamma_k = |k|! / (k_1! ... k_n!), exact. Throws DegreeLimitError above degree 40.
boost::multiprecision::cpp_int gamma_exact(const MultiIndex& k);
double gamma(const MultiIndex& k);

// Binomial coefficient C(a, b) as an exact integer.
boost::multiprecision::cpp_int binomial_exact(int a, int b);

// All k in N^n with |k| <= max_degree in graded order.
std::vector<MultiIndex> enumerate_upto(int n, int max_degree);
// All k with |k| == degree in graded order.
std::vector<MultiIndex> enumerate_degree(int n, int degree);

// Enumerated basis with position lookup and cached gamma values.
class MultiIndexSet {
 public:
  MultiIndexSet() = default;
  MultiIndexSet(int n, int max_degree);

  int arity() const { return n_; }
  int max_degree() const { return max_degree_; }
  std::size_t size() const { return indices_.size(); }
  const MultiIndex& operator[](std::size_t pos) const { return indices_[pos]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  double gamma_at(std::size_t pos) const { return gammas_[pos]; }

  std::optional<std::size_t> position(const MultiIndex& k) const;
  // Position of k + e_i, or nullopt when that exceeds the degree cap.
  std::optional<std::size_t> raised(std::size_t pos, int i) const { return raised_[pos][i]; }

 private:
  int n_ = 0;
  int max_degree_ = -1;
  std::vector<MultiIndex> indices_;
  std::vector<double> gammas_;
  std::map<std::vector<int>, std::size_t> lookup_;
  std::vector<std::vector<std::optional<std::size_t>>> raised_;
};

}  // namespace ballkit
