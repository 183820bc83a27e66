#include "ballkit/multiindex.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace ballkit {

namespace mp = boost::multiprecision;

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_)
    if (e < 0) throw InvalidArgument("multi-index entries must be non-negative");
  degree_ = std::accumulate(entries_.begin(), entries_.end(), 0);
}

MultiIndex MultiIndex::unit(int n, int i) {
  std::vector<int> e(n, 0);
  e.at(i) = 1;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::plus_unit(int i) const {
  MultiIndex r = *this;
  ++r.entries_.at(i);
  ++r.degree_;
  return r;
}

MultiIndex MultiIndex::minus_unit(int i) const {
  if (entries_.at(i) < 1) throw InvalidArgument("minus_unit on zero entry");
  MultiIndex r = *this;
  --r.entries_[i];
  --r.degree_;
  return r;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.arity() != arity()) throw InvalidArgument("multi-index arity mismatch");
  std::vector<int> e(entries_);
  for (int i = 0; i < arity(); ++i) e[i] += other.entries_[i];
  return MultiIndex(std::move(e));
}

Complex MultiIndex::monomial(const Vector& w) const {
  Complex r(1.0, 0.0);
  for (int i = 0; i < arity(); ++i)
    for (int p = 0; p < entries_[i]; ++p) r *= w(i);
  return r;
}

Complex MultiIndex::conj_monomial(const Vector& w) const { return std::conj(monomial(w)); }

bool operator<(const MultiIndex& a, const MultiIndex& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return std::lexicographical_compare(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                                      b.entries_.end(), std::greater<int>());
}

mp::cpp_int binomial_exact(int a, int b) {
  if (b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  mp::cpp_int r = 1;
  for (int j = 1; j <= b; ++j) r = r * (a - b + j) / j;
  return r;
}

mp::cpp_int gamma_exact(const MultiIndex& k) {
  if (k.degree() > kMaxExactDegree)
    throw DegreeLimitError("multinomial coefficient requested at degree " +
                           std::to_string(k.degree()) + " > " + std::to_string(kMaxExactDegree));
  // Product of binomials C(k_1 + ... + k_i, k_i).
  mp::cpp_int r = 1;
  int partial = 0;
  for (int e : k.entries()) {
    partial += e;
    r *= binomial_exact(partial, e);
  }
  return r;
}

double gamma(const MultiIndex& k) { return gamma_exact(k).convert_to<double>(); }

namespace {

void fill_degree(int n, int slot, int remaining, std::vector<int>& current,
                 std::vector<MultiIndex>& out) {
  if (slot == n - 1) {
    current[slot] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[slot] = e;
    fill_degree(n, slot + 1, remaining - e, current, out);
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_degree(int n, int degree) {
  if (n < 1) throw InvalidArgument("arity must be at least 1");
  if (degree < 0) return {};
  std::vector<MultiIndex> out;
  std::vector<int> current(n, 0);
  fill_degree(n, 0, degree, current, out);
  return out;
}

std::vector<MultiIndex> enumerate_upto(int n, int max_degree) {
  if (n < 1) throw InvalidArgument("arity must be at least 1");
  if (max_degree < 0) throw InvalidArgument("degree cap must be non-negative");
  std::vector<MultiIndex> out;
  for (int m = 0; m <= max_degree; ++m) {
    auto band = enumerate_degree(n, m);
    out.insert(out.end(), band.begin(), band.end());
  }
  return out;
}

MultiIndexSet::MultiIndexSet(int n, int max_degree)
    : n_(n), max_degree_(max_degree), indices_(enumerate_upto(n, max_degree)) {
  gammas_.reserve(indices_.size());
  for (std::size_t p = 0; p < indices_.size(); ++p) {
    gammas_.push_back(gamma(indices_[p]));
    lookup_.emplace(indices_[p].entries(), p);
  }
  raised_.assign(indices_.size(), std::vector<std::optional<std::size_t>>(n_));
  for (std::size_t p = 0; p < indices_.size(); ++p)
    for (int i = 0; i < n_; ++i)
      if (indices_[p].degree() < max_degree_) raised_[p][i] = position(indices_[p].plus_unit(i));
}

std::optional<std::size_t> MultiIndexSet::position(const MultiIndex& k) const {
  auto it = lookup_.find(k.entries());
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

}  // namespace ballkit
