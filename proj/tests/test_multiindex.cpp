#include "doctest.h"
#include "oracles.hpp"

#include <ballkit/multiindex.hpp>

using namespace ballkit;

TEST_CASE("gamma matches the factorial formula") {
  CHECK(gamma(MultiIndex({0, 0})) == 1.0);
  CHECK(gamma(MultiIndex({1, 1})) == oracle::multinomial({1, 1}));
  CHECK(gamma(MultiIndex({2, 1})) == oracle::multinomial({2, 1}));
  CHECK(gamma(MultiIndex({2, 1})) == 3.0);

  for (const auto& k : enumerate_upto(3, 8))
    CHECK(gamma(k) == doctest::Approx(oracle::multinomial(k.entries())).epsilon(1e-15));
}

TEST_CASE("gamma is exact at the degree cap and refuses beyond it") {
  // 40! / (20! 20!) = C(40, 20)
  CHECK(gamma_exact(MultiIndex({20, 20})) == boost::multiprecision::cpp_int("137846528820"));
  CHECK_NOTHROW(gamma_exact(MultiIndex({kMaxExactDegree})));
  CHECK_THROWS_AS(gamma_exact(MultiIndex({kMaxExactDegree, 1})), DegreeLimitError);
}

TEST_CASE("Pascal recurrence") {
  for (int n = 1; n <= 4; ++n) {
    for (const auto& k : enumerate_upto(n, 9)) {
      if (k.degree() == 0) continue;
      double sum = 0.0;
      for (int i = 0; i < n; ++i)
        if (k[i] >= 1) sum += gamma(k.minus_unit(i));
      CHECK(gamma(k) == sum);
    }
  }
}

TEST_CASE("enumeration order") {
  auto one = enumerate_upto(1, 3);
  REQUIRE(one.size() == 4);
  for (int m = 0; m <= 3; ++m) CHECK(one[m] == MultiIndex({m}));

  auto two = enumerate_upto(2, 1);
  REQUIRE(two.size() == 3);
  CHECK(two[0] == MultiIndex({0, 0}));
  CHECK(two[1] == MultiIndex({1, 0}));
  CHECK(two[2] == MultiIndex({0, 1}));

  CHECK(enumerate_upto(2, 2).size() == oracle::count_indices(2, 2));
  CHECK(enumerate_upto(2, 2).size() == 6);
}

TEST_CASE("basis size is C(N+n, n)") {
  for (int n = 1; n <= 5; ++n)
    for (int cap = 0; cap <= 12; ++cap) {
      auto size = enumerate_upto(n, cap).size();
      CHECK(size == static_cast<std::size_t>(oracle::binomial(cap + n, n)));
      if (n <= 3) CHECK(size == oracle::count_indices(n, cap));
    }
}

TEST_CASE("ordering is a strict total order consistent with enumeration") {
  auto all = enumerate_upto(3, 5);
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = 0; b < all.size(); ++b) {
      CHECK((all[a] < all[b]) == (a < b));
      CHECK((all[a] == all[b]) == (a == b));
    }
}

TEST_CASE("position lookup inverts enumeration") {
  MultiIndexSet set(3, 6);
  for (std::size_t pos = 0; pos < set.size(); ++pos) {
    auto found = set.position(set[pos]);
    REQUIRE(found.has_value());
    CHECK(*found == pos);
    for (int i = 0; i < 3; ++i) {
      auto up = set.raised(pos, i);
      if (set[pos].degree() == 6) {
        CHECK_FALSE(up.has_value());
      } else {
        REQUIRE(up.has_value());
        CHECK(set[*up] == set[pos].plus_unit(i));
      }
    }
  }
  CHECK_FALSE(set.position(MultiIndex({7, 0, 0})).has_value());
}

TEST_CASE("degree slices partition the enumeration") {
  auto all = enumerate_upto(2, 4);
  std::size_t at = 0;
  for (int m = 0; m <= 4; ++m)
    for (const auto& k : enumerate_degree(2, m)) CHECK(k == all[at++]);
  CHECK(at == all.size());
}

TEST_CASE("monomials") {
  Eigen::VectorXcd w(2);
  w << oracle::Complex(0.5, 0.1), oracle::Complex(-0.2, 0.3);
  MultiIndex k({2, 1});
  auto expected = w(0) * w(0) * w(1);
  CHECK(std::abs(k.monomial(w) - expected) < 1e-15);
  CHECK(std::abs(k.conj_monomial(w) - std::conj(expected)) < 1e-15);
}

TEST_CASE("malformed indices") {
  CHECK_THROWS_AS(MultiIndex({1, -1}), InvalidArgument);
  CHECK_THROWS(MultiIndex({0, 0}).minus_unit(0));
}
