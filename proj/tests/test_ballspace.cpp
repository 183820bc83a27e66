#include "doctest.h"
#include "oracles.hpp"

#include <ballkit/ballspace.hpp>

#include <random>

using namespace ballkit;

namespace {

Vector unit_zeta(int dim, int j) {
  Vector z = Vector::Zero(dim);
  z(j) = 1.0;
  return z;
}

Vector random_vector(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v;
}

BallPoint boundary_point() { return BallPoint{1.0, 0.0}; }

}  // namespace

TEST_CASE("kernel coefficients follow the binomial series") {
  for (double c : kernel_coefficients(1.0, 10)) CHECK(c == 1.0);

  auto two = kernel_coefficients(2.0, 3);
  REQUIRE(two.size() == 4);
  for (int m = 0; m <= 3; ++m) CHECK(two[m] == doctest::Approx(m + 1.0));

  for (double lambda : {1.5, 3.0, 4.25}) {
    auto c = kernel_coefficients(lambda, 12);
    for (int m = 0; m <= 12; ++m)
      CHECK(c[m] == doctest::Approx(oracle::series_coefficient(lambda, m)).epsilon(1e-12));
  }

  CHECK_THROWS_WITH_AS(kernel_coefficients(0.5, 3), "lambda must be >= 1", InvalidArgument);
}

TEST_CASE("user coefficient sequences") {
  CHECK_THROWS_AS(KernelFamily::from_coefficients(2, {2.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(KernelFamily::from_coefficients(2, {1.0, 0.0}), InvalidArgument);
  auto k = KernelFamily::from_coefficients(2, {1.0, 0.5, 0.25});
  CHECK_FALSE(k.lambda().has_value());
  CHECK(k.max_order() == 2);
}

TEST_CASE("monomial norms") {
  auto trivial = make_space(2, 1.0, 0, 1);
  CHECK(trivial.dim() == 1);
  CHECK(trivial.sq_norm(0) == 1.0);

  auto da = make_space(2, 1.0, 2, 1);
  auto pos = da.basis().position(MultiIndex({1, 1}));
  REQUIRE(pos.has_value());
  CHECK(da.sq_norm(*pos) == doctest::Approx(1.0 / oracle::multinomial({1, 1})));
  CHECK(da.sq_norm(*pos) == doctest::Approx(0.5));

  auto hardy1 = make_space(1, 2.0, 2, 1);
  CHECK(hardy1.sq_norm(2) == doctest::Approx(1.0 / 3.0));

  auto bergman = make_space(2, 3.0, 4, 2);
  CHECK(bergman.dim() == 15 * 2);
  for (std::size_t p = 0; p < bergman.basis().size(); ++p) {
    const auto& k = bergman.basis()[p];
    double expected = 1.0 / (oracle::series_coefficient(3.0, k.degree()) * oracle::multinomial(k.entries()));
    CHECK(bergman.sq_norm(p) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("kernel vectors") {
  auto space = make_space(2, 2.0, 3, 2);
  Vector zeta(2);
  zeta << 1.0, Complex(0.0, 2.0);
  auto at_zero = kernel_vector(space, BallPoint{0.0, 0.0}, zeta);
  CHECK(at_zero.head(2).isApprox(zeta));
  CHECK(at_zero.tail(space.dim() - 2).norm() == 0.0);

  auto disc = make_space(1, 1.0, 2, 1);
  auto kv = kernel_vector(disc, BallPoint{0.5}, unit_zeta(1, 0));
  REQUIRE(kv.size() == 3);
  CHECK(std::abs(kv(0) - 1.0) < 1e-15);
  CHECK(std::abs(kv(1) - 0.5) < 1e-15);
  CHECK(std::abs(kv(2) - 0.25) < 1e-15);

  CHECK_THROWS_AS(boundary_point(), InvalidArgument);
}

TEST_CASE("Gram of kernel vectors is the truncated kernel") {
  std::mt19937_64 rng(7);
  for (double lambda : {1.0, 2.0, 3.0, 3.5}) {
    auto space = make_space(2, lambda, 5, 1);
    for (int trial = 0; trial < 5; ++trial) {
      BallPoint v(oracle::random_point(2, 0.9, rng));
      BallPoint w(oracle::random_point(2, 0.9, rng));
      auto kv = kernel_vector(space, v, unit_zeta(1, 0));
      auto kw = kernel_vector(space, w, unit_zeta(1, 0));
      // <K_w, K_v> = K_N(v, w) = sum c_m <v, w>^m
      Complex s = w.coords().dot(v.coords());  // sum v_i conj(w_i)
      auto expected = oracle::truncated_kernel(lambda, 5, s);
      CHECK(std::abs(inner_product(space, kw, kv) - expected) < 1e-12);
    }
  }
}

TEST_CASE("inner product and reproducing property") {
  auto space = make_space(2, 1.0, 2, 1);
  Vector f = Vector::Zero(space.dim());
  f(*space.basis().position(MultiIndex({2, 0}))) = 1.0;  // z_1^2
  BallPoint w{0.5, 0.0};
  auto ip = inner_product(space, f, kernel_vector(space, w, unit_zeta(1, 0)));
  CHECK(std::abs(ip - 0.25) < 1e-15);

  std::mt19937_64 rng(11);
  for (double lambda : {1.0, 2.0, 3.0}) {
    auto sp = make_space(2, lambda, 4, 2);
    for (int trial = 0; trial < 20; ++trial) {
      Vector g = random_vector(sp.dim(), rng);
      BallPoint pt(oracle::random_point(2, 0.95, rng));
      Vector zeta = random_vector(2, rng);
      // direct polynomial evaluation
      Vector value = Vector::Zero(2);
      for (std::size_t p = 0; p < sp.basis().size(); ++p) {
        Complex mono = 1.0;
        for (int i = 0; i < 2; ++i) mono *= std::pow(pt.coords()(i), sp.basis()[p][i]);
        value += mono * g.segment(sp.offset(p), 2);
      }
      CHECK((evaluate(sp, g, pt) - value).norm() < 1e-12);
      auto lhs = inner_product(sp, g, kernel_vector(sp, pt, zeta));
      CHECK(std::abs(lhs - zeta.dot(value)) < 1e-10);
    }
  }
}

TEST_CASE("coordinate conversions are inverse and isometric") {
  std::mt19937_64 rng(5);
  auto sp = make_space(3, 2.5, 3, 2);
  Vector f = random_vector(sp.dim(), rng);
  CHECK((sp.to_monomial(sp.to_orthonormal(f)) - f).norm() < 1e-12);
  CHECK(std::abs(sp.to_orthonormal(f).squaredNorm() - inner_product(sp, f, f).real()) < 1e-12);
}

TEST_CASE("shift tuple on the disc is the truncated unilateral shift") {
  auto sp = make_space(1, 1.0, 3, 1);
  auto t = shift_tuple(sp);
  Matrix expected = Matrix::Zero(4, 4);
  for (int r = 1; r < 4; ++r) expected(r, r - 1) = 1.0;
  CHECK(t[0] == expected);
}

TEST_CASE("shift weights match the Gram oracle for general lambda") {
  // ||z_i z^k|| / ||z^k|| from norms computed with the series oracle
  auto sp = make_space(2, 3.0, 4, 1);
  auto t = shift_tuple(sp);
  for (std::size_t p = 0; p < sp.basis().size(); ++p) {
    const auto& k = sp.basis()[p];
    for (int i = 0; i < 2; ++i) {
      auto up = sp.basis().raised(p, i);
      if (!up) continue;
      auto ki = k.plus_unit(i);
      double nu_k = 1.0 / (oracle::series_coefficient(3.0, k.degree()) * oracle::multinomial(k.entries()));
      double nu_ki = 1.0 / (oracle::series_coefficient(3.0, ki.degree()) * oracle::multinomial(ki.entries()));
      CHECK(t[i](*up, p).real() == doctest::Approx(std::sqrt(nu_ki / nu_k)).epsilon(1e-13));
    }
  }
}

TEST_CASE("shift tuple properties") {
  for (double lambda : {1.0, 1.5, 2.0, 3.0, 5.0}) {
    for (int n = 1; n <= 3; ++n) {
      const int cap = 4;
      auto sp = make_space(n, lambda, cap, 2);
      auto t = shift_tuple(sp);
      Matrix gram = t.row_gram();
      CHECK(min_hermitian_eigenvalue(Matrix::Identity(sp.dim(), sp.dim()) - gram) >= -1e-12);
      for (int i = 0; i < n; ++i)
        // the two paths k -> k + e_i + e_j multiply the same weights in a different order
        for (int j = 0; j < n; ++j) CHECK(max_abs_entry(t[i] * t[j] - t[j] * t[i]) <= 1e-15);

      // every product of cap+1 shifts vanishes; walk all words by a counter
      std::vector<int> word(cap + 1, 0);
      while (true) {
        Matrix prod = Matrix::Identity(sp.dim(), sp.dim());
        for (int i : word) prod = t[i] * prod;
        CHECK(max_abs_entry(prod) == 0.0);
        std::size_t pos = 0;
        while (pos < word.size() && ++word[pos] == n) word[pos++] = 0;
        if (pos == word.size()) break;
      }

      for (int i = 0; i < n; ++i) {
        Matrix z = Matrix::Random(sp.dim(), 3);
        CHECK(max_abs_entry(shift_left(sp, i, z) - t[i] * z) < 1e-14);
        Matrix y = Matrix::Random(3, sp.dim());
        CHECK(max_abs_entry(shift_right(sp, y, i) - y * t[i]) < 1e-14);
      }
    }
  }
}

TEST_CASE("Drury-Arveson defect is the projection onto constants") {
  for (int n = 1; n <= 3; ++n) {
    auto sp = make_space(n, 1.0, 5, 2);
    auto t = shift_tuple(sp);
    Matrix defect = Matrix::Identity(sp.dim(), sp.dim()) - t.row_gram();
    Matrix constants = Matrix::Zero(sp.dim(), sp.dim());
    constants.topLeftCorner(2, 2).setIdentity();
    CHECK(max_abs_entry(defect - constants) <= 1e-14);
  }
}

TEST_CASE("a large first coefficient breaks row contraction") {
  // c_1 = 0.5 gives ||z_i||^2 = 2 > 1
  auto k = KernelFamily::from_coefficients(2, {1.0, 0.5, 0.5, 0.5});
  TruncatedSpace sp(k, 3, 1);
  auto t = shift_tuple(sp);
  CHECK(min_hermitian_eigenvalue(Matrix::Identity(sp.dim(), sp.dim()) - t.row_gram()) < -0.5);
}
