#include "doctest.h"
#include "oracles.hpp"

#include <ballkit/ballspace.hpp>
#include <ballkit/invariant.hpp>
#include <ballkit/multiplier.hpp>

#include <algorithm>
#include <random>

using namespace ballkit;

namespace {

Subspace ideal(const TruncatedSpace& sp, const std::vector<MultiIndex>& gens) {
  return monomial_subspace(sp, ideal_monomials(sp, gens));
}

Matrix span_projector(const Matrix& cols) {
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(cols);
  return cols * cod.pseudoInverse();
}

// Matrix of f |-> P_N(Theta f) between orthonormal coordinates, assembled from the Taylor blocks
// with norms taken from the series oracle.
Matrix convolution_matrix(int n, double src_lambda, double tgt_lambda, int cap,
                          const std::vector<MultiIndex>& basis, const std::vector<Matrix>& blocks) {
  const auto rows = blocks[0].rows();
  const auto cols = blocks[0].cols();
  auto nu = [&](double lambda, const MultiIndex& k) {
    return 1.0 / (oracle::series_coefficient(lambda, k.degree()) * oracle::multinomial(k.entries()));
  };
  auto pos = [&](const MultiIndex& k) {
    return static_cast<Eigen::Index>(std::find(basis.begin(), basis.end(), k) - basis.begin());
  };
  Matrix m = Matrix::Zero(basis.size() * rows, basis.size() * cols);
  for (const auto& k : basis)
    for (std::size_t l = 0; l < basis.size(); ++l) {
      MultiIndex kl = k + basis[l];
      if (kl.degree() > cap) continue;
      double scale = std::sqrt(nu(tgt_lambda, kl) / nu(src_lambda, k));
      m.block(pos(kl) * rows, pos(k) * cols, rows, cols) += scale * blocks[l];
    }
  (void)n;
  return m;
}

}  // namespace

TEST_CASE("analytic spaces") {
  auto da = verify_analytic(make_space(2, 1.0, 4, 1));
  CHECK(da.pass());
  CHECK(da.purity.iterations == 5);
  CHECK(da.purity.residual_norms.back() == 0.0);

  CHECK(verify_analytic(make_space(2, 3.0, 4, 1)).pass());
  CHECK(verify_analytic(make_space(2, 2.0, 4, 2)).pass());
  CHECK(verify_analytic(make_space(3, 4.5, 3, 1)).pass());

  TruncatedSpace bad(KernelFamily::from_coefficients(2, {1.0, 0.5, 0.5, 0.5}), 3, 1);
  auto rep = verify_analytic(bad);
  CHECK_FALSE(rep.pass());
  CHECK_FALSE(rep.row_contractive());
  CHECK(rep.min_defect_eigenvalue < -0.5);
}

TEST_CASE("joint eigenspace") {
  CHECK(joint_eigenspace_dim(make_space(1, 1.0, 4, 1), BallPoint{0.0}) == 1);

  auto sp = make_space(2, 1.0, 4, 1);
  BallPoint w{0.3, 0.2};
  auto je = joint_eigenspace(sp, w);
  REQUIRE(je.dim == 1);
  Vector k = sp.to_orthonormal(kernel_vector(sp, w, Vector::Ones(1)));
  Vector b = je.basis.col(0);
  // b is parallel to K_N(., w)
  CHECK((k - b * b.dot(k)).norm() <= 1e-12 * k.norm());

  CHECK(joint_eigenspace_dim(make_space(2, 1.0, 4, 2), w) == 2);

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    BallPoint pt(oracle::random_point(3, 0.8, rng));
    CHECK(joint_eigenspace_dim(make_space(3, 1.0, 3, 2), pt) == 2);
  }
}

TEST_CASE("intertwining checks") {
  auto sp = make_space(2, 1.0, 3, 1);
  auto t = shift_tuple(sp);
  Matrix id = Matrix::Identity(sp.dim(), sp.dim());
  auto a = check_intertwining(id, sp, sp);
  CHECK(a.pass());
  CHECK(a.max_residual() == 0.0);
  CHECK(check_intertwining(t[0], sp, sp).pass());

  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  Matrix r(sp.dim(), sp.dim());
  for (Eigen::Index i = 0; i < r.rows(); ++i)
    for (Eigen::Index j = 0; j < r.cols(); ++j) r(i, j) = Complex(normal(rng), normal(rng));
  auto c = check_intertwining(r, sp, sp);
  double direct = spectral_norm(r * t[0] - t[0] * r);
  CHECK(c.residuals[0] == doctest::Approx(direct).epsilon(1e-12));
  CHECK(c.residuals[0] > 1e-3);
  CHECK_FALSE(c.pass());
  CHECK_THROWS_AS(extract_symbol(r, sp, sp, BallPoint{0.1, 0.1}), SymbolError);
}

TEST_CASE("symbols of the identity and a coordinate multiplier") {
  auto sp = make_space(2, 1.0, 4, 1);
  auto t = shift_tuple(sp);
  Matrix id = Matrix::Identity(sp.dim(), sp.dim());
  for (const auto& w : symbol_grid(2))
    CHECK(max_abs_entry(extract_symbol(id, sp, sp, w) - Matrix::Identity(1, 1)) <= 1e-12);

  BallPoint w{0.3, 0.2};
  auto theta = extract_symbol(t[0], sp, sp, w);
  CHECK(std::abs(theta(0, 0) - 0.3) <= 1e-12);

  auto ci = symbol_coefficients(id, sp, sp);
  CHECK(ci.degree() == 0);
  CHECK(std::abs(ci.blocks[0](0, 0) - 1.0) < 1e-15);

  auto cz = symbol_coefficients(t[0], sp, sp);
  CHECK(cz.degree() == 1);
  for (std::size_t p = 0; p < cz.blocks.size(); ++p) {
    double expected = cz.basis[p] == MultiIndex({1, 0}) ? 1.0 : 0.0;
    CHECK(std::abs(cz.blocks[p](0, 0) - expected) < 1e-14);
  }
}

TEST_CASE("symbol does not depend on the kernel scaling") {
  auto sp = make_space(2, 1.0, 4, 2);
  auto t = shift_tuple(sp);
  Matrix x = t[0] * t[1] + 0.5 * t[1] + Complex(0, 0.25) * Matrix::Identity(sp.dim(), sp.dim());
  for (const auto& w : symbol_grid(2)) {
    auto base = extract_symbol(x, sp, sp, w);
    for (Complex s : {Complex(2.5, 0.0), Complex(0.0, -3.0), Complex(1e-3, 1e-3)})
      CHECK(spectral_norm(extract_symbol(x, sp, sp, w, 1e-10, s) - base) <= 1e-10);
    // direct definition: Theta(w) = w1 w2 + 0.5 w2 + 0.25i
    Complex w1 = w.coords()(0), w2 = w.coords()(1);
    Matrix expected = (w1 * w2 + 0.5 * w2 + Complex(0, 0.25)) * Matrix::Identity(2, 2);
    CHECK(spectral_norm(base - expected) <= 1e-12);
  }
}

TEST_CASE("symbol grid") {
  auto grid = symbol_grid(2);
  CHECK(grid.size() == 25);
  for (const auto& w : grid) CHECK(w.coords().norm() <= 0.8 + 1e-15);
}

namespace {

void check_factor(double lambda, const std::vector<MultiIndex>& gens, double tol) {
  auto target = make_space(2, lambda, 4, 1);
  auto s = ideal(target, gens);
  auto mf = factor_to_multiplier(target, s);
  CHECK(mf.source.kernel().lambda() == 1.0);

  // the P_S reconstruction through an independent projector
  CHECK(spectral_norm(mf.m_theta * mf.m_theta.adjoint() - span_projector(s.frame())) <= tol);
  CHECK(mf.diagnostics.projection_residual <= tol);
  CHECK(mf.diagnostics.singular_value_gap <= tol);
  CHECK(mf.diagnostics.rank == s.dim());
  CHECK(mf.diagnostics.symbol_consistency_residual <= tol);
  CHECK(mf.diagnostics.multiplier_action_residual <= 1e-10);

  // M_Theta equals the truncated convolution by the extracted symbol, entry by entry
  Matrix conv = convolution_matrix(2, 1.0, lambda, 4, mf.symbol.basis.indices(), mf.symbol.blocks);
  CHECK(max_abs_entry(conv - mf.m_theta) <= 1e-10);

  for (const auto& w : symbol_grid(2))
    CHECK(spectral_norm(mf.symbol.evaluate(w) - extract_symbol(mf.m_theta, mf.source, mf.target, w)) <= tol);
  CHECK(mf.certified(tol));
}

}  // namespace

TEST_CASE("multiplier factorization on Drury-Arveson") {
  check_factor(1.0, {MultiIndex({1, 0})}, 1e-9);
}

TEST_CASE("multiplier factorization on Hardy and Bergman targets") {
  check_factor(2.0, {MultiIndex({1, 0})}, 1e-8);
  check_factor(3.0, {MultiIndex({1, 0}), MultiIndex({0, 1})}, 1e-8);
  check_factor(3.0, {MultiIndex({2, 0}), MultiIndex({1, 1}), MultiIndex({0, 2})}, 1e-8);
}

TEST_CASE("disc: inner multiplier for span z..z^N") {
  auto target = make_space(1, 1.0, 5, 1);
  std::vector<MultiIndex> mons;
  for (int m = 1; m <= 5; ++m) mons.push_back(MultiIndex({m}));
  auto s = monomial_subspace(target, mons);
  auto mf = factor_to_multiplier(target, s);
  CHECK(spectral_norm(mf.m_theta * mf.m_theta.adjoint() - span_projector(s.frame())) <= 1e-10);
  CHECK(mf.certified(1e-9));
  // Theta is a unimodular multiple of z
  CHECK(mf.symbol.degree() == 1);
  CHECK(std::abs(std::abs(mf.symbol.blocks[1](0, 0)) - 1.0) <= 1e-12);
}

TEST_CASE("factorization preconditions") {
  TruncatedSpace bad(KernelFamily::from_coefficients(2, {1.0, 0.5, 0.5, 0.5}), 3, 1);
  try {
    factor_to_multiplier(bad, Subspace::full(bad.dim()));
    FAIL("expected NotAnalytic");
  } catch (const NotAnalytic& e) {
    CHECK_FALSE(e.report().row_contractive());
  }

  auto target = make_space(2, 2.0, 3, 1);
  CHECK_THROWS_AS(factor_to_multiplier(target, monomial_subspace(target, {MultiIndex({0, 0})})),
                  NotInvariant);
}
