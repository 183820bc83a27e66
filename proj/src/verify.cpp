#include "ballkit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include <Eigen/QR>

namespace ballkit {

namespace {

class Recorder {
 public:
  explicit Recorder(VerificationReport& rep) : rep_(rep) {}

  void at_most(const std::string& crit, const std::string& name, double measured, double threshold) {
    add(crit, name, measured, threshold, Relation::at_most, measured <= threshold);
  }
  void at_least(const std::string& crit, const std::string& name, double measured, double threshold) {
    add(crit, name, measured, threshold, Relation::at_least, measured >= threshold);
  }
  void equal(const std::string& crit, const std::string& name, double measured, double expected) {
    add(crit, name, measured, expected, Relation::equal, measured == expected);
  }

 private:
  void add(const std::string& crit, const std::string& name, double measured, double threshold,
           Relation rel, bool pass) {
    // Non-finite measurements always fail and are recorded as a sentinel so reports stay JSON.
    if (!std::isfinite(measured)) {
      measured = 1e300;
      pass = false;
    }
    rep_.checks.push_back(CheckResult{crit, name, measured, threshold, rel, pass});
  }

  VerificationReport& rep_;
};

std::string tag(int n, int cap, int e) {
  return "n=" + std::to_string(n) + " N=" + std::to_string(cap) + " E=" + std::to_string(e);
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

Matrix random_unitary(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix g(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) g(r, c) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ();
}

// T_i = U diag(lambda_i) U^* with sum_i |lambda_ij|^2 <= radius_j^2 < 1.
OperatorTuple random_normal_tuple(int n, Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.0, 0.95);
  const Matrix u = random_unitary(d, rng);
  std::vector<Vector> diag(n, Vector(d));
  for (Eigen::Index j = 0; j < d; ++j) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(normal(rng), normal(rng));
    v *= unif(rng) / v.norm();
    for (int i = 0; i < n; ++i) diag[i](j) = v(i);
  }
  std::vector<Matrix> ms;
  for (int i = 0; i < n; ++i) ms.push_back(u * diag[i].asDiagonal() * u.adjoint());
  return OperatorTuple(std::move(ms));
}

// Polynomials in one random matrix, rescaled to a strict row contraction.
OperatorTuple random_polynomial_tuple(int n, Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix a(d, d);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index c = 0; c < d; ++c) a(r, c) = Complex(normal(rng), normal(rng));
  a /= spectral_norm(a);
  std::vector<Matrix> ms;
  Matrix power = a;
  for (int i = 0; i < n; ++i) {
    const Complex c0(normal(rng), normal(rng));
    ms.push_back(power + 0.2 * c0 * Matrix::Identity(d, d));
    power = power * a;
  }
  Matrix g = Matrix::Zero(d, d);
  for (const auto& m : ms) g += m * m.adjoint();
  const double scale = 0.95 / std::sqrt(spectral_norm(g));
  for (auto& m : ms) m *= scale;
  return OperatorTuple(std::move(ms));
}

Vector random_ball_point(int n, double max_radius, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector w(n);
  for (int i = 0; i < n; ++i) w(i) = Complex(normal(rng), normal(rng));
  return (max_radius * unif(rng) / w.norm()) * w;
}

Vector random_vector(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v;
}

void suite_spaces(Recorder& rec, std::mt19937_64& rng) {
  const std::string c = "AC6";
  for (double lambda : {1.0, 2.0, 3.0}) {
    double worst = 0.0;
    std::uniform_int_distribution<int> pick_n(1, 3), pick_e(1, 2);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = pick_n(rng);
      const int e = pick_e(rng);
      const auto space = make_space(n, lambda, 6, e);
      const Vector f = random_vector(space.dim(), rng);
      const BallPoint w(random_ball_point(n, 0.9, rng));
      const Vector zeta = random_vector(e, rng);
      const Complex lhs = inner_product(space, f, kernel_vector(space, w, zeta));
      const Complex rhs = zeta.dot(evaluate(space, f, w));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    rec.at_most(c, "reproducing property lambda=" + std::to_string(static_cast<int>(lambda)), worst, 1e-10);
  }

  for (double lambda : {1.0, 2.0, 3.0}) {
    const auto space = make_space(2, lambda, 4, 1);
    const Eigen::Index d = space.dim();
    double off = 0.0;
    for (Eigen::Index p = 0; p < d; ++p)
      for (Eigen::Index q = 0; q < d; ++q) {
        const Complex g = inner_product(space, Vector::Unit(d, p), Vector::Unit(d, q));
        const double expected = p == q ? space.sq_norm(static_cast<std::size_t>(p)) : 0.0;
        off = std::max(off, std::abs(g - expected));
      }
    rec.equal(c, "monomial Gram diagonal lambda=" + std::to_string(static_cast<int>(lambda)), off, 0.0);
  }

  for (int n = 1; n <= 3; ++n)
    for (int e = 1; e <= 2; ++e) {
      const auto space = make_space(n, 1.0, 4, e);
      const auto t = shift_tuple(space);
      Matrix proj = Matrix::Zero(space.dim(), space.dim());
      for (int j = 0; j < e; ++j) proj(j, j) = 1.0;
      const Matrix residual = Matrix::Identity(space.dim(), space.dim()) - t.row_gram() - proj;
      rec.at_most(c, "defect identity " + tag(n, 4, e), max_abs_entry(residual), 1e-14);
    }

  for (double lambda : {1.0, 2.0, 3.0})
    for (int e = 1; e <= 2; ++e) {
      const auto space = make_space(2, lambda, 4, e);
      double worst = 0.0;
      for (int s = 0; s < 20; ++s) {
        const BallPoint w(random_ball_point(2, 0.8, rng));
        worst = std::max(worst, std::abs(static_cast<double>(joint_eigenspace_dim(space, w) - e)));
      }
      rec.equal(c, "joint eigenspace dim lambda=" + std::to_string(static_cast<int>(lambda)) +
                       " E=" + std::to_string(e),
                worst, 0.0);
    }
}

void suite_cp(Recorder& rec, std::mt19937_64& rng) {
  const std::string c = "AC5";
  std::uniform_int_distribution<int> pick_n(1, 3), pick_d(1, 10);
  double agree = 0.0;
  double mono = 0.0;
  for (int trial = 0; trial < 12; ++trial) {
    const int n = pick_n(rng);
    const int d = pick_d(rng);
    const OperatorTuple t =
        trial % 2 == 0 ? random_normal_tuple(n, d, rng) : random_polynomial_tuple(n, d, rng);
    Matrix iterated = Matrix::Identity(d, d);
    for (int m = 0; m <= 6; ++m) {
      agree = std::max(agree, spectral_norm(cp_power_multinomial(t, m) - iterated));
      const Matrix next = cp_apply(t, iterated);
      mono = std::min(mono, min_hermitian_eigenvalue(iterated - next));
      iterated = next;
    }
  }
  rec.at_most(c, "multinomial CP power vs iteration", agree, 1e-10);
  rec.at_least(c, "monotone chain min eigenvalue", mono, -1e-12);

  for (const auto& [n, cap] : std::vector<std::pair<int, int>>{{1, 5}, {2, 4}, {3, 3}}) {
    const auto t = shift_tuple(make_space(n, 1.0, cap, 1));
    rec.at_most(c, "nilpotent P^{N+1}(I) " + tag(n, cap, 1),
                spectral_norm(cp_power_multinomial(t, cap + 1)), 1e-12);
    const auto rep = purity_report(t);
    rec.equal(c, "nilpotent purity iteration " + tag(n, cap, 1),
              rep.is_pure() ? rep.iterations : -1, cap + 1);
  }

  const OperatorTuple identity(std::vector<Matrix>{Matrix::Identity(1, 1)});
  rec.equal(c, "unitary T=I reported not pure",
            purity_report(identity).verdict == PurityVerdict::not_pure ? 1.0 : 0.0, 1.0);
  const Matrix u = random_unitary(3, rng);
  Vector p1(3), p2(3);
  for (int j = 0; j < 3; ++j) {
    p1(j) = std::polar(1.0 / std::sqrt(2.0), 0.7 * j);
    p2(j) = std::polar(1.0 / std::sqrt(2.0), 1.9 * j + 0.3);
  }
  const OperatorTuple spherical(std::vector<Matrix>{u * p1.asDiagonal() * u.adjoint(),
                                                    u * p2.asDiagonal() * u.adjoint()});
  rec.equal(c, "spherical unitary pair reported not pure",
            purity_report(spherical).verdict == PurityVerdict::not_pure ? 1.0 : 0.0, 1.0);
}

void suite_dilation(Recorder& rec, std::mt19937_64& rng, double tol) {
  const std::string c1 = "AC1";
  for (int n = 1; n <= 3; ++n)
    for (int cap : {3, 5})
      for (int e = 1; e <= 2; ++e) {
        const auto t = shift_tuple(make_space(n, 1.0, cap, e));
        DilationOptions opts;
        opts.tol = tol;
        const auto dm = build_dilation(t, cap, opts);
        const auto& dg = dm.diagnostics;
        const std::string tg = tag(n, cap, e);
        rec.at_most(c1, "co-isometry " + tg, dg.co_isometry_residual, 1e-9);
        rec.at_most(c1, "intertwining " + tg, max_of(dg.intertwining_residuals), 1e-9);
        rec.at_most(c1, "constant block " + tg, dg.constant_block_residual, 1e-10);
        rec.equal(c1, "minimality rank gap " + tg, dg.minimality_rank_gap, 0.0);
      }

  const std::string c2 = "AC2";
  std::uniform_int_distribution<int> pick_n(1, 3), pick_d(1, 8);
  std::uniform_int_distribution<std::uint64_t> pick_seed;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_normal_tuple(pick_n(rng), pick_d(rng), rng);
    DilationOptions opts;
    opts.probes = 100;
    opts.seed = pick_seed(rng);
    opts.check_minimality = false;
    opts.tol = tol;
    worst = std::max(worst, build_dilation(t, 10, opts).diagnostics.telescoping_residual);
  }
  rec.at_most(c2, "telescoping law, 20 tuples x 100 probes, N=10", worst, 1e-9);

  const OperatorTuple scalar(std::vector<Matrix>{Matrix::Constant(1, 1, Complex(0.9, 0.0))});
  DilationOptions opts;
  opts.tol = tol;
  const auto dm = build_dilation(scalar, 10, opts);
  rec.at_most(c2, "T=diag(0.9): |co-isometry defect - 0.81^11|",
              std::abs(dm.diagnostics.co_isometry_residual - std::pow(0.81, 11)), 1e-12);
}

std::vector<MultiIndex> ideal_by_name(const std::string& name) {
  if (name == "<z1>") return {MultiIndex({1, 0})};
  if (name == "<z1,z2>") return {MultiIndex({1, 0}), MultiIndex({0, 1})};
  return {MultiIndex({2, 0}), MultiIndex({1, 1}), MultiIndex({0, 2})};
}

void suite_invariant(Recorder& rec, double tol) {
  const std::string c = "AC3";
  const auto space = make_space(2, 1.0, 4, 1);
  const auto t = shift_tuple(space);
  for (const std::string ideal : {"<z1>", "<z1^2,z1z2,z2^2>"}) {
    const auto s = monomial_subspace(space, ideal_monomials(space, ideal_by_name(ideal)));
    const auto f = factor_invariant_subspace(t, s, 4, tol);
    rec.at_most(c, "projection " + ideal, f.diagnostics.projection_residual, 1e-8);
    rec.at_most(c, "singular values in {0,1} " + ideal, f.diagnostics.singular_value_gap, 1e-8);
    rec.equal(c, "rank(Pi) - dim S " + ideal,
              static_cast<double>(f.diagnostics.rank - static_cast<int>(s.dim())), 0.0);
  }
}

void suite_multiplier(Recorder& rec, double tol) {
  const std::string c = "AC4";
  for (double lambda : {2.0, 3.0}) {
    const auto target = make_space(2, lambda, 4, 1);
    for (const std::string ideal : {"<z1>", "<z1,z2>"}) {
      const auto s = monomial_subspace(target, ideal_monomials(target, ideal_by_name(ideal)));
      const auto mf = factor_to_multiplier(target, s, std::nullopt, tol);
      const std::string tg = "lambda=" + std::to_string(static_cast<int>(lambda)) + " " + ideal;
      rec.at_most(c, "M_Theta M_Theta^* = P_S " + tg, mf.diagnostics.projection_residual, 1e-8);
      rec.at_most(c, "symbol consistency (25 grid points) " + tg,
                  mf.diagnostics.symbol_consistency_residual, 1e-8);
    }
  }
}

template <typename T, typename Read>
double round_trip_mismatch(const T& value, Read read) {
  const std::string first = io::dump(io::to_json(value));
  const std::string second = io::dump(io::to_json(read(io::parse(first))));
  return first == second ? 0.0 : 1.0;
}

void suite_cli(Recorder& rec, double tol, std::uint64_t seed) {
  const std::string c = "AC7";
  const auto space = make_space(2, 1.0, 3, 1);
  const auto t = shift_tuple(space);
  const auto s = monomial_subspace(space, ideal_monomials(space, {MultiIndex({1, 0})}));
  const auto dm = build_dilation(t, 3);
  const auto inv = factor_invariant_subspace(t, s, 3, tol);
  const auto bergman = make_space(2, 3.0, 3, 1);
  const auto mf = factor_to_multiplier(
      bergman, monomial_subspace(bergman, ideal_monomials(bergman, {MultiIndex({1, 0})})),
      std::nullopt, tol);
  const auto user = TruncatedSpace(KernelFamily::from_coefficients(1, {1.0, 0.5, 0.3}), 2, 2);

  rec.equal(c, "round-trip matrix", round_trip_mismatch(t[0], io::matrix_from_json), 0.0);
  rec.equal(c, "round-trip tuple", round_trip_mismatch(t, io::tuple_from_json), 0.0);
  rec.equal(c, "round-trip subspace", round_trip_mismatch(s, io::subspace_from_json), 0.0);
  rec.equal(c, "round-trip space", round_trip_mismatch(space, io::space_from_json), 0.0);
  rec.equal(c, "round-trip user-kernel space", round_trip_mismatch(user, io::space_from_json), 0.0);
  rec.equal(c, "round-trip dilation", round_trip_mismatch(dm, io::dilation_from_json), 0.0);
  rec.equal(c, "round-trip invariant factor", round_trip_mismatch(inv, io::invariant_factor_from_json), 0.0);
  rec.equal(c, "round-trip multiplier factor", round_trip_mismatch(mf, io::multiplier_factor_from_json), 0.0);

  const auto a = io::dump(io::to_json(run_verification("invariant", tol, seed)));
  const auto b = io::dump(io::to_json(run_verification("invariant", tol, seed)));
  rec.equal(c, "deterministic report under fixed seed", a == b ? 0.0 : 1.0, 0.0);
  const auto sp1 = io::dump(io::to_json(run_verification("spaces", tol, seed)));
  const auto sp2 = io::dump(io::to_json(run_verification("spaces", tol, seed)));
  rec.equal(c, "deterministic seeded report (spaces)", sp1 == sp2 ? 0.0 : 1.0, 0.0);
  rec.equal(c, "round-trip verification report",
            round_trip_mismatch(run_verification("invariant", tol, seed), io::report_from_json), 0.0);
}

}  // namespace

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<std::string> VerificationReport::criteria() const {
  std::vector<std::string> ids;
  for (const auto& c : checks)
    if (std::find(ids.begin(), ids.end(), c.criterion) == ids.end()) ids.push_back(c.criterion);
  return ids;
}

bool VerificationReport::criterion_pass(const std::string& id) const {
  return std::all_of(checks.begin(), checks.end(),
                     [&](const CheckResult& c) { return c.criterion != id || c.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"spaces", "cp", "dilation", "invariant",
                                              "multiplier", "cli", "all"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

VerificationReport run_verification(const std::string& suite, double tol, std::uint64_t seed) {
  if (!is_suite(suite)) throw InvalidArgument("unknown suite '" + suite + "'");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  VerificationReport rep;
  rep.suite = suite;
  rep.tol = tol;
  rep.seed = seed;
  Recorder rec(rep);
  // Each suite draws from its own stream so subsets reproduce the numbers of "all".
  auto stream = [seed](std::uint64_t salt) { return std::mt19937_64(seed ^ (salt * 0x9E3779B97F4A7C15ULL)); };
  const bool all = suite == "all";
  if (all || suite == "dilation") {
    auto rng = stream(1);
    suite_dilation(rec, rng, tol);
  }
  if (all || suite == "invariant") suite_invariant(rec, tol);
  if (all || suite == "multiplier") suite_multiplier(rec, tol);
  if (all || suite == "cp") {
    auto rng = stream(5);
    suite_cp(rec, rng);
  }
  if (all || suite == "spaces") {
    auto rng = stream(6);
    suite_spaces(rec, rng);
  }
  if (all || suite == "cli") suite_cli(rec, tol, seed);
  return rep;
}

namespace io {

namespace {

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::at_most: return "<=";
    case Relation::at_least: return ">=";
    case Relation::equal: return "==";
  }
  return "<=";
}

Relation relation_from(const std::string& s) {
  if (s == "<=") return Relation::at_most;
  if (s == ">=") return Relation::at_least;
  if (s == "==") return Relation::equal;
  throw InvalidArgument("unknown relation '" + s + "'");
}

}  // namespace

Json to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"criterion", c.criterion},
                          {"name", c.name},
                          {"measured", c.measured},
                          {"threshold", c.threshold},
                          {"relation", relation_name(c.relation)},
                          {"pass", c.pass}});
  return Json{{"kind", "verification_report"},
              {"suite", r.suite},
              {"tol", r.tol},
              {"seed", r.seed},
              {"checks", std::move(checks)},
              {"pass", r.pass()}};
}

VerificationReport report_from_json(const Json& j) {
  VerificationReport r;
  try {
    r.suite = j.at("suite").get<std::string>();
    r.tol = j.at("tol").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& c : j.at("checks"))
      r.checks.push_back(CheckResult{c.at("criterion").get<std::string>(), c.at("name").get<std::string>(),
                                     c.at("measured").get<double>(), c.at("threshold").get<double>(),
                                     relation_from(c.at("relation").get<std::string>()),
                                     c.at("pass").get<bool>()});
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed verification report: ") + e.what());
  }
  return r;
}

}  // namespace io

}  // namespace ballkit
