// ballkit command-line driver. Exit codes: 0 success, 1 certificate failure, 2 usage or input error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ballkit/ballspace.hpp"
#include "ballkit/invariant.hpp"
#include "ballkit/json_io.hpp"
#include "ballkit/multiplier.hpp"
#include "ballkit/verify.hpp"

namespace {

using namespace ballkit;
using io::Json;

constexpr int kOk = 0;
constexpr int kCertificateFailure = 1;
constexpr int kInputError = 2;
constexpr double kDefaultTol = 1e-9;

double resolve_tol(const std::optional<double>& flag) {
  if (flag) {
    if (!(*flag > 0.0)) throw InvalidArgument("tolerance must be positive");
    return *flag;
  }
  if (const char* env = std::getenv("BALLKIT_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0))
      throw InvalidArgument("BALLKIT_TOL must be a positive number");
    return v;
  }
  return kDefaultTol;
}

void emit(const Json& j, const std::string& out) {
  if (out.empty())
    std::cout << io::dump(j);
  else
    io::write_file(out, j);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("cannot parse number '" + item + "'");
    }
    if (used != item.size()) throw InvalidArgument("cannot parse number '" + item + "'");
    values.push_back(v);
  }
  return values;
}

// "1,0;0,1" -> {(1,0), (0,1)}
std::vector<MultiIndex> parse_generators(const std::string& text) {
  std::vector<MultiIndex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    std::vector<int> entries;
    for (double v : parse_list(item)) {
      if (v != static_cast<int>(v)) throw InvalidArgument("exponents must be integers");
      entries.push_back(static_cast<int>(v));
    }
    out.emplace_back(std::move(entries));
  }
  if (out.empty()) throw InvalidArgument("at least one generator required");
  return out;
}

Json certificate(bool pass, double tol) { return Json{{"pass", pass}, {"tol", tol}}; }

struct SpaceArgs {
  int n = 0;
  std::optional<double> lambda;
  std::string kernel_coeffs;
  int degree = 0;
  int coeff_dim = 1;
};

int cmd_space(const SpaceArgs& a, const std::string& out) {
  if (a.lambda && !a.kernel_coeffs.empty())
    throw InvalidArgument("give either --lambda or --kernel-coeffs, not both");
  if (!a.lambda && a.kernel_coeffs.empty()) throw InvalidArgument("--lambda or --kernel-coeffs required");
  TruncatedSpace space;
  if (a.lambda) {
    if (!(*a.lambda >= 1.0)) throw InvalidArgument("lambda must be ≥ 1");
    space = make_space(a.n, *a.lambda, a.degree, a.coeff_dim);
  } else {
    space = TruncatedSpace(KernelFamily::from_coefficients(a.n, parse_list(a.kernel_coeffs)),
                           a.degree, a.coeff_dim);
  }
  emit(io::to_json(space), out);
  return kOk;
}

int cmd_shifts(const std::string& space_path, const std::string& out) {
  const auto space = io::space_from_json(io::read_file(space_path));
  emit(io::to_json(shift_tuple(space)), out);
  return kOk;
}

int cmd_ideal(const std::string& space_path, const std::string& generators, const std::string& out) {
  const auto space = io::space_from_json(io::read_file(space_path));
  const auto monomials = ideal_monomials(space, parse_generators(generators));
  if (monomials.empty()) throw TrivialSubspace();
  emit(io::to_json(monomial_subspace(space, monomials)), out);
  return kOk;
}

int cmd_factor(const std::string& tuple_path, const std::string& subspace_path,
               std::optional<int> degree, double tol, const std::string& out) {
  const auto t = io::tuple_from_json(io::read_file(tuple_path));
  const auto s = io::subspace_from_json(io::read_file(subspace_path));
  const auto f = factor_invariant_subspace(t, s, degree, tol);
  const bool pass = f.certified(tol);
  Json doc = io::to_json(f);
  doc["certificate"] = certificate(pass, tol);
  emit(doc, out);
  return pass ? kOk : kCertificateFailure;
}

int cmd_mfactor(const std::string& space_path, const std::string& subspace_path, double tol,
                const std::string& out) {
  const auto space = io::space_from_json(io::read_file(space_path));
  const auto s = io::subspace_from_json(io::read_file(subspace_path));
  try {
    const auto mf = factor_to_multiplier(space, s, std::nullopt, tol);
    const bool pass = mf.certified(tol);
    Json doc = io::to_json(mf);
    doc["certificate"] = certificate(pass, tol);
    emit(doc, out);
    return pass ? kOk : kCertificateFailure;
  } catch (const NotAnalytic& e) {
    std::cerr << "error: " << e.what() << "\n";
    emit(Json{{"kind", "multiplier_factor"},
              {"analytic", io::to_json(e.report())},
              {"certificate", certificate(false, tol)}},
         out);
    return kCertificateFailure;
  }
}

int cmd_symbol(const std::string& factor_path, const std::string& point_re,
               const std::string& point_im, double tol, const std::string& out) {
  const auto mf = io::multiplier_factor_from_json(io::read_file(factor_path));
  const auto re = parse_list(point_re);
  const auto im = point_im.empty() ? std::vector<double>(re.size(), 0.0) : parse_list(point_im);
  if (re.size() != im.size()) throw InvalidArgument("--point and --point-im lengths differ");
  if (static_cast<int>(re.size()) != mf.source.arity())
    throw InvalidArgument("point dimension does not match the factor");
  Vector w(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) w(static_cast<Eigen::Index>(i)) = Complex(re[i], im[i]);
  const BallPoint point(w);
  const Matrix theta = extract_symbol(mf.m_theta, mf.source, mf.target, point, tol);
  const auto coeffs = symbol_coefficients(mf.m_theta, mf.source, mf.target, tol);
  const double residual = spectral_norm(coeffs.evaluate(point) - theta);
  const bool pass = residual <= kDefaultTol;
  Json pt = Json{{"re", re}, {"im", im}};
  emit(Json{{"kind", "symbol_value"},
            {"point", pt},
            {"theta", io::to_json(theta)},
            {"power_sum_residual", residual},
            {"certificate", certificate(pass, kDefaultTol)}},
       out);
  return pass ? kOk : kCertificateFailure;
}

int cmd_verify(const std::string& suite, double tol, std::uint64_t seed, const std::string& out) {
  if (!is_suite(suite)) throw InvalidArgument("unknown suite '" + suite + "'");
  const auto rep = run_verification(suite, tol, seed);
  emit(io::to_json(rep), out);
  return rep.pass() ? kOk : kCertificateFailure;
}

int run(int argc, char** argv) {
  CLI::App app{"ballkit: dilations, invariant subspaces and multipliers over the unit ball"};
  app.require_subcommand(1);

  std::optional<double> tol_flag;
  std::string out;

  SpaceArgs sa;
  auto* space = app.add_subcommand("space", "write a truncated space descriptor");
  space->add_option("--n", sa.n, "ball dimension")->required();
  space->add_option("--lambda", sa.lambda, "kernel exponent (1 - <z,w>)^-lambda");
  space->add_option("--kernel-coeffs", sa.kernel_coeffs, "comma-separated c_0..c_M (user kernel)");
  space->add_option("--degree", sa.degree, "degree cap N")->required();
  space->add_option("--coeff-dim", sa.coeff_dim, "coefficient space dimension");
  space->add_option("--out", out, "output path (default stdout)");

  std::string space_path;
  auto* shifts = app.add_subcommand("shifts", "write the compressed shift tuple of a space");
  shifts->add_option("--space", space_path)->required();
  shifts->add_option("--out", out);

  std::string generators;
  auto* ideal = app.add_subcommand("ideal", "write the subspace spanned by a monomial ideal");
  ideal->add_option("--space", space_path)->required();
  ideal->add_option("--generators", generators, "exponents, e.g. \"1,0;0,1\"")->required();
  ideal->add_option("--out", out);

  std::string tuple_path, subspace_path;
  std::optional<int> degree;
  auto* factor = app.add_subcommand("factor", "partial-isometry factorization of an invariant subspace");
  factor->add_option("--tuple", tuple_path)->required();
  factor->add_option("--subspace", subspace_path)->required();
  factor->add_option("--degree", degree, "source degree cap (default: nilpotency order - 1)");
  factor->add_option("--tol", tol_flag);
  factor->add_option("--out", out);

  auto* mfactor = app.add_subcommand("mfactor", "multiplier factorization of a shift-invariant subspace");
  mfactor->add_option("--space", space_path)->required();
  mfactor->add_option("--subspace", subspace_path)->required();
  mfactor->add_option("--tol", tol_flag);
  mfactor->add_option("--out", out);

  std::string factor_path, point_re, point_im;
  auto* symbol = app.add_subcommand("symbol", "evaluate Theta(w) of a multiplier factor");
  symbol->add_option("--factor", factor_path)->required();
  symbol->add_option("--point", point_re, "real parts, comma-separated")->required();
  symbol->add_option("--point-im", point_im, "imaginary parts, comma-separated");
  symbol->add_option("--tol", tol_flag);
  symbol->add_option("--out", out);

  std::string suite = "all";
  std::uint64_t seed = 42;
  auto* verify = app.add_subcommand("verify", "run an acceptance suite and print a JSON report");
  verify->add_option("--suite", suite, "spaces, cp, dilation, invariant, multiplier, cli, all");
  verify->add_option("--tol", tol_flag);
  verify->add_option("--seed", seed);
  verify->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*space) return cmd_space(sa, out);
    if (*shifts) return cmd_shifts(space_path, out);
    if (*ideal) return cmd_ideal(space_path, generators, out);
    const double tol = resolve_tol(tol_flag);
    if (*factor) return cmd_factor(tuple_path, subspace_path, degree, tol, out);
    if (*mfactor) return cmd_mfactor(space_path, subspace_path, tol, out);
    if (*symbol) return cmd_symbol(factor_path, point_re, point_im, tol, out);
    if (*verify) return cmd_verify(suite, tol, seed, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (...) {
    return kInputError;
  }
}
