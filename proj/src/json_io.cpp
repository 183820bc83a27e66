#include "ballkit/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ballkit::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw InvalidArgument(std::string("expected a JSON object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw InvalidArgument(std::string("missing field '") + key + "'");
  return *it;
}

template <typename T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("field '") + key + "': " + e.what());
  }
}

Json real_array(const std::vector<double>& v) { return Json(v); }

Json real_array(const RealVector& v) {
  return Json(std::vector<double>(v.data(), v.data() + v.size()));
}

RealVector real_vector(const Json& j, const char* key) {
  const auto v = get<std::vector<double>>(j, key);
  return Eigen::Map<const RealVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

Json to_json(const Matrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array();
    Json ir = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ir.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const Json& j) {
  const auto rows = get<Eigen::Index>(j, "rows");
  const auto cols = get<Eigen::Index>(j, "cols");
  if (rows < 0 || cols < 0) throw InvalidArgument("matrix dimensions must be non-negative");
  const auto re = get<std::vector<std::vector<double>>>(j, "re");
  const auto im = get<std::vector<std::vector<double>>>(j, "im");
  if (static_cast<Eigen::Index>(re.size()) != rows || static_cast<Eigen::Index>(im.size()) != rows)
    throw InvalidArgument("matrix row count does not match 'rows'");
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(re[r].size()) != cols ||
        static_cast<Eigen::Index>(im[r].size()) != cols)
      throw InvalidArgument("matrix column count does not match 'cols'");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = Complex(re[r][c], im[r][c]);
  }
  return m;
}

Json to_json(const OperatorTuple& t) {
  Json ms = Json::array();
  for (const auto& m : t.matrices()) ms.push_back(to_json(m));
  return Json{{"n", t.arity()}, {"dim", t.dim()}, {"matrices", std::move(ms)}};
}

OperatorTuple tuple_from_json(const Json& j) {
  const int n = get<int>(j, "n");
  const auto dim = get<Eigen::Index>(j, "dim");
  const Json& ms = field(j, "matrices");
  if (!ms.is_array() || static_cast<int>(ms.size()) != n)
    throw InvalidArgument("'matrices' must be an array of length n");
  std::vector<Matrix> mats;
  for (const auto& m : ms) {
    mats.push_back(matrix_from_json(m));
    if (mats.back().rows() != dim || mats.back().cols() != dim)
      throw InvalidArgument("tuple matrix shape does not match 'dim'");
  }
  return OperatorTuple(std::move(mats));
}

Json to_json(const Subspace& s) {
  return Json{{"ambient_dim", s.ambient_dim()}, {"frame", to_json(s.frame())}};
}

Subspace subspace_from_json(const Json& j) {
  const auto d = get<Eigen::Index>(j, "ambient_dim");
  Matrix frame = matrix_from_json(field(j, "frame"));
  if (frame.rows() != d) throw InvalidArgument("frame row count does not match 'ambient_dim'");
  return Subspace(std::move(frame));
}

Json to_json(const TruncatedSpace& s) {
  Json basis = Json::array();
  for (const auto& k : s.basis().indices()) basis.push_back(k.entries());
  const auto lam = s.kernel().lambda();
  return Json{{"kind", "space"},
              {"n", s.arity()},
              {"lambda", lam ? Json(*lam) : Json(nullptr)},
              {"kernel_coeffs", real_array(s.kernel().coeffs())},
              {"degree", s.degree_cap()},
              {"coeff_dim", s.coeff_dim()},
              {"basis", std::move(basis)},
              {"monomial_sq_norms", real_array(s.sq_norms())}};
}

TruncatedSpace space_from_json(const Json& j) {
  const int n = get<int>(j, "n");
  const int degree = get<int>(j, "degree");
  const int coeff_dim = get<int>(j, "coeff_dim");
  const auto coeffs = get<std::vector<double>>(j, "kernel_coeffs");
  const Json& lam = field(j, "lambda");
  KernelFamily kernel;
  if (lam.is_null()) {
    kernel = KernelFamily::from_coefficients(n, coeffs);
  } else {
    if (!lam.is_number()) throw InvalidArgument("'lambda' must be a number or null");
    if (coeffs.empty()) throw InvalidArgument("'kernel_coeffs' must not be empty");
    kernel = KernelFamily::power(n, lam.get<double>(), static_cast<int>(coeffs.size()) - 1);
    for (std::size_t m = 0; m < coeffs.size(); ++m)
      if (std::abs(kernel.coeffs()[m] - coeffs[m]) > 1e-12 * kernel.coeffs()[m])
        throw InvalidArgument("'kernel_coeffs' disagree with 'lambda'");
  }
  TruncatedSpace space(std::move(kernel), degree, coeff_dim);
  if (j.contains("basis") && j.at("basis").size() != space.basis().size())
    throw InvalidArgument("'basis' length does not match degree");
  return space;
}

Json to_json(const DefectData& d) {
  return Json{{"D", to_json(d.D)},
              {"rank", d.rank},
              {"frame", to_json(d.frame)},
              {"eigenvalues", real_array(d.eigenvalues)}};
}

DefectData defect_from_json(const Json& j) {
  DefectData d;
  d.D = matrix_from_json(field(j, "D"));
  d.rank = get<int>(j, "rank");
  d.frame = matrix_from_json(field(j, "frame"));
  d.eigenvalues = real_vector(j, "eigenvalues");
  if (d.frame.cols() != d.rank) throw InvalidArgument("defect frame width does not match rank");
  return d;
}

Json to_json(const PurityReport& r) {
  return Json{{"iterations", r.iterations},
              {"residual_norms", real_array(r.residual_norms)},
              {"verdict", to_string(r.verdict)},
              {"min_monotone_gap", r.min_monotone_gap},
              {"p_inf_estimate", to_json(r.p_inf_estimate)}};
}

namespace {

PurityVerdict verdict_from_string(const std::string& s) {
  if (s == "pure") return PurityVerdict::pure;
  if (s == "not_pure") return PurityVerdict::not_pure;
  if (s == "undetermined") return PurityVerdict::undetermined;
  throw InvalidArgument("unknown purity verdict '" + s + "'");
}

}  // namespace

PurityReport purity_from_json(const Json& j) {
  PurityReport r;
  r.iterations = get<int>(j, "iterations");
  r.residual_norms = get<std::vector<double>>(j, "residual_norms");
  r.verdict = verdict_from_string(get<std::string>(j, "verdict"));
  r.min_monotone_gap = get<double>(j, "min_monotone_gap");
  r.p_inf_estimate = matrix_from_json(field(j, "p_inf_estimate"));
  return r;
}

Json to_json(const DilationDiagnostics& d) {
  return Json{{"co_isometry_residual", d.co_isometry_residual},
              {"intertwining_residuals", real_array(d.intertwining_residuals)},
              {"lower_intertwining_residuals", real_array(d.lower_intertwining_residuals)},
              {"telescoping_residual", d.telescoping_residual},
              {"telescoping_checked", d.telescoping_checked},
              {"probes", d.probes},
              {"constant_block_residual", d.constant_block_residual},
              {"minimality_rank_gap", d.minimality_rank_gap}};
}

DilationDiagnostics dilation_diagnostics_from_json(const Json& j) {
  DilationDiagnostics d;
  d.co_isometry_residual = get<double>(j, "co_isometry_residual");
  d.intertwining_residuals = get<std::vector<double>>(j, "intertwining_residuals");
  d.lower_intertwining_residuals = get<std::vector<double>>(j, "lower_intertwining_residuals");
  d.telescoping_residual = get<double>(j, "telescoping_residual");
  d.telescoping_checked = get<bool>(j, "telescoping_checked");
  d.probes = get<int>(j, "probes");
  d.constant_block_residual = get<double>(j, "constant_block_residual");
  d.minimality_rank_gap = get<int>(j, "minimality_rank_gap");
  return d;
}

Json to_json(const DilationMap& dm) {
  return Json{{"kind", "dilation"},
              {"source", to_json(dm.source)},
              {"Pi", to_json(dm.pi)},
              {"defect", to_json(dm.defect)},
              {"diagnostics", to_json(dm.diagnostics)}};
}

DilationMap dilation_from_json(const Json& j) {
  DilationMap dm;
  dm.source = space_from_json(field(j, "source"));
  dm.pi = matrix_from_json(field(j, "Pi"));
  if (dm.pi.cols() != dm.source.dim()) throw InvalidArgument("'Pi' width does not match source");
  dm.pi_star = dm.pi.adjoint();
  dm.defect = defect_from_json(field(j, "defect"));
  dm.diagnostics = dilation_diagnostics_from_json(field(j, "diagnostics"));
  return dm;
}

Json to_json(const InvariantDiagnostics& d) {
  return Json{{"projection_residual", d.projection_residual},
              {"intertwining_residuals", real_array(d.intertwining_residuals)},
              {"singular_value_gap", d.singular_value_gap},
              {"rank", d.rank},
              {"range_invariance_residual", d.range_invariance_residual}};
}

InvariantDiagnostics invariant_diagnostics_from_json(const Json& j) {
  InvariantDiagnostics d;
  d.projection_residual = get<double>(j, "projection_residual");
  d.intertwining_residuals = get<std::vector<double>>(j, "intertwining_residuals");
  d.singular_value_gap = get<double>(j, "singular_value_gap");
  d.rank = get<int>(j, "rank");
  d.range_invariance_residual = get<double>(j, "range_invariance_residual");
  return d;
}

Json to_json(const InvariantFactor& f) {
  return Json{{"kind", "invariant_factor"},
              {"degree", f.degree_cap()},
              {"coeff_dim", f.coeff_dim()},
              {"source", to_json(f.source)},
              {"subspace", to_json(f.subspace)},
              {"Pi", to_json(f.pi)},
              {"ambient_purity", to_string(f.ambient_purity)},
              {"restricted_dilation", to_json(f.restricted)},
              {"diagnostics", to_json(f.diagnostics)}};
}

InvariantFactor invariant_factor_from_json(const Json& j) {
  InvariantFactor f;
  f.source = space_from_json(field(j, "source"));
  f.subspace = subspace_from_json(field(j, "subspace"));
  f.pi = matrix_from_json(field(j, "Pi"));
  if (f.pi.rows() != f.subspace.ambient_dim() || f.pi.cols() != f.source.dim())
    throw InvalidArgument("'Pi' shape does not match source and subspace");
  f.ambient_purity = verdict_from_string(get<std::string>(j, "ambient_purity"));
  f.restricted = dilation_from_json(field(j, "restricted_dilation"));
  f.diagnostics = invariant_diagnostics_from_json(field(j, "diagnostics"));
  return f;
}

Json to_json(const AnalyticReport& r) {
  return Json{{"shift_norms", real_array(r.shift_norms)},
              {"min_defect_eigenvalue", r.min_defect_eigenvalue},
              {"max_commutator_norm", r.max_commutator_norm},
              {"tol", r.tol},
              {"purity", to_json(r.purity)},
              {"analytic", r.pass()}};
}

AnalyticReport analytic_from_json(const Json& j) {
  AnalyticReport r;
  r.shift_norms = get<std::vector<double>>(j, "shift_norms");
  r.min_defect_eigenvalue = get<double>(j, "min_defect_eigenvalue");
  r.max_commutator_norm = get<double>(j, "max_commutator_norm");
  r.tol = get<double>(j, "tol");
  r.purity = purity_from_json(field(j, "purity"));
  return r;
}

Json to_json(const SymbolCoefficients& s) {
  Json basis = Json::array();
  Json blocks = Json::array();
  for (std::size_t p = 0; p < s.blocks.size(); ++p) {
    basis.push_back(s.basis[p].entries());
    blocks.push_back(to_json(s.blocks[p]));
  }
  return Json{{"n", s.basis.arity()},
              {"degree", s.basis.max_degree()},
              {"basis", std::move(basis)},
              {"blocks", std::move(blocks)}};
}

SymbolCoefficients symbol_from_json(const Json& j) {
  SymbolCoefficients s;
  s.basis = MultiIndexSet(get<int>(j, "n"), get<int>(j, "degree"));
  const Json& blocks = field(j, "blocks");
  if (!blocks.is_array() || blocks.size() != s.basis.size())
    throw InvalidArgument("'blocks' length does not match symbol basis");
  for (const auto& b : blocks) s.blocks.push_back(matrix_from_json(b));
  return s;
}

Json to_json(const MultiplierDiagnostics& d) {
  return Json{{"projection_residual", d.projection_residual},
              {"singular_value_gap", d.singular_value_gap},
              {"rank", d.rank},
              {"symbol_consistency_residual", d.symbol_consistency_residual},
              {"multiplier_action_residual", d.multiplier_action_residual},
              {"intertwining_residuals", real_array(d.intertwining_residuals)}};
}

MultiplierDiagnostics multiplier_diagnostics_from_json(const Json& j) {
  MultiplierDiagnostics d;
  d.projection_residual = get<double>(j, "projection_residual");
  d.singular_value_gap = get<double>(j, "singular_value_gap");
  d.rank = get<int>(j, "rank");
  d.symbol_consistency_residual = get<double>(j, "symbol_consistency_residual");
  d.multiplier_action_residual = get<double>(j, "multiplier_action_residual");
  d.intertwining_residuals = get<std::vector<double>>(j, "intertwining_residuals");
  return d;
}

Json to_json(const MultiplierFactor& f) {
  return Json{{"kind", "multiplier_factor"},
              {"source", to_json(f.source)},
              {"target", to_json(f.target)},
              {"subspace", to_json(f.subspace)},
              {"symbol", to_json(f.symbol)},
              {"M_Theta", to_json(f.m_theta)},
              {"analytic", to_json(f.analytic)},
              {"diagnostics", to_json(f.diagnostics)}};
}

MultiplierFactor multiplier_factor_from_json(const Json& j) {
  MultiplierFactor f;
  f.source = space_from_json(field(j, "source"));
  f.target = space_from_json(field(j, "target"));
  f.m_theta = matrix_from_json(field(j, "M_Theta"));
  if (f.m_theta.rows() != f.target.dim() || f.m_theta.cols() != f.source.dim())
    throw InvalidArgument("'M_Theta' shape does not match source and target");
  if (j.contains("subspace")) f.subspace = subspace_from_json(j.at("subspace"));
  if (j.contains("symbol")) f.symbol = symbol_from_json(j.at("symbol"));
  if (j.contains("analytic")) f.analytic = analytic_from_json(j.at("analytic"));
  if (j.contains("diagnostics")) f.diagnostics = multiplier_diagnostics_from_json(j.at("diagnostics"));
  return f;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("invalid JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << dump(j);
}

}  // namespace ballkit::io
