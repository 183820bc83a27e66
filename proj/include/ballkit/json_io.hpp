#pragma once

#include <string>

#include "json.hpp"

#include "ballkit/ballspace.hpp"
#include "ballkit/dilation.hpp"
#include "ballkit/invariant.hpp"
#include "ballkit/multiplier.hpp"
#include "ballkit/optuple.hpp"

// JSON documents for every artifact. Readers validate structure and throw InvalidArgument on
// malformed input; unknown keys are ignored. Doubles are written in shortest round-trip form,
// so dump(to_json(from_json(parse(text)))) reproduces text byte for byte.
namespace ballkit::io {

using Json = nlohmann::json;

// {"rows": r, "cols": c, "re": [[...]], "im": [[...]]}, row-major.
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// {"n": .., "dim": .., "matrices": [...]}
Json to_json(const OperatorTuple& t);
OperatorTuple tuple_from_json(const Json& j);

// {"ambient_dim": .., "frame": matrix}
Json to_json(const Subspace& s);
Subspace subspace_from_json(const Json& j);

Json to_json(const TruncatedSpace& s);
TruncatedSpace space_from_json(const Json& j);

Json to_json(const DefectData& d);
DefectData defect_from_json(const Json& j);

Json to_json(const PurityReport& r);
PurityReport purity_from_json(const Json& j);

Json to_json(const DilationDiagnostics& d);
DilationDiagnostics dilation_diagnostics_from_json(const Json& j);

Json to_json(const DilationMap& dm);
DilationMap dilation_from_json(const Json& j);

Json to_json(const InvariantDiagnostics& d);
InvariantDiagnostics invariant_diagnostics_from_json(const Json& j);

Json to_json(const InvariantFactor& f);
InvariantFactor invariant_factor_from_json(const Json& j);

Json to_json(const AnalyticReport& r);
AnalyticReport analytic_from_json(const Json& j);

Json to_json(const SymbolCoefficients& s);
SymbolCoefficients symbol_from_json(const Json& j);

Json to_json(const MultiplierDiagnostics& d);
MultiplierDiagnostics multiplier_diagnostics_from_json(const Json& j);

Json to_json(const MultiplierFactor& f);
MultiplierFactor multiplier_factor_from_json(const Json& j);

// Canonical text form: two-space indent, trailing newline.
std::string dump(const Json& j);
Json parse(const std::string& text);

Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& j);

}  // namespace ballkit::io
