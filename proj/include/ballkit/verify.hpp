#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ballkit/json_io.hpp"

namespace ballkit {

enum class Relation { at_most, at_least, equal };

struct CheckResult {
  std::string criterion;  // "AC1" .. "AC7"
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  Relation relation = Relation::at_most;
  bool pass = false;
};

struct VerificationReport {
  std::string suite;
  double tol = 0.0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool pass() const;
  // Criterion ids in first-appearance order.
  std::vector<std::string> criteria() const;
  bool criterion_pass(const std::string& id) const;
};

// spaces, cp, dilation, invariant, multiplier, cli, all
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

// Runs the named acceptance suite. Thresholds are fixed per criterion; `tol` is the structural
// tolerance handed to invariance and intertwining preconditions. Throws InvalidArgument for an
// unknown suite.
VerificationReport run_verification(const std::string& suite, double tol, std::uint64_t seed);

namespace io {
Json to_json(const VerificationReport& r);
VerificationReport report_from_json(const Json& j);
}  // namespace io

}  // namespace ballkit
