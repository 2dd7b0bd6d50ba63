#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace torusinv::app {

struct AcceptanceOptions {
  std::string filter;  // comma-separated ids or tags; empty runs everything
  std::uint64_t seed = 0;
  bool flipPsi0Sign = false;  // mutation hook for the harness self-test
};

struct CriterionResult {
  int id = 0;
  std::string tag;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double limitSeconds = 0;
};

struct CriterionInfo {
  int id;
  const char* tag;
  double limitSeconds;
};

const std::vector<CriterionInfo>& acceptance_criteria();

// Throws SchemaMismatch when the filter selects nothing.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream& log);

std::string format_result(const CriterionResult& r);

}  // namespace torusinv::app
