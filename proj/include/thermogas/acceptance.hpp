#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "thermogas/params.hpp"

namespace thermogas {

/// Inputs shared by the acceptance criteria. Grids, step sizes and data sizes
/// are fixed per criterion; the model parameters and the seed are not.
struct AcceptanceOptions {
  ModelParams params;
  std::uint64_t seed = 20261016;
  /// Criteria evaluated concurrently; results are reported in criterion order.
  int threads = 1;
};

/// kappa1 = 1, kappa2 = 1.5, kappa3_bar = 0.8, kappa3~ = 0.2 tanh(theta~).
ModelParams default_acceptance_params();

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  /// Measured quantities, formatted with a fixed precision.
  std::string detail;
};

inline constexpr int kCriterionCount = 13;

std::string criterion_name(int id);

/// Runs one criterion (1..13). Exceptions thrown by the library are caught and
/// reported as a failure.
CriterionResult run_criterion(int id, const AcceptanceOptions& options);

/// Runs the listed criteria (all of them when empty).
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::vector<int> ids = {});

/// "PASS  7 integrator order: ..." style line.
std::string format_result(const CriterionResult& result);

/// criterion,name,result,detail
void write_verify_csv(std::ostream& out, const std::vector<CriterionResult>& results);

/// The CSV artifacts of a short simulate + fixedpoint + besov + scaling
/// pipeline, keyed by file name. Criterion 13 builds this twice and compares.
std::map<std::string, std::string> determinism_bundle(const AcceptanceOptions& options);

}  // namespace thermogas
