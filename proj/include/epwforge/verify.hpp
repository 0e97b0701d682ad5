#pragma once

// The acceptance suite: twelve numbered checks, each timed against its budget,
// plus an optional end-to-end pipeline smoke run over a chosen field.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epwforge/scalar.hpp"

namespace epwforge {

struct CriterionResult {
  int id = 0;             // 0 for the pipeline smoke run
  std::string name;
  bool passed = false;
  double seconds = 0;
  double budget_seconds = 0;  // 0: no runtime budget
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::vector<int> only;               // empty: every criterion
  std::optional<Field> smoke_field;    // adds the pipeline smoke run
};

inline constexpr int kCriterionCount = 12;

CriterionResult run_criterion(int id, std::uint64_t seed);
CriterionResult run_pipeline_smoke(const Field& f, std::uint64_t seed);
std::vector<CriterionResult> run_acceptance(const VerifyOptions& options);
std::string format_result_line(const CriterionResult& r);

}  // namespace epwforge
