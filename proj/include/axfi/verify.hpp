#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "axfi/adv.hpp"
#include "axfi/limits.hpp"
#include "axfi/model.hpp"

namespace axfi {

struct VerifyOptions {
  Limits limits;
  WeightMode mode = WeightMode::count;
  std::uint64_t samples = 5000;
  std::uint64_t seed = 0;
  /// Re-runs the pipeline on a class-shifted copy of the model.
  bool check_relabel = true;
};

struct VerifyCheck {
  std::string name;
  bool passed = true;
  /// Skipped checks were too large for the caps; they do not fail the run.
  bool skipped = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  std::size_t cxp_count = 0;
  std::size_t axp_count = 0;
  bool passed() const;
};

/// Full invariant suite on one problem: model validity, antichains,
/// hitting-set duality, oracle agreement of the tree algorithms, cover
/// disjointness and completeness, the forest properties, closed forms
/// against the exhaustive engines, and output-relabeling invariance.
VerifyReport verify_problem(const ExplanationProblem& problem, const VerifyOptions& options = {});

}  // namespace axfi
