#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "axfi/limits.hpp"
#include "axfi/model.hpp"
#include "axfi/xp.hpp"

namespace axfi {

/// Number of coordinates where the points differ. Throws ArgumentError on
/// an arity mismatch.
int l0_distance(const Point& x, const Point& y);

/// Every point within l0 radius epsilon of the instance whose output is
/// distinguishable, in flat-index order. `epsilon` overrides the problem's.
std::vector<Point> enumerate_aexs(const ExplanationProblem& problem, std::optional<int> epsilon = std::nullopt,
                                  const Limits& limits = {});

struct SampledRatio {
  Rational ratio;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

/// The adversarial examples covered by one CXp Y: points equal to the
/// instance outside Y with a distinguishable output.
struct CoverMeasure {
  FeatureSet cxp;
  BigInt count;
  Rational ratio;  // count / prod_{i in Y} |D_i|
  std::optional<SampledRatio> sampled;
  /// Set when the caller's epsilon is below |Y|; count and ratio are then 0.
  bool epsilon_truncated = false;
};

enum class CoverMethod { automatic, brute, dt_restrict };

/// Exact cover of a CXp. dt_restrict relabels leaves, fixes the features
/// outside Y to the instance, and sums the restricted 0-path volumes.
/// Throws ArgumentError if `cxp` is not a CXp of the problem.
CoverMeasure cover_count(const ExplanationProblem& problem, FeatureSet cxp,
                         CoverMethod method = CoverMethod::automatic, const Limits& limits = {});

enum class WeightMode { count, ratio, sampled, unweighted };

std::string_view to_string(WeightMode mode);
WeightMode parse_weight_mode(std::string_view text);

struct WeightOptions {
  WeightMode mode = WeightMode::count;
  std::uint64_t samples = 5000;
  std::uint64_t seed = 0;
  /// When set and below |Y|, the CXp's weight is reported as 0.
  std::optional<int> epsilon;
  CoverMethod method = CoverMethod::automatic;
  Limits limits;
};

/// One measure per CXp, in family order. Sampled mode also fills
/// `sampled` using a per-CXp stream seeded from (seed, index).
std::vector<CoverMeasure> compute_weights(const ExplanationProblem& problem, const XpFamily& cxps,
                                          const WeightOptions& options = {});

/// The forest weight a measure contributes under `mode`.
Rational weight_of(const CoverMeasure& measure, WeightMode mode);

/// Seed of the sampling stream for the CXp at `index` (SplitMix64 mix).
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace axfi
