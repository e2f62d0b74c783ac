#pragma once

#include <cstdint>

namespace axfi {

/// Enumeration caps shared by every exhaustive routine.
struct Limits {
  /// Largest m for which 2^m subset scans are attempted.
  int max_subset_features = 22;
  /// Largest number of points visited by one scan of a (sub)space.
  std::uint64_t max_space_points = 10'000'000;
  /// Largest m for the exhaustive Shapley/Banzhaf engines.
  int max_exhaustive_features = 16;
};

}  // namespace axfi
