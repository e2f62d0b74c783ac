#pragma once

// Helpers shared by the explanation and cover-counting routines.

#include <algorithm>
#include <cstdint>
#include <string>

#include "axfi/limits.hpp"
#include "axfi/model.hpp"

namespace axfi::detail {

/// Throws ResourceError when the subspace spanned by `free` has more points
/// than the cap allows.
inline void check_space(const FeatureSpace& space, FeatureSet free, const Limits& limits, const char* what) {
  BigInt n = space.subspace_size(free);
  if (n > limits.max_space_points) {
    throw ResourceError(std::string(what) + ": subspace of " + n.str() + " points exceeds the cap of " +
                        std::to_string(limits.max_space_points));
  }
}

inline void check_subset_scan(int m, const Limits& limits, const char* what) {
  if (m > limits.max_subset_features) {
    throw ResourceError(std::string(what) + ": 2^" + std::to_string(m) + " subset scan exceeds the cap of m <= " +
                        std::to_string(limits.max_subset_features));
  }
}

/// Walks the paths of `tree` that stay consistent with the instance on every
/// feature outside `free`. The literals passed on are effective literals
/// (intersections along the path).
template <typename Fn>
void for_each_restricted_path(const DecisionTree& tree, const Point& instance, FeatureSet free, Fn&& fn) {
  tree.for_each_path(
      [&](const PathLiterals& literals, const TreeNode& leaf) { fn(literals, leaf); },
      [&](int feature, const std::vector<int>& literal) {
        if (free.contains(feature)) return true;
        int v = instance[static_cast<std::size_t>(feature - 1)];
        return std::binary_search(literal.begin(), literal.end(), v);
      });
}

/// Calls fn(mask) for every m-bit mask of popcount k, in increasing order.
template <typename Fn>
void for_each_mask_of_size(int m, int k, Fn&& fn) {
  if (k == 0) {
    fn(std::uint64_t{0});
    return;
  }
  if (k > m) return;
  const std::uint64_t limit = m == 64 ? 0 : (std::uint64_t{1} << m);
  std::uint64_t mask = (k == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  while (true) {
    fn(mask);
    // Gosper's hack: next larger integer with the same popcount.
    std::uint64_t c = mask & (~mask + 1);
    std::uint64_t r = mask + c;
    if (r == 0) return;
    mask = (((r ^ mask) >> 2) / c) | r;
    if (limit != 0 && mask >= limit) return;
  }
}

}  // namespace axfi::detail
