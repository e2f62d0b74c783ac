#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace axfi {

/// A set of feature indices drawn from {1, ..., 64}, stored as a bitmask.
/// Feature i occupies bit i-1. The canonical member order is ascending.
class FeatureSet {
 public:
  static constexpr int kMaxFeatures = 64;

  constexpr FeatureSet() = default;
  FeatureSet(std::initializer_list<int> members);
  explicit FeatureSet(const std::vector<int>& members);

  static constexpr FeatureSet from_mask(std::uint64_t mask) {
    FeatureSet s;
    s.mask_ = mask;
    return s;
  }
  /// {1, ..., m}
  static FeatureSet full(int m);

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr int size() const { return std::popcount(mask_); }

  bool contains(int feature) const;
  void insert(int feature);
  void erase(int feature);

  constexpr bool is_subset_of(FeatureSet other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr bool intersects(FeatureSet other) const { return (mask_ & other.mask_) != 0; }

  std::vector<int> members() const;

  friend constexpr FeatureSet operator|(FeatureSet a, FeatureSet b) { return from_mask(a.mask_ | b.mask_); }
  friend constexpr FeatureSet operator&(FeatureSet a, FeatureSet b) { return from_mask(a.mask_ & b.mask_); }
  /// Set difference.
  friend constexpr FeatureSet operator-(FeatureSet a, FeatureSet b) { return from_mask(a.mask_ & ~b.mask_); }
  friend constexpr bool operator==(FeatureSet a, FeatureSet b) = default;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::uint64_t rest = mask_; rest != 0; rest &= rest - 1) {
      fn(std::countr_zero(rest) + 1);
    }
  }

 private:
  std::uint64_t mask_ = 0;
};

/// Lexicographic order on the ascending member sequences; a proper prefix
/// sorts first, so {1} < {1,2} < {1,3} < {2}.
bool canonical_less(FeatureSet a, FeatureSet b);

/// "{1,2,3}"
std::string to_string(FeatureSet s);

/// Sorts into canonical order and drops duplicates.
void canonicalize(std::vector<FeatureSet>& sets);

/// Keeps only the subset-minimal members, in canonical order.
std::vector<FeatureSet> minimal_elements(std::vector<FeatureSet> sets);

bool is_antichain(const std::vector<FeatureSet>& sets);

}  // namespace axfi
