#include "axfi/feature_set.hpp"

#include <algorithm>

#include "axfi/error.hpp"

namespace axfi {

namespace {

void check_index(int feature) {
  if (feature < 1 || feature > FeatureSet::kMaxFeatures) {
    throw ArgumentError("feature index " + std::to_string(feature) + " outside 1.." +
                        std::to_string(FeatureSet::kMaxFeatures));
  }
}

}  // namespace

FeatureSet::FeatureSet(std::initializer_list<int> members) {
  for (int f : members) insert(f);
}

FeatureSet::FeatureSet(const std::vector<int>& members) {
  for (int f : members) insert(f);
}

FeatureSet FeatureSet::full(int m) {
  if (m < 0 || m > kMaxFeatures) throw ArgumentError("feature count out of range");
  return from_mask(m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1);
}

bool FeatureSet::contains(int feature) const {
  if (feature < 1 || feature > kMaxFeatures) return false;
  return (mask_ >> (feature - 1)) & 1U;
}

void FeatureSet::insert(int feature) {
  check_index(feature);
  mask_ |= std::uint64_t{1} << (feature - 1);
}

void FeatureSet::erase(int feature) {
  check_index(feature);
  mask_ &= ~(std::uint64_t{1} << (feature - 1));
}

std::vector<int> FeatureSet::members() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for_each([&](int f) { out.push_back(f); });
  return out;
}

bool canonical_less(FeatureSet a, FeatureSet b) {
  // Walk both ascending member lists in lockstep.
  std::uint64_t x = a.mask();
  std::uint64_t y = b.mask();
  while (x != 0 && y != 0) {
    int fx = std::countr_zero(x);
    int fy = std::countr_zero(y);
    if (fx != fy) return fx < fy;
    x &= x - 1;
    y &= y - 1;
  }
  return x == 0 && y != 0;
}

std::string to_string(FeatureSet s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](int f) {
    if (!first) out += ',';
    out += std::to_string(f);
    first = false;
  });
  return out + "}";
}

void canonicalize(std::vector<FeatureSet>& sets) {
  std::sort(sets.begin(), sets.end(), canonical_less);
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

std::vector<FeatureSet> minimal_elements(std::vector<FeatureSet> sets) {
  std::sort(sets.begin(), sets.end(), [](FeatureSet a, FeatureSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return canonical_less(a, b);
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<FeatureSet> kept;
  for (FeatureSet s : sets) {
    bool dominated = std::any_of(kept.begin(), kept.end(), [&](FeatureSet k) { return k.is_subset_of(s); });
    if (!dominated) kept.push_back(s);
  }
  std::sort(kept.begin(), kept.end(), canonical_less);
  return kept;
}

bool is_antichain(const std::vector<FeatureSet>& sets) {
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (i != j && sets[i].is_subset_of(sets[j])) return false;
    }
  }
  return true;
}

}  // namespace axfi
