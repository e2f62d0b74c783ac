#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "axfi/adv.hpp"
#include "axfi/feature_set.hpp"
#include "axfi/rational.hpp"
#include "axfi/xp.hpp"

namespace axfi {

/// The CXp-Forest: CXps Y_1..Y_n over features 1..m with nonnegative
/// weights w_1..w_n. Its characteristic function is
///
///   chi(S) = (1/n) * sum_i [S meets Y_i] * w_i.
///
/// Each CXp stands for a binary tree whose root-to-leaf walk asks "is
/// feature j in S?" for the members of Y_i; the set representation is
/// enough to evaluate chi, so trees are only materialized for to_dot().
class CxpForest {
 public:
  /// Throws ArgumentError unless n >= 1, sizes agree, every CXp is
  /// non-empty and within 1..m, the CXps form an antichain, and all
  /// weights are nonnegative. CXps are reordered canonically together with
  /// their weights.
  CxpForest(int feature_count, std::vector<FeatureSet> cxps, std::vector<Rational> weights);

  int feature_count() const { return feature_count_; }
  std::size_t size() const { return cxps_.size(); }
  const std::vector<FeatureSet>& cxps() const { return cxps_; }
  const std::vector<Rational>& weights() const { return weights_; }

  Rational chi(FeatureSet s) const;
  /// chi(F) = (1/n) * sum w_i.
  Rational total() const;

  /// Same CXps, new weights (in this forest's order).
  CxpForest with_weights(std::vector<Rational> weights) const;

  /// Graphviz rendering with one binary tree per CXp: right edges mean
  /// "feature in S" and end in a 1-leaf, left edges continue to the next
  /// member or end in a 0-leaf.
  std::string to_dot() const;

 private:
  int feature_count_;
  std::vector<FeatureSet> cxps_;
  std::vector<Rational> weights_;
};

struct ForestOptions {
  WeightMode mode = WeightMode::count;
  std::uint64_t samples = 5000;
  std::uint64_t seed = 0;
  std::optional<int> epsilon;
  CxpMethod cxp_method = CxpMethod::automatic;
  CoverMethod cover_method = CoverMethod::automatic;
  Limits limits;
};

/// Enumerates the CXps and weighs each by its AEx cover. Throws
/// ArgumentError when the problem has no CXp at all (every point similar).
CxpForest build_forest(const ExplanationProblem& problem, const ForestOptions& options = {});

/// Forest from an already computed family and its measures.
CxpForest make_forest(int feature_count, const XpFamily& cxps, const std::vector<CoverMeasure>& measures,
                      WeightMode mode);

}  // namespace axfi
