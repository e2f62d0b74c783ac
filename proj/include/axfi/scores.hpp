#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "axfi/forest.hpp"
#include "axfi/limits.hpp"
#include "axfi/model.hpp"
#include "axfi/rational.hpp"
#include "axfi/xp.hpp"

namespace axfi {

enum class ScoreMethod {
  axfi_shapley,
  axfi_banzhaf,
  shapley_exhaustive,
  banzhaf_exhaustive,
  ffa,
  wffa,
  responsibility,
  deegan_packel_cxp,
  shap_exact,
};

std::string_view to_string(ScoreMethod method);
ScoreMethod parse_score_method(std::string_view text);

/// Exact per-feature scores; values[i-1] belongs to feature i.
struct ScoreVector {
  ScoreMethod method;
  std::vector<Rational> values;

  const Rational& at(int feature) const { return values.at(static_cast<std::size_t>(feature - 1)); }
  int feature_count() const { return static_cast<int>(values.size()); }
  Rational sum() const;
};

/// A characteristic function over the subsets of {1..m}, tabulated by mask.
class SetFunction {
 public:
  SetFunction(int feature_count, std::vector<Rational> values);

  /// Evaluates fn on all 2^m coalitions. Throws ResourceError when m is
  /// above the exhaustive cap.
  static SetFunction tabulate(int feature_count, const std::function<Rational(FeatureSet)>& fn,
                              const Limits& limits = {});
  static SetFunction of(const CxpForest& forest, const Limits& limits = {});

  int feature_count() const { return feature_count_; }
  const Rational& operator()(FeatureSet s) const { return values_[s.mask()]; }

 private:
  int feature_count_;
  std::vector<Rational> values_;
};

// Power indices evaluated term by term over every coalition.
ScoreVector shapley_exhaustive(const SetFunction& game);
ScoreVector banzhaf_exhaustive(const SetFunction& game);

// Closed forms on a CXp-Forest:
//   phi_S(j) = (1/n) sum_{Y_i containing j} w_i / |Y_i|
//   phi_B(j) = (1/n) sum_{Y_i containing j} w_i / 2^(|Y_i|-1)
ScoreVector axfi_shapley(const CxpForest& forest);
ScoreVector axfi_banzhaf(const CxpForest& forest);

/// Sum of the Banzhaf-like scores, accumulated per CXp as
/// (1/n) sum_i w_i |Y_i| / 2^(|Y_i|-1).
Rational gamma(const CxpForest& forest);

// AXp-based baselines. Each throws ArgumentError on an empty family.
ScoreVector ffa(const XpFamily& axps, int feature_count);
ScoreVector wffa(const XpFamily& axps, int feature_count);
ScoreVector responsibility(const XpFamily& axps, int feature_count);

/// (1/n) sum over the feature's CXps of 1/|Y|.
ScoreVector deegan_packel_cxp(const XpFamily& cxps, int feature_count);

/// Shapley values of chi_e(S) = E[tau | x_S = v_S] under the uniform
/// product distribution. Classification uses tau = [kappa(x) = q].
ScoreVector shap_exact(const ExplanationProblem& problem, const Limits& limits = {});

struct PropertyCheck {
  std::string name;
  bool holds = true;
  /// Informational checks report a result without gating the suite (the
  /// property is known not to hold in general).
  bool informational = false;
  std::string witness;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;

  /// True iff every non-informational check holds.
  bool passed() const;
  const PropertyCheck* find(std::string_view name) const;
};

struct PropertyContext {
  /// Enables the relevancy check (and the AXp check when `axps` is unset).
  const ExplanationProblem* problem = nullptr;
  /// AXps for the AXp-minimal monotonicity check.
  const XpFamily* axps = nullptr;
  Limits limits;
};

/// Axiom checks for both AxFi scores on one forest: efficiency,
/// gamma-efficiency, null player, symmetry, CXp-minimal monotonicity,
/// additivity, and (with a problem) consistency with relevancy.
/// AXp-minimal monotonicity and plain Banzhaf efficiency are reported as
/// informational.
PropertyReport check_properties(const CxpForest& forest, const PropertyContext& context = {});

}  // namespace axfi
