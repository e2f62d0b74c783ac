#include "axfi/forest.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace axfi {

CxpForest::CxpForest(int feature_count, std::vector<FeatureSet> cxps, std::vector<Rational> weights)
    : feature_count_(feature_count) {
  if (cxps.empty()) throw ArgumentError("a CXp-Forest needs at least one CXp");
  if (cxps.size() != weights.size()) throw ArgumentError("CXp and weight counts differ");
  const FeatureSet all = FeatureSet::full(feature_count);
  for (std::size_t i = 0; i < cxps.size(); ++i) {
    if (cxps[i].empty()) throw ArgumentError("CXp-Forest member is empty");
    if (!cxps[i].is_subset_of(all)) throw ArgumentError("CXp " + to_string(cxps[i]) + " exceeds the feature range");
    if (weights[i] < 0) throw ArgumentError("CXp-Forest weights must be nonnegative");
  }
  if (!is_antichain(cxps)) throw ArgumentError("CXps of a forest must be pairwise incomparable");

  std::vector<std::size_t> order(cxps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return canonical_less(cxps[a], cxps[b]); });
  for (std::size_t i : order) {
    cxps_.push_back(cxps[i]);
    weights_.push_back(std::move(weights[i]));
  }
}

Rational CxpForest::chi(FeatureSet s) const {
  if (!s.is_subset_of(FeatureSet::full(feature_count_))) {
    throw ArgumentError("coalition " + to_string(s) + " exceeds the feature range");
  }
  Rational sum = 0;
  for (std::size_t i = 0; i < cxps_.size(); ++i) {
    if (s.intersects(cxps_[i])) sum += weights_[i];
  }
  return sum / static_cast<long long>(cxps_.size());
}

Rational CxpForest::total() const {
  Rational sum = std::accumulate(weights_.begin(), weights_.end(), Rational(0));
  return sum / static_cast<long long>(cxps_.size());
}

CxpForest CxpForest::with_weights(std::vector<Rational> weights) const {
  return CxpForest(feature_count_, cxps_, std::move(weights));
}

std::string CxpForest::to_dot() const {
  std::ostringstream out;
  out << "digraph cxp_forest {\n  node [shape=circle];\n";
  for (std::size_t t = 0; t < cxps_.size(); ++t) {
    const std::string prefix = "t" + std::to_string(t + 1) + "_";
    out << "  subgraph cluster_" << t + 1 << " {\n";
    out << "    label=\"Y" << t + 1 << " = " << to_string(cxps_[t]) << ", w = " << to_string(weights_[t]) << "\";\n";
    const std::vector<int> members = cxps_[t].members();
    for (std::size_t k = 0; k < members.size(); ++k) {
      const std::string node = prefix + "n" + std::to_string(k);
      const std::string one = prefix + "one" + std::to_string(k);
      out << "    " << node << " [label=\"" << members[k] << "\"];\n";
      out << "    " << one << " [shape=box,label=\"1\"];\n";
      out << "    " << node << " -> " << one << " [label=\"in S\"];\n";
      if (k + 1 < members.size()) {
        out << "    " << node << " -> " << prefix << "n" << k + 1 << " [label=\"not in S\"];\n";
      } else {
        out << "    " << prefix << "zero [shape=box,label=\"0\"];\n";
        out << "    " << node << " -> " << prefix << "zero [label=\"not in S\"];\n";
      }
    }
    out << "  }\n";
  }
  out << "}\n";
  return out.str();
}

CxpForest make_forest(int feature_count, const XpFamily& cxps, const std::vector<CoverMeasure>& measures,
                      WeightMode mode) {
  if (measures.size() != cxps.size()) throw ArgumentError("one measure per CXp is required");
  std::vector<Rational> weights;
  weights.reserve(measures.size());
  for (const auto& m : measures) weights.push_back(weight_of(m, mode));
  return CxpForest(feature_count, cxps.sets, std::move(weights));
}

CxpForest build_forest(const ExplanationProblem& problem, const ForestOptions& options) {
  XpFamily cxps = enumerate_cxps(problem, options.cxp_method, options.limits);
  if (cxps.sets.empty()) {
    throw ArgumentError("the problem has no CXp: every point of the feature space is similar to the instance");
  }
  const int m = problem.feature_count();
  if (options.mode == WeightMode::unweighted) {
    return CxpForest(m, cxps.sets, std::vector<Rational>(cxps.size(), Rational(1)));
  }
  WeightOptions wopts;
  wopts.mode = options.mode;
  wopts.samples = options.samples;
  wopts.seed = options.seed;
  wopts.epsilon = options.epsilon;
  wopts.method = options.cover_method;
  wopts.limits = options.limits;
  return make_forest(m, cxps, compute_weights(problem, cxps, wopts), options.mode);
}

}  // namespace axfi
