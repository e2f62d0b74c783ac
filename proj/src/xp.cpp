#include "axfi/xp.hpp"

#include <algorithm>

#include "detail.hpp"

namespace axfi {

std::string_view to_string(XpKind kind) { return kind == XpKind::axp ? "axp" : "cxp"; }

std::vector<FeatureSet> XpFamily::containing(int feature) const {
  std::vector<FeatureSet> out;
  std::copy_if(sets.begin(), sets.end(), std::back_inserter(out), [&](FeatureSet s) { return s.contains(feature); });
  return out;
}

FeatureSet XpFamily::support() const {
  FeatureSet u;
  for (FeatureSet s : sets) u = u | s;
  return u;
}

namespace {

FeatureSet checked_subset(const ExplanationProblem& problem, FeatureSet s) {
  FeatureSet all = FeatureSet::full(problem.feature_count());
  if (!s.is_subset_of(all)) throw ArgumentError("feature set " + to_string(s) + " is not a subset of F");
  return s;
}

bool scan_all_similar(const ExplanationProblem& problem, FeatureSet free, const Limits& limits, const char* what) {
  detail::check_space(problem.space(), free, limits, what);
  return for_each_in_subspace(problem.space(), problem.instance(), free,
                              [&](const Point& x) { return problem.similar(x); });
}

bool tree_is_wcxp(const ExplanationProblem& problem, const DecisionTree& tree, FeatureSet free) {
  bool found = false;
  detail::for_each_restricted_path(tree, problem.instance(), free, [&](const PathLiterals&, const TreeNode& leaf) {
    if (!found && !problem.similar_output(leaf.value)) found = true;
  });
  return found;
}

/// Minimal sets satisfying a monotone predicate, by (cardinality, mask)
/// scan with superset skipping.
template <typename Pred>
std::vector<FeatureSet> minimal_by_scan(int m, Pred&& holds) {
  std::vector<FeatureSet> found;
  for (int k = 0; k <= m; ++k) {
    detail::for_each_mask_of_size(m, k, [&](std::uint64_t mask) {
      FeatureSet s = FeatureSet::from_mask(mask);
      for (FeatureSet f : found) {
        if (f.is_subset_of(s)) return;
      }
      if (holds(s)) found.push_back(s);
    });
  }
  canonicalize(found);
  return found;
}

XpFamily cxps_by_tree_paths(const ExplanationProblem& problem, const DecisionTree& tree) {
  const Point& v = problem.instance();
  std::vector<FeatureSet> candidates;
  tree.for_each_path([&](const PathLiterals& literals, const TreeNode& leaf) {
    if (problem.similar_output(leaf.value)) return;
    FeatureSet blocked;
    for (std::size_t i = 0; i < literals.size(); ++i) {
      const auto& lit = literals[i];
      if (lit && !std::binary_search(lit->begin(), lit->end(), v[i])) blocked.insert(static_cast<int>(i) + 1);
    }
    candidates.push_back(blocked);
  });
  return XpFamily{XpKind::cxp, minimal_elements(std::move(candidates))};
}

}  // namespace

bool is_waxp(const ExplanationProblem& problem, FeatureSet fixed, const Limits& limits) {
  checked_subset(problem, fixed);
  FeatureSet free = FeatureSet::full(problem.feature_count()) - fixed;
  return scan_all_similar(problem, free, limits, "is_waxp");
}

bool is_wcxp(const ExplanationProblem& problem, FeatureSet free, const Limits& limits) {
  checked_subset(problem, free);
  return !scan_all_similar(problem, free, limits, "is_wcxp");
}

bool is_cxp(const ExplanationProblem& problem, FeatureSet candidate, const Limits& limits) {
  checked_subset(problem, candidate);
  auto wcxp = [&](FeatureSet s) {
    if (const auto* tree = problem.model().tree()) return tree_is_wcxp(problem, *tree, s);
    return is_wcxp(problem, s, limits);
  };
  if (!wcxp(candidate)) return false;
  bool minimal = true;
  candidate.for_each([&](int f) {
    if (minimal && wcxp(candidate - FeatureSet{f})) minimal = false;
  });
  return minimal;
}

XpFamily enumerate_cxps(const ExplanationProblem& problem, CxpMethod method, const Limits& limits) {
  const DecisionTree* tree = problem.model().tree();
  if (method == CxpMethod::automatic) method = tree ? CxpMethod::dt_paths : CxpMethod::brute;
  if (method == CxpMethod::dt_paths) {
    if (!tree) throw MethodError("dt_paths CXp enumeration requires a decision tree");
    return cxps_by_tree_paths(problem, *tree);
  }
  const int m = problem.feature_count();
  detail::check_subset_scan(m, limits, "enumerate_cxps");
  return XpFamily{XpKind::cxp, minimal_by_scan(m, [&](FeatureSet s) { return is_wcxp(problem, s, limits); })};
}

XpFamily enumerate_axps(const ExplanationProblem& problem, AxpMethod method, const Limits& limits,
                        CxpMethod cxp_method) {
  if (method == AxpMethod::brute) {
    const int m = problem.feature_count();
    detail::check_subset_scan(m, limits, "enumerate_axps");
    return XpFamily{XpKind::axp, minimal_by_scan(m, [&](FeatureSet s) { return is_waxp(problem, s, limits); })};
  }
  XpFamily cxps = enumerate_cxps(problem, cxp_method, limits);
  return XpFamily{XpKind::axp, minimal_hitting_sets(cxps.sets)};
}

std::vector<FeatureSet> minimal_hitting_sets(std::span<const FeatureSet> family) {
  for (FeatureSet s : family) {
    if (s.empty()) throw ArgumentError("family contains the empty set, which no set can hit");
  }
  // Supersets in the family are hit whenever their subsets are.
  std::vector<FeatureSet> members = minimal_elements({family.begin(), family.end()});

  // Berge's incremental transversal computation. When a minimal transversal
  // h misses the next member E, each h + {e} (e in E) is minimal unless it
  // contains a transversal that already hit E; no two such extensions can
  // coincide or nest.
  std::vector<FeatureSet> current{FeatureSet{}};
  for (FeatureSet member : members) {
    std::vector<FeatureSet> hit;
    std::vector<FeatureSet> miss;
    for (FeatureSet h : current) (h.intersects(member) ? hit : miss).push_back(h);
    std::vector<FeatureSet> next = hit;
    for (FeatureSet h : miss) {
      member.for_each([&](int e) {
        FeatureSet candidate = h | FeatureSet{e};
        bool dominated = std::any_of(hit.begin(), hit.end(), [&](FeatureSet g) { return g.is_subset_of(candidate); });
        if (!dominated) next.push_back(candidate);
      });
    }
    current = std::move(next);
  }
  canonicalize(current);
  return current;
}

FeatureSet relevant_features(const ExplanationProblem& problem, const Limits& limits) {
  return enumerate_axps(problem, AxpMethod::mhs_dual, limits).support();
}

}  // namespace axfi
