#include "axfi/verify.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "axfi/forest.hpp"
#include "axfi/scores.hpp"
#include "axfi/synth.hpp"
#include "axfi/xp.hpp"

namespace axfi {

namespace {

std::string family_text(const std::vector<FeatureSet>& sets) {
  std::string out = "[";
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (i) out += ",";
    out += to_string(sets[i]);
    if (i == 7 && sets.size() > 8) return out + ",...]";
  }
  return out + "]";
}

std::set<Rational> model_outputs(const Model& model) {
  std::set<Rational> out;
  if (const auto* t = model.tabular()) {
    for (const auto& e : t->table()) {
      if (e) out.insert(*e);
    }
  } else {
    for (const auto& n : model.tree()->nodes()) {
      if (n.is_leaf()) out.insert(n.value);
    }
  }
  return out;
}

class Suite {
 public:
  void add(std::string name, bool passed, std::string detail = {}) {
    report_.checks.push_back(VerifyCheck{std::move(name), passed, false, std::move(detail)});
  }
  void skip(std::string name, std::string why) {
    report_.checks.push_back(VerifyCheck{std::move(name), true, true, std::move(why)});
  }
  VerifyReport& report() { return report_; }

 private:
  VerifyReport report_;
};

bool space_fits(const ExplanationProblem& problem, const Limits& limits) {
  return problem.space().cardinality() <= limits.max_space_points;
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

VerifyReport verify_problem(const ExplanationProblem& problem, const VerifyOptions& options) {
  Suite suite;
  const Limits& limits = options.limits;
  const int m = problem.feature_count();
  const Model& model = problem.model();

  const Diagnostics diag = validate(model);
  suite.add("model_valid", diag.ok(), diag.ok() ? "" : diag.violations.front());
  if (!diag.ok()) return suite.report();

  const XpFamily cxps = enumerate_cxps(problem, CxpMethod::automatic, limits);
  const XpFamily axps = enumerate_axps(problem, AxpMethod::mhs_dual, limits);
  suite.report().cxp_count = cxps.size();
  suite.report().axp_count = axps.size();
  suite.add("cxp_antichain", is_antichain(cxps.sets));
  suite.add("axp_antichain", is_antichain(axps.sets));

  if (cxps.sets.empty()) {
    // Nothing is distinguishable: the only AXp is the empty set.
    suite.add("duality", axps.sets == std::vector<FeatureSet>{FeatureSet{}}, "A = " + family_text(axps.sets));
  } else {
    const auto back = minimal_hitting_sets(axps.sets);
    suite.add("duality", back == cxps.sets, "mhs(A) = " + family_text(back));
  }

  if (m <= limits.max_subset_features && space_fits(problem, limits)) {
    const XpFamily brute = enumerate_axps(problem, AxpMethod::brute, limits);
    suite.add("axp_brute_equivalence", brute.sets == axps.sets, "brute = " + family_text(brute.sets));
  } else {
    suite.skip("axp_brute_equivalence", "above the subset or space cap");
  }

  if (model.is_tree()) {
    if (m <= limits.max_subset_features && space_fits(problem, limits)) {
      const XpFamily brute = enumerate_cxps(problem, CxpMethod::brute, limits);
      suite.add("cxp_tree_paths_equivalence", brute.sets == cxps.sets, "brute = " + family_text(brute.sets));
    } else {
      suite.skip("cxp_tree_paths_equivalence", "above the subset or space cap");
    }
  }

  constexpr int kComplementCap = 10;
  if (m <= kComplementCap && space_fits(problem, limits)) {
    const FeatureSet all = FeatureSet::full(m);
    std::string witness;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m) && witness.empty(); ++mask) {
      const FeatureSet s = FeatureSet::from_mask(mask);
      if (is_wcxp(problem, s, limits) == is_waxp(problem, all - s, limits)) witness = to_string(s);
    }
    suite.add("weak_complement", witness.empty(), witness.empty() ? "" : "fails at " + witness);
  } else {
    suite.skip("weak_complement", "more than 10 features or above the space cap");
  }

  suite.add("relevancy", cxps.support() == axps.support(),
            "cxp support " + to_string(cxps.support()) + ", axp support " + to_string(axps.support()));

  if (cxps.sets.empty()) {
    suite.skip("covers", "no CXps");
    return suite.report();
  }

  WeightOptions wopts;
  wopts.mode = options.mode;
  wopts.samples = options.samples;
  wopts.seed = options.seed;
  wopts.limits = limits;
  wopts.epsilon = problem.epsilon_setting();
  const std::vector<CoverMeasure> measures = compute_weights(problem, cxps, wopts);

  if (space_fits(problem, limits)) {
    if (model.is_tree()) {
      std::string witness;
      for (const auto& y : cxps.sets) {
        const BigInt tree = cover_count(problem, y, CoverMethod::dt_restrict, limits).count;
        const BigInt brute = cover_count(problem, y, CoverMethod::brute, limits).count;
        if (tree != brute) witness = to_string(y) + ": " + to_string(tree) + " vs " + to_string(brute);
      }
      suite.add("cover_tree_equivalence", witness.empty(), witness);
    }

    // Every point whose difference set with v is a CXp lies in exactly one
    // cover; no other point lies in any.
    std::map<std::uint64_t, std::size_t> owner;
    for (std::size_t i = 0; i < cxps.size(); ++i) owner[cxps.sets[i].mask()] = i;
    std::vector<BigInt> seen(cxps.size(), 0);
    bool disjoint = true;
    for (const Point& x : enumerate_aexs(problem, m, limits)) {
      FeatureSet diff;
      for (int f = 1; f <= m; ++f) {
        if (x[static_cast<std::size_t>(f - 1)] != problem.instance()[static_cast<std::size_t>(f - 1)]) diff.insert(f);
      }
      std::size_t holders = 0;
      for (std::size_t i = 0; i < cxps.size(); ++i) {
        if (diff.is_subset_of(cxps.sets[i])) ++holders;
      }
      if (holders > 1) disjoint = false;
      auto it = owner.find(diff.mask());
      if (it != owner.end()) seen[it->second] += 1;
    }
    suite.add("cover_disjointness", disjoint);
    std::string witness;
    for (std::size_t i = 0; i < cxps.size(); ++i) {
      if (seen[i] != cover_count(problem, cxps.sets[i], CoverMethod::brute, limits).count || seen[i] == 0) {
        witness = to_string(cxps.sets[i]);
      }
    }
    suite.add("cover_completeness", witness.empty(), witness.empty() ? "" : "mismatch at " + witness);
  } else {
    suite.skip("cover_completeness", "above the space cap");
  }

  const CxpForest forest = make_forest(m, cxps, measures, options.mode);
  PropertyContext ctx;
  ctx.problem = &problem;
  ctx.axps = &axps;
  ctx.limits = limits;
  const PropertyReport props = check_properties(forest, ctx);
  for (const auto& c : props.checks) {
    suite.add("property:" + c.name, c.holds || c.informational, c.witness);
  }

  const ScoreVector phi_s = axfi_shapley(forest);
  const ScoreVector phi_b = axfi_banzhaf(forest);
  if (m <= limits.max_exhaustive_features) {
    const SetFunction game = SetFunction::of(forest, limits);
    suite.add("shapley_closed_form", shapley_exhaustive(game).values == phi_s.values);
    suite.add("banzhaf_closed_form", banzhaf_exhaustive(game).values == phi_b.values);
  } else {
    suite.skip("closed_form", "above the exhaustive cap");
  }

  const CxpForest unweighted = make_forest(m, cxps, measures, WeightMode::unweighted);
  suite.add("unweighted_deegan_packel", axfi_shapley(unweighted).values == deegan_packel_cxp(cxps, m).values);

  if (options.check_relabel && model.task() == Task::classification) {
    // Cyclic shift of the class labels.
    const std::set<Rational> classes = model_outputs(model);
    std::map<Rational, Rational> shift;
    for (auto it = classes.begin(); it != classes.end(); ++it) {
      auto next = std::next(it);
      shift[*it] = next == classes.end() ? *classes.begin() : *next;
    }
    ExplanationProblem relabeled(relabel_outputs(model, shift), problem.instance(), problem.delta(),
                                 problem.epsilon_setting());
    const XpFamily cxps2 = enumerate_cxps(relabeled, CxpMethod::automatic, limits);
    const CxpForest forest2 = make_forest(m, cxps2, compute_weights(relabeled, cxps2, wopts), options.mode);
    const bool same = cxps2 == cxps && forest2.weights() == forest.weights() &&
                      axfi_shapley(forest2).values == phi_s.values && axfi_banzhaf(forest2).values == phi_b.values;
    suite.add("relabel_invariance", same);
  } else {
    suite.skip("relabel_invariance", "regression model or disabled");
  }
  return suite.report();
}

}  // namespace axfi
