#include "doctest.h"

#include <algorithm>
#include <random>

#include "axfi/scores.hpp"
#include "axfi/synth.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace axfi;

namespace {

using R = Rational;
using Values = std::vector<Rational>;

XpFamily family(XpKind kind, std::vector<FeatureSet> sets) {
  canonicalize(sets);
  return XpFamily{kind, std::move(sets)};
}

const XpFamily kTriangle = family(XpKind::axp, {{1, 2}, {1, 3}, {2, 3}});

}  // namespace

TEST_CASE("running example scores") {
  const CxpForest f = build_forest(running_example());
  const Values expected = {R(5, 6), R(1, 2), R(1)};
  CHECK(axfi_shapley(f).values == expected);
  CHECK(axfi_banzhaf(f).values == expected);
  const SetFunction game = SetFunction::of(f);
  CHECK(shapley_exhaustive(game).values == expected);
  CHECK(banzhaf_exhaustive(game).values == expected);
  CHECK(gamma(f) == R(7, 3));
  CHECK(axfi_shapley(f).sum() == f.total());

  const auto perm = oracle::shapley_by_permutations(3, [&](std::uint64_t s) { return f.chi(FeatureSet::from_mask(s)); });
  CHECK(perm == expected);
}

TEST_CASE("exhaustive engines on small games") {
  const SetFunction constant = SetFunction::tabulate(4, [](FeatureSet) { return R(3); });
  CHECK(shapley_exhaustive(constant).values == Values(4, 0));
  CHECK(banzhaf_exhaustive(constant).values == Values(4, 0));

  const CxpForest pair(4, {{1, 2}}, {1});
  CHECK(shapley_exhaustive(SetFunction::of(pair)).values == Values{R(1, 2), R(1, 2), 0, 0});

  const CxpForest triple(3, {{1, 2, 3}}, {1});
  CHECK(banzhaf_exhaustive(SetFunction::of(triple)).values == Values(3, R(1, 4)));
  CHECK(axfi_banzhaf(triple).values == Values(3, R(1, 4)));
  CHECK(gamma(triple) == R(3, 4));
  CHECK(axfi_shapley(triple).values == Values(3, R(1, 3)));

  Limits tight;
  tight.max_exhaustive_features = 3;
  CHECK_THROWS_AS(SetFunction::of(pair, tight), ResourceError);
}

TEST_CASE("counterexample forest") {
  const CxpForest f(3, {{1}, {2, 3}}, {1, 5});
  const ScoreVector s = axfi_shapley(f);
  CHECK(s.at(1) == R(1, 2));
  CHECK(s.at(2) == R(5, 4));
  CHECK(s.at(3) == R(5, 4));

  const XpFamily axps = family(XpKind::axp, {{1, 2}, {1, 3}});
  PropertyContext ctx;
  ctx.axps = &axps;
  const PropertyReport r = check_properties(f, ctx);
  const PropertyCheck* axp = r.find("axp_minimal_monotonicity");
  REQUIRE(axp != nullptr);
  CHECK_FALSE(axp->holds);
  CHECK(axp->informational);
  CHECK(r.passed());
}

TEST_CASE("baseline scores") {
  CHECK(ffa(kTriangle, 3).values == Values(3, R(2, 3)));
  CHECK(wffa(kTriangle, 3).values == Values(3, R(1, 3)));
  CHECK(responsibility(kTriangle, 3).values == Values(3, R(1, 2)));

  const XpFamily single = family(XpKind::axp, {{1}});
  CHECK(ffa(single, 3).values == Values{1, 0, 0});
  CHECK(wffa(single, 3).values == Values{1, 0, 0});
  CHECK(responsibility(single, 3).values == Values{1, 0, 0});

  const XpFamily two = family(XpKind::axp, {{1, 2}, {1, 3}});
  CHECK(ffa(two, 3).values == Values{1, R(1, 2), R(1, 2)});
  CHECK(responsibility(two, 3).values == Values(3, R(1, 2)));

  const XpFamily cx_triangle = family(XpKind::cxp, {{1, 2}, {1, 3}, {2, 3}});
  CHECK(deegan_packel_cxp(cx_triangle, 3).values == Values(3, R(1, 3)));
  CHECK(deegan_packel_cxp(family(XpKind::cxp, {{1}}), 2).values == Values{1, 0});
  CHECK(deegan_packel_cxp(family(XpKind::cxp, {{1}, {2, 3}}), 3).values == Values{R(1, 2), R(1, 4), R(1, 4)});
  CHECK(axfi_shapley(CxpForest(3, cx_triangle.sets, {1, 1, 1})).values == Values(3, R(1, 3)));

  CHECK_THROWS_AS(ffa(family(XpKind::axp, {}), 3), ArgumentError);
  CHECK_THROWS_AS(deegan_packel_cxp(family(XpKind::cxp, {}), 3), ArgumentError);
}

TEST_CASE("exact SHAP") {
  FeatureSpace s({{0, 1}});
  TabularModel t(s, Task::regression);
  t.set({0}, 0);
  t.set({1}, 1);
  ExplanationProblem p(Model(std::move(t)), {1});
  CHECK(shap_exact(p).values == Values{R(1, 2)});

  // Against a direct expectation oracle on the running example and a few
  // random problems.
  auto check = [](const ExplanationProblem& q) {
    const int m = q.feature_count();
    const auto& space = q.space();
    auto value = [&](std::uint64_t fixed) {
      R total = 0;
      long long n = 0;
      for_each_in_subspace(space, q.instance(), FeatureSet::full(m) - FeatureSet::from_mask(fixed), [&](const Point& x) {
        const R y = q.model().evaluate(x);
        total += q.model().task() == Task::classification ? R(y == q.output() ? 1 : 0) : y;
        ++n;
        return true;
      });
      return total / n;
    };
    CHECK(shap_exact(q).values == oracle::shapley_by_permutations(m, value));
  };
  check(running_example());
  for (int i = 0; i < 40; ++i) {
    const auto q = corpus::problem(i);
    if (q.feature_count() <= 6) check(q);
  }

  const auto only_first = [] {
    FeatureSpace sp({{0, 1}, {0, 1, 2}});
    TabularModel tm(sp, Task::classification);
    for_each_in_subspace(sp, {0, 0}, FeatureSet::full(2), [&](const Point& x) {
      tm.set(x, x[0]);
      return true;
    });
    return ExplanationProblem(Model(std::move(tm)), {1, 2});
  }();
  CHECK(shap_exact(only_first).at(2) == 0);
}

TEST_CASE("property report on the fixtures") {
  const auto p = running_example();
  const CxpForest f = build_forest(p);
  PropertyContext ctx;
  ctx.problem = &p;
  const PropertyReport r = check_properties(f, ctx);
  CHECK(r.passed());
  for (const char* name : {"efficiency_shapley", "gamma_efficiency_banzhaf", "null_player", "symmetry",
                           "cxp_minimal_monotonicity", "additivity", "consistency_with_relevancy"}) {
    CAPTURE(name);
    REQUIRE(r.find(name) != nullptr);
    CHECK(r.find(name)->holds);
  }

  const CxpForest zero(3, {{1, 2}, {3}}, {0, 0});
  const PropertyReport rz = check_properties(zero);
  CHECK(rz.find("efficiency_shapley")->holds);
  CHECK(axfi_shapley(zero).values == Values(3, 0));
}

TEST_CASE("Banzhaf is not efficient once a CXp has three members") {
  const CxpForest f(3, {{1, 2, 3}}, {1});
  const PropertyReport r = check_properties(f);
  CHECK_FALSE(r.find("efficiency_banzhaf")->holds);
  CHECK(r.find("gamma_efficiency_banzhaf")->holds);
  CHECK(r.passed());
}

TEST_CASE("random forests: closed forms, efficiency, scaling") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 120; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 6);
    std::vector<std::uint64_t> masks;
    for (int i = 0; i < 1 + static_cast<int>(rng() % 5); ++i) masks.push_back(1 + rng() % ((std::uint64_t{1} << m) - 1));
    const auto cxps = oracle::to_sets(oracle::minimal_masks(masks));
    Values w;
    for (std::size_t i = 0; i < cxps.size(); ++i) w.push_back(R(static_cast<long long>(rng() % 9), 1 + static_cast<long long>(rng() % 4)));
    const CxpForest f(m, cxps, w);
    auto v = [&](std::uint64_t s) { return oracle::chi(f.cxps(), f.weights(), s); };
    const auto phi_s = axfi_shapley(f);
    const auto phi_b = axfi_banzhaf(f);
    REQUIRE(phi_s.values == oracle::shapley_by_permutations(m, v));
    REQUIRE(phi_b.values == oracle::banzhaf_by_subsets(m, v));
    CHECK(phi_s.sum() == f.total());
    CHECK(phi_b.sum() == gamma(f));

    // Scaling every weight by c scales both score vectors by c.
    const R c(7, 3);
    Values scaled;
    for (const auto& x : f.weights()) scaled.push_back(x * c);
    const CxpForest g = f.with_weights(scaled);
    for (int j = 1; j <= m; ++j) {
      CHECK(axfi_shapley(g).at(j) == c * phi_s.at(j));
      CHECK(axfi_banzhaf(g).at(j) == c * phi_b.at(j));
    }

    const bool small = std::all_of(cxps.begin(), cxps.end(), [](FeatureSet y) { return y.size() <= 2; });
    if (small) CHECK(phi_s.values == phi_b.values);
    CHECK(check_properties(f).passed());
  }
}

TEST_CASE("random corpus: scores against the exhaustive engines") {
  for (int i = 0; i < corpus::kSize; ++i) {
    const auto p = corpus::problem(i);
    CAPTURE(i);
    const CxpForest f = build_forest(p);
    const SetFunction game = SetFunction::of(f);
    REQUIRE(axfi_shapley(f).values == shapley_exhaustive(game).values);
    REQUIRE(axfi_banzhaf(f).values == banzhaf_exhaustive(game).values);

    const XpFamily cx = enumerate_cxps(p);
    const XpFamily ax = enumerate_axps(p);
    PropertyContext ctx;
    ctx.problem = &p;
    ctx.axps = &ax;
    const auto report = check_properties(f, ctx);
    for (const auto& c : report.checks) {
      CAPTURE(c.name);
      CAPTURE(c.witness);
      CHECK((c.holds || c.informational));
    }
    ForestOptions o;
    o.mode = WeightMode::unweighted;
    CHECK(axfi_shapley(build_forest(p, o)).values == deegan_packel_cxp(cx, p.feature_count()).values);
    for (int j = 1; j <= p.feature_count(); ++j) {
      CHECK((axfi_shapley(f).at(j) > 0) == cx.support().contains(j));
    }
  }
}

TEST_CASE("score method names") {
  for (auto m : {ScoreMethod::axfi_shapley, ScoreMethod::axfi_banzhaf, ScoreMethod::shapley_exhaustive,
                 ScoreMethod::banzhaf_exhaustive, ScoreMethod::ffa, ScoreMethod::wffa, ScoreMethod::responsibility,
                 ScoreMethod::deegan_packel_cxp, ScoreMethod::shap_exact}) {
    CHECK(parse_score_method(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_score_method("nope"), ArgumentError);
}
