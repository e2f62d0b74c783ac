#include "doctest.h"

#include <random>

#include "axfi/synth.hpp"
#include "axfi/xp.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace axfi;

namespace {

using Family = std::vector<FeatureSet>;

/// m features, class 1 iff x_1 = 1.
ExplanationProblem only_first(int m) {
  std::vector<std::vector<int>> doms(static_cast<std::size_t>(m), {0, 1});
  TabularModel t{FeatureSpace(doms), Task::classification};
  for_each_in_subspace(t.space(), Point(static_cast<std::size_t>(m), 0), FeatureSet::full(m), [&](const Point& x) {
    t.set(x, x[0]);
    return true;
  });
  return ExplanationProblem(Model(std::move(t)), Point(static_cast<std::size_t>(m), 1));
}

/// Five binary features, class 0 iff x_1 = 0 or (x_2 = 0 and x_3 = 0).
ExplanationProblem one_or_two_three() {
  std::vector<std::vector<int>> doms(5, {0, 1});
  TabularModel t{FeatureSpace(doms), Task::classification};
  for_each_in_subspace(t.space(), Point(5, 0), FeatureSet::full(5), [&](const Point& x) {
    t.set(x, (x[0] == 0 || (x[1] == 0 && x[2] == 0)) ? 0 : 1);
    return true;
  });
  return ExplanationProblem(Model(std::move(t)), Point(5, 1));
}

}  // namespace

TEST_CASE("weak explanation checks on the running example") {
  const auto p = running_example();
  CHECK(is_waxp(p, FeatureSet{1, 2, 3}));
  CHECK(is_waxp(p, FeatureSet{1, 2}));
  CHECK_FALSE(is_waxp(p, FeatureSet{1}));
  CHECK(is_wcxp(p, FeatureSet{1, 2}));
  CHECK_FALSE(is_wcxp(p, FeatureSet{}));
  CHECK_FALSE(is_wcxp(p, FeatureSet{1}));
  CHECK(is_cxp(p, FeatureSet{2, 3}));
  CHECK_FALSE(is_cxp(p, FeatureSet{1, 2, 3}));
}

TEST_CASE("enumeration on the fixtures") {
  const auto p = running_example();
  const Family triangle = {{1, 2}, {1, 3}, {2, 3}};
  CHECK(enumerate_cxps(p).sets == triangle);
  CHECK(enumerate_axps(p).sets == triangle);
  CHECK(enumerate_axps(p, AxpMethod::brute).sets == triangle);
  CHECK_THROWS_AS(enumerate_cxps(p, CxpMethod::dt_paths), MethodError);

  const auto g = gadget_dt(2);
  const Family gadget_cxps = {{1, 2}, {2, 5}, {3, 4}, {4, 6}};
  CHECK(enumerate_cxps(g, CxpMethod::dt_paths).sets == gadget_cxps);
  CHECK(enumerate_cxps(g, CxpMethod::brute).sets == gadget_cxps);
  const Family gadget_axps = {{1, 3, 5, 6}, {1, 4, 5}, {2, 3, 6}, {2, 4}};
  CHECK(enumerate_axps(g).sets == gadget_axps);
  CHECK(enumerate_axps(g, AxpMethod::brute).sets == gadget_axps);

  CHECK(enumerate_cxps(only_first(3)).sets == Family{{1}});
  CHECK(relevant_features(only_first(3)) == FeatureSet{1});
  CHECK(relevant_features(p) == FeatureSet{1, 2, 3});

  const auto q = one_or_two_three();
  CHECK(enumerate_cxps(q).sets == Family{{1}, {2, 3}});
  CHECK(enumerate_axps(q).sets == Family{{1, 2}, {1, 3}});
  CHECK(relevant_features(q) == FeatureSet{1, 2, 3});
}

TEST_CASE("minimal hitting sets") {
  const Family triangle = {{1, 2}, {1, 3}, {2, 3}};
  CHECK(minimal_hitting_sets(triangle) == triangle);
  CHECK(minimal_hitting_sets(Family{{1}}) == Family{{1}});
  CHECK(minimal_hitting_sets(Family{{1}, {2, 3}}) == Family{{1, 2}, {1, 3}});
  CHECK(minimal_hitting_sets(Family{}) == Family{FeatureSet{}});
  CHECK_THROWS_AS(minimal_hitting_sets(Family{{1}, {}}), ArgumentError);
}

TEST_CASE("hitting sets agree with a subset scan on random families") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 8);
    std::vector<std::uint64_t> masks;
    const int n = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < n; ++i) {
      std::uint64_t s = rng() & ((std::uint64_t{1} << m) - 1);
      if (s == 0) s = 1;
      masks.push_back(s);
    }
    const Family family = oracle::to_sets(masks);
    const Family expected = oracle::hitting_sets_by_scan(masks, m);
    REQUIRE(minimal_hitting_sets(family) == expected);
    CHECK(is_antichain(expected));
    // Dualizing the minimal family twice returns it.
    const Family minimal = oracle::to_sets(oracle::minimal_masks(masks));
    CHECK(minimal_hitting_sets(minimal_hitting_sets(minimal)) == minimal);
  }
}

TEST_CASE("random corpus: enumeration matches the oracles and duality holds") {
  for (int i = 0; i < corpus::kSize; ++i) {
    const auto p = corpus::problem(i);
    CAPTURE(i);
    const auto cx = enumerate_cxps(p);
    const auto ax = enumerate_axps(p);
    REQUIRE(cx.sets == oracle::cxps(p));
    REQUIRE(ax.sets == oracle::axps(p));
    CHECK(is_antichain(cx.sets));
    CHECK(is_antichain(ax.sets));
    CHECK(minimal_hitting_sets(cx.sets) == ax.sets);
    CHECK(minimal_hitting_sets(ax.sets) == cx.sets);
    CHECK(relevant_features(p) == cx.support());
    if (p.model().is_tree()) CHECK(enumerate_cxps(p, CxpMethod::brute).sets == cx.sets);
  }
}

TEST_CASE("weak checks are complementary") {
  for (int i = 0; i < 40; ++i) {
    const auto p = corpus::problem(i);
    const int m = p.feature_count();
    if (m > 8) continue;
    const FeatureSet all = FeatureSet::full(m);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
      const FeatureSet set = FeatureSet::from_mask(s);
      REQUIRE(is_wcxp(p, set) != is_waxp(p, all - set));
    }
  }
}

TEST_CASE("caps raise resource errors") {
  Limits tight;
  tight.max_subset_features = 4;
  CHECK_THROWS_AS(enumerate_cxps(gadget_dt(2), CxpMethod::brute, tight), ResourceError);
  CHECK_THROWS_AS(enumerate_axps(gadget_dt(2), AxpMethod::brute, tight), ResourceError);
  CHECK(enumerate_cxps(gadget_dt(2), CxpMethod::dt_paths, tight).size() == 4);
  tight.max_space_points = 2;
  CHECK_THROWS_AS(is_waxp(running_example(), FeatureSet{1}, tight), ResourceError);
}
