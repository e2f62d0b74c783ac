#include "doctest.h"

#include <cmath>
#include <set>

#include "axfi/adv.hpp"
#include "axfi/synth.hpp"
#include "axfi/xp.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace axfi;

TEST_CASE("l0 distance") {
  CHECK(l0_distance({2, 1, 2}, {2, 1, 2}) == 0);
  CHECK(l0_distance({2, 1, 2}, {1, 0, 2}) == 2);
  CHECK(l0_distance({0, 0, 0}, {1, 1, 1}) == 3);
  CHECK_THROWS_AS(l0_distance({0, 0}, {0}), ArgumentError);
}

TEST_CASE("adversarial examples") {
  const auto p = running_example();
  const std::vector<Point> seven = {{0, 1, 0}, {0, 1, 1}, {1, 0, 2}, {1, 1, 0}, {1, 1, 1}, {2, 0, 0}, {2, 0, 1}};
  CHECK(enumerate_aexs(p, 3) == seven);
  CHECK(enumerate_aexs(p).size() == 7);
  CHECK(enumerate_aexs(p, 0).empty());
  CHECK(enumerate_aexs(p, 1).empty());

  const auto g = gadget_dt(1);
  const std::vector<Point> zeros = {{0, 0, 0}, {0, 0, 1}, {1, 0, 0}};
  CHECK(enumerate_aexs(g, 3) == zeros);
}

TEST_CASE("cover counts on the running example") {
  const auto p = running_example();
  CHECK(cover_count(p, FeatureSet{1, 2}).count == 1);
  CHECK(cover_count(p, FeatureSet{1, 3}).count == 4);
  CHECK(cover_count(p, FeatureSet{2, 3}).count == 2);
  CHECK_THROWS_AS(cover_count(p, FeatureSet{1}), ArgumentError);
  CHECK_THROWS_AS(cover_count(p, FeatureSet{1, 2}, CoverMethod::dt_restrict), MethodError);

  const auto cx = enumerate_cxps(p);
  WeightOptions o;
  const auto counts = compute_weights(p, cx, o);
  CHECK(counts[0].count == 1);
  CHECK(counts[1].count == 4);
  CHECK(counts[2].count == 2);
  CHECK(counts[0].ratio == Rational(1, 6));
  CHECK(counts[1].ratio == Rational(4, 9));
  // {2,3} spans 2 * 3 = 6 points.
  CHECK(counts[2].ratio == Rational(1, 3));
  for (const auto& c : counts) CHECK(c.ratio * p.space().subspace_size(c.cxp) == c.count);
}

TEST_CASE("single flipping coordinate") {
  FeatureSpace s({{0, 1}, {0, 1}});
  TabularModel t(s, Task::classification);
  for_each_in_subspace(s, {0, 0}, FeatureSet::full(2), [&](const Point& x) {
    t.set(x, x[0]);
    return true;
  });
  ExplanationProblem p(Model(std::move(t)), {1, 1});
  const auto m = cover_count(p, FeatureSet{1});
  CHECK(m.count == 1);
  CHECK(m.ratio == Rational(1, 2));
}

TEST_CASE("epsilon below |Y| zeroes the weight") {
  const auto p = running_example();
  WeightOptions o;
  o.epsilon = 1;
  o.mode = WeightMode::sampled;
  o.samples = 100;
  for (const auto& m : compute_weights(p, enumerate_cxps(p), o)) {
    CHECK(m.epsilon_truncated);
    CHECK(m.count == 0);
    CHECK(m.sampled->ratio == 0);
  }
  o.epsilon = 2;
  for (const auto& m : compute_weights(p, enumerate_cxps(p), o)) CHECK_FALSE(m.epsilon_truncated);
}

TEST_CASE("random corpus: cover counts, disjointness and completeness") {
  int tree_pairs = 0;
  for (int i = 0; i < corpus::kSize; ++i) {
    const auto p = corpus::problem(i);
    CAPTURE(i);
    const auto cx = enumerate_cxps(p);
    const auto diffs = oracle::adversarial_diffs(p);
    long long covered_total = 0;
    for (const auto& y : cx.sets) {
      const BigInt expected = oracle::cover(p, y);
      REQUIRE(cover_count(p, y, CoverMethod::brute).count == expected);
      if (p.model().is_tree()) {
        REQUIRE(cover_count(p, y, CoverMethod::dt_restrict).count == expected);
        ++tree_pairs;
      }
      CHECK(expected > 0);
      covered_total += expected.convert_to<long long>();
    }
    // Each covered point differs from v on all of Y and lies in one cover only.
    long long exact = 0;
    for (auto d : diffs) {
      int owners = 0;
      for (const auto& y : cx.sets) owners += (d & ~y.mask()) == 0 ? 1 : 0;
      CHECK(owners <= 1);
      if (owners == 1) {
        CHECK(std::any_of(cx.sets.begin(), cx.sets.end(), [&](FeatureSet y) { return y.mask() == d; }));
      }
      if (std::any_of(cx.sets.begin(), cx.sets.end(), [&](FeatureSet y) { return y.mask() == d; })) ++exact;
    }
    CHECK(exact == covered_total);
  }
  CHECK(tree_pairs >= 200);
}

TEST_CASE("sampled ratios are seeded and near the exact ratio") {
  const auto p = running_example();
  const auto cx = enumerate_cxps(p);
  WeightOptions o;
  o.mode = WeightMode::sampled;
  o.seed = 42;
  const auto a = compute_weights(p, cx, o);
  const auto b = compute_weights(p, cx, o);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].sampled->ratio == b[i].sampled->ratio);
    CHECK(a[i].sampled->samples == 5000);
    const double r = to_double(a[i].ratio);
    CHECK(std::abs(to_double(a[i].sampled->ratio) - r) <= 4 * std::sqrt(r * (1 - r) / 5000));
  }
  CHECK(derive_stream_seed(42, 0) != derive_stream_seed(42, 1));
  o.seed = 43;
  CHECK(compute_weights(p, cx, o)[1].sampled->ratio != a[1].sampled->ratio);
}

TEST_CASE("weight mode names") {
  for (auto mode : {WeightMode::count, WeightMode::ratio, WeightMode::sampled, WeightMode::unweighted}) {
    CHECK(parse_weight_mode(to_string(mode)) == mode);
  }
  CHECK_THROWS_AS(parse_weight_mode("bogus"), ArgumentError);
}
