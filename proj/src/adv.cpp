#include "axfi/adv.hpp"

#include <random>

#include "detail.hpp"

namespace axfi {

int l0_distance(const Point& x, const Point& y) {
  if (x.size() != y.size()) {
    throw ArgumentError("l0 distance of points with arity " + std::to_string(x.size()) + " and " +
                        std::to_string(y.size()));
  }
  int d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d += x[i] != y[i] ? 1 : 0;
  return d;
}

std::vector<Point> enumerate_aexs(const ExplanationProblem& problem, std::optional<int> epsilon, const Limits& limits) {
  const int radius = epsilon.value_or(problem.epsilon());
  const int m = problem.feature_count();
  detail::check_space(problem.space(), FeatureSet::full(m), limits, "enumerate_aexs");
  std::vector<Point> out;
  for_each_in_subspace(problem.space(), problem.instance(), FeatureSet::full(m), [&](const Point& x) {
    if (l0_distance(x, problem.instance()) <= radius && !problem.similar(x)) out.push_back(x);
    return true;
  });
  return out;
}

std::string_view to_string(WeightMode mode) {
  switch (mode) {
    case WeightMode::count: return "count";
    case WeightMode::ratio: return "ratio";
    case WeightMode::sampled: return "sampled";
    case WeightMode::unweighted: return "unweighted";
  }
  return "count";
}

WeightMode parse_weight_mode(std::string_view text) {
  if (text == "count") return WeightMode::count;
  if (text == "ratio") return WeightMode::ratio;
  if (text == "sampled") return WeightMode::sampled;
  if (text == "unweighted") return WeightMode::unweighted;
  throw ArgumentError("unknown weight mode '" + std::string(text) + "'");
}

namespace {

BigInt brute_cover(const ExplanationProblem& problem, FeatureSet cxp, const Limits& limits) {
  detail::check_space(problem.space(), cxp, limits, "cover_count");
  BigInt count = 0;
  for_each_in_subspace(problem.space(), problem.instance(), cxp, [&](const Point& x) {
    if (!problem.similar(x)) ++count;
    return true;
  });
  return count;
}

BigInt tree_cover(const ExplanationProblem& problem, const DecisionTree& tree, FeatureSet cxp) {
  // Paths of the restricted tree partition the Y-subspace, so per-path
  // volumes of distinguishable leaves add up without double counting.
  const FeatureSpace& space = tree.space();
  BigInt count = 0;
  detail::for_each_restricted_path(tree, problem.instance(), cxp, [&](const PathLiterals& literals,
                                                                      const TreeNode& leaf) {
    if (problem.similar_output(leaf.value)) return;
    BigInt volume = 1;
    cxp.for_each([&](int f) {
      const auto& lit = literals[static_cast<std::size_t>(f - 1)];
      volume *= lit ? lit->size() : space.domain_size(f);
    });
    count += volume;
  });
  return count;
}

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  // Rejection sampling keeps the draw exactly uniform on [0, n).
  const std::uint64_t threshold = (~n + 1) % n;
  while (true) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

SampledRatio sample_cover(const ExplanationProblem& problem, FeatureSet cxp, std::uint64_t samples,
                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const FeatureSpace& space = problem.space();
  const std::vector<int> members = cxp.members();
  Point x = problem.instance();
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (int f : members) {
      const auto& dom = space.domain(f);
      x[static_cast<std::size_t>(f - 1)] = dom[bounded(rng, dom.size())];
    }
    if (!problem.similar(x)) ++hits;
  }
  return SampledRatio{Rational(hits, samples), samples, seed};
}

}  // namespace

CoverMeasure cover_count(const ExplanationProblem& problem, FeatureSet cxp, CoverMethod method,
                         const Limits& limits) {
  const DecisionTree* tree = problem.model().tree();
  if (method == CoverMethod::automatic) method = tree ? CoverMethod::dt_restrict : CoverMethod::brute;
  if (method == CoverMethod::dt_restrict && !tree) throw MethodError("dt_restrict requires a decision tree");
  if (!is_cxp(problem, cxp, limits)) throw ArgumentError(to_string(cxp) + " is not a CXp of the problem");

  CoverMeasure out;
  out.cxp = cxp;
  out.count = method == CoverMethod::dt_restrict ? tree_cover(problem, *tree, cxp) : brute_cover(problem, cxp, limits);
  out.ratio = Rational(out.count, problem.space().subspace_size(cxp));
  return out;
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<CoverMeasure> compute_weights(const ExplanationProblem& problem, const XpFamily& cxps,
                                          const WeightOptions& options) {
  if (cxps.kind != XpKind::cxp) throw ArgumentError("weights are defined over a CXp family");
  if (options.mode == WeightMode::sampled && options.samples < 1) {
    throw ArgumentError("sampled weights need at least one sample");
  }
  std::vector<CoverMeasure> out;
  out.reserve(cxps.size());
  for (std::size_t i = 0; i < cxps.sets.size(); ++i) {
    FeatureSet y = cxps.sets[i];
    CoverMeasure measure = cover_count(problem, y, options.method, options.limits);
    if (options.mode == WeightMode::sampled) {
      measure.sampled = sample_cover(problem, y, options.samples, derive_stream_seed(options.seed, i));
    }
    if (options.epsilon && *options.epsilon < y.size()) {
      // Covered points sit at l0 distance |Y|, outside the requested radius.
      measure.count = 0;
      measure.ratio = 0;
      if (measure.sampled) measure.sampled->ratio = 0;
      measure.epsilon_truncated = true;
    }
    out.push_back(std::move(measure));
  }
  return out;
}

Rational weight_of(const CoverMeasure& measure, WeightMode mode) {
  switch (mode) {
    case WeightMode::count: return Rational(measure.count);
    case WeightMode::ratio: return measure.ratio;
    case WeightMode::sampled:
      if (!measure.sampled) throw ArgumentError("measure has no sampled ratio");
      return measure.sampled->ratio;
    case WeightMode::unweighted: return 1;
  }
  return 1;
}

}  // namespace axfi
