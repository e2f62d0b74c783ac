#include "axfi/scores.hpp"

#include <algorithm>
#include <numeric>

#include "detail.hpp"

namespace axfi {

namespace {

constexpr std::pair<ScoreMethod, std::string_view> kMethodNames[] = {
    {ScoreMethod::axfi_shapley, "axfi_shapley"},
    {ScoreMethod::axfi_banzhaf, "axfi_banzhaf"},
    {ScoreMethod::shapley_exhaustive, "shapley_exhaustive"},
    {ScoreMethod::banzhaf_exhaustive, "banzhaf_exhaustive"},
    {ScoreMethod::ffa, "ffa"},
    {ScoreMethod::wffa, "wffa"},
    {ScoreMethod::responsibility, "responsibility"},
    {ScoreMethod::deegan_packel_cxp, "deegan_packel_cxp"},
    {ScoreMethod::shap_exact, "shap_exact"},
};

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

Rational two_pow(unsigned e) { return Rational(BigInt(1) << e); }

void require_nonempty(const XpFamily& family, const char* what) {
  if (family.sets.empty()) throw ArgumentError(std::string(what) + " needs a non-empty family");
}

void check_family_range(const XpFamily& family, int m) {
  const FeatureSet all = FeatureSet::full(m);
  for (FeatureSet s : family.sets) {
    if (!s.is_subset_of(all)) throw ArgumentError("family member " + to_string(s) + " exceeds the feature range");
  }
}

}  // namespace

std::string_view to_string(ScoreMethod method) {
  for (const auto& [m, name] : kMethodNames) {
    if (m == method) return name;
  }
  return "unknown";
}

ScoreMethod parse_score_method(std::string_view text) {
  for (const auto& [m, name] : kMethodNames) {
    if (name == text) return m;
  }
  throw ArgumentError("unknown score method '" + std::string(text) + "'");
}

Rational ScoreVector::sum() const { return std::accumulate(values.begin(), values.end(), Rational(0)); }

// ---------------------------------------------------------------------------
// Set functions and the exhaustive engines

SetFunction::SetFunction(int feature_count, std::vector<Rational> values)
    : feature_count_(feature_count), values_(std::move(values)) {
  if (feature_count_ < 1 || feature_count_ > 30) throw ArgumentError("set function arity out of range");
  if (values_.size() != (std::size_t{1} << feature_count_)) {
    throw ArgumentError("set function table must have 2^m entries");
  }
}

SetFunction SetFunction::tabulate(int feature_count, const std::function<Rational(FeatureSet)>& fn,
                                  const Limits& limits) {
  if (feature_count > limits.max_exhaustive_features) {
    throw ResourceError("exhaustive evaluation over 2^" + std::to_string(feature_count) +
                        " coalitions exceeds the cap of m <= " + std::to_string(limits.max_exhaustive_features));
  }
  std::vector<Rational> values(std::size_t{1} << feature_count);
  for (std::uint64_t mask = 0; mask < values.size(); ++mask) values[mask] = fn(FeatureSet::from_mask(mask));
  return SetFunction(feature_count, std::move(values));
}

SetFunction SetFunction::of(const CxpForest& forest, const Limits& limits) {
  return tabulate(forest.feature_count(), [&](FeatureSet s) { return forest.chi(s); }, limits);
}

namespace {

/// sum_{S not containing i} coef(|S|) * (v(S + i) - v(S)), with the marginal
/// contributions grouped by coalition size first.
template <typename Coef>
ScoreVector power_index(const SetFunction& game, ScoreMethod method, Coef&& coef) {
  const int m = game.feature_count();
  ScoreVector out{method, std::vector<Rational>(static_cast<std::size_t>(m))};
  const std::uint64_t count = std::uint64_t{1} << m;
  for (int i = 1; i <= m; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << (i - 1);
    std::vector<Rational> by_size(static_cast<std::size_t>(m));
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      if (mask & bit) continue;
      const auto s = FeatureSet::from_mask(mask);
      by_size[static_cast<std::size_t>(s.size())] += game(FeatureSet::from_mask(mask | bit)) - game(s);
    }
    Rational phi = 0;
    for (int k = 0; k < m; ++k) phi += coef(k) * by_size[static_cast<std::size_t>(k)];
    out.values[static_cast<std::size_t>(i - 1)] = phi;
  }
  return out;
}

}  // namespace

ScoreVector shapley_exhaustive(const SetFunction& game) {
  const int m = game.feature_count();
  std::vector<Rational> coef;
  for (int k = 0; k < m; ++k) {
    coef.emplace_back(BigInt(1), BigInt(m) * binomial(static_cast<unsigned>(m - 1), static_cast<unsigned>(k)));
  }
  return power_index(game, ScoreMethod::shapley_exhaustive, [&](int k) { return coef[static_cast<std::size_t>(k)]; });
}

ScoreVector banzhaf_exhaustive(const SetFunction& game) {
  const Rational c = 1 / two_pow(static_cast<unsigned>(game.feature_count() - 1));
  return power_index(game, ScoreMethod::banzhaf_exhaustive, [&](int) { return c; });
}

// ---------------------------------------------------------------------------
// Closed forms

namespace {

template <typename Share>
ScoreVector per_cxp_share(const CxpForest& forest, ScoreMethod method, Share&& share) {
  ScoreVector out{method, std::vector<Rational>(static_cast<std::size_t>(forest.feature_count()))};
  const long long n = static_cast<long long>(forest.size());
  for (std::size_t i = 0; i < forest.size(); ++i) {
    const FeatureSet y = forest.cxps()[i];
    const Rational s = share(forest.weights()[i], y.size()) / n;
    y.for_each([&](int j) { out.values[static_cast<std::size_t>(j - 1)] += s; });
  }
  return out;
}

}  // namespace

ScoreVector axfi_shapley(const CxpForest& forest) {
  return per_cxp_share(forest, ScoreMethod::axfi_shapley, [](const Rational& w, int size) { return w / size; });
}

ScoreVector axfi_banzhaf(const CxpForest& forest) {
  return per_cxp_share(forest, ScoreMethod::axfi_banzhaf,
                       [](const Rational& w, int size) { return w / two_pow(static_cast<unsigned>(size - 1)); });
}

Rational gamma(const CxpForest& forest) {
  Rational g = 0;
  for (std::size_t i = 0; i < forest.size(); ++i) {
    const int size = forest.cxps()[i].size();
    g += forest.weights()[i] * size / two_pow(static_cast<unsigned>(size - 1));
  }
  return g / static_cast<long long>(forest.size());
}

// ---------------------------------------------------------------------------
// Baselines

ScoreVector ffa(const XpFamily& axps, int feature_count) {
  require_nonempty(axps, "ffa");
  check_family_range(axps, feature_count);
  ScoreVector out{ScoreMethod::ffa, std::vector<Rational>(static_cast<std::size_t>(feature_count))};
  const Rational share(1, static_cast<long long>(axps.size()));
  for (FeatureSet s : axps.sets) s.for_each([&](int j) { out.values[static_cast<std::size_t>(j - 1)] += share; });
  return out;
}

ScoreVector wffa(const XpFamily& axps, int feature_count) {
  require_nonempty(axps, "wffa");
  check_family_range(axps, feature_count);
  ScoreVector out{ScoreMethod::wffa, std::vector<Rational>(static_cast<std::size_t>(feature_count))};
  const long long n = static_cast<long long>(axps.size());
  for (FeatureSet s : axps.sets) {
    const Rational share(1, n * s.size());
    s.for_each([&](int j) { out.values[static_cast<std::size_t>(j - 1)] += share; });
  }
  return out;
}

ScoreVector responsibility(const XpFamily& axps, int feature_count) {
  require_nonempty(axps, "responsibility");
  check_family_range(axps, feature_count);
  ScoreVector out{ScoreMethod::responsibility, std::vector<Rational>(static_cast<std::size_t>(feature_count))};
  for (FeatureSet s : axps.sets) {
    const Rational r(1, s.size());
    s.for_each([&](int j) {
      auto& v = out.values[static_cast<std::size_t>(j - 1)];
      v = std::max(v, r);
    });
  }
  return out;
}

ScoreVector deegan_packel_cxp(const XpFamily& cxps, int feature_count) {
  require_nonempty(cxps, "deegan_packel_cxp");
  check_family_range(cxps, feature_count);
  ScoreVector out{ScoreMethod::deegan_packel_cxp, std::vector<Rational>(static_cast<std::size_t>(feature_count))};
  const long long n = static_cast<long long>(cxps.size());
  for (FeatureSet s : cxps.sets) {
    const Rational share(1, n * s.size());
    s.for_each([&](int j) { out.values[static_cast<std::size_t>(j - 1)] += share; });
  }
  return out;
}

ScoreVector shap_exact(const ExplanationProblem& problem, const Limits& limits) {
  const FeatureSpace& space = problem.space();
  const int m = problem.feature_count();
  if (m > limits.max_exhaustive_features) {
    throw ResourceError("shap_exact: m = " + std::to_string(m) + " exceeds the exhaustive cap");
  }
  // Total work is prod (1 + |D_i|) model lookups.
  BigInt work = 1;
  for (int f = 1; f <= m; ++f) work *= space.domain_size(f) + 1;
  if (work > limits.max_space_points) {
    throw ResourceError("shap_exact: " + work.str() + " conditional lookups exceed the cap");
  }

  auto tau = [&](const Point& x) -> Rational {
    Rational y = problem.model().evaluate(x);
    if (problem.model().task() == Task::classification) return y == problem.output() ? 1 : 0;
    return y;
  };
  std::vector<Rational> table(space.cardinality().convert_to<std::size_t>());
  for (std::size_t k = 0; k < table.size(); ++k) table[k] = tau(space.point_at(k));

  const FeatureSet all = FeatureSet::full(m);
  SetFunction game = SetFunction::tabulate(
      m,
      [&](FeatureSet fixed) {
        const FeatureSet free = all - fixed;
        Rational sum = 0;
        for_each_in_subspace(space, problem.instance(), free, [&](const Point& x) {
          sum += table[space.flat_index(x)];
          return true;
        });
        return sum / Rational(space.subspace_size(free));
      },
      limits);
  ScoreVector out = shapley_exhaustive(game);
  out.method = ScoreMethod::shap_exact;
  return out;
}

// ---------------------------------------------------------------------------
// Properties

bool PropertyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.informational || c.holds; });
}

const PropertyCheck* PropertyReport::find(std::string_view name) const {
  auto it = std::find_if(checks.begin(), checks.end(), [&](const PropertyCheck& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

namespace {

std::string pair_witness(std::string_view what, int i, int j, const Rational& a, const Rational& b) {
  return std::string(what) + ": features " + std::to_string(i) + "," + std::to_string(j) + " score " + to_string(a) +
         " vs " + to_string(b);
}

/// Indices of the family members containing each feature.
std::vector<std::vector<std::size_t>> memberships(const std::vector<FeatureSet>& family, int m) {
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(m));
  for (std::size_t k = 0; k < family.size(); ++k) {
    family[k].for_each([&](int j) { out[static_cast<std::size_t>(j - 1)].push_back(k); });
  }
  return out;
}

bool includes(const std::vector<std::size_t>& super, const std::vector<std::size_t>& sub) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

}  // namespace

PropertyReport check_properties(const CxpForest& forest, const PropertyContext& context) {
  const int m = forest.feature_count();
  const ScoreVector phi_s = axfi_shapley(forest);
  const ScoreVector phi_b = axfi_banzhaf(forest);
  const bool exhaustive = m <= context.limits.max_exhaustive_features;
  std::optional<SetFunction> game;
  if (exhaustive) game = SetFunction::of(forest, context.limits);
  const FeatureSet all = FeatureSet::full(m);
  PropertyReport report;

  {
    PropertyCheck c{"efficiency_shapley"};
    const Rational expected = forest.chi(all) - forest.chi(FeatureSet{});
    c.holds = phi_s.sum() == expected;
    c.witness = "sum " + to_string(phi_s.sum()) + ", chi(F) - chi(empty) " + to_string(expected);
    report.checks.push_back(c);
  }
  {
    PropertyCheck c{"gamma_efficiency_banzhaf"};
    const Rational g = gamma(forest);
    c.holds = phi_b.sum() == g;
    c.witness = "sum " + to_string(phi_b.sum()) + ", gamma " + to_string(g);
    report.checks.push_back(c);
  }
  {
    PropertyCheck c{"efficiency_banzhaf"};
    c.informational = true;
    const Rational expected = forest.chi(all) - forest.chi(FeatureSet{});
    c.holds = phi_b.sum() == expected;
    c.witness = "sum " + to_string(phi_b.sum()) + ", chi(F) - chi(empty) " + to_string(expected);
    report.checks.push_back(c);
  }
  {
    // A feature in no CXp is a null player of chi; it must score 0.
    PropertyCheck c{"null_player"};
    FeatureSet covered;
    for (FeatureSet y : forest.cxps()) covered = covered | y;
    for (int j = 1; j <= m && c.holds; ++j) {
      bool null_player = !covered.contains(j);
      if (game) {
        null_player = true;
        const auto bit = FeatureSet{j};
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m) && null_player; ++mask) {
          const auto s = FeatureSet::from_mask(mask);
          if (!s.contains(j) && (*game)(s) != (*game)(s | bit)) null_player = false;
        }
      }
      if (null_player && (phi_s.at(j) != 0 || phi_b.at(j) != 0)) {
        c.holds = false;
        c.witness = "null feature " + std::to_string(j) + " scores " + to_string(phi_s.at(j)) + " / " +
                    to_string(phi_b.at(j));
      }
    }
    report.checks.push_back(c);
  }
  {
    // Symmetric pairs: chi(S + i) = chi(S + j) for every S avoiding both.
    PropertyCheck c{"symmetry"};
    const auto member = memberships(forest.cxps(), m);
    for (int i = 1; i <= m && c.holds; ++i) {
      for (int j = i + 1; j <= m && c.holds; ++j) {
        bool symmetric = member[static_cast<std::size_t>(i - 1)] == member[static_cast<std::size_t>(j - 1)];
        if (game) {
          symmetric = true;
          const FeatureSet pair{i, j};
          for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m) && symmetric; ++mask) {
            const auto s = FeatureSet::from_mask(mask);
            if (s.intersects(pair)) continue;
            if ((*game)(s | FeatureSet{i}) != (*game)(s | FeatureSet{j})) symmetric = false;
          }
        }
        if (!symmetric) continue;
        if (phi_s.at(i) != phi_s.at(j)) {
          c.holds = false;
          c.witness = pair_witness("shapley", i, j, phi_s.at(i), phi_s.at(j));
        } else if (phi_b.at(i) != phi_b.at(j)) {
          c.holds = false;
          c.witness = pair_witness("banzhaf", i, j, phi_b.at(i), phi_b.at(j));
        }
      }
    }
    report.checks.push_back(c);
  }
  {
    PropertyCheck c{"cxp_minimal_monotonicity"};
    const auto member = memberships(forest.cxps(), m);
    for (int i = 1; i <= m && c.holds; ++i) {
      for (int j = 1; j <= m && c.holds; ++j) {
        if (i == j || !includes(member[static_cast<std::size_t>(j - 1)], member[static_cast<std::size_t>(i - 1)])) {
          continue;
        }
        if (phi_s.at(i) > phi_s.at(j)) {
          c.holds = false;
          c.witness = pair_witness("shapley", i, j, phi_s.at(i), phi_s.at(j));
        } else if (phi_b.at(i) > phi_b.at(j)) {
          c.holds = false;
          c.witness = pair_witness("banzhaf", i, j, phi_b.at(i), phi_b.at(j));
        }
      }
    }
    report.checks.push_back(c);
  }
  {
    // Scores of a weight-summed forest against the sum of component scores,
    // using the exhaustive engines when affordable.
    PropertyCheck c{"additivity"};
    std::vector<Rational> other;
    std::vector<Rational> summed;
    for (std::size_t k = 0; k < forest.size(); ++k) {
      other.emplace_back(static_cast<long long>(k + 1), 2);
      summed.push_back(forest.weights()[k] + other.back());
    }
    const CxpForest second = forest.with_weights(other);
    const CxpForest combined = forest.with_weights(summed);
    auto scores = [&](const CxpForest& f) {
      if (game) {
        SetFunction g = SetFunction::of(f, context.limits);
        return std::pair{shapley_exhaustive(g), banzhaf_exhaustive(g)};
      }
      return std::pair{axfi_shapley(f), axfi_banzhaf(f)};
    };
    const auto [s1, b1] = scores(forest);
    const auto [s2, b2] = scores(second);
    const auto [s12, b12] = scores(combined);
    for (int j = 1; j <= m && c.holds; ++j) {
      if (s12.at(j) != s1.at(j) + s2.at(j) || b12.at(j) != b1.at(j) + b2.at(j)) {
        c.holds = false;
        c.witness = "feature " + std::to_string(j) + " is not additive";
      }
    }
    report.checks.push_back(c);
  }

  std::optional<XpFamily> computed_axps;
  const XpFamily* axps = context.axps;
  if (context.problem != nullptr) {
    if (axps == nullptr) {
      computed_axps = enumerate_axps(*context.problem, AxpMethod::mhs_dual, context.limits);
      axps = &*computed_axps;
    }
    PropertyCheck c{"consistency_with_relevancy"};
    const FeatureSet relevant = axps->support();
    for (int j = 1; j <= m && c.holds; ++j) {
      const bool rel = relevant.contains(j);
      if ((phi_s.at(j) > 0) != rel || (phi_b.at(j) > 0) != rel) {
        c.holds = false;
        c.witness = "feature " + std::to_string(j) + (rel ? " is relevant" : " is irrelevant") + " but scores " +
                    to_string(phi_s.at(j)) + " / " + to_string(phi_b.at(j));
      }
    }
    report.checks.push_back(c);
  }
  if (axps != nullptr) {
    PropertyCheck c{"axp_minimal_monotonicity"};
    c.informational = true;
    const auto member = memberships(axps->sets, m);
    for (int i = 1; i <= m && c.holds; ++i) {
      for (int j = 1; j <= m && c.holds; ++j) {
        if (i == j || !includes(member[static_cast<std::size_t>(j - 1)], member[static_cast<std::size_t>(i - 1)])) {
          continue;
        }
        if (phi_s.at(i) > phi_s.at(j)) {
          c.holds = false;
          c.witness = "A_" + std::to_string(i) + " within A_" + std::to_string(j) + " yet " +
                      pair_witness("shapley", j, i, phi_s.at(j), phi_s.at(i));
        } else if (phi_b.at(i) > phi_b.at(j)) {
          c.holds = false;
          c.witness = "A_" + std::to_string(i) + " within A_" + std::to_string(j) + " yet " +
                      pair_witness("banzhaf", j, i, phi_b.at(j), phi_b.at(i));
        }
      }
    }
    report.checks.push_back(c);
  }
  return report;
}

}  // namespace axfi
