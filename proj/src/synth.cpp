#include "axfi/synth.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "axfi/adv.hpp"
#include "axfi/xp.hpp"

namespace axfi {

namespace {

class TreeBuilder {
 public:
  std::size_t leaf(Rational value) {
    TreeNode n;
    n.id = static_cast<int>(nodes_.size());
    n.value = std::move(value);
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
  }

  std::size_t split(int feature) {
    TreeNode n;
    n.id = static_cast<int>(nodes_.size());
    n.feature = feature;
    nodes_.push_back(std::move(n));
    return nodes_.size() - 1;
  }

  void edge(std::size_t parent, std::vector<int> values, std::size_t child) {
    nodes_[parent].edges.push_back(TreeEdge{std::move(values), child});
  }

  std::vector<TreeNode> take() { return std::move(nodes_); }

 private:
  std::vector<TreeNode> nodes_;
};

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (~n + 1) % n;
  while (true) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(bounded(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

/// Uniform in [0, 1) from the top 53 bits.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Rational random_output(std::mt19937_64& rng, const RandomSpec& spec) {
  if (spec.task == Task::regression) return Rational(uniform_int(rng, 0, 4), 4);
  if (unit(rng) < spec.leaf_bias || spec.classes < 2) return 0;
  return uniform_int(rng, 1, spec.classes - 1);
}

Model random_tree(std::mt19937_64& rng, const RandomSpec& spec, const FeatureSpace& space) {
  TreeBuilder builder;
  const int m = space.feature_count();
  std::vector<std::vector<int>> current = space.domains();

  std::function<std::size_t(int)> grow = [&](int depth) -> std::size_t {
    std::vector<int> splittable;
    for (int f = 1; f <= m; ++f) {
      if (current[static_cast<std::size_t>(f - 1)].size() >= 2) splittable.push_back(f);
    }
    const bool stop = splittable.empty() || depth >= spec.max_depth || (depth >= 2 && unit(rng) < 0.2);
    if (stop) return builder.leaf(random_output(rng, spec));

    const int f = splittable[bounded(rng, splittable.size())];
    std::vector<int> values = current[static_cast<std::size_t>(f - 1)];
    std::shuffle(values.begin(), values.end(), rng);
    const int parts = uniform_int(rng, 2, std::min<int>(3, static_cast<int>(values.size())));
    // Cut the shuffled values into `parts` non-empty runs.
    std::vector<std::size_t> cuts;
    std::set<std::size_t> chosen;
    while (static_cast<int>(chosen.size()) < parts - 1) chosen.insert(1 + bounded(rng, values.size() - 1));
    cuts.assign(chosen.begin(), chosen.end());
    cuts.push_back(values.size());

    const std::size_t node = builder.split(f);
    const std::vector<int> saved = current[static_cast<std::size_t>(f - 1)];
    std::size_t begin = 0;
    for (std::size_t end : cuts) {
      std::vector<int> literal(values.begin() + static_cast<std::ptrdiff_t>(begin),
                               values.begin() + static_cast<std::ptrdiff_t>(end));
      std::sort(literal.begin(), literal.end());
      current[static_cast<std::size_t>(f - 1)] = literal;
      const std::size_t child = grow(depth + 1);
      builder.edge(node, literal, child);
      begin = end;
    }
    current[static_cast<std::size_t>(f - 1)] = saved;
    return node;
  };
  const std::size_t root = grow(0);
  return Model(DecisionTree(space, spec.task, builder.take(), root));
}

Model random_table(std::mt19937_64& rng, const RandomSpec& spec, const FeatureSpace& space) {
  TabularModel table(space, spec.task);
  const std::size_t n = space.cardinality().convert_to<std::size_t>();
  for (std::size_t k = 0; k < n; ++k) table.set(space.point_at(k), random_output(rng, spec));
  return Model(std::move(table));
}

}  // namespace

ExplanationProblem gadget_dt(int k) {
  if (k < 1) throw ArgumentError("gadget count must be positive");
  if (3 * k > FeatureSet::kMaxFeatures) throw ArgumentError("too many gadgets for the feature limit");
  const int m = 3 * k;
  TreeBuilder b;
  // Built from the last gadget backwards so each gadget can chain to the next.
  std::size_t next = b.leaf(1);
  for (int i = k; i >= 1; --i) {
    const int x_odd = 2 * i - 1;
    const int x_even = 2 * i;
    const int y = 2 * k + i;

    const std::size_t y_test = b.split(y);
    b.edge(y_test, {0}, b.leaf(0));
    b.edge(y_test, {1}, b.leaf(1));

    const std::size_t even_after_one = b.split(x_even);
    b.edge(even_after_one, {0}, y_test);
    b.edge(even_after_one, {1}, next);

    const std::size_t even_after_zero = b.split(x_even);
    b.edge(even_after_zero, {0}, b.leaf(0));
    b.edge(even_after_zero, {1}, b.leaf(1));

    const std::size_t root = b.split(x_odd);
    b.edge(root, {0}, even_after_zero);
    b.edge(root, {1}, even_after_one);
    next = root;
  }
  FeatureSpace space(std::vector<std::vector<int>>(static_cast<std::size_t>(m), std::vector<int>{0, 1}));
  DecisionTree tree(std::move(space), Task::classification, b.take(), next);
  return ExplanationProblem(Model(std::move(tree)), Point(static_cast<std::size_t>(m), 1));
}

ExplanationProblem running_example() {
  FeatureSpace space({{0, 1, 2}, {0, 1}, {0, 1, 2}});
  const std::vector<Point> adversarial = {{1, 0, 2}, {0, 1, 0}, {0, 1, 1}, {1, 1, 0},
                                          {1, 1, 1}, {2, 0, 0}, {2, 0, 1}};
  TabularModel table(space, Task::classification);
  for_each_in_subspace(space, Point{2, 1, 2}, FeatureSet::full(3), [&](const Point& x) {
    const bool is_adv = std::find(adversarial.begin(), adversarial.end(), x) != adversarial.end();
    table.set(x, is_adv ? 0 : 1);
    return true;
  });
  ExplanationProblem problem(Model(std::move(table)), Point{2, 1, 2});

  const XpFamily cxps = enumerate_cxps(problem, CxpMethod::brute);
  const std::vector<FeatureSet> expected = {{1, 2}, {1, 3}, {2, 3}};
  if (problem.output() != 1 || cxps.sets != expected) {
    throw std::logic_error("running example: unexpected CXps");
  }
  const std::vector<int> covers = {1, 4, 2};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (cover_count(problem, expected[i], CoverMethod::brute).count != covers[i]) {
      throw std::logic_error("running example: unexpected cover of " + to_string(expected[i]));
    }
  }
  return problem;
}

ExplanationProblem random_problem(const RandomSpec& spec, std::uint64_t seed) {
  if (spec.features < 1 || spec.features > FeatureSet::kMaxFeatures) throw ArgumentError("feature count out of range");
  if (!spec.domain_sizes.empty() && static_cast<int>(spec.domain_sizes.size()) != spec.features) {
    throw ArgumentError("domain_sizes must list one size per feature");
  }
  if (spec.max_domain < 2 && spec.domain_sizes.empty()) throw ArgumentError("max_domain must be at least 2");
  if (spec.task == Task::classification && spec.classes < 2) throw ArgumentError("need at least two classes");

  constexpr int kAttempts = 200;
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::vector<std::vector<int>> domains;
    for (int f = 0; f < spec.features; ++f) {
      const int size = spec.domain_sizes.empty() ? uniform_int(rng, 2, spec.max_domain)
                                                 : spec.domain_sizes[static_cast<std::size_t>(f)];
      if (size < 1) throw ArgumentError("domain sizes must be positive");
      std::vector<int> d(static_cast<std::size_t>(size));
      for (int v = 0; v < size; ++v) d[static_cast<std::size_t>(v)] = v;
      domains.push_back(std::move(d));
    }
    FeatureSpace space(std::move(domains));
    Model model = spec.kind == ModelKind::tree ? random_tree(rng, spec, space) : random_table(rng, spec, space);
    if (!validate(model).ok()) continue;

    Point v(static_cast<std::size_t>(spec.features));
    for (int f = 1; f <= spec.features; ++f) {
      const auto& dom = space.domain(f);
      v[static_cast<std::size_t>(f - 1)] = dom[bounded(rng, dom.size())];
    }
    const Rational delta = spec.task == Task::regression ? spec.delta : Rational(0);
    ExplanationProblem problem(std::move(model), std::move(v), delta);
    if (spec.require_adversarial) {
      const bool any = !for_each_in_subspace(space, problem.instance(), FeatureSet::full(spec.features),
                                             [&](const Point& x) { return problem.similar(x); });
      if (!any) continue;
    }
    return problem;
  }
  throw ArgumentError("random_problem: no acceptable model after " + std::to_string(kAttempts) + " attempts");
}

Model relabel_outputs(const Model& model, const std::map<Rational, Rational>& bijection) {
  if (model.task() != Task::classification) throw ArgumentError("relabeling applies to classification models");
  std::set<Rational> images;
  for (const auto& [from, to] : bijection) {
    if (denominator(to) != 1) throw ArgumentError("relabeled class " + to_string(to) + " is not an integer");
    if (!images.insert(to).second) throw ArgumentError("relabeling map is not injective");
  }
  auto map = [&](const Rational& y) {
    auto it = bijection.find(y);
    if (it == bijection.end()) throw ArgumentError("relabeling map misses class " + to_string(y));
    return it->second;
  };
  if (const auto* t = model.tabular()) {
    TabularModel out(t->space(), t->task());
    const auto& table = t->table();
    for (std::size_t k = 0; k < table.size(); ++k) {
      if (table[k]) out.set(t->space().point_at(k), map(*table[k]));
    }
    return Model(std::move(out));
  }
  const DecisionTree& tree = *model.tree();
  std::vector<TreeNode> nodes = tree.nodes();
  for (auto& n : nodes) {
    if (n.is_leaf()) n.value = map(n.value);
  }
  return Model(DecisionTree(tree.space(), tree.task(), std::move(nodes), tree.root()));
}

}  // namespace axfi
