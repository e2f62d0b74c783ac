#include "axfi/model.hpp"

#include <algorithm>
#include <iterator>
#include <set>

namespace axfi {

namespace {

constexpr std::size_t kMaxTableEntries = 10'000'000;

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string point_string(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p[i]);
  }
  return s + ")";
}

}  // namespace

std::string_view to_string(Task task) {
  return task == Task::classification ? "classification" : "regression";
}

// ---------------------------------------------------------------------------
// FeatureSpace

FeatureSpace::FeatureSpace(std::vector<std::vector<int>> domains) : domains_(std::move(domains)) {
  if (domains_.empty()) throw ArgumentError("feature space needs at least one feature");
  if (domains_.size() > static_cast<std::size_t>(FeatureSet::kMaxFeatures)) {
    throw ArgumentError("at most " + std::to_string(FeatureSet::kMaxFeatures) + " features are supported");
  }
  for (std::size_t i = 0; i < domains_.size(); ++i) {
    auto& d = domains_[i];
    if (d.empty()) throw ArgumentError("domain of feature " + std::to_string(i + 1) + " is empty");
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
  }
}

const std::vector<int>& FeatureSpace::domain(int feature) const {
  if (feature < 1 || feature > feature_count()) {
    throw ArgumentError("feature index " + std::to_string(feature) + " out of range");
  }
  return domains_[static_cast<std::size_t>(feature - 1)];
}

bool FeatureSpace::in_domain(int feature, int value) const {
  const auto& d = domain(feature);
  return std::binary_search(d.begin(), d.end(), value);
}

bool FeatureSpace::contains(const Point& point) const {
  if (point.size() != domains_.size()) return false;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (!std::binary_search(domains_[i].begin(), domains_[i].end(), point[i])) return false;
  }
  return true;
}

void FeatureSpace::check_point(const Point& point) const {
  if (point.size() != domains_.size()) {
    throw DomainError("point " + point_string(point) + " has arity " + std::to_string(point.size()) +
                      ", expected " + std::to_string(domains_.size()));
  }
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (!std::binary_search(domains_[i].begin(), domains_[i].end(), point[i])) {
      throw DomainError("value " + std::to_string(point[i]) + " of feature " + std::to_string(i + 1) +
                        " is outside its domain");
    }
  }
}

BigInt FeatureSpace::cardinality() const { return subspace_size(FeatureSet::full(feature_count())); }

BigInt FeatureSpace::subspace_size(FeatureSet features) const {
  BigInt n = 1;
  features.for_each([&](int f) { n *= domain_size(f); });
  return n;
}

std::size_t FeatureSpace::flat_index(const Point& point) const {
  std::size_t index = 0;
  for (std::size_t i = 0; i < domains_.size(); ++i) {
    const auto& d = domains_[i];
    auto it = std::lower_bound(d.begin(), d.end(), point[i]);
    index = index * d.size() + static_cast<std::size_t>(it - d.begin());
  }
  return index;
}

Point FeatureSpace::point_at(std::size_t flat_index) const {
  Point p(domains_.size());
  for (std::size_t i = domains_.size(); i-- > 0;) {
    const auto& d = domains_[i];
    p[i] = d[flat_index % d.size()];
    flat_index /= d.size();
  }
  return p;
}

// ---------------------------------------------------------------------------
// TabularModel

TabularModel::TabularModel(FeatureSpace space, Task task) : space_(std::move(space)), task_(task) {
  BigInt n = space_.cardinality();
  if (n > kMaxTableEntries) throw ResourceError("tabular model with " + n.str() + " points exceeds the table cap");
  table_.resize(n.convert_to<std::size_t>());
}

void TabularModel::set(const Point& point, Rational value) {
  space_.check_point(point);
  table_[space_.flat_index(point)] = std::move(value);
}

const std::optional<Rational>& TabularModel::entry(const Point& point) const {
  space_.check_point(point);
  return table_[space_.flat_index(point)];
}

Rational TabularModel::evaluate(const Point& point) const {
  const auto& e = entry(point);
  if (!e) throw DomainError("table has no entry for point " + point_string(point));
  return *e;
}

// ---------------------------------------------------------------------------
// DecisionTree

DecisionTree::DecisionTree(FeatureSpace space, Task task, std::vector<TreeNode> nodes, std::size_t root)
    : space_(std::move(space)), task_(task), nodes_(std::move(nodes)), root_(root) {
  if (nodes_.empty()) throw SchemaError("decision tree has no nodes");
  if (root_ >= nodes_.size()) throw SchemaError("decision tree root index out of range");
  std::vector<int> parents(nodes_.size(), 0);
  for (auto& node : nodes_) {
    if (node.is_leaf()) {
      if (!node.edges.empty()) throw SchemaError("leaf " + std::to_string(node.id) + " has outgoing edges");
      continue;
    }
    if (node.feature < 1 || node.feature > space_.feature_count()) {
      throw SchemaError("node " + std::to_string(node.id) + " tests unknown feature " + std::to_string(node.feature));
    }
    if (node.edges.empty()) throw SchemaError("node " + std::to_string(node.id) + " has no edges");
    for (auto& e : node.edges) {
      if (e.child >= nodes_.size()) throw SchemaError("node " + std::to_string(node.id) + " has a dangling child");
      std::sort(e.values.begin(), e.values.end());
      e.values.erase(std::unique(e.values.begin(), e.values.end()), e.values.end());
      ++parents[e.child];
    }
  }
  if (parents[root_] != 0) throw SchemaError("decision tree root has a parent");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i != root_ && parents[i] != 1) {
      throw SchemaError("node " + std::to_string(nodes_[i].id) + " must have exactly one parent");
    }
  }
  // With one parent per non-root node, reachability of all nodes rules out cycles.
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<std::size_t> stack{root_};
  std::size_t visited = 0;
  while (!stack.empty()) {
    std::size_t n = stack.back();
    stack.pop_back();
    if (seen[n]) throw SchemaError("decision tree contains a cycle");
    seen[n] = true;
    ++visited;
    for (const auto& e : nodes_[n].edges) stack.push_back(e.child);
  }
  if (visited != nodes_.size()) throw SchemaError("decision tree has unreachable nodes");
}

Rational DecisionTree::evaluate(const Point& point) const {
  space_.check_point(point);
  const TreeNode* node = &nodes_[root_];
  while (!node->is_leaf()) {
    int value = point[static_cast<std::size_t>(node->feature - 1)];
    const TreeEdge* next = nullptr;
    for (const auto& e : node->edges) {
      if (std::binary_search(e.values.begin(), e.values.end(), value)) {
        next = &e;
        break;
      }
    }
    if (next == nullptr) {
      throw DomainError("no edge of node " + std::to_string(node->id) + " accepts value " + std::to_string(value));
    }
    node = &nodes_[next->child];
  }
  return node->value;
}

void DecisionTree::for_each_path(
    const std::function<void(const PathLiterals&, const TreeNode& leaf)>& fn,
    const std::function<bool(int feature, const std::vector<int>& literal)>& keep_edge) const {
  PathLiterals literals(static_cast<std::size_t>(space_.feature_count()));
  std::function<void(std::size_t)> visit = [&](std::size_t index) {
    const TreeNode& node = nodes_[index];
    if (node.is_leaf()) {
      fn(literals, node);
      return;
    }
    auto& slot = literals[static_cast<std::size_t>(node.feature - 1)];
    const std::optional<std::vector<int>> saved = slot;
    const std::vector<int>& current = saved ? *saved : space_.domain(node.feature);
    for (const auto& e : node.edges) {
      std::vector<int> narrowed = intersect(current, e.values);
      if (narrowed.empty()) continue;
      if (keep_edge && !keep_edge(node.feature, narrowed)) continue;
      slot = std::move(narrowed);
      visit(e.child);
    }
    slot = saved;
  };
  visit(root_);
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

// ---------------------------------------------------------------------------
// Model

const FeatureSpace& Model::space() const {
  return std::visit([](const auto& m) -> const FeatureSpace& { return m.space(); }, impl_);
}

Task Model::task() const {
  return std::visit([](const auto& m) { return m.task(); }, impl_);
}

Rational Model::evaluate(const Point& point) const {
  return std::visit([&](const auto& m) { return m.evaluate(point); }, impl_);
}

// ---------------------------------------------------------------------------
// validate

namespace {

void check_outputs(const std::vector<Rational>& outputs, Task task, Diagnostics& report) {
  if (task == Task::classification) {
    auto bad = std::find_if(outputs.begin(), outputs.end(), [](const Rational& y) { return denominator(y) != 1; });
    if (bad != outputs.end()) report.violations.push_back("class label " + to_string(*bad) + " is not an integer");
  }
  bool constant = std::all_of(outputs.begin(), outputs.end(), [&](const Rational& y) { return y == outputs.front(); });
  if (outputs.empty() || constant) report.violations.push_back("model is constant");
}

void validate_table(const TabularModel& table, Diagnostics& report) {
  std::size_t missing = 0;
  std::set<Rational> outputs;
  for (const auto& e : table.table()) {
    if (e) {
      outputs.insert(*e);
    } else {
      ++missing;
    }
  }
  if (missing > 0) {
    report.violations.push_back("table is not total: " + std::to_string(missing) + " points have no output");
  }
  check_outputs({outputs.begin(), outputs.end()}, table.task(), report);
}

void validate_tree(const DecisionTree& tree, Diagnostics& report) {
  const FeatureSpace& space = tree.space();
  const auto& nodes = tree.nodes();
  PathLiterals literals(static_cast<std::size_t>(space.feature_count()));
  std::vector<Rational> outputs;

  std::function<void(std::size_t)> visit = [&](std::size_t index) {
    const TreeNode& node = nodes[index];
    if (node.is_leaf()) {
      outputs.push_back(node.value);
      return;
    }
    const std::string where = "at node " + std::to_string(node.id);
    auto& slot = literals[static_cast<std::size_t>(node.feature - 1)];
    const std::optional<std::vector<int>> saved = slot;
    const std::vector<int>& current = saved ? *saved : space.domain(node.feature);

    std::multiset<int> covered;
    for (const auto& e : node.edges) {
      for (int v : e.values) {
        if (!space.in_domain(node.feature, v)) {
          report.violations.push_back("value " + std::to_string(v) + " outside domain of feature " +
                                      std::to_string(node.feature) + " " + where);
        }
      }
      for (int v : intersect(current, e.values)) covered.insert(v);
    }
    for (int v : current) {
      std::size_t c = covered.count(v);
      if (c > 1) {
        report.violations.push_back("overlapping literals " + where + " (value " + std::to_string(v) + ")");
      } else if (c == 0) {
        report.violations.push_back("missing literal " + where + " (value " + std::to_string(v) + " uncovered)");
      }
    }
    for (const auto& e : node.edges) {
      std::vector<int> narrowed = intersect(current, e.values);
      if (narrowed.empty()) continue;
      slot = std::move(narrowed);
      visit(e.child);
    }
    slot = saved;
  };
  visit(tree.root());
  check_outputs(outputs, tree.task(), report);
}

}  // namespace

Diagnostics validate(const Model& model) {
  Diagnostics report;
  if (const auto* t = model.tabular()) {
    validate_table(*t, report);
  } else {
    validate_tree(*model.tree(), report);
  }
  return report;
}

// ---------------------------------------------------------------------------
// ExplanationProblem

ExplanationProblem::ExplanationProblem(Model model, Point instance, Rational delta, std::optional<int> epsilon)
    : model_(std::make_shared<const Model>(std::move(model))),
      instance_(std::move(instance)),
      delta_(std::move(delta)),
      epsilon_(epsilon) {
  model_->space().check_point(instance_);
  output_ = model_->evaluate(instance_);
  if (delta_ < 0) throw ArgumentError("delta must be nonnegative");
  if (model_->task() == Task::classification && delta_ != 0) {
    throw ArgumentError("delta must be 0 for classification");
  }
  if (epsilon_ && *epsilon_ < 0) throw ArgumentError("epsilon must be nonnegative");
}

bool ExplanationProblem::similar_output(const Rational& y) const {
  if (model_->task() == Task::classification) return y == output_;
  Rational diff = y - output_;
  if (diff < 0) diff = -diff;
  return diff <= delta_;
}

}  // namespace axfi
