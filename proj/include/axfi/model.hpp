#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "axfi/error.hpp"
#include "axfi/feature_set.hpp"
#include "axfi/rational.hpp"

namespace axfi {

/// A point of the feature space; entry i-1 holds the value of feature i.
using Point = std::vector<int>;

enum class Task { classification, regression };

std::string_view to_string(Task task);

/// D_1 x ... x D_m with every D_i a finite, non-empty set of integers.
class FeatureSpace {
 public:
  explicit FeatureSpace(std::vector<std::vector<int>> domains);

  int feature_count() const { return static_cast<int>(domains_.size()); }

  /// Sorted values of feature `feature` (1-based).
  const std::vector<int>& domain(int feature) const;
  std::size_t domain_size(int feature) const { return domain(feature).size(); }
  const std::vector<std::vector<int>>& domains() const { return domains_; }

  bool in_domain(int feature, int value) const;
  bool contains(const Point& point) const;
  /// Throws DomainError naming the first offending coordinate.
  void check_point(const Point& point) const;

  /// |D_1| * ... * |D_m|
  BigInt cardinality() const;
  /// Product of |D_i| over the members of `features`.
  BigInt subspace_size(FeatureSet features) const;

  /// Mixed-radix rank of a point, feature m varying fastest.
  std::size_t flat_index(const Point& point) const;
  Point point_at(std::size_t flat_index) const;

  friend bool operator==(const FeatureSpace&, const FeatureSpace&) = default;

 private:
  std::vector<std::vector<int>> domains_;
};

/// Visits every point that agrees with `base` outside `free_features`, in
/// odometer order (highest free feature varying fastest). The callback
/// returns false to stop early; the function returns false if stopped.
template <typename Fn>
bool for_each_in_subspace(const FeatureSpace& space, const Point& base, FeatureSet free_features, Fn&& fn) {
  std::vector<int> free = free_features.members();
  std::vector<std::size_t> pos(free.size(), 0);
  Point x = base;
  for (std::size_t k = 0; k < free.size(); ++k) x[free[k] - 1] = space.domain(free[k])[0];
  while (true) {
    if (!fn(static_cast<const Point&>(x))) return false;
    std::size_t k = free.size();
    while (k > 0) {
      --k;
      const auto& dom = space.domain(free[k]);
      if (++pos[k] < dom.size()) {
        x[free[k] - 1] = dom[pos[k]];
        break;
      }
      pos[k] = 0;
      x[free[k] - 1] = dom[0];
      if (k == 0) return true;
    }
    if (free.empty()) return true;
  }
}

/// Explicit output table over the whole feature space. Entries may be
/// missing until validated; evaluate() throws on a missing entry.
class TabularModel {
 public:
  TabularModel(FeatureSpace space, Task task);

  const FeatureSpace& space() const { return space_; }
  Task task() const { return task_; }

  void set(const Point& point, Rational value);
  const std::optional<Rational>& entry(const Point& point) const;
  const std::vector<std::optional<Rational>>& table() const { return table_; }

  Rational evaluate(const Point& point) const;

 private:
  FeatureSpace space_;
  Task task_;
  std::vector<std::optional<Rational>> table_;
};

struct TreeEdge {
  std::vector<int> values;  // the literal x_i in E_i, sorted
  std::size_t child = 0;    // index into DecisionTree::nodes()
};

struct TreeNode {
  int id = 0;
  int feature = 0;  // 0 marks a leaf
  std::vector<TreeEdge> edges;
  Rational value;  // leaf output

  bool is_leaf() const { return feature == 0; }
};

/// Effective literal of each feature along a path: the intersection of all
/// literals on that feature, or nullopt when the path never tests it.
using PathLiterals = std::vector<std::optional<std::vector<int>>>;

class DecisionTree {
 public:
  /// Checks only the graph structure (child indices in range, single
  /// parent, acyclic, every node reachable); literal defects are left to
  /// validate().
  DecisionTree(FeatureSpace space, Task task, std::vector<TreeNode> nodes, std::size_t root);

  const FeatureSpace& space() const { return space_; }
  Task task() const { return task_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::size_t root() const { return root_; }

  /// Follows the first edge whose literal holds the point's value.
  Rational evaluate(const Point& point) const;

  /// Depth-first over root-to-leaf paths whose effective literals are all
  /// non-empty. `keep_edge(feature, literal)` prunes subtrees.
  void for_each_path(const std::function<void(const PathLiterals&, const TreeNode& leaf)>& fn,
                     const std::function<bool(int feature, const std::vector<int>& literal)>& keep_edge = {}) const;

  std::size_t leaf_count() const;

 private:
  FeatureSpace space_;
  Task task_;
  std::vector<TreeNode> nodes_;
  std::size_t root_;
};

/// A tabular model or a decision tree behind one interface.
class Model {
 public:
  Model(TabularModel table) : impl_(std::move(table)) {}
  Model(DecisionTree tree) : impl_(std::move(tree)) {}

  const FeatureSpace& space() const;
  Task task() const;
  int feature_count() const { return space().feature_count(); }

  /// Throws DomainError when the point leaves the feature space.
  Rational evaluate(const Point& point) const;

  const DecisionTree* tree() const { return std::get_if<DecisionTree>(&impl_); }
  const TabularModel* tabular() const { return std::get_if<TabularModel>(&impl_); }
  bool is_tree() const { return tree() != nullptr; }

 private:
  std::variant<TabularModel, DecisionTree> impl_;
};

struct Diagnostics {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Empty report iff the model is total, its tree literals partition each
/// node's current domain, classes are integers, and it is non-constant.
Diagnostics validate(const Model& model);

/// E = (M, (v, q)) with similarity threshold delta and AEx radius epsilon.
class ExplanationProblem {
 public:
  /// Computes q = M(v). Throws DomainError if v is outside the space and
  /// ArgumentError for a nonzero delta on classification, a negative delta,
  /// or a negative epsilon.
  ExplanationProblem(Model model, Point instance, Rational delta = 0, std::optional<int> epsilon = std::nullopt);

  const Model& model() const { return *model_; }
  std::shared_ptr<const Model> model_ptr() const { return model_; }
  const FeatureSpace& space() const { return model_->space(); }
  int feature_count() const { return model_->feature_count(); }
  const Point& instance() const { return instance_; }
  const Rational& output() const { return output_; }
  const Rational& delta() const { return delta_; }
  /// Defaults to m.
  int epsilon() const { return epsilon_.value_or(feature_count()); }
  const std::optional<int>& epsilon_setting() const { return epsilon_; }

  /// Similarity of a raw output value to q.
  bool similar_output(const Rational& y) const;
  bool similar(const Point& x) const { return similar_output(model_->evaluate(x)); }

 private:
  std::shared_ptr<const Model> model_;
  Point instance_;
  Rational output_;
  Rational delta_;
  std::optional<int> epsilon_;
};

}  // namespace axfi
