#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "axfi/model.hpp"

namespace axfi {

/// k chained gadgets over m = 3k binary features. Gadget i reads
/// x_{2i-1} (feature 2i-1), x_{2i} (feature 2i) and y_i (feature 2k+i):
///
///   x_{2i-1}=0, x_{2i}=1          -> 1
///   x_{2i-1}=0, x_{2i}=0          -> 0
///   x_{2i-1}=1, x_{2i}=0, y_i=1   -> 1
///   x_{2i-1}=1, x_{2i}=0, y_i=0   -> 0
///   x_{2i-1}=1, x_{2i}=1          -> gadget i+1 (class 1 after the last)
///
/// The instance is (1,...,1) with class 1. It has 2k CXps and 2^k AXps.
ExplanationProblem gadget_dt(int k);

/// Three features with domains {0,1,2} x {0,1} x {0,1,2}, instance (2,1,2)
/// of class 1. Class 0 holds exactly at the seven adversarial examples
/// (1,0,2), (0,1,0), (0,1,1), (1,1,0), (1,1,1), (2,0,0), (2,0,1), so the
/// CXps are {1,2}, {1,3}, {2,3} with covers 1, 4, 2. The constructor
/// re-derives these facts by brute force and throws std::logic_error if
/// they fail.
ExplanationProblem running_example();

enum class ModelKind { tabular, tree };

struct RandomSpec {
  int features = 6;
  /// Per-feature domain sizes; when empty each is drawn from [2, max_domain].
  std::vector<int> domain_sizes;
  int max_domain = 3;
  ModelKind kind = ModelKind::tree;
  Task task = Task::classification;
  /// Probability that a leaf or table entry takes class 0 (classification).
  double leaf_bias = 0.5;
  int classes = 2;
  int max_depth = 6;
  /// Regression outputs are drawn from {0, 1/4, ..., 1}; similarity uses delta.
  Rational delta = Rational(1, 4);
  /// Reject draws whose instance has no distinguishable point.
  bool require_adversarial = true;
};

/// Deterministic per (spec, seed). The model passes validate(); the
/// instance is uniform over the space. Throws ArgumentError if no
/// acceptable model is found within a bounded number of retries.
ExplanationProblem random_problem(const RandomSpec& spec, std::uint64_t seed);

/// Pointwise relabeling of a classification model's outputs. Throws
/// ArgumentError for regression models, a map that misses a class, or a
/// map that is not injective.
Model relabel_outputs(const Model& model, const std::map<Rational, Rational>& bijection);

}  // namespace axfi
