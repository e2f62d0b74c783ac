#pragma once

#include <span>
#include <string>
#include <vector>

#include "axfi/rational.hpp"
#include "axfi/scores.hpp"

namespace axfi {

/// Feature indices, most important first.
struct Ranking {
  std::vector<int> order;
  std::string source;
};

enum class Transform { identity, absolute };
/// How equal scores are ordered.
enum class TieRule { lower_index_first, higher_index_first };

Ranking ranking(const ScoreVector& scores, Transform transform = Transform::identity,
                TieRule tie_rule = TieRule::lower_index_first);

/// Truncated rank-biased overlap,
///   (1 - p) * sum_{k=1..d} p^(k-1) * |a[:k] & b[:k]| / k,
/// For k beyond the length of the shorter ranking the agreement term keeps
/// its value at that length, so identical rankings give 1 - p^d for any m.
/// Throws ArgumentError unless 0 < p < 1 and d >= 1.
Rational rbo(const Ranking& a, const Ranking& b, const Rational& persistence, int depth);

struct RboReport {
  Rational persistence;
  int depth = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<Rational>> values;  // symmetric, labels x labels
};

RboReport rbo_report(std::span<const Ranking> rankings, const Rational& persistence = Rational(1, 2), int depth = 5);

}  // namespace axfi
