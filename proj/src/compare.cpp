#include "axfi/compare.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "axfi/error.hpp"

namespace axfi {

Ranking ranking(const ScoreVector& scores, Transform transform, TieRule tie_rule) {
  const int m = scores.feature_count();
  std::vector<Rational> key = scores.values;
  if (transform == Transform::absolute) {
    for (auto& k : key) k = k < 0 ? Rational(-k) : k;
  }
  Ranking out;
  out.source = std::string(to_string(scores.method));
  if (transform == Transform::absolute) out.source = "abs(" + out.source + ")";
  out.order.resize(static_cast<std::size_t>(m));
  std::iota(out.order.begin(), out.order.end(), 1);
  std::stable_sort(out.order.begin(), out.order.end(), [&](int a, int b) {
    const auto& ka = key[static_cast<std::size_t>(a - 1)];
    const auto& kb = key[static_cast<std::size_t>(b - 1)];
    if (ka != kb) return ka > kb;
    return tie_rule == TieRule::lower_index_first ? a < b : a > b;
  });
  return out;
}

Rational rbo(const Ranking& a, const Ranking& b, const Rational& persistence, int depth) {
  if (persistence <= 0 || persistence >= 1) throw ArgumentError("RBO persistence must lie in (0, 1)");
  if (depth < 1) throw ArgumentError("RBO depth must be at least 1");
  const std::size_t limit = std::min({static_cast<std::size_t>(depth), a.order.size(), b.order.size()});

  std::set<int> seen_a;
  std::set<int> seen_b;
  long long overlap = 0;
  Rational weight = 1;  // p^(k-1)
  Rational sum = 0;
  for (std::size_t k = 1; k <= static_cast<std::size_t>(depth); ++k) {
    if (k <= limit) {
      const int x = a.order[k - 1];
      const int y = b.order[k - 1];
      if (x == y) {
        ++overlap;
      } else {
        if (seen_b.count(x)) ++overlap;
        if (seen_a.count(y)) ++overlap;
      }
      seen_a.insert(x);
      seen_b.insert(y);
    }
    // Past the end of the rankings the agreement keeps its last value.
    const long long prefix = static_cast<long long>(std::min(k, limit));
    if (prefix > 0) sum += weight * Rational(overlap, prefix);
    weight *= persistence;
  }
  return (1 - persistence) * sum;
}

RboReport rbo_report(std::span<const Ranking> rankings, const Rational& persistence, int depth) {
  RboReport report;
  report.persistence = persistence;
  report.depth = depth;
  for (const auto& r : rankings) report.labels.push_back(r.source);
  report.values.assign(rankings.size(), std::vector<Rational>(rankings.size()));
  for (std::size_t i = 0; i < rankings.size(); ++i) {
    for (std::size_t j = i; j < rankings.size(); ++j) {
      report.values[i][j] = rbo(rankings[i], rankings[j], persistence, depth);
      report.values[j][i] = report.values[i][j];
    }
  }
  return report;
}

}  // namespace axfi
