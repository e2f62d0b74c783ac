#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "axfi/feature_set.hpp"
#include "axfi/limits.hpp"
#include "axfi/model.hpp"

namespace axfi {

enum class XpKind { axp, cxp };

std::string_view to_string(XpKind kind);

/// A family of abductive or contrastive explanations: an antichain under
/// set inclusion, kept in canonical order.
struct XpFamily {
  XpKind kind = XpKind::cxp;
  std::vector<FeatureSet> sets;

  std::size_t size() const { return sets.size(); }
  /// Members that contain `feature` (the per-feature sub-family).
  std::vector<FeatureSet> containing(int feature) const;
  /// Union of all members.
  FeatureSet support() const;

  friend bool operator==(const XpFamily&, const XpFamily&) = default;
};

enum class CxpMethod { automatic, brute, dt_paths };
enum class AxpMethod { automatic, brute, mhs_dual };

/// Fixing the features of `fixed` to the instance values forces a similar
/// output. Scans the free subspace; throws ResourceError past the cap.
bool is_waxp(const ExplanationProblem& problem, FeatureSet fixed, const Limits& limits = {});

/// Freeing `free` (others fixed) admits a distinguishable output.
bool is_wcxp(const ExplanationProblem& problem, FeatureSet free, const Limits& limits = {});

/// Subset-minimal WCXp test. Uses tree paths on decision trees, subspace
/// scans otherwise.
bool is_cxp(const ExplanationProblem& problem, FeatureSet candidate, const Limits& limits = {});

/// automatic picks dt_paths for decision trees, brute otherwise.
XpFamily enumerate_cxps(const ExplanationProblem& problem, CxpMethod method = CxpMethod::automatic,
                        const Limits& limits = {});

/// automatic picks mhs_dual. The dual route enumerates CXps with
/// `cxp_method` and dualizes them.
XpFamily enumerate_axps(const ExplanationProblem& problem, AxpMethod method = AxpMethod::automatic,
                        const Limits& limits = {}, CxpMethod cxp_method = CxpMethod::automatic);

/// All subset-minimal sets meeting every member of `family`, canonical
/// order. An empty family yields {∅}. Throws ArgumentError if a member is
/// empty (nothing can hit it).
std::vector<FeatureSet> minimal_hitting_sets(std::span<const FeatureSet> family);

/// Union of all AXps (equivalently all CXps).
FeatureSet relevant_features(const ExplanationProblem& problem, const Limits& limits = {});

}  // namespace axfi
