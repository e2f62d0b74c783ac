#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "axfi/adv.hpp"
#include "axfi/compare.hpp"
#include "axfi/forest.hpp"
#include "axfi/model.hpp"
#include "axfi/scores.hpp"
#include "axfi/xp.hpp"

namespace axfi::io {

using nlohmann::json;

// Model documents:
//   {"type":"tabular","task":..., "domains":[[v,...],...], "rows":[{"x":[...],"y":...}]}
//   {"type":"dt","task":..., "domains":..., "root":id,
//    "nodes":[{"id":id,"feature":i,"edges":[{"values":[...],"child":id}]}],
//    "leaves":[{"id":id,"value":y}]}
// Edges may give "range":[lo,hi] instead of "values"; it is expanded to the
// domain values inside the closed interval. Class labels are integers;
// regression outputs are "p/q" strings (numbers are accepted on input).
json to_json(const Model& model);
Model model_from_json(const json& doc);

/// {"point":[...],"delta":"p/q","epsilon":n}; delta and epsilon optional.
struct InstanceSpec {
  Point point;
  Rational delta = 0;
  std::optional<int> epsilon;
  /// Checked against M(point) when present.
  std::optional<Rational> output;
};
InstanceSpec instance_from_json(const json& doc);
json to_json(const ExplanationProblem& problem);

json to_json(const FeatureSet& s);
FeatureSet feature_set_from_json(const json& doc);

/// {"kind":"axp"|"cxp","sets":[[...],...]}
json to_json(const XpFamily& family);
XpFamily xp_family_from_json(const json& doc);

/// [{"cxp":[...],"count":"n","ratio":"p/q","sampled":{"ratio":"p/q","samples":n,"seed":n}}, ...]
json weights_to_json(const std::vector<CoverMeasure>& measures);

/// {"m":m,"cxps":[[...],...],"weights":["p/q",...]}
json to_json(const CxpForest& forest);
CxpForest forest_from_json(const json& doc);

/// {"method":..., "values":["p/q",...], "decimal":[...]}
json to_json(const ScoreVector& scores, int places = 6);
ScoreVector score_vector_from_json(const json& doc);

json to_json(const PropertyReport& report);

/// {"persistence":"p/q","depth":d,"labels":[...],"values":[["p/q",...]],"decimal":[[...]]}
json to_json(const RboReport& report, int places = 6);
/// Decimal matrix with a header row of labels.
std::string to_csv(const RboReport& report, int places = 6);

/// Decimal score table: one row per feature, one column per method.
std::string to_csv(const std::vector<ScoreVector>& scores, int places = 6);

json decimal_number(const Rational& value, int places = 6);
Rational rational_from_json(const json& value);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& doc);

}  // namespace axfi::io
