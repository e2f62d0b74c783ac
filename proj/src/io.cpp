#include "axfi/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace axfi::io {

namespace {

template <typename T>
T get(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("field '") + key + "': " + e.what());
  }
}

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return doc.at(key);
}

Task parse_task(const std::string& text) {
  if (text == "classification") return Task::classification;
  if (text == "regression") return Task::regression;
  throw SchemaError("unknown task '" + text + "'");
}

json output_to_json(const Rational& y, Task task) {
  if (task == Task::classification && denominator(y) == 1) return numerator(y).convert_to<long long>();
  return to_string(y);
}

std::vector<int> edge_values(const json& edge, const std::vector<int>& domain) {
  if (edge.contains("values")) {
    try {
      return edge.at("values").get<std::vector<int>>();
    } catch (const json::exception& e) {
      throw SchemaError(std::string("edge values: ") + e.what());
    }
  }
  if (edge.contains("range")) {
    const auto bounds = get<std::vector<int>>(edge, "range");
    if (bounds.size() != 2) throw SchemaError("edge range must be [lo, hi]");
    std::vector<int> out;
    for (int v : domain) {
      if (v >= bounds[0] && v <= bounds[1]) out.push_back(v);
    }
    return out;
  }
  throw SchemaError("edge needs 'values' or 'range'");
}

}  // namespace

Rational rational_from_json(const json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<long long>());
  if (value.is_number_float()) {
    std::ostringstream s;
    s.precision(17);
    s << value.get<double>();
    return parse_rational(s.str());
  }
  throw SchemaError("expected a rational, got " + value.dump());
}

json decimal_number(const Rational& value, int places) { return std::stod(to_decimal(value, places)); }

json to_json(const FeatureSet& s) { return s.members(); }

FeatureSet feature_set_from_json(const json& doc) {
  try {
    return FeatureSet(doc.get<std::vector<int>>());
  } catch (const json::exception& e) {
    throw SchemaError(std::string("feature set: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Models

json to_json(const Model& model) {
  const FeatureSpace& space = model.space();
  json doc;
  doc["type"] = model.is_tree() ? "dt" : "tabular";
  doc["task"] = std::string(to_string(model.task()));
  doc["domains"] = space.domains();
  if (const auto* t = model.tabular()) {
    json rows = json::array();
    for (std::size_t k = 0; k < t->table().size(); ++k) {
      if (!t->table()[k]) continue;
      rows.push_back({{"x", space.point_at(k)}, {"y", output_to_json(*t->table()[k], model.task())}});
    }
    doc["rows"] = std::move(rows);
    return doc;
  }
  const DecisionTree& tree = *model.tree();
  json nodes = json::array();
  json leaves = json::array();
  for (const auto& n : tree.nodes()) {
    if (n.is_leaf()) {
      leaves.push_back({{"id", n.id}, {"value", output_to_json(n.value, model.task())}});
      continue;
    }
    json edges = json::array();
    for (const auto& e : n.edges) edges.push_back({{"values", e.values}, {"child", tree.nodes()[e.child].id}});
    nodes.push_back({{"id", n.id}, {"feature", n.feature}, {"edges", std::move(edges)}});
  }
  doc["root"] = tree.nodes()[tree.root()].id;
  doc["nodes"] = std::move(nodes);
  doc["leaves"] = std::move(leaves);
  return doc;
}

Model model_from_json(const json& doc) {
  const auto type = get<std::string>(doc, "type");
  const Task task = parse_task(get<std::string>(doc, "task"));
  std::vector<std::vector<int>> domains;
  try {
    domains = field(doc, "domains").get<std::vector<std::vector<int>>>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("domains must be integer lists: ") + e.what());
  }
  std::optional<FeatureSpace> space;
  try {
    space.emplace(std::move(domains));
  } catch (const ArgumentError& e) {
    throw SchemaError(e.what());
  }

  if (type == "tabular") {
    TabularModel table(*space, task);
    for (const auto& row : field(doc, "rows")) {
      const auto x = get<Point>(row, "x");
      if (!space->contains(x)) throw SchemaError("row point lies outside the feature space");
      if (table.entry(x)) throw SchemaError("duplicate row for one point");
      table.set(x, rational_from_json(field(row, "y")));
    }
    return Model(std::move(table));
  }
  if (type != "dt") throw SchemaError("unknown model type '" + type + "'");

  std::vector<TreeNode> nodes;
  std::map<int, std::size_t> index;
  auto add = [&](TreeNode n) {
    if (!index.emplace(n.id, nodes.size()).second) throw SchemaError("duplicate node id " + std::to_string(n.id));
    nodes.push_back(std::move(n));
  };
  for (const auto& leaf : field(doc, "leaves")) {
    TreeNode n;
    n.id = get<int>(leaf, "id");
    n.value = rational_from_json(field(leaf, "value"));
    add(std::move(n));
  }
  std::vector<std::vector<std::pair<std::vector<int>, int>>> pending;
  for (const auto& node : field(doc, "nodes")) {
    TreeNode n;
    n.id = get<int>(node, "id");
    n.feature = get<int>(node, "feature");
    if (n.feature < 1 || n.feature > space->feature_count()) {
      throw SchemaError("node " + std::to_string(n.id) + " tests unknown feature " + std::to_string(n.feature));
    }
    std::vector<std::pair<std::vector<int>, int>> edges;
    for (const auto& e : field(node, "edges")) {
      edges.emplace_back(edge_values(e, space->domain(n.feature)), get<int>(e, "child"));
    }
    pending.resize(nodes.size() + 1);
    pending[nodes.size()] = std::move(edges);
    add(std::move(n));
  }
  pending.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (auto& [values, child] : pending[i]) {
      auto it = index.find(child);
      if (it == index.end()) throw SchemaError("edge points to unknown node id " + std::to_string(child));
      nodes[i].edges.push_back(TreeEdge{std::move(values), it->second});
    }
  }
  auto root = index.find(get<int>(doc, "root"));
  if (root == index.end()) throw SchemaError("root id does not name a node");
  return Model(DecisionTree(*space, task, std::move(nodes), root->second));
}

// ---------------------------------------------------------------------------
// Instances and families

InstanceSpec instance_from_json(const json& doc) {
  InstanceSpec spec;
  spec.point = get<Point>(doc, "point");
  if (doc.contains("delta")) spec.delta = rational_from_json(doc.at("delta"));
  if (doc.contains("epsilon") && !doc.at("epsilon").is_null()) spec.epsilon = get<int>(doc, "epsilon");
  if (doc.contains("output")) spec.output = rational_from_json(doc.at("output"));
  return spec;
}

json to_json(const ExplanationProblem& problem) {
  json doc;
  doc["point"] = problem.instance();
  doc["delta"] = to_string(problem.delta());
  if (problem.epsilon_setting()) doc["epsilon"] = *problem.epsilon_setting();
  doc["output"] = output_to_json(problem.output(), problem.model().task());
  return doc;
}

json to_json(const XpFamily& family) {
  json sets = json::array();
  for (FeatureSet s : family.sets) sets.push_back(to_json(s));
  return {{"kind", std::string(to_string(family.kind))}, {"sets", std::move(sets)}};
}

XpFamily xp_family_from_json(const json& doc) {
  XpFamily out;
  const auto kind = get<std::string>(doc, "kind");
  if (kind == "axp") {
    out.kind = XpKind::axp;
  } else if (kind == "cxp") {
    out.kind = XpKind::cxp;
  } else {
    throw SchemaError("unknown explanation kind '" + kind + "'");
  }
  for (const auto& s : field(doc, "sets")) out.sets.push_back(feature_set_from_json(s));
  canonicalize(out.sets);
  return out;
}

json weights_to_json(const std::vector<CoverMeasure>& measures) {
  json out = json::array();
  for (const auto& m : measures) {
    json entry = {{"cxp", to_json(m.cxp)}, {"count", to_string(m.count)}, {"ratio", to_string(m.ratio)}};
    if (m.sampled) {
      entry["sampled"] = {{"ratio", to_string(m.sampled->ratio)},
                          {"samples", m.sampled->samples},
                          {"seed", m.sampled->seed}};
    }
    if (m.epsilon_truncated) entry["epsilon_truncated"] = true;
    out.push_back(std::move(entry));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Forests and scores

json to_json(const CxpForest& forest) {
  json cxps = json::array();
  json weights = json::array();
  for (std::size_t i = 0; i < forest.size(); ++i) {
    cxps.push_back(to_json(forest.cxps()[i]));
    weights.push_back(to_string(forest.weights()[i]));
  }
  return {{"m", forest.feature_count()}, {"cxps", std::move(cxps)}, {"weights", std::move(weights)}};
}

CxpForest forest_from_json(const json& doc) {
  const int m = get<int>(doc, "m");
  std::vector<FeatureSet> cxps;
  std::vector<Rational> weights;
  for (const auto& s : field(doc, "cxps")) cxps.push_back(feature_set_from_json(s));
  for (const auto& w : field(doc, "weights")) weights.push_back(rational_from_json(w));
  try {
    return CxpForest(m, std::move(cxps), std::move(weights));
  } catch (const ArgumentError& e) {
    throw SchemaError(e.what());
  }
}

json to_json(const ScoreVector& scores, int places) {
  json values = json::array();
  json decimal = json::array();
  for (const auto& v : scores.values) {
    values.push_back(to_string(v));
    decimal.push_back(decimal_number(v, places));
  }
  return {{"method", std::string(to_string(scores.method))}, {"values", std::move(values)}, {"decimal", std::move(decimal)}};
}

ScoreVector score_vector_from_json(const json& doc) {
  ScoreVector out;
  try {
    out.method = parse_score_method(get<std::string>(doc, "method"));
  } catch (const ArgumentError& e) {
    throw SchemaError(e.what());
  }
  for (const auto& v : field(doc, "values")) out.values.push_back(rational_from_json(v));
  return out;
}

json to_json(const PropertyReport& report) {
  json props = json::array();
  for (const auto& c : report.checks) {
    props.push_back({{"name", c.name}, {"holds", c.holds}, {"informational", c.informational}, {"witness", c.witness}});
  }
  return {{"passed", report.passed()}, {"properties", std::move(props)}};
}

json to_json(const RboReport& report, int places) {
  json values = json::array();
  json decimal = json::array();
  for (const auto& row : report.values) {
    json r = json::array();
    json d = json::array();
    for (const auto& v : row) {
      r.push_back(to_string(v));
      d.push_back(decimal_number(v, places));
    }
    values.push_back(std::move(r));
    decimal.push_back(std::move(d));
  }
  return {{"persistence", to_string(report.persistence)},
          {"depth", report.depth},
          {"labels", report.labels},
          {"values", std::move(values)},
          {"decimal", std::move(decimal)}};
}

std::string to_csv(const RboReport& report, int places) {
  std::ostringstream out;
  out << "method";
  for (const auto& l : report.labels) out << ',' << l;
  out << '\n';
  for (std::size_t i = 0; i < report.labels.size(); ++i) {
    out << report.labels[i];
    for (const auto& v : report.values[i]) out << ',' << to_decimal(v, places);
    out << '\n';
  }
  return out.str();
}

std::string to_csv(const std::vector<ScoreVector>& scores, int places) {
  std::ostringstream out;
  out << "feature";
  for (const auto& s : scores) out << ',' << to_string(s.method);
  out << '\n';
  const int m = scores.empty() ? 0 : scores.front().feature_count();
  for (int j = 1; j <= m; ++j) {
    out << j;
    for (const auto& s : scores) out << ',' << to_decimal(s.at(j), places);
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Files

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace axfi::io
