#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "axfi/compare.hpp"
#include "axfi/forest.hpp"
#include "axfi/io.hpp"
#include "axfi/scores.hpp"
#include "axfi/synth.hpp"
#include "axfi/verify.hpp"
#include "axfi/xp.hpp"

namespace axfi::cli {

namespace {

using io::json;

constexpr const char* kExitCodes =
    "Exit codes:\n"
    "  0  success\n"
    "  1  verification failed\n"
    "  2  usage error\n"
    "  3  schema error (malformed input document)\n"
    "  4  domain error (value outside a feature domain)\n"
    "  5  argument error (violated precondition)\n"
    "  6  resource error (enumeration cap exceeded)\n"
    "  7  method error (algorithm does not apply to the model)\n"
    "  8  I/O error\n"
    "  9  internal error\n"
    "Errors are written to stderr as {\"error\":{\"kind\":...,\"message\":...}}.";

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string model_path;
  std::string instance_path;
  std::string weight_mode = "count";
  std::uint64_t samples = 5000;
  std::uint64_t seed = 0;
  std::optional<int> epsilon;
  std::optional<std::string> delta;
  std::string persistence = "1/2";
  int depth = 5;
  std::vector<std::string> methods;
  std::string format = "json";
  int cap_subsets = Limits{}.max_subset_features;
  std::uint64_t cap_space = Limits{}.max_space_points;
  std::string cxp_method = "auto";
  std::string axp_method = "auto";
  std::string transform = "identity";
  std::vector<std::string> score_files;
  bool no_relabel = false;

  // gen
  std::string kind = "running";
  int k = 3;
  int features = 6;
  int max_domain = 3;
  std::string model_kind = "tree";
  std::string task = "classification";
  double leaf_bias = 0.5;
  int classes = 2;
  std::string out_model;
  std::string out_instance;

  Limits limits() const {
    Limits l;
    l.max_subset_features = cap_subsets;
    l.max_space_points = cap_space;
    return l;
  }
};

json read_file(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw IoError("cannot read '" + path + "'");
  return io::read_json_file(path);
}

void write_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

ExplanationProblem load_problem(const Config& cfg) {
  Model model = io::model_from_json(read_file(cfg.model_path));
  io::InstanceSpec spec = io::instance_from_json(read_file(cfg.instance_path));
  if (cfg.delta) spec.delta = parse_rational(*cfg.delta);
  if (cfg.epsilon) spec.epsilon = cfg.epsilon;
  ExplanationProblem problem(std::move(model), spec.point, spec.delta, spec.epsilon);
  if (spec.output && *spec.output != problem.output()) {
    throw ArgumentError("instance output " + to_string(*spec.output) + " differs from the model output " +
                        to_string(problem.output()));
  }
  return problem;
}

CxpMethod cxp_method(const std::string& s) {
  if (s == "auto") return CxpMethod::automatic;
  if (s == "brute") return CxpMethod::brute;
  return CxpMethod::dt_paths;
}

AxpMethod axp_method(const std::string& s) {
  if (s == "auto") return AxpMethod::automatic;
  if (s == "brute") return AxpMethod::brute;
  return AxpMethod::mhs_dual;
}

ForestOptions forest_options(const Config& cfg, const ExplanationProblem& problem) {
  ForestOptions o;
  o.mode = parse_weight_mode(cfg.weight_mode);
  o.samples = cfg.samples;
  o.seed = cfg.seed;
  o.epsilon = problem.epsilon_setting();
  o.cxp_method = cxp_method(cfg.cxp_method);
  o.limits = cfg.limits();
  return o;
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

int cmd_explain(const Config& cfg, std::ostream& out) {
  const ExplanationProblem problem = load_problem(cfg);
  const Limits limits = cfg.limits();
  const XpFamily cxps = enumerate_cxps(problem, cxp_method(cfg.cxp_method), limits);
  const XpFamily axps = enumerate_axps(problem, axp_method(cfg.axp_method), limits, cxp_method(cfg.cxp_method));
  emit(out, {{"problem", io::to_json(problem)},
             {"axps", io::to_json(axps)},
             {"cxps", io::to_json(cxps)},
             {"relevant", io::to_json(cxps.support() | axps.support())}});
  return kOk;
}

int cmd_weights(const Config& cfg, std::ostream& out) {
  const ExplanationProblem problem = load_problem(cfg);
  const ForestOptions fo = forest_options(cfg, problem);
  const XpFamily cxps = enumerate_cxps(problem, fo.cxp_method, fo.limits);
  WeightOptions wo;
  wo.mode = fo.mode;
  wo.samples = fo.samples;
  wo.seed = fo.seed;
  wo.epsilon = fo.epsilon;
  wo.limits = fo.limits;
  const auto measures = compute_weights(problem, cxps, wo);
  json doc = {{"mode", std::string(to_string(fo.mode))}, {"weights", io::weights_to_json(measures)}};
  if (!cxps.sets.empty()) doc["forest"] = io::to_json(make_forest(problem.feature_count(), cxps, measures, fo.mode));
  emit(out, doc);
  return kOk;
}

int cmd_scores(const Config& cfg, std::ostream& out) {
  const ExplanationProblem problem = load_problem(cfg);
  const ForestOptions fo = forest_options(cfg, problem);
  const int m = problem.feature_count();
  std::vector<ScoreMethod> methods;
  for (const auto& name : cfg.methods) methods.push_back(parse_score_method(name));
  if (methods.empty()) methods = {ScoreMethod::axfi_shapley, ScoreMethod::axfi_banzhaf};

  const XpFamily cxps = enumerate_cxps(problem, fo.cxp_method, fo.limits);
  if (cxps.sets.empty()) throw ArgumentError("every point is similar to the instance; there is no CXp");
  std::optional<XpFamily> axps;
  auto need_axps = [&]() -> const XpFamily& {
    if (!axps) axps = enumerate_axps(problem, AxpMethod::mhs_dual, fo.limits, fo.cxp_method);
    return *axps;
  };
  WeightOptions wo;
  wo.mode = fo.mode;
  wo.samples = fo.samples;
  wo.seed = fo.seed;
  wo.epsilon = fo.epsilon;
  wo.limits = fo.limits;
  const CxpForest forest = make_forest(m, cxps, compute_weights(problem, cxps, wo), fo.mode);

  std::vector<ScoreVector> scores;
  std::optional<SetFunction> game;
  auto need_game = [&]() -> const SetFunction& {
    if (!game) game = SetFunction::of(forest, fo.limits);
    return *game;
  };
  for (ScoreMethod method : methods) {
    switch (method) {
      case ScoreMethod::axfi_shapley: scores.push_back(axfi_shapley(forest)); break;
      case ScoreMethod::axfi_banzhaf: scores.push_back(axfi_banzhaf(forest)); break;
      case ScoreMethod::shapley_exhaustive: scores.push_back(shapley_exhaustive(need_game())); break;
      case ScoreMethod::banzhaf_exhaustive: scores.push_back(banzhaf_exhaustive(need_game())); break;
      case ScoreMethod::ffa: scores.push_back(ffa(need_axps(), m)); break;
      case ScoreMethod::wffa: scores.push_back(wffa(need_axps(), m)); break;
      case ScoreMethod::responsibility: scores.push_back(responsibility(need_axps(), m)); break;
      case ScoreMethod::deegan_packel_cxp: scores.push_back(deegan_packel_cxp(cxps, m)); break;
      case ScoreMethod::shap_exact: scores.push_back(shap_exact(problem, fo.limits)); break;
    }
  }

  if (cfg.format == "csv") {
    out << io::to_csv(scores);
    return kOk;
  }
  PropertyContext ctx;
  ctx.problem = &problem;
  ctx.axps = &need_axps();
  ctx.limits = fo.limits;
  json list = json::array();
  for (const auto& s : scores) list.push_back(io::to_json(s));
  emit(out, {{"mode", std::string(to_string(fo.mode))},
             {"forest", io::to_json(forest)},
             {"gamma", to_string(gamma(forest))},
             {"scores", std::move(list)},
             {"properties", io::to_json(check_properties(forest, ctx))}});
  return kOk;
}

int cmd_compare(const Config& cfg, std::ostream& out) {
  const Transform transform = cfg.transform == "abs" ? Transform::absolute : Transform::identity;
  std::vector<Ranking> rankings;
  for (const auto& path : cfg.score_files) {
    const json doc = read_file(path);
    std::vector<json> entries;
    if (doc.is_object() && doc.contains("scores")) {
      for (const auto& s : doc.at("scores")) entries.push_back(s);
    } else if (doc.is_array()) {
      for (const auto& s : doc) entries.push_back(s);
    } else {
      entries.push_back(doc);
    }
    for (const auto& e : entries) rankings.push_back(ranking(io::score_vector_from_json(e), transform));
  }
  const RboReport report = rbo_report(rankings, parse_rational(cfg.persistence), cfg.depth);
  if (cfg.format == "csv") {
    out << io::to_csv(report);
  } else {
    emit(out, io::to_json(report));
  }
  return kOk;
}

int cmd_gen(const Config& cfg, std::ostream& out) {
  std::optional<ExplanationProblem> problem;
  if (cfg.kind == "running") {
    problem.emplace(running_example());
  } else if (cfg.kind == "gadget") {
    problem.emplace(gadget_dt(cfg.k));
  } else {
    RandomSpec spec;
    spec.features = cfg.features;
    spec.max_domain = cfg.max_domain;
    spec.kind = cfg.model_kind == "tabular" ? ModelKind::tabular : ModelKind::tree;
    spec.task = cfg.task == "regression" ? Task::regression : Task::classification;
    spec.leaf_bias = cfg.leaf_bias;
    spec.classes = cfg.classes;
    if (cfg.delta) spec.delta = parse_rational(*cfg.delta);
    problem.emplace(random_problem(spec, cfg.seed));
  }
  const json model = io::to_json(problem->model());
  json instance = io::to_json(*problem);
  if (cfg.epsilon) instance["epsilon"] = *cfg.epsilon;
  if (!cfg.out_model.empty()) write_file(cfg.out_model, model);
  if (!cfg.out_instance.empty()) write_file(cfg.out_instance, instance);
  if (cfg.out_model.empty() || cfg.out_instance.empty()) emit(out, {{"model", model}, {"instance", instance}});
  return kOk;
}

int cmd_verify(const Config& cfg, std::ostream& out) {
  const ExplanationProblem problem = load_problem(cfg);
  VerifyOptions vo;
  vo.limits = cfg.limits();
  vo.mode = parse_weight_mode(cfg.weight_mode);
  vo.samples = cfg.samples;
  vo.seed = cfg.seed;
  vo.check_relabel = !cfg.no_relabel;
  const VerifyReport report = verify_problem(problem, vo);
  json checks = json::array();
  for (const auto& c : report.checks) {
    json entry = {{"name", c.name}, {"status", c.skipped ? "skipped" : c.passed ? "pass" : "fail"}};
    if (!c.detail.empty()) entry["detail"] = c.detail;
    checks.push_back(std::move(entry));
  }
  emit(out, {{"passed", report.passed()},
             {"cxp_count", report.cxp_count},
             {"axp_count", report.axp_count},
             {"checks", std::move(checks)}});
  return report.passed() ? kOk : kVerificationFailed;
}

int report_error(std::ostream& err, std::string_view kind, const std::string& message, int code) {
  err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
  return code;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::schema: return kSchema;
    case ErrorKind::domain: return kDomain;
    case ErrorKind::argument: return kArgument;
    case ErrorKind::resource: return kResource;
    case ErrorKind::method: return kMethod;
  }
  return kInternal;
}

void add_problem_options(CLI::App* sub, Config& cfg) {
  sub->add_option("--model", cfg.model_path, "Model JSON file")->required();
  sub->add_option("--instance", cfg.instance_path, "Instance JSON file")->required();
  sub->add_option("--delta", cfg.delta, "Regression similarity threshold (overrides the instance file)");
  sub->add_option("--epsilon", cfg.epsilon, "l0 radius for adversarial examples")->check(CLI::NonNegativeNumber);
  sub->add_option("--cap-subsets", cfg.cap_subsets, "Largest m for subset enumeration")->check(CLI::Range(1, 64));
  sub->add_option("--cap-space", cfg.cap_space, "Largest point count for space scans");
  sub->add_option("--cxp-method", cfg.cxp_method, "CXp enumeration")
      ->check(CLI::IsMember({"auto", "brute", "dt_paths"}));
}

void add_weight_options(CLI::App* sub, Config& cfg) {
  sub->add_option("--weight-mode", cfg.weight_mode, "count|ratio|sampled|unweighted")
      ->check(CLI::IsMember({"count", "ratio", "sampled", "unweighted"}));
  sub->add_option("--samples", cfg.samples, "Samples per CXp in sampled mode")->check(CLI::PositiveNumber);
  sub->add_option("--seed", cfg.seed, "Seed for sampling");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Feature importance from formal explanations", "axfi"};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  auto* explain = app.add_subcommand("explain", "Enumerate AXps, CXps and relevant features");
  add_problem_options(explain, cfg);
  explain->add_option("--axp-method", cfg.axp_method, "AXp enumeration")
      ->check(CLI::IsMember({"auto", "brute", "mhs_dual"}));

  auto* weights = app.add_subcommand("weights", "Adversarial-example cover of each CXp");
  add_problem_options(weights, cfg);
  add_weight_options(weights, cfg);

  auto* scores = app.add_subcommand("scores", "Feature-importance scores and the property report");
  add_problem_options(scores, cfg);
  add_weight_options(scores, cfg);
  scores->add_option("--methods", cfg.methods, "Score methods (comma separated)")->delimiter(',');
  scores->add_option("--format", cfg.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  auto* compare = app.add_subcommand("compare", "Pairwise rank-biased overlap of score rankings");
  compare->add_option("files", cfg.score_files, "Score JSON files")->required();
  compare->add_option("--persistence", cfg.persistence, "RBO persistence p in (0,1)");
  compare->add_option("--depth", cfg.depth, "RBO evaluation depth")->check(CLI::PositiveNumber);
  compare->add_option("--transform", cfg.transform, "identity|abs")->check(CLI::IsMember({"identity", "abs"}));
  compare->add_option("--format", cfg.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  auto* gen = app.add_subcommand("gen", "Write a synthetic model and instance");
  gen->add_option("--kind", cfg.kind, "running|gadget|random")->check(CLI::IsMember({"running", "gadget", "random"}));
  gen->add_option("--k", cfg.k, "Gadget count")->check(CLI::Range(1, 21));
  gen->add_option("--features", cfg.features, "Random: feature count")->check(CLI::Range(1, 64));
  gen->add_option("--max-domain", cfg.max_domain, "Random: largest domain size")->check(CLI::Range(2, 1000));
  gen->add_option("--model-kind", cfg.model_kind, "Random: tree|tabular")->check(CLI::IsMember({"tree", "tabular"}));
  gen->add_option("--task", cfg.task, "Random: classification|regression")
      ->check(CLI::IsMember({"classification", "regression"}));
  gen->add_option("--leaf-bias", cfg.leaf_bias, "Random: probability of class 0")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--classes", cfg.classes, "Random: class count")->check(CLI::Range(2, 1000));
  gen->add_option("--seed", cfg.seed, "Random: seed");
  gen->add_option("--delta", cfg.delta, "Random: regression similarity threshold");
  gen->add_option("--epsilon", cfg.epsilon, "Epsilon stored in the instance")->check(CLI::NonNegativeNumber);
  gen->add_option("--out-model", cfg.out_model, "Model output path");
  gen->add_option("--out-instance", cfg.out_instance, "Instance output path");

  auto* verify = app.add_subcommand("verify", "Run the invariant suite on one problem");
  add_problem_options(verify, cfg);
  add_weight_options(verify, cfg);
  verify->add_flag("--no-relabel", cfg.no_relabel, "Skip the relabeling check");

  std::vector<const char*> argv{"axfi"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    return report_error(err, "usage_error", e.what(), kUsage);
  }

  try {
    if (explain->parsed()) return cmd_explain(cfg, out);
    if (weights->parsed()) return cmd_weights(cfg, out);
    if (scores->parsed()) return cmd_scores(cfg, out);
    if (compare->parsed()) return cmd_compare(cfg, out);
    if (gen->parsed()) return cmd_gen(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out);
    return report_error(err, "usage_error", "no subcommand", kUsage);
  } catch (const Error& e) {
    return report_error(err, to_string(e.kind()), e.what(), exit_code(e.kind()));
  } catch (const IoError& e) {
    return report_error(err, "io_error", e.what(), kIo);
  } catch (const std::exception& e) {
    return report_error(err, "internal_error", e.what(), kInternal);
  }
}

}  // namespace axfi::cli
