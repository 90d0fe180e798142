#include "fairclust/experiment.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <set>

#include "fairclust/errors.hpp"
#include "fairclust/fairness.hpp"
#include "fairclust/io.hpp"
#include "fairclust/svg.hpp"

namespace fairclust {

using nlohmann::json;

namespace {

const std::set<std::string>& known_config_keys() {
  static const std::set<std::string> keys = {
      "instance",   "figure", "params",       "k",
      "objective",  "notions", "model",       "rule",
      "out_dir",    "seed",   "budget_nodes", "tol",
      "threads",    "enumerate_optima",       "enumerate_cap"};
  return keys;
}

OutlierRule rule_from_spec(const json& spec) {
  OutlierRule rule;
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "absolute_threshold") {
    rule.kind = OutlierKind::absolute_threshold;
  } else if (kind == "multiple_of_median") {
    rule.kind = OutlierKind::multiple_of_median;
  } else {
    throw InvalidParams("unknown outlier rule kind: " + kind);
  }
  rule.value = spec.at("value").get<double>();
  return rule;
}

json canonical_config(const ExperimentConfig& cfg) {
  json j;
  if (cfg.figure) {
    j["figure"] = figure_name(*cfg.figure);
    if (!cfg.params.empty()) {
      json p = json::object();
      for (const auto& [key, value] : cfg.params) p[key] = value;
      j["params"] = p;
    }
  } else {
    j["instance"] = cfg.instance_path;
  }
  if (cfg.k > 0) j["k"] = cfg.k;
  if (cfg.objective) j["objective"] = objective_name(*cfg.objective);
  if (!cfg.notion_specs.empty()) j["notions"] = cfg.notion_specs;
  if (cfg.model_spec) j["model"] = *cfg.model_spec;
  if (cfg.rule)
    j["rule"] = json{{"kind", outlier_kind_name(cfg.rule->kind)},
                     {"value", cfg.rule->value}};
  j["seed"] = cfg.seed;
  j["budget_nodes"] = cfg.opts.budget_nodes;
  j["tol"] = cfg.opts.tol;
  if (cfg.enumerate) {
    j["enumerate_optima"] = true;
    j["enumerate_cap"] = cfg.enumerate_cap;
  }
  return j;
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw InvalidParams("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      (void)value;
      if (!known_config_keys().count(key))
        throw InvalidParams("unknown config key: " + key);
    }
    ExperimentConfig cfg;
    const bool has_path = j.contains("instance");
    const bool has_figure = j.contains("figure");
    if (has_path == has_figure)
      throw InvalidParams(
          "config needs exactly one of \"instance\" and \"figure\"");
    if (has_path) {
      cfg.instance_path = j.at("instance").get<std::string>();
    } else {
      const std::string name = j.at("figure").get<std::string>();
      cfg.figure = figure_from_name(name);
      if (!cfg.figure) throw InvalidParams("unknown figure id: " + name);
      if (j.contains("params"))
        for (const auto& [key, value] : j.at("params").items())
          cfg.params[key] = value.get<double>();
    }
    if (j.contains("k")) {
      cfg.k = j.at("k").get<int>();
      if (cfg.k < 1) throw InvalidParams("k must be >= 1");
    }
    if (j.contains("objective"))
      cfg.objective = objective_from_name(j.at("objective").get<std::string>());
    if (j.contains("notions")) {
      if (!j.at("notions").is_array())
        throw InvalidParams("\"notions\" must be an array");
      for (const auto& spec : j.at("notions")) {
        if (!spec.is_object() || !spec.contains("notion"))
          throw InvalidParams("each notion entry needs a \"notion\" field");
        cfg.notion_specs.push_back(spec);
      }
    }
    if (j.contains("model")) cfg.model_spec = j.at("model");
    if (j.contains("rule")) cfg.rule = rule_from_spec(j.at("rule"));
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("budget_nodes"))
      cfg.opts.budget_nodes = j.at("budget_nodes").get<std::int64_t>();
    if (j.contains("tol")) cfg.opts.tol = j.at("tol").get<double>();
    if (j.contains("threads")) cfg.opts.threads = j.at("threads").get<int>();
    if (j.contains("enumerate_optima"))
      cfg.enumerate = j.at("enumerate_optima").get<bool>();
    if (j.contains("enumerate_cap"))
      cfg.enumerate_cap = j.at("enumerate_cap").get<std::size_t>();
    cfg.canonical = canonical_config(cfg);
    return cfg;
  } catch (const json::exception& e) {
    throw InvalidParams(std::string("malformed config: ") + e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  return config_from_json(load_json_file(path));
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string dump = cfg.canonical.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char ch : dump) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

Notion notion_from_spec(const json& spec, const Instance& inst) {
  try {
    const std::string name = spec.at("notion").get<std::string>();
    Notion notion;
    notion.kind = notion_from_name(name);
    switch (notion.kind) {
      case NotionKind::cm:
        if (spec.contains("bounds")) {
          for (const auto& [color, pair] : spec.at("bounds").items()) {
            bool known = false;
            for (const auto& c : inst.color_names) known |= (c == color);
            if (!known) throw InvalidParams("bounds for unknown color: " + color);
            notion.cm.by_color[color] = {pair.at(0).get<double>(),
                                         pair.at(1).get<double>()};
          }
        } else {
          notion.cm = CmBounds::uniform(inst, spec.value("lower", 0.0),
                                        spec.value("upper", 1.0));
        }
        break;
      case NotionKind::eq:
        notion.eq.alpha = spec.value("alpha", 1.0);
        break;
      case NotionKind::sf:
        notion.sf.p = spec.value("p", 1);
        break;
      case NotionKind::agnostic:
      case NotionKind::wc:
        break;
    }
    return notion;
  } catch (const json::exception& e) {
    throw InvalidParams(std::string("malformed notion entry: ") + e.what());
  }
}

namespace {

PointModel point_model_from_spec(const json& spec) {
  PointModel m;
  if (spec.contains("distance_term")) {
    const std::string term = spec.at("distance_term").get<std::string>();
    if (term == "linear")
      m.distance = DistanceKind::linear;
    else if (term == "neg_identity")
      m.distance = DistanceKind::neg_identity;
    else
      throw InvalidParams("unknown distance term: " + term);
  }
  m.offset = spec.value("offset", 0.0);
  if (spec.contains("outcome_term")) {
    const std::string term = spec.at("outcome_term").get<std::string>();
    if (term == "center_label")
      m.outcome = OutcomeKind::center_label;
    else if (term == "diversity_ratio")
      m.outcome = OutcomeKind::diversity_ratio;
    else if (term == "constant")
      m.outcome = OutcomeKind::constant;
    else
      throw InvalidParams("unknown outcome term: " + term);
  }
  m.constant = spec.value("constant", 0.0);
  m.w_distance = spec.value("w_distance", 1.0);
  m.w_outcome = spec.value("w_outcome", 1.0);
  return m;
}

}  // namespace

UtilityModel model_from_spec(const json& spec) {
  try {
    if (spec.contains("model")) {
      const std::string preset = spec.at("model").get<std::string>();
      if (preset == "theorem1") return theorem1_model(spec.value("r", 1.0));
      throw InvalidParams("unknown model preset: " + preset);
    }
    UtilityModel model;
    model.base = point_model_from_spec(spec);
    if (spec.contains("overrides"))
      for (const auto& [key, sub] : spec.at("overrides").items())
        model.overrides[std::stoi(key)] = point_model_from_spec(sub);
    return model;
  } catch (const json::exception& e) {
    throw InvalidParams(std::string("malformed model spec: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw InvalidParams("model overrides need integer point keys");
  }
}

ResolvedExperiment resolve_experiment(const ExperimentConfig& cfg) {
  ResolvedExperiment r;
  r.inst = cfg.figure ? generate_figure(*cfg.figure, cfg.params)
                      : load_instance(cfg.instance_path);
  r.k = cfg.k;
  if (r.k <= 0) {
    const auto it = r.inst.metadata.find("suggested_k");
    if (it == r.inst.metadata.end())
      throw InvalidParams("k not given and the instance suggests none");
    r.k = std::stoi(it->second);
  }
  if (cfg.objective) {
    r.objective = *cfg.objective;
  } else {
    const auto it = r.inst.metadata.find("suggested_objective");
    r.objective = it == r.inst.metadata.end()
                      ? Objective::k_median
                      : objective_from_name(it->second);
  }
  return r;
}

namespace {

// Collects reports + timings for one runner invocation and writes the
// manifest last.
class Runner {
 public:
  explicit Runner(const ExperimentConfig& cfg) : cfg_(cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    manifest_.config_hash = config_hash(cfg);
  }

  template <class F>
  auto timed(const std::string& stage, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    auto value = f();
    const auto stop = std::chrono::steady_clock::now();
    manifest_.wall_ms[stage] =
        std::chrono::duration<double, std::milli>(stop - start).count();
    return value;
  }

  void write(const std::string& name, const json& j) {
    write_json_file(path_of(name), j);
    record(name);
  }

  void write_text(const std::string& name, const std::string& text) {
    write_text_file(path_of(name), text);
    record(name);
  }

  std::vector<std::string> finish() {
    json m;
    m["config_hash"] = manifest_.config_hash;
    m["tool_version"] = manifest_.tool_version;
    json wall = json::object();
    for (const auto& [stage, ms] : manifest_.wall_ms) wall[stage] = ms;
    m["wall_ms"] = wall;
    m["outputs"] = manifest_.outputs;
    write_json_file(path_of("manifest.json"), m);
    paths_.push_back(path_of("manifest.json"));
    return paths_;
  }

 private:
  std::string path_of(const std::string& name) const {
    return (std::filesystem::path(cfg_.out_dir) / name).string();
  }
  void record(const std::string& name) {
    manifest_.outputs.push_back(name);
    paths_.push_back(path_of(name));
  }

  const ExperimentConfig& cfg_;
  RunManifest manifest_;
  std::vector<std::string> paths_;
};

// "cm", "cm_2", ... for repeated notion names in one config.
std::string unique_name(std::map<std::string, int>& seen,
                        const std::string& base) {
  const int count = ++seen[base];
  return count == 1 ? base : base + "_" + std::to_string(count);
}

UtilityModel require_model(const ExperimentConfig& cfg, const char* who) {
  if (!cfg.model_spec)
    throw InvalidParams(std::string(who) + " needs a utility model");
  return model_from_spec(*cfg.model_spec);
}

SolveReport solve_notion(const ExperimentConfig& cfg,
                         const ResolvedExperiment& r, const Notion& notion) {
  if (notion.kind == NotionKind::wc)
    return solve_welfare_centric(r.inst, r.k, require_model(cfg, "wc solve"),
                                 cfg.opts);
  if (notion.kind == NotionKind::agnostic)
    return solve_exact(r.inst, r.k, r.objective, cfg.opts);
  return solve_fair(r.inst, r.k, r.objective, notion, cfg.opts);
}

// One compare row per tied optimum when a notion's optimum is not unique,
// labelled cm#1, cm#2, ...  wc rows pass through (no enumeration support).
std::vector<ComparisonRow> expand_ties(const ExperimentConfig& cfg,
                                       const ResolvedExperiment& r,
                                       const UtilityModel& model,
                                       const std::vector<Notion>& notions,
                                       std::vector<ComparisonRow> rows) {
  const SolveReport agnostic = solve_exact(r.inst, r.k, r.objective, cfg.opts);
  const WelfareReport ag_welfare = welfare(model, r.inst, agnostic.clustering);
  int sf_p = 1;
  for (const auto& n : notions)
    if (n.kind == NotionKind::sf) {
      sf_p = n.sf.p;
      break;
    }
  std::vector<ComparisonRow> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (notions[i].kind == NotionKind::wc) {
      out.push_back(std::move(rows[i]));
      continue;
    }
    const auto optima =
        enumerate_optima(r.inst, r.k, r.objective, notions[i], cfg.opts.tol,
                         cfg.enumerate_cap, cfg.opts);
    if (optima.size() <= 1) {
      out.push_back(std::move(rows[i]));
      continue;
    }
    for (std::size_t t = 0; t < optima.size(); ++t) {
      ComparisonRow row;
      row.notion = rows[i].notion + "#" + std::to_string(t + 1);
      row.objective_value = evaluate_cost(r.inst, optima[t], r.objective);
      row.sf_value = sf_objective(r.inst, optima[t], SfSpec{sf_p});
      row.pof = degradation_ratio(row.objective_value, agnostic.value);
      row.welfare = welfare(model, r.inst, optima[t]);
      for (const auto& name : r.inst.color_names) {
        const auto mine = row.welfare.group_average.find(name);
        const auto ref = ag_welfare.group_average.find(name);
        if (mine != row.welfare.group_average.end() &&
            ref != ag_welfare.group_average.end() &&
            mine->second < ref->second - 1e-12)
          row.degraded_groups.push_back(name);
      }
      row.clustering = optima[t];
      out.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> run_solve(const ExperimentConfig& cfg) {
  Runner run(cfg);
  const ResolvedExperiment r =
      run.timed("resolve", [&] { return resolve_experiment(cfg); });
  run.write("instance.json", instance_to_json(r.inst));
  std::vector<json> specs = cfg.notion_specs;
  if (specs.empty()) specs.push_back(json{{"notion", "agnostic"}});
  std::map<std::string, int> seen;
  for (const auto& spec : specs) {
    const Notion notion = notion_from_spec(spec, r.inst);
    const std::string name =
        unique_name(seen, spec.at("notion").get<std::string>());
    const SolveReport rep =
        run.timed("solve_" + name, [&] { return solve_notion(cfg, r, notion); });
    run.write("report_" + name + ".json", solve_report_to_json(rep));
    run.write("clustering_" + name + ".json",
              clustering_to_json(rep.clustering));
  }
  return run.finish();
}

std::vector<std::string> run_compare(const ExperimentConfig& cfg) {
  Runner run(cfg);
  const ResolvedExperiment r =
      run.timed("resolve", [&] { return resolve_experiment(cfg); });
  run.write("instance.json", instance_to_json(r.inst));
  const UtilityModel model = require_model(cfg, "compare");
  std::vector<Notion> notions;
  for (const auto& spec : cfg.notion_specs)
    notions.push_back(notion_from_spec(spec, r.inst));
  if (notions.empty())
    throw InvalidParams("compare needs at least one notion");
  std::vector<ComparisonRow> rows = run.timed("compare", [&] {
    auto base =
        compare_notions(r.inst, r.k, r.objective, model, notions, cfg.opts);
    return cfg.enumerate ? expand_ties(cfg, r, model, notions, std::move(base))
                         : base;
  });
  run.write("compare.json", comparison_to_json(rows));
  run.write_text("compare.csv", comparison_to_csv(rows, r.inst.color_names));
  run.write_text("welfare.svg", welfare_bar_chart(rows, r.inst.color_names));
  return run.finish();
}

std::vector<std::string> run_audit(const ExperimentConfig& cfg) {
  Runner run(cfg);
  const ResolvedExperiment r =
      run.timed("resolve", [&] { return resolve_experiment(cfg); });
  run.write("instance.json", instance_to_json(r.inst));
  const bool has_rule = cfg.rule.has_value();
  const bool has_labels = r.inst.has_class_labels();
  if (!has_rule && !has_labels)
    throw InvalidParams("audit needs an outlier rule or class labels");

  const SolveReport agnostic = run.timed(
      "solve_agnostic", [&] { return solve_exact(r.inst, r.k, r.objective, cfg.opts); });

  json report;
  if (has_rule)
    report["rule"] = json{{"kind", outlier_kind_name(cfg.rule->kind)},
                          {"value", json_number(cfg.rule->value)}};
  json entries = json::array();
  const auto entry_for = [&](const std::string& name, const Clustering& c,
                             bool is_reference) {
    json e;
    e["notion"] = name;
    e["clustering"] = clustering_to_json(c);
    if (has_rule) {
      e["flagged"] = flag_outliers(r.inst, c, *cfg.rule);
      if (!is_reference)
        e["confusion"] = confusion_to_json(
            outlier_confusion(r.inst, c, agnostic.clustering, *cfg.rule));
    }
    if (has_labels)
      e["separability"] = separability_to_json(
          per_cluster_separability(r.inst, c));
    entries.push_back(std::move(e));
  };
  entry_for("agnostic", agnostic.clustering, true);

  std::map<std::string, int> seen;
  seen["agnostic"] = 1;
  for (const auto& spec : cfg.notion_specs) {
    const Notion notion = notion_from_spec(spec, r.inst);
    if (notion.kind == NotionKind::agnostic) continue;
    const std::string name =
        unique_name(seen, spec.at("notion").get<std::string>());
    const SolveReport rep =
        run.timed("solve_" + name, [&] { return solve_notion(cfg, r, notion); });
    entry_for(name, rep.clustering, false);
  }
  report["clusterings"] = std::move(entries);
  run.write("audit.json", report);
  return run.finish();
}

}  // namespace fairclust
