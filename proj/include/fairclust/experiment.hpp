#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairclust/audit.hpp"
#include "fairclust/generators.hpp"
#include "fairclust/instance.hpp"
#include "fairclust/notions.hpp"
#include "fairclust/solver.hpp"
#include "fairclust/welfare.hpp"

namespace fairclust {

inline constexpr const char* kToolVersion = "0.1.0";

// A declarative experiment: where the instance comes from, what to solve, and
// where reports go.  Notion and model blocks stay as raw JSON because their
// validation needs the resolved instance (color names, point count).
struct ExperimentConfig {
  std::string instance_path;  // exactly one of this and `figure` is set
  std::optional<FigureId> figure;
  GenParams params;

  int k = 0;  // 0: take the instance's suggested_k metadata
  std::optional<Objective> objective;
  std::vector<nlohmann::json> notion_specs;
  std::optional<nlohmann::json> model_spec;
  std::optional<OutlierRule> rule;

  std::string out_dir = ".";
  std::uint64_t seed = 0;
  SolveOptions opts;
  bool enumerate = false;
  std::size_t enumerate_cap = 64;

  nlohmann::json canonical;  // normalized form, hashed into the manifest
};

ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

// FNV-1a over the canonical config dump, 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

Notion notion_from_spec(const nlohmann::json& spec, const Instance& inst);
UtilityModel model_from_spec(const nlohmann::json& spec);

// Instance plus the effective k / objective after metadata fallbacks.
struct ResolvedExperiment {
  Instance inst;
  int k = 0;
  Objective objective = Objective::k_median;
};

ResolvedExperiment resolve_experiment(const ExperimentConfig& cfg);

struct RunManifest {
  std::string config_hash;
  std::string tool_version = kToolVersion;
  std::map<std::string, double> wall_ms;  // per stage
  std::vector<std::string> outputs;       // names relative to out_dir
};

// Each runner writes its reports plus a trailing manifest.json into
// cfg.out_dir and returns the paths written, in order.  The manifest carries
// timing and is the one file exempt from byte-for-byte reproducibility.
std::vector<std::string> run_solve(const ExperimentConfig& cfg);
std::vector<std::string> run_compare(const ExperimentConfig& cfg);
std::vector<std::string> run_audit(const ExperimentConfig& cfg);

}  // namespace fairclust
