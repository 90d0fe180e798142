#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fairclust/errors.hpp"
#include "fairclust/experiment.hpp"
#include "fairclust/generators.hpp"
#include "fairclust/io.hpp"
#include "fairclust/selftest.hpp"

namespace {

using fairclust::InvalidParams;
using nlohmann::json;

struct ExitWith {
  int code;
};

void apply_raw_params(const std::vector<std::string>& raw,
                      std::map<std::string, double>& params) {
  for (const auto& kv : raw) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw InvalidParams("--param expects key=value, got: " + kv);
    try {
      params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw InvalidParams("--param value is not a number: " + kv);
    }
  }
}

// Named shortcuts for the figure parameters; anything else goes through
// --param key=value.
void add_figure_params(CLI::App* cmd,
                       const std::shared_ptr<std::map<std::string, double>>& params) {
  static const char* kNames[] = {"r",  "eps", "n", "R",     "Rp", "delta", "m",
                                 "g",  "D",   "M", "alpha", "c",  "r1",    "r2"};
  for (const char* name : kNames) {
    const std::string key = name;
    cmd->add_option_function<double>(
        "--" + key, [params, key](double v) { (*params)[key] = v; },
        "figure parameter " + key);
  }
}

struct SharedFlags {
  std::shared_ptr<std::string> config = std::make_shared<std::string>();
  std::shared_ptr<json> patch = std::make_shared<json>(json::object());
  std::shared_ptr<std::map<std::string, double>> named_params =
      std::make_shared<std::map<std::string, double>>();
  std::shared_ptr<std::vector<std::string>> raw_params =
      std::make_shared<std::vector<std::string>>();
};

SharedFlags add_run_flags(CLI::App* cmd, bool with_enumerate) {
  SharedFlags f;
  const auto set = [patch = f.patch](const char* key) {
    return [patch, key](const auto& v) { (*patch)[key] = v; };
  };
  cmd->add_option_function<std::string>(
      "--config", [cfg = f.config](const std::string& v) { *cfg = v; },
      "experiment config JSON file");
  cmd->add_option_function<std::string>("--out", set("out_dir"),
                                        "output directory");
  cmd->add_option_function<std::string>("--instance", set("instance"),
                                        "instance JSON file");
  cmd->add_option_function<std::string>("--figure", set("figure"),
                                        "generator figure id");
  cmd->add_option("--param", *f.raw_params, "figure parameter key=value");
  add_figure_params(cmd, f.named_params);
  cmd->add_option_function<int>("--k", set("k"), "number of centers");
  cmd->add_option_function<std::string>("--objective", set("objective"),
                                        "k_center | k_median | k_means");
  cmd->add_option_function<std::int64_t>("--budget-nodes", set("budget_nodes"),
                                         "search node budget");
  cmd->add_option_function<std::uint64_t>("--seed", set("seed"),
                                          "random seed");
  cmd->add_option_function<double>("--tol", set("tol"), "value tie tolerance");
  if (with_enumerate)
    cmd->add_flag_callback(
        "--enumerate-optima",
        [patch = f.patch] { (*patch)["enumerate_optima"] = true; },
        "expand tied optima into separate rows");
  return f;
}

fairclust::ExperimentConfig build_config(const SharedFlags& f) {
  json j = f.config->empty() ? json::object()
                             : fairclust::load_json_file(*f.config);
  if (!j.is_object()) throw InvalidParams("config must be a JSON object");
  // Flags win over the config file; a new instance source replaces the old.
  if (f.patch->contains("instance")) j.erase("figure");
  if (f.patch->contains("figure")) j.erase("instance");
  for (const auto& [key, value] : f.patch->items()) j[key] = value;
  std::map<std::string, double> params;
  if (j.contains("params"))
    for (const auto& [key, value] : j.at("params").items())
      params[key] = value.get<double>();
  for (const auto& [key, value] : *f.named_params) params[key] = value;
  apply_raw_params(*f.raw_params, params);
  if (!params.empty() && j.contains("figure")) {
    json p = json::object();
    for (const auto& [key, value] : params) p[key] = value;
    j["params"] = p;
  }
  return fairclust::config_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fair clustering solver and welfare audit toolkit"};
  app.set_version_flag("--version", fairclust::kToolVersion);
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a figure instance to JSON");
  auto gen_figure = std::make_shared<std::string>();
  auto gen_out = std::make_shared<std::string>();
  auto gen_params = std::make_shared<std::map<std::string, double>>();
  auto gen_raw = std::make_shared<std::vector<std::string>>();
  gen->add_option("--figure", *gen_figure, "figure id")->required();
  gen->add_option("--out", *gen_out, "output file (default: <figure>.json)");
  gen->add_option("--param", *gen_raw, "figure parameter key=value");
  add_figure_params(gen, gen_params);
  gen->callback([=] {
    apply_raw_params(*gen_raw, *gen_params);
    const auto fig = fairclust::figure_from_name(*gen_figure);
    if (!fig) throw InvalidParams("unknown figure id: " + *gen_figure);
    const fairclust::Instance inst = fairclust::generate_figure(*fig, *gen_params);
    const std::string path =
        gen_out->empty() ? *gen_figure + ".json" : *gen_out;
    fairclust::save_instance(path, inst);
    std::cout << path << "\n";
  });

  // solve / compare / audit
  auto* solve = app.add_subcommand("solve", "solve the configured notions");
  const SharedFlags solve_flags = add_run_flags(solve, false);
  solve->callback([=] {
    for (const auto& p : fairclust::run_solve(build_config(solve_flags)))
      std::cout << p << "\n";
  });

  auto* compare = app.add_subcommand(
      "compare", "welfare comparison table across notions");
  const SharedFlags compare_flags = add_run_flags(compare, true);
  compare->callback([=] {
    for (const auto& p : fairclust::run_compare(build_config(compare_flags)))
      std::cout << p << "\n";
  });

  auto* audit = app.add_subcommand(
      "audit", "outlier and separability audit of the solved clusterings");
  const SharedFlags audit_flags = add_run_flags(audit, false);
  audit->callback([=] {
    for (const auto& p : fairclust::run_audit(build_config(audit_flags)))
      std::cout << p << "\n";
  });

  // selftest
  auto* selftest =
      app.add_subcommand("selftest", "solver vs brute-force baseline battery");
  auto st_count = std::make_shared<int>(200);
  auto st_seed = std::make_shared<std::uint64_t>(424242);
  selftest->add_option("--count", *st_count, "number of cases");
  selftest->add_option("--seed", *st_seed, "battery seed");
  selftest->callback([=] {
    const auto failures = fairclust::selftest_failures(*st_seed, *st_count);
    if (failures.empty()) {
      std::cout << "selftest: " << *st_count
                << " cases matched the baseline\n";
      return;
    }
    for (const auto& f : failures) std::cerr << f << "\n";
    std::cerr << "selftest: " << failures.size() << " mismatches\n";
    throw ExitWith{1};
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const fairclust::Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const fairclust::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 4;
  } catch (const InvalidParams& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ExitWith& e) {
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
