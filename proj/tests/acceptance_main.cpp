// Acceptance gate: ten end-to-end checks over the frozen scenario geometry,
// each printed as a single [PASS]/[FAIL] line.  Exits nonzero if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "fairclust/audit.hpp"
#include "fairclust/errors.hpp"
#include "fairclust/experiment.hpp"
#include "fairclust/fairness.hpp"
#include "fairclust/generators.hpp"
#include "fairclust/io.hpp"
#include "fairclust/random_instances.hpp"
#include "fairclust/selftest.hpp"
#include "fairclust/solver.hpp"
#include "fairclust/welfare.hpp"

using namespace fairclust;
namespace fs = std::filesystem;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void run(int index, const std::string& label,
         const std::function<std::string()>& body) {
  std::string detail;
  bool ok = true;
  try {
    detail = body();  // empty string: pass; otherwise the failure reason
    ok = detail.empty();
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  if (!ok) ++failures;
  std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", index,
              label.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
}

Notion cm_half(const Instance& inst) {
  Notion n;
  n.kind = NotionKind::cm;
  n.cm = CmBounds::uniform(inst, 0.5, 0.5);
  return n;
}

Notion sf_p(int p) {
  Notion n;
  n.kind = NotionKind::sf;
  n.sf.p = p;
  return n;
}

Notion eq_alpha(double a) {
  Notion n;
  n.kind = NotionKind::eq;
  n.eq.alpha = a;
  return n;
}

UtilityModel distance_model(double offset) {
  UtilityModel m;
  m.base.distance = DistanceKind::linear;
  m.base.offset = offset;
  m.base.w_distance = 1.0;
  m.base.w_outcome = 0.0;
  return m;
}

std::string check(bool ok, const std::string& why) { return ok ? "" : why; }

// ---- 1: the hub instance separates the welfare regimes -------------------

std::string hub_regimes() {
  const auto t0 = std::chrono::steady_clock::now();
  const Instance inst = generate_figure(FigureId::thm1);  // r = 1
  const UtilityModel model = theorem1_model(1.0);

  const auto groups = [&](const Clustering& c) {
    const WelfareReport w = welfare(model, inst, c);
    return std::pair<double, double>{w.group_average.at("red"),
                                     w.group_average.at("blue")};
  };

  const SolveReport cm = solve_fair(inst, 4, Objective::k_median, cm_half(inst));
  const auto [cm_red, cm_blue] = groups(cm.clustering);
  if (cm_red > 2.0 + 1e-9 || cm_blue > 2.0 + 1e-9)
    return "balance-constrained optimum exceeds the low-welfare band";

  const SolveReport sf = solve_fair(inst, 4, Objective::k_median, sf_p(1));
  const auto [sf_red, sf_blue] = groups(sf.clustering);
  if (sf_red > 2.0 + 1e-9 || sf_blue > 2.0 + 1e-9)
    return "group-averaged optimum exceeds the low-welfare band";

  const SolveReport wc = solve_welfare_centric(inst, 4, model);
  const auto [wc_red, wc_blue] = groups(wc.clustering);
  if (wc_red < 3.0 - 1e-9 || wc_blue < 3.0 - 1e-9)
    return "welfare-centric optimum misses the high-welfare band";

  const double secs = seconds_since(t0);
  if (secs > 60.0) return "took " + std::to_string(secs) + "s (limit 60)";
  return "";
}

// ---- 2: balancing the two-gap line hurts both groups, more as it widens --

std::string gap_monotone() {
  const UtilityModel model = distance_model(10.0);
  double last_red = -1, last_blue = -1;
  for (const double delta : {1.0, 2.0, 4.0}) {
    const Instance inst = generate_figure(FigureId::fig1_cm, {{"delta", delta}});
    const SolveReport ag = solve_exact(inst, 3, Objective::k_median);
    const SolveReport cm =
        solve_fair(inst, 3, Objective::k_median, cm_half(inst));
    const WelfareReport wa = welfare(model, inst, ag.clustering);
    const WelfareReport wf = welfare(model, inst, cm.clustering);
    for (const char* h : {"red", "blue"})
      if (!(wf.group_average.at(h) < wa.group_average.at(h)))
        return std::string("no welfare drop for ") + h + " at width " +
               std::to_string(delta);
    const double gap_red =
        wa.group_average.at("red") - wf.group_average.at("red");
    const double gap_blue =
        wa.group_average.at("blue") - wf.group_average.at("blue");
    if (gap_red <= last_red || gap_blue <= last_blue)
      return "welfare gap fails to grow with the gap width";
    last_red = gap_red;
    last_blue = gap_blue;
  }
  return "";
}

// ---- 3: the bounded-ratio chain collapses onto the middle point ----------

std::string chain_middle() {
  const Instance inst = generate_figure(FigureId::fig2_eq);
  const SolveReport ag = solve_exact(inst, 2, Objective::k_center);
  const SolveReport eq =
      solve_fair(inst, 2, Objective::k_center, eq_alpha(1.2));

  if (eq.clustering.centers != std::vector<int>{2})
    return "constrained optimum is not the lone middle center";
  for (int j = 0; j < 5; ++j)
    if (eq.clustering.assignment[j] != 2)
      return "some point escapes the middle center";
  for (const int j : {0, 1, 3, 4}) {
    const double before = inst.d(j, ag.clustering.assignment[j]);
    const double after = inst.d(j, eq.clustering.assignment[j]);
    if (!(after > before))
      return "point " + std::to_string(j + 1) + " fails to travel farther";
  }
  return "";
}

// ---- 4: twin stacks admit equal-cost optima burdening opposite groups ----

std::string opposite_burdens() {
  const Instance inst = generate_figure(FigureId::fig4_degradation);
  const SolveReport ag = solve_exact(inst, 2, Objective::k_median);
  const auto ag_costs = group_costs(inst, ag.clustering, 1);  // [blue, red]
  const auto optima =
      enumerate_optima(inst, 2, Objective::k_median, cm_half(inst), 1e-9);
  if (optima.size() < 2) return "fewer than two tied optima";

  const double best = evaluate_cost(inst, optima.front(), Objective::k_median);
  bool red_hit = false, blue_hit = false;
  for (const auto& c : optima) {
    if (std::fabs(evaluate_cost(inst, c, Objective::k_median) - best) > 1e-9)
      return "enumerated optima disagree on value";
    const auto costs = group_costs(inst, c, 1);
    const double blue = degradation_ratio(costs[0], ag_costs[0]);
    const double red = degradation_ratio(costs[1], ag_costs[1]);
    red_hit |= red > blue + 1.0;
    blue_hit |= blue > red + 1.0;
  }
  return check(red_hit && blue_hit,
               "no pair of optima degrades the two groups oppositely");
}

// ---- 5: the audit rule fires only on the balanced layout, all one color --

std::string one_sided_false_positives() {
  const Instance inst = generate_figure(FigureId::fig5_outlier_cm);
  const OutlierRule rule{OutlierKind::multiple_of_median, 10.0};
  const SolveReport ag = solve_exact(inst, 2, Objective::k_median);
  const SolveReport cm =
      solve_fair(inst, 2, Objective::k_median, cm_half(inst));

  if (!flag_outliers(inst, ag.clustering, rule).empty())
    return "reference clustering already flags points";
  const auto flagged = flag_outliers(inst, cm.clustering, rule);
  if (flagged.empty()) return "balanced clustering flags nothing";
  for (const int j : flagged)
    if (inst.color_names[inst.color[j]] != "blue")
      return "a non-blue point was flagged";
  return "";
}

// ---- 6: the anchored swap hides the far stack from the same rule ---------

std::string hidden_stack() {
  const Instance inst = generate_figure(FigureId::fig6_outlier_eq);
  const OutlierRule rule{OutlierKind::multiple_of_median, 10.0};
  const SolveReport ag = solve_exact(inst, 2, Objective::k_median);
  const SolveReport eq = solve_fair(inst, 2, Objective::k_median, eq_alpha(4));

  if (!check_eq(inst, eq.clustering, EqSpec{4.0}).empty())
    return "the constrained optimum violates its own ratio bound";
  const OutlierConfusion conf =
      outlier_confusion(inst, eq.clustering, ag.clustering, rule);
  if (conf.overall.agnostic_flagged != std::vector<int>{18, 19})
    return "reference flags are not exactly the far stack";
  if (!conf.overall.false_positives.empty())
    return "the constrained clustering invents flags";
  if (conf.overall.false_negatives != std::vector<int>{18, 19})
    return "the far stack fails to disappear from the flags";
  return "";
}

// ---- 7: balance forces label-mixed, inseparable clusters -----------------

std::string inseparable_mixture() {
  const Instance inst = generate_figure(FigureId::fig7_classifier);
  const SolveReport ag = solve_exact(inst, 3, Objective::k_median);
  for (const auto& res : per_cluster_separability(inst, ag.clustering))
    if (!res.separable)
      return "an unconstrained cluster is already inseparable";

  const SolveReport cm =
      solve_fair(inst, 3, Objective::k_median, cm_half(inst));
  const auto fair_res = per_cluster_separability(inst, cm.clustering);
  const bool any = std::any_of(fair_res.begin(), fair_res.end(),
                               [](const SeparabilityResult& r) {
                                 return !r.separable && r.positives > 0 &&
                                        r.negatives > 0;
                               });
  return check(any, "every balanced cluster stayed separable");
}

// ---- 8: the solvers agree with a first-principles enumerator -------------

std::string enumerator_agreement() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto bad = selftest_failures(424242, 200);
  if (!bad.empty())
    return std::to_string(bad.size()) + " mismatches, first: " + bad.front();
  const double secs = seconds_since(t0);
  if (secs > 600.0) return "took " + std::to_string(secs) + "s (limit 600)";
  return "";
}

// ---- 9: structural invariants over a random battery ----------------------

Instance scale_coords(const Instance& inst, double lambda) {
  InstanceData data;
  data.coords = inst.coords;
  for (auto& pt : data.coords)
    for (auto& x : pt) x *= lambda;
  for (int j = 0; j < inst.n; ++j)
    data.colors.push_back(inst.color_names[inst.color[j]]);
  data.similarity_sets = inst.similarity;
  data.outcome_labels = inst.outcome_labels;
  data.class_labels = inst.class_labels;
  return build_instance(data);
}

std::string invariants() {
  const auto battery = random_cases(31337, 36);
  for (const auto& rc : battery) {
    const std::string tag = " (" + rc.name + ")";

    const SolveReport ag = solve_exact(rc.inst, rc.k, rc.objective);
    if (std::fabs(evaluate_cost(rc.inst, ag.clustering, rc.objective) -
                  ag.value) > 1e-9)
      return "reported assignment does not price to the value" + tag;
    const Clustering near = nearest_assignment(rc.inst, ag.clustering.centers);
    if (std::fabs(evaluate_cost(rc.inst, near, rc.objective) - ag.value) >
        1e-9)
      return "nearest assignment beats or misses the optimum" + tag;
    if (rc.k >= 2 &&
        ag.value > solve_exact(rc.inst, rc.k - 1, rc.objective).value + 1e-9)
      return "cost increased with a larger center budget" + tag;

    const Instance scaled = scale_coords(rc.inst, 3.0);
    if (!(solve_exact(scaled, rc.k, rc.objective).clustering ==
          ag.clustering))
      return "uniform scaling moved the unconstrained argmin" + tag;

    const UtilityModel probe = distance_model(5.0);
    const WelfareReport w = welfare(probe, rc.inst, ag.clustering);
    double total = 0;
    std::map<std::string, std::pair<double, int>> by_group;
    for (int j = 0; j < rc.inst.n; ++j) {
      total += w.utility[j];
      auto& slot = by_group[rc.inst.color_names[rc.inst.color[j]]];
      slot.first += w.utility[j];
      slot.second += 1;
    }
    if (std::fabs(total - w.total) > 1e-9)
      return "welfare total fails to add up" + tag;
    double min_group = std::numeric_limits<double>::infinity();
    for (const auto& [name, slot] : by_group) {
      const double avg = slot.first / slot.second;
      if (std::fabs(avg - w.group_average.at(name)) > 1e-9)
        return "group average fails to re-average" + tag;
      min_group = std::min(min_group, avg);
    }
    if (std::fabs(min_group - w.min_group) > 1e-9)
      return "minimum group welfare mismatch" + tag;

    if (rc.family == NotionKind::cm || rc.family == NotionKind::eq) {
      SolveReport rep;
      try {
        rep = solve_fair(rc.inst, rc.k, rc.objective, rc.notion);
      } catch (const Infeasible&) {
        continue;
      }
      if (rep.value < ag.value - 1e-9)
        return "constrained solve beat the unconstrained optimum" + tag;
      if (rc.family == NotionKind::cm &&
          !check_cm(rc.inst, rep.clustering, rc.notion.cm).empty())
        return "balance checker rejects the balance solver's output" + tag;
      if (rc.family == NotionKind::eq &&
          !check_eq(rc.inst, rep.clustering, rc.notion.eq).empty())
        return "ratio checker rejects the ratio solver's output" + tag;
      try {
        const Clustering rescaled =
            solve_fair(scaled, rc.k, rc.objective, rc.notion).clustering;
        if (!(rescaled == rep.clustering))
          return "uniform scaling moved the constrained argmin" + tag;
      } catch (const Infeasible&) {
        return "feasibility flipped under uniform scaling" + tag;
      }
    } else if (rc.family == NotionKind::sf) {
      const SolveReport rep = solve_fair(rc.inst, rc.k, rc.objective, rc.notion);
      const Clustering renear =
          nearest_assignment(rc.inst, rep.clustering.centers);
      if (std::fabs(sf_objective(rc.inst, renear, rc.notion.sf) - rep.value) >
          1e-9)
        return "group-averaged value is not met by nearest assignment" + tag;
      if (!(solve_fair(scaled, rc.k, rc.objective, rc.notion).clustering ==
            rep.clustering))
        return "uniform scaling moved the group-averaged argmin" + tag;
    }
  }
  return "";
}

// ---- 10: report bytes are identical across repeated runs -----------------

std::string byte_stable_reports() {
  const fs::path root = fs::temp_directory_path() / "fairclust_acceptance";
  fs::remove_all(root);

  const auto run_twice = [&](const char* stem, const nlohmann::json& base,
                             const auto& runner) -> std::string {
    std::vector<std::vector<std::string>> outs;
    for (int i = 0; i < 2; ++i) {
      nlohmann::json j = base;
      const fs::path dir = root / (stem + std::to_string(i));
      j["out_dir"] = dir.string();
      runner(config_from_json(j));
      std::vector<std::string> names;
      for (const auto& entry : fs::directory_iterator(dir))
        names.push_back(entry.path().filename().string());
      std::sort(names.begin(), names.end());
      outs.push_back(std::move(names));
    }
    if (outs[0] != outs[1]) return std::string(stem) + ": file sets differ";
    for (const auto& name : outs[0]) {
      if (name == "manifest.json") continue;  // carries wall-clock timings
      if (name.size() > 4 && name.substr(name.size() - 4) == ".svg") continue;
      const std::string a =
          read_text_file((root / (stem + std::string("0")) / name).string());
      const std::string b =
          read_text_file((root / (stem + std::string("1")) / name).string());
      if (a != b) return std::string(stem) + ": " + name + " differs";
      if (a.empty()) return std::string(stem) + ": " + name + " is empty";
    }
    return "";
  };

  const nlohmann::json compare_cfg = {
      {"figure", "fig1_cm"},
      {"k", 3},
      {"notions",
       nlohmann::json::array(
           {{{"notion", "agnostic"}},
            {{"notion", "cm"}, {"lower", 0.5}, {"upper", 0.5}}})},
      {"model",
       {{"distance_term", "linear"}, {"offset", 10.0}, {"w_outcome", 0.0}}}};
  std::string err = run_twice("compare", compare_cfg,
                              [](const ExperimentConfig& c) { run_compare(c); });
  if (!err.empty()) return err;

  const nlohmann::json audit_cfg = {
      {"figure", "fig5_outlier_cm"},
      {"k", 2},
      {"notions",
       nlohmann::json::array(
           {{{"notion", "cm"}, {"lower", 0.5}, {"upper", 0.5}}})},
      {"rule", {{"kind", "multiple_of_median"}, {"value", 10.0}}}};
  err = run_twice("audit", audit_cfg,
                  [](const ExperimentConfig& c) { run_audit(c); });
  if (!err.empty()) return err;

  fs::remove_all(root);
  return "";
}

}  // namespace

int main() {
  run(1, "hub instance separates the three welfare regimes within 60s",
      hub_regimes);
  run(2, "balancing the two-gap line lowers both groups, more as it widens",
      gap_monotone);
  run(3, "bounded-ratio chain pulls all five points to the middle",
      chain_middle);
  run(4, "twin stacks yield tied optima burdening opposite groups",
      opposite_burdens);
  run(5, "median-multiple audit flags only blue points, only when balanced",
      one_sided_false_positives);
  run(6, "anchored swap turns the far stack into pure false negatives",
      hidden_stack);
  run(7, "balance forces at least one linearly inseparable cluster",
      inseparable_mixture);
  run(8, "exact engines match a first-principles enumerator on 200 cases",
      enumerator_agreement);
  run(9, "structural invariants hold across the random battery", invariants);
  run(10, "repeated runs reproduce every report byte for byte",
      byte_stable_reports);

  if (failures > 0) {
    std::printf("%d of 10 criteria failed\n", failures);
    return 1;
  }
  std::printf("all 10 criteria passed\n");
  return 0;
}
