#include "fairclust/fairness.hpp"

#include <cmath>
#include <limits>

#include "fairclust/errors.hpp"

namespace fairclust {
namespace {

std::map<std::string, double> group_power_costs(const Instance& inst,
                                                const Clustering& c,
                                                Objective obj) {
  const int p = distance_power(obj);
  std::map<std::string, double> out;
  for (const auto& name : inst.color_names) out[name] = 0.0;
  for (int j = 0; j < inst.n; ++j) {
    const double d = inst.d(j, c.assignment[j]);
    out[inst.color_names[inst.color[j]]] += p == 1 ? d : d * d;
  }
  return out;
}

}  // namespace

double degradation_ratio(double fair, double agnostic) {
  if (agnostic == 0.0 && fair == 0.0) return 1.0;
  if (agnostic == 0.0) return std::numeric_limits<double>::infinity();
  return fair / agnostic;
}

PofReport price_of_fairness(const Instance& inst, int k, Objective obj,
                            const Notion& notion, const SolveOptions& opts) {
  if (notion.kind == NotionKind::wc)
    throw InvalidParams(
        "price_of_fairness compares clustering costs; the welfare-centric "
        "notion has none");
  PofReport rep;
  rep.objective = obj;
  rep.notion = notion.kind;

  const SolveReport agnostic = solve_exact(inst, k, obj, opts);
  const SolveReport fair = solve_fair(inst, k, obj, notion, opts);
  rep.agnostic_clustering = agnostic.clustering;
  rep.fair_clustering = fair.clustering;
  rep.agnostic_value = agnostic.value;
  rep.fair_value = evaluate_cost(inst, fair.clustering, obj);
  rep.pof = degradation_ratio(rep.fair_value, rep.agnostic_value);
  if (notion.kind == NotionKind::sf)
    rep.sf_value_ratio = degradation_ratio(
        sf_objective(inst, fair.clustering, notion.sf),
        sf_objective(inst, agnostic.clustering, notion.sf));

  const auto ag_groups = group_power_costs(inst, agnostic.clustering, obj);
  const auto fair_groups = group_power_costs(inst, fair.clustering, obj);
  for (const auto& name : inst.color_names) {
    GroupDegradation g;
    g.agnostic_cost = ag_groups.at(name);
    g.fair_cost = fair_groups.at(name);
    g.ratio = degradation_ratio(g.fair_cost, g.agnostic_cost);
    rep.groups[name] = g;
  }
  return rep;
}

std::vector<ComparisonRow> compare_notions(const Instance& inst, int k,
                                           Objective obj,
                                           const UtilityModel& model,
                                           const std::vector<Notion>& notions,
                                           const SolveOptions& opts) {
  const SolveReport agnostic = solve_exact(inst, k, obj, opts);
  const WelfareReport ag_welfare = welfare(model, inst, agnostic.clustering);

  int sf_p = 1;
  for (const auto& n : notions)
    if (n.kind == NotionKind::sf) {
      sf_p = n.sf.p;
      break;
    }
  SfSpec sf_display{sf_p};

  std::vector<ComparisonRow> rows;
  rows.reserve(notions.size());
  for (const auto& n : notions) {
    ComparisonRow row;
    row.notion = notion_name(n.kind);
    if (n.kind == NotionKind::agnostic) {
      row.clustering = agnostic.clustering;
    } else if (n.kind == NotionKind::wc) {
      row.clustering = solve_welfare_centric(inst, k, model, opts).clustering;
    } else {
      row.clustering = solve_fair(inst, k, obj, n, opts).clustering;
    }
    row.objective_value = evaluate_cost(inst, row.clustering, obj);
    row.sf_value = sf_objective(inst, row.clustering, sf_display);
    row.pof = degradation_ratio(row.objective_value, agnostic.value);
    row.welfare = welfare(model, inst, row.clustering);
    for (const auto& [name, value] : row.welfare.group_average) {
      const double reference = ag_welfare.group_average.at(name);
      if (value < reference - 1e-12) row.degraded_groups.push_back(name);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fairclust
