#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairclust/clustering.hpp"
#include "fairclust/instance.hpp"
#include "fairclust/notions.hpp"
#include "fairclust/solver.hpp"
#include "fairclust/welfare.hpp"

namespace fairclust {

// fair / agnostic with the degenerate cases pinned down: 0/0 -> 1 and
// x/0 -> +infinity for x > 0.
double degradation_ratio(double fair, double agnostic);

struct GroupDegradation {
  double agnostic_cost = 0.0;  // sum of d^p over the group's points
  double fair_cost = 0.0;
  double ratio = 1.0;
};

struct PofReport {
  Objective objective = Objective::k_median;
  NotionKind notion = NotionKind::cm;
  double agnostic_value = 0.0;
  double fair_value = 0.0;
  double pof = 1.0;  // fair objective value / agnostic objective value
  // SF only: SF value of the SF optimum over the SF value of the agnostic
  // optimum (the cost the SF notion itself cares about).
  std::optional<double> sf_value_ratio;
  std::map<std::string, GroupDegradation> groups;
  Clustering agnostic_clustering;
  Clustering fair_clustering;
};

// Exact agnostic and fair solves plus the ratios above.  The wc notion has no
// cost to compare, so it is rejected with InvalidParams.
PofReport price_of_fairness(const Instance& inst, int k, Objective obj,
                            const Notion& notion, const SolveOptions& opts = {});

struct ComparisonRow {
  std::string notion;
  double objective_value = 0.0;
  double sf_value = 0.0;
  double pof = 1.0;
  WelfareReport welfare;
  // Colors whose average utility falls below the agnostic row's.
  std::vector<std::string> degraded_groups;
  Clustering clustering;
};

// One row per requested notion, in request order.  The agnostic reference is
// always solved (and used for PoF and degradation flags) even when it is not
// part of the requested list.
std::vector<ComparisonRow> compare_notions(const Instance& inst, int k,
                                           Objective obj,
                                           const UtilityModel& model,
                                           const std::vector<Notion>& notions,
                                           const SolveOptions& opts = {});

}  // namespace fairclust
