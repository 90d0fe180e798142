#include "fairclust/welfare.hpp"

#include <algorithm>
#include <limits>

#include "fairclust/errors.hpp"

namespace fairclust {

UtilityModel theorem1_model(double r) {
  if (r <= 0.0) throw InvalidParams("theorem1_model needs r > 0");
  UtilityModel m;
  m.base.distance = DistanceKind::linear;
  m.base.offset = 3.0 * r;
  m.base.w_distance = 1.0;
  m.base.outcome = OutcomeKind::diversity_ratio;
  m.base.w_outcome = 3.0 * r;
  return m;
}

double diversity_ratio(const Instance& inst,
                       const std::vector<int>& color_counts) {
  if (inst.num_colors() <= 1) return 1.0;
  double worst = std::numeric_limits<double>::infinity();
  for (int a = 0; a < inst.num_colors(); ++a)
    for (int b = 0; b < inst.num_colors(); ++b) {
      if (a == b) continue;
      if (color_counts[b] == 0) {
        if (color_counts[a] > 0) return 0.0;
        continue;  // both absent: the pair puts no constraint on this cluster
      }
      worst = std::min(worst,
                       static_cast<double>(color_counts[a]) / color_counts[b]);
    }
  return worst == std::numeric_limits<double>::infinity() ? 1.0 : worst;
}

namespace {

double outcome_term(const PointModel& pm, const Instance& inst, int center,
                    double cluster_diversity) {
  switch (pm.outcome) {
    case OutcomeKind::center_label: {
      const auto it = inst.outcome_labels.find(center);
      if (it == inst.outcome_labels.end())
        throw MissingOutcomeLabels("no outcome label for center point " +
                                   std::to_string(center));
      return it->second;
    }
    case OutcomeKind::diversity_ratio:
      return cluster_diversity;
    case OutcomeKind::constant:
      return pm.constant;
  }
  return 0.0;
}

double distance_term(const PointModel& pm, double d) {
  return pm.distance == DistanceKind::linear ? pm.offset - d : -d;
}

}  // namespace

double point_utility(const UtilityModel& model, const Instance& inst,
                     const Clustering& c, int j) {
  validate_clustering(inst, c);
  if (j < 0 || j >= inst.n) throw InvalidParams("point id out of range");
  const auto counts = cluster_color_counts(inst, c);
  const auto it = std::lower_bound(c.centers.begin(), c.centers.end(),
                                   c.assignment[j]);
  const double div = diversity_ratio(inst, counts[it - c.centers.begin()]);
  const PointModel& pm = model.for_point(j);
  return pm.w_distance * distance_term(pm, inst.d(j, c.assignment[j])) +
         pm.w_outcome * outcome_term(pm, inst, c.assignment[j], div);
}

WelfareReport welfare(const UtilityModel& model, const Instance& inst,
                      const Clustering& c) {
  validate_clustering(inst, c);
  const auto counts = cluster_color_counts(inst, c);
  std::vector<double> div(c.centers.size());
  for (size_t i = 0; i < c.centers.size(); ++i)
    div[i] = diversity_ratio(inst, counts[i]);

  WelfareReport rep;
  rep.utility.resize(inst.n);
  std::vector<double> group_sum(inst.num_colors(), 0.0);
  std::vector<int> group_size(inst.num_colors(), 0);
  for (int j = 0; j < inst.n; ++j) {
    const auto it = std::lower_bound(c.centers.begin(), c.centers.end(),
                                     c.assignment[j]);
    const PointModel& pm = model.for_point(j);
    const double u =
        pm.w_distance * distance_term(pm, inst.d(j, c.assignment[j])) +
        pm.w_outcome *
            outcome_term(pm, inst, c.assignment[j], div[it - c.centers.begin()]);
    rep.utility[j] = u;
    rep.total += u;
    group_sum[inst.color[j]] += u;
    group_size[inst.color[j]] += 1;
  }
  rep.min_group = std::numeric_limits<double>::infinity();
  for (int h = 0; h < inst.num_colors(); ++h) {
    if (group_size[h] == 0) continue;
    const double avg = group_sum[h] / group_size[h];
    rep.group_average[inst.color_names[h]] = avg;
    rep.min_group = std::min(rep.min_group, avg);
  }
  return rep;
}

}  // namespace fairclust
