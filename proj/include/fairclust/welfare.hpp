#pragma once

#include <map>
#include <string>
#include <vector>

#include "fairclust/clustering.hpp"
#include "fairclust/instance.hpp"

namespace fairclust {

// Per-point utility is w_distance * distance term + w_outcome * outcome term.
enum class DistanceKind {
  linear,        // offset - d(j, center)
  neg_identity,  // -d(j, center)
};

enum class OutcomeKind {
  center_label,     // outcome label of the assigned center
  diversity_ratio,  // balance of the point's cluster, see diversity_ratio()
  constant,
};

struct PointModel {
  DistanceKind distance = DistanceKind::neg_identity;
  double offset = 0.0;  // distance term offset (linear only)
  OutcomeKind outcome = OutcomeKind::constant;
  double constant = 0.0;  // outcome value (constant only)
  double w_distance = 1.0;
  double w_outcome = 1.0;
};

struct UtilityModel {
  PointModel base;
  std::map<int, PointModel> overrides;  // per-point exceptions

  const PointModel& for_point(int j) const {
    const auto it = overrides.find(j);
    return it == overrides.end() ? base : it->second;
  }
};

// (3r - d) distance term plus 3r-weighted diversity outcome.
UtilityModel theorem1_model(double r);

// Worst pairwise representation ratio of a cluster: the minimum over ordered
// pairs of instance colors of count[h1] / count[h2].  A color missing from a
// non-empty cluster drives it to 0; a single-color instance scores 1.
double diversity_ratio(const Instance& inst, const std::vector<int>& color_counts);

double point_utility(const UtilityModel& model, const Instance& inst,
                     const Clustering& c, int j);

struct WelfareReport {
  std::vector<double> utility;  // per point
  double total = 0.0;           // sum over points
  std::map<std::string, double> group_average;
  double min_group = 0.0;
};

WelfareReport welfare(const UtilityModel& model, const Instance& inst,
                      const Clustering& c);

}  // namespace fairclust
