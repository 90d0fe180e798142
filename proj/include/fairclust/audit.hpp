#pragma once

#include <map>
#include <string>
#include <vector>

#include "fairclust/clustering.hpp"
#include "fairclust/instance.hpp"

namespace fairclust {

enum class OutlierKind { absolute_threshold, multiple_of_median };

struct OutlierRule {
  OutlierKind kind = OutlierKind::multiple_of_median;
  double value = 10.0;  // threshold tau (> 0) or median multiple m (> 1)
};

std::string outlier_kind_name(OutlierKind kind);

// Points whose assigned-center distance breaches the rule, ascending.  The
// median is over all n assigned distances; for even n it is the mean of the
// two middle values.
std::vector<int> flag_outliers(const Instance& inst, const Clustering& c,
                               const OutlierRule& rule);

struct GroupConfusion {
  std::vector<int> fair_flagged;
  std::vector<int> agnostic_flagged;
  std::vector<int> false_positives;  // fair minus agnostic
  std::vector<int> false_negatives;  // agnostic minus fair
};

struct OutlierConfusion {
  OutlierRule rule;
  GroupConfusion overall;
  std::map<std::string, GroupConfusion> by_group;  // keyed by color name
};

// The agnostic flagging is the reference: a false positive is flagged only
// under the fair clustering, a false negative only under the agnostic one.
OutlierConfusion outlier_confusion(const Instance& inst,
                                   const Clustering& fair,
                                   const Clustering& agnostic,
                                   const OutlierRule& rule);

struct SeparabilityResult {
  int center = 0;
  std::vector<int> members;
  int positives = 0, negatives = 0;
  bool separable = false;
  double margin = 0.0;
  std::vector<double> weights;  // witness hyperplane when separable
  double bias = 0.0;
};

// Exact linear-separability decision per cluster of the +1/-1 class labels
// via a small LP; a cluster counts as separable when a unit-box hyperplane
// attains at least `margin` on every member.
std::vector<SeparabilityResult> per_cluster_separability(
    const Instance& inst, const Clustering& c, double margin = 1e-6);

}  // namespace fairclust
