#include "fairclust/reference.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <vector>

namespace fairclust::reference {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Every subset of `allowed` of size 1..k, crossed with every map from points
// to chosen centers.
template <class F>
void for_each_clustering(const Instance& inst, int k,
                         const std::vector<int>& allowed, F&& visit) {
  const int n = inst.n;
  const int max_s = std::min<int>(k, static_cast<int>(allowed.size()));
  std::vector<int> centers;
  Clustering c;
  c.assignment.assign(n, 0);
  const std::function<void(std::size_t)> pick = [&](std::size_t from) {
    if (!centers.empty()) {
      c.centers = centers;
      std::vector<int> choice(n, 0);
      while (true) {
        for (int j = 0; j < n; ++j) c.assignment[j] = centers[choice[j]];
        visit(c);
        int j = 0;
        for (; j < n; ++j) {
          if (++choice[j] < static_cast<int>(centers.size())) break;
          choice[j] = 0;
        }
        if (j == n) break;
      }
    }
    if (static_cast<int>(centers.size()) == max_s) return;
    for (std::size_t i = from; i < allowed.size(); ++i) {
      centers.push_back(allowed[i]);
      pick(i + 1);
      centers.pop_back();
    }
  };
  pick(0);
}

std::vector<int> all_points(const Instance& inst) {
  std::vector<int> ids(inst.n);
  for (int j = 0; j < inst.n; ++j) ids[j] = j;
  return ids;
}

template <class Feasible, class Value>
Best minimize(const Instance& inst, int k, const std::vector<int>& allowed,
              Feasible&& ok, Value&& value, bool maximize = false) {
  Best best;
  for_each_clustering(inst, k, allowed, [&](const Clustering& c) {
    if (!ok(c)) return;
    const double v = value(c);
    const bool better = maximize ? v > best.value : v < best.value;
    if (!best.feasible || better) {
      best.feasible = true;
      best.value = v;
      best.clustering = c;
    }
  });
  return best;
}

double own_diversity(const Instance& inst, const Clustering& c, int center) {
  const int colors = inst.num_colors();
  if (colors <= 1) return 1.0;
  std::vector<int> count(colors, 0);
  for (int j = 0; j < inst.n; ++j)
    if (c.assignment[j] == center) ++count[inst.color[j]];
  int lo = count[0], hi = count[0];
  for (int h = 1; h < colors; ++h) {
    lo = std::min(lo, count[h]);
    hi = std::max(hi, count[h]);
  }
  if (lo == 0) return 0.0;
  return static_cast<double>(lo) / static_cast<double>(hi);
}

bool needs_labels(const UtilityModel& model) {
  if (model.base.outcome == OutcomeKind::center_label) return true;
  for (const auto& [j, pm] : model.overrides) {
    (void)j;
    if (pm.outcome == OutcomeKind::center_label) return true;
  }
  return false;
}

}  // namespace

double clustering_cost(const Instance& inst, const Clustering& c,
                       Objective obj) {
  double total = 0.0;
  for (int j = 0; j < inst.n; ++j) {
    const double d = inst.d(j, c.assignment[j]);
    switch (obj) {
      case Objective::k_center: total = std::max(total, d); break;
      case Objective::k_median: total += d; break;
      case Objective::k_means: total += d * d; break;
    }
  }
  return total;
}

double sf_value(const Instance& inst, const Clustering& c, int p) {
  double worst = 0.0;
  for (int h = 0; h < inst.num_colors(); ++h) {
    double sum = 0.0;
    int count = 0;
    for (int j = 0; j < inst.n; ++j) {
      if (inst.color[j] != h) continue;
      const double d = inst.d(j, c.assignment[j]);
      sum += p == 2 ? d * d : d;
      ++count;
    }
    if (count > 0) worst = std::max(worst, sum / count);
  }
  return worst;
}

double min_group_welfare(const UtilityModel& model, const Instance& inst,
                         const Clustering& c) {
  std::vector<double> sum(inst.num_colors(), 0.0);
  std::vector<int> count(inst.num_colors(), 0);
  for (int j = 0; j < inst.n; ++j) {
    const PointModel& pm = model.for_point(j);
    const double d = inst.d(j, c.assignment[j]);
    const double dterm =
        pm.distance == DistanceKind::linear ? pm.offset - d : -d;
    double oterm = 0.0;
    switch (pm.outcome) {
      case OutcomeKind::center_label:
        oterm = inst.outcome_labels.at(c.assignment[j]);
        break;
      case OutcomeKind::diversity_ratio:
        oterm = own_diversity(inst, c, c.assignment[j]);
        break;
      case OutcomeKind::constant:
        oterm = pm.constant;
        break;
    }
    sum[inst.color[j]] += pm.w_distance * dterm + pm.w_outcome * oterm;
    ++count[inst.color[j]];
  }
  double worst = kInf;
  for (int h = 0; h < inst.num_colors(); ++h)
    if (count[h] > 0) worst = std::min(worst, sum[h] / count[h]);
  return worst;
}

bool cm_ok(const Instance& inst, const Clustering& c, const CmBounds& bounds) {
  for (const int center : c.centers) {
    int size = 0;
    std::vector<int> count(inst.num_colors(), 0);
    for (int j = 0; j < inst.n; ++j) {
      if (c.assignment[j] != center) continue;
      ++size;
      ++count[inst.color[j]];
    }
    if (size == 0) continue;
    for (int h = 0; h < inst.num_colors(); ++h) {
      double lo = 0.0, hi = 1.0;
      const auto it = bounds.by_color.find(inst.color_names[h]);
      if (it != bounds.by_color.end()) {
        lo = it->second.first;
        hi = it->second.second;
      }
      if (!(lo * size <= count[h] && count[h] <= hi * size)) return false;
    }
  }
  return true;
}

bool eq_ok(const Instance& inst, const Clustering& c, double alpha) {
  for (int j = 0; j < inst.n; ++j) {
    const auto& peers = inst.similarity[j];
    if (peers.empty()) continue;
    double ref = kInf;
    for (const int p : peers) ref = std::min(ref, inst.d(p, c.assignment[p]));
    if (inst.d(j, c.assignment[j]) > alpha * ref + 1e-12) return false;
  }
  return true;
}

Best best_agnostic(const Instance& inst, int k, Objective obj) {
  return minimize(
      inst, k, all_points(inst), [](const Clustering&) { return true; },
      [&](const Clustering& c) { return clustering_cost(inst, c, obj); });
}

Best best_cm(const Instance& inst, int k, Objective obj,
             const CmBounds& bounds) {
  return minimize(
      inst, k, all_points(inst),
      [&](const Clustering& c) { return cm_ok(inst, c, bounds); },
      [&](const Clustering& c) { return clustering_cost(inst, c, obj); });
}

Best best_eq(const Instance& inst, int k, Objective obj, const EqSpec& eq) {
  return minimize(
      inst, k, all_points(inst),
      [&](const Clustering& c) { return eq_ok(inst, c, eq.alpha); },
      [&](const Clustering& c) { return clustering_cost(inst, c, obj); });
}

Best best_sf(const Instance& inst, int k, const SfSpec& sf) {
  return minimize(
      inst, k, all_points(inst), [](const Clustering&) { return true; },
      [&](const Clustering& c) { return sf_value(inst, c, sf.p); });
}

Best best_wc(const Instance& inst, int k, const UtilityModel& model) {
  std::vector<int> allowed;
  if (needs_labels(model)) {
    for (int j = 0; j < inst.n; ++j)
      if (inst.outcome_labels.count(j)) allowed.push_back(j);
  } else {
    allowed = all_points(inst);
  }
  return minimize(
      inst, k, allowed, [](const Clustering&) { return true; },
      [&](const Clustering& c) { return min_group_welfare(model, inst, c); },
      /*maximize=*/true);
}

}  // namespace fairclust::reference
