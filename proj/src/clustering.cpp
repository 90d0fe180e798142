#include "fairclust/clustering.hpp"

#include <algorithm>
#include <cmath>

#include "fairclust/errors.hpp"

namespace fairclust {

int distance_power(Objective obj) {
  return obj == Objective::k_means ? 2 : 1;
}

std::string objective_name(Objective obj) {
  switch (obj) {
    case Objective::k_center: return "k_center";
    case Objective::k_median: return "k_median";
    case Objective::k_means: return "k_means";
  }
  return "k_median";
}

Objective objective_from_name(const std::string& name) {
  if (name == "k_center" || name == "k-center") return Objective::k_center;
  if (name == "k_median" || name == "k-median") return Objective::k_median;
  if (name == "k_means" || name == "k-means") return Objective::k_means;
  throw InvalidParams("unknown objective: " + name);
}

void validate_clustering(const Instance& inst, const Clustering& c) {
  if (c.centers.empty()) throw InvalidParams("clustering needs at least one center");
  for (int s : c.centers)
    if (s < 0 || s >= inst.n) throw InvalidParams("center id out of range");
  if (!std::is_sorted(c.centers.begin(), c.centers.end()))
    throw InvalidParams("centers must be sorted ascending");
  for (size_t i = 1; i < c.centers.size(); ++i)
    if (c.centers[i] == c.centers[i - 1])
      throw InvalidParams("duplicate center id");
  if (static_cast<int>(c.assignment.size()) != inst.n)
    throw InvalidParams("assignment must cover every point");
  for (int a : c.assignment)
    if (!std::binary_search(c.centers.begin(), c.centers.end(), a))
      throw InvalidParams("assignment targets a non-center point");
}

double evaluate_cost(const Instance& inst, const Clustering& c, Objective obj) {
  validate_clustering(inst, c);
  if (obj == Objective::k_center) {
    double worst = 0.0;
    for (int j = 0; j < inst.n; ++j)
      worst = std::max(worst, inst.d(j, c.assignment[j]));
    return worst;
  }
  const int p = distance_power(obj);
  double total = 0.0;
  for (int j = 0; j < inst.n; ++j) {
    const double d = inst.d(j, c.assignment[j]);
    total += p == 1 ? d : d * d;
  }
  return total;
}

Clustering nearest_assignment(const Instance& inst, std::vector<int> centers) {
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  if (centers.empty()) throw InvalidParams("nearest_assignment needs centers");
  for (int s : centers)
    if (s < 0 || s >= inst.n) throw InvalidParams("center id out of range");
  Clustering c;
  c.centers = centers;
  c.assignment.resize(inst.n);
  for (int j = 0; j < inst.n; ++j) {
    int best = centers[0];
    double best_d = inst.d(j, best);
    for (size_t t = 1; t < centers.size(); ++t) {
      const double d = inst.d(j, centers[t]);
      if (d < best_d) {
        best_d = d;
        best = centers[t];
      }
    }
    c.assignment[j] = best;
  }
  return c;
}

std::vector<double> group_costs(const Instance& inst, const Clustering& c, int p) {
  std::vector<double> costs(inst.color_names.size(), 0.0);
  for (int j = 0; j < inst.n; ++j) {
    const double d = inst.d(j, c.assignment[j]);
    costs[inst.color[j]] += p == 1 ? d : d * d;
  }
  return costs;
}

std::vector<std::vector<int>> cluster_members(const Instance& inst,
                                              const Clustering& c) {
  std::vector<std::vector<int>> members(c.centers.size());
  for (int j = 0; j < inst.n; ++j) {
    const auto it = std::lower_bound(c.centers.begin(), c.centers.end(),
                                     c.assignment[j]);
    members[it - c.centers.begin()].push_back(j);
  }
  return members;
}

std::vector<std::vector<int>> cluster_color_counts(const Instance& inst,
                                                   const Clustering& c) {
  std::vector<std::vector<int>> counts(
      c.centers.size(), std::vector<int>(inst.color_names.size(), 0));
  for (int j = 0; j < inst.n; ++j) {
    const auto it = std::lower_bound(c.centers.begin(), c.centers.end(),
                                     c.assignment[j]);
    ++counts[it - c.centers.begin()][inst.color[j]];
  }
  return counts;
}

bool canonical_less(double value_a, const Clustering& a, double value_b,
                    const Clustering& b, double tol) {
  if (value_a < value_b - tol) return true;
  if (value_b < value_a - tol) return false;
  if (a.centers.size() != b.centers.size())
    return a.centers.size() < b.centers.size();
  if (a.centers != b.centers) return a.centers < b.centers;
  return a.assignment < b.assignment;
}

}  // namespace fairclust
