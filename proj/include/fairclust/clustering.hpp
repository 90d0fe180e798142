#pragma once

#include <string>
#include <vector>

#include "fairclust/instance.hpp"

namespace fairclust {

enum class Objective { k_center, k_median, k_means };

// 1 for k-median, 2 for k-means; k-center aggregates by max instead.
int distance_power(Objective obj);

std::string objective_name(Objective obj);
Objective objective_from_name(const std::string& name);

struct Clustering {
  std::vector<int> centers;    // sorted ascending point ids
  std::vector<int> assignment; // per point, one of centers

  bool operator==(const Clustering& other) const = default;
};

// Throws InvalidParams when centers/assignment are out of range or the
// assignment uses a non-center.
void validate_clustering(const Instance& inst, const Clustering& c);

double evaluate_cost(const Instance& inst, const Clustering& c, Objective obj);

// Assign every point to its nearest center, breaking distance ties by the
// lowest center id.  Centers are sorted in the result.
Clustering nearest_assignment(const Instance& inst, std::vector<int> centers);

// Sum over each color of d(j, phi(j))^p, aligned with inst.color_names.
std::vector<double> group_costs(const Instance& inst, const Clustering& c, int p);

// Points of each cluster, keyed by position in c.centers; lists ascending.
std::vector<std::vector<int>> cluster_members(const Instance& inst,
                                              const Clustering& c);

// Per cluster, per color counts (color indices follow inst.color_names).
std::vector<std::vector<int>> cluster_color_counts(const Instance& inst,
                                                   const Clustering& c);

// Canonical solution order: smaller value first (ties within tol), then fewer
// centers, then lexicographically smaller center list, then lexicographically
// smaller assignment.  Returns true when (value_a, a) precedes (value_b, b).
bool canonical_less(double value_a, const Clustering& a, double value_b,
                    const Clustering& b, double tol);

}  // namespace fairclust
