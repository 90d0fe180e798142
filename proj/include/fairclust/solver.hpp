#pragma once

#include <cstdint>
#include <vector>

#include "fairclust/clustering.hpp"
#include "fairclust/notions.hpp"
#include "fairclust/welfare.hpp"

namespace fairclust {

struct SolveOptions {
  double tol = 1e-9;                       // value tie width
  std::int64_t budget_nodes = 50'000'000;  // search node cap
  int threads = 0;  // 0: FAIRCLUST_THREADS env, else hardware concurrency
};

struct SearchStats {
  std::uint64_t nodes = 0;
  double wall_ms = 0.0;
};

struct SolveReport {
  Clustering clustering;
  double value = 0.0;
  bool optimal = true;          // the search is exhaustive
  double achieved_ratio = 1.0;  // value / optimum
  SearchStats stats;
};

// Exact unconstrained clustering: minimize the objective over center sets of
// size <= k and arbitrary assignments.  Ties resolve canonically: fewer
// centers, then lexicographic centers, then lexicographic assignment.
SolveReport solve_exact(const Instance& inst, int k, Objective obj,
                        const SolveOptions& opts = {});

// Exact solve under a fairness notion.  CM and EQ constrain the assignment;
// SF swaps in the socially fair objective (the objective argument only breaks
// ties in reporting).  kind == agnostic falls through to solve_exact.
SolveReport solve_fair(const Instance& inst, int k, Objective obj,
                       const Notion& notion, const SolveOptions& opts = {});

// Exact welfare-centric clustering: maximize the minimum average group
// utility.  Unlike the other solvers this may place two centers on coincident
// points when splitting a location raises the bottleneck group.
SolveReport solve_welfare_centric(const Instance& inst, int k,
                                  const UtilityModel& model,
                                  const SolveOptions& opts = {});

// Best assignment for a fixed center set under the notion (agnostic and SF
// use nearest assignment).  Throws Infeasible when no assignment satisfies
// the constraints.
Clustering optimal_assignment(const Instance& inst, std::vector<int> centers,
                              Objective obj, const Notion& notion,
                              const SolveOptions& opts = {});

// Representatives of every optimum within tol of the best value, one per
// distinct discrete structure (center set, and per-cluster color split where
// the notion has one), deduplicated and canonically sorted.  `cap` bounds the
// returned count.
std::vector<Clustering> enumerate_optima(const Instance& inst, int k,
                                         Objective obj, const Notion& notion,
                                         double tol, std::size_t cap = 64,
                                         const SolveOptions& opts = {});

}  // namespace fairclust
