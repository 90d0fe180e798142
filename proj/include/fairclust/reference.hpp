#pragma once

#include "fairclust/clustering.hpp"
#include "fairclust/instance.hpp"
#include "fairclust/notions.hpp"
#include "fairclust/welfare.hpp"

namespace fairclust::reference {

// Brute-force baseline used to cross-check the real solvers: every center
// subset of size 1..k crossed with every assignment map.  The value and
// feasibility computations here are written from first principles on purpose
// and share no code with the solver, checker, or welfare modules, so a bug
// would have to appear independently on both sides to slip through.
//
// Intended for tiny inputs only (the selftest and property suites keep
// n <= 8, k <= 3); there is no budget guard.

struct Best {
  bool feasible = false;
  double value = 0.0;
  Clustering clustering;  // first optimum in enumeration order
};

Best best_agnostic(const Instance& inst, int k, Objective obj);
Best best_cm(const Instance& inst, int k, Objective obj, const CmBounds& bounds);
Best best_eq(const Instance& inst, int k, Objective obj, const EqSpec& eq);
Best best_sf(const Instance& inst, int k, const SfSpec& sf);

// Maximizes the minimum average group utility.  When any point model reads
// the assigned center's outcome label, candidate centers shrink to labeled
// points (matching the solver's semantics); no labeled point then means
// infeasible.
Best best_wc(const Instance& inst, int k, const UtilityModel& model);

// Standalone recomputations, also independent of the library versions.
double clustering_cost(const Instance& inst, const Clustering& c, Objective obj);
double sf_value(const Instance& inst, const Clustering& c, int p);
double min_group_welfare(const UtilityModel& model, const Instance& inst,
                         const Clustering& c);
bool cm_ok(const Instance& inst, const Clustering& c, const CmBounds& bounds);
bool eq_ok(const Instance& inst, const Clustering& c, double alpha);

}  // namespace fairclust::reference
