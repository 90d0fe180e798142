#include "fairclust/selftest.hpp"

#include <cmath>
#include <optional>

#include "fairclust/errors.hpp"
#include "fairclust/random_instances.hpp"
#include "fairclust/reference.hpp"
#include "fairclust/solver.hpp"

namespace fairclust {

namespace {

constexpr double kMatchTol = 1e-9;

struct CaseChecker {
  const RandomCase& rc;
  std::vector<std::string>& failures;

  void fail(const std::string& tag, const std::string& what) const {
    failures.push_back(rc.name + " [" + tag + "]: " + what);
  }

  template <class Solve, class Ref, class Revalue, class Recheck>
  void run(const std::string& tag, Solve&& solve, Ref&& ref, Revalue&& revalue,
           Recheck&& recheck) const {
    std::optional<SolveReport> got;
    bool solver_infeasible = false;
    try {
      got = solve();
    } catch (const Infeasible&) {
      solver_infeasible = true;
    } catch (const MissingOutcomeLabels&) {
      solver_infeasible = true;
    }
    const reference::Best best = ref();
    if (solver_infeasible != !best.feasible) {
      fail(tag, solver_infeasible ? "solver infeasible, baseline found a solution"
                                  : "solver solved an infeasible case");
      return;
    }
    if (solver_infeasible) return;  // both sides agree there is nothing to do
    if (std::abs(got->value - best.value) > kMatchTol)
      fail(tag, "value " + std::to_string(got->value) + " vs baseline " +
                    std::to_string(best.value));
    if (!recheck(got->clustering))
      fail(tag, "solver clustering fails the baseline constraint check");
    const double again = revalue(got->clustering);
    if (std::abs(again - got->value) > kMatchTol)
      fail(tag, "reported value " + std::to_string(got->value) +
                    " but clustering re-scores to " + std::to_string(again));
  }
};

}  // namespace

std::vector<std::string> selftest_failures(std::uint64_t seed, int count) {
  std::vector<std::string> failures;
  for (const RandomCase& rc : random_cases(seed, count)) {
    const CaseChecker check{rc, failures};
    const auto cost = [&](const Clustering& c) {
      return reference::clustering_cost(rc.inst, c, rc.objective);
    };
    const auto always = [](const Clustering&) { return true; };

    check.run(
        "agnostic", [&] { return solve_exact(rc.inst, rc.k, rc.objective); },
        [&] { return reference::best_agnostic(rc.inst, rc.k, rc.objective); },
        cost, always);

    switch (rc.family) {
      case NotionKind::cm:
        check.run(
            "cm",
            [&] { return solve_fair(rc.inst, rc.k, rc.objective, rc.notion); },
            [&] {
              return reference::best_cm(rc.inst, rc.k, rc.objective,
                                        rc.notion.cm);
            },
            cost,
            [&](const Clustering& c) {
              return reference::cm_ok(rc.inst, c, rc.notion.cm);
            });
        break;
      case NotionKind::eq:
        check.run(
            "eq",
            [&] { return solve_fair(rc.inst, rc.k, rc.objective, rc.notion); },
            [&] {
              return reference::best_eq(rc.inst, rc.k, rc.objective,
                                        rc.notion.eq);
            },
            cost,
            [&](const Clustering& c) {
              return reference::eq_ok(rc.inst, c, rc.notion.eq.alpha);
            });
        break;
      case NotionKind::sf:
        check.run(
            "sf",
            [&] { return solve_fair(rc.inst, rc.k, rc.objective, rc.notion); },
            [&] { return reference::best_sf(rc.inst, rc.k, rc.notion.sf); },
            [&](const Clustering& c) {
              return reference::sf_value(rc.inst, c, rc.notion.sf.p);
            },
            always);
        break;
      case NotionKind::wc: {
        const bool labels_needed = [&] {
          if (rc.model.base.outcome == OutcomeKind::center_label) return true;
          for (const auto& [j, pm] : rc.model.overrides) {
            (void)j;
            if (pm.outcome == OutcomeKind::center_label) return true;
          }
          return false;
        }();
        check.run(
            "wc",
            [&] { return solve_welfare_centric(rc.inst, rc.k, rc.model); },
            [&] { return reference::best_wc(rc.inst, rc.k, rc.model); },
            [&](const Clustering& c) {
              return reference::min_group_welfare(rc.model, rc.inst, c);
            },
            [&](const Clustering& c) {
              if (!labels_needed) return true;
              for (const int center : c.centers)
                if (!rc.inst.outcome_labels.count(center)) return false;
              return true;
            });
        break;
      }
      case NotionKind::agnostic:
        break;
    }
  }
  return failures;
}

}  // namespace fairclust
