#include <doctest.h>

#include <cmath>
#include <vector>

#include "fairclust/errors.hpp"
#include "fairclust/generators.hpp"
#include "fairclust/solver.hpp"

using namespace fairclust;

namespace {

Instance line(std::vector<double> xs,
              std::vector<std::string> colors = {}) {
  InstanceData data;
  for (const double x : xs) data.coords.push_back({x});
  if (colors.empty())
    data.colors.assign(xs.size(), "all");
  else
    data.colors = std::move(colors);
  return build_instance(data);
}

Notion cm_half(const Instance& inst) {
  Notion n;
  n.kind = NotionKind::cm;
  n.cm = CmBounds::uniform(inst, 0.5, 0.5);
  return n;
}

Notion eq_alpha(double a) {
  Notion n;
  n.kind = NotionKind::eq;
  n.eq.alpha = a;
  return n;
}

Notion sf_p(int p) {
  Notion n;
  n.kind = NotionKind::sf;
  n.sf.p = p;
  return n;
}

std::vector<int> ids(std::initializer_list<int> v) { return v; }

}  // namespace

TEST_CASE("two separated pairs split at the obvious seam") {
  const Instance inst = line({0, 1, 10, 11});
  const SolveReport rep = solve_exact(inst, 2, Objective::k_median);
  CHECK(rep.value == doctest::Approx(2.0));
  CHECK(rep.clustering.centers == ids({0, 2}));
  CHECK(rep.clustering.assignment == std::vector<int>({0, 0, 2, 2}));
  CHECK(rep.optimal);
  CHECK(rep.achieved_ratio == doctest::Approx(1.0));

  SUBCASE("a center budget below one is rejected") {
    CHECK_THROWS_AS(solve_exact(inst, 0, Objective::k_median), InvalidParams);
  }
  SUBCASE("extra allowed centers cannot hurt") {
    const SolveReport r3 = solve_exact(inst, 3, Objective::k_median);
    CHECK(r3.value <= rep.value + 1e-9);
  }
  SUBCASE("k-means squares the seam") {
    const SolveReport km = solve_exact(inst, 2, Objective::k_means);
    CHECK(km.value == doctest::Approx(2.0));  // two unit gaps, squared
    CHECK(km.clustering.centers == ids({0, 2}));
  }
  SUBCASE("k-center takes the bottleneck") {
    const SolveReport kc = solve_exact(inst, 2, Objective::k_center);
    CHECK(kc.value == doctest::Approx(1.0));
  }
}

TEST_CASE("nearest assignment breaks distance ties toward the lowest center") {
  const Instance inst = line({0, 2, 4});
  const Clustering c = nearest_assignment(inst, {0, 2});
  CHECK(c.assignment == std::vector<int>({0, 0, 2}));
}

TEST_CASE("budget guard rejects what the exact engines cannot survey") {
  SUBCASE("too many centers") {
    const Instance inst = line({0, 1, 2, 3, 4, 5});
    CHECK_THROWS_AS(solve_exact(inst, 5, Objective::k_median), BudgetExceeded);
  }
  SUBCASE("too many distinct locations") {
    std::vector<double> xs(25);
    for (int i = 0; i < 25; ++i) xs[i] = i;
    const Instance inst = line(xs);
    CHECK_THROWS_AS(solve_exact(inst, 2, Objective::k_median), BudgetExceeded);
  }
  SUBCASE("node budget") {
    const Instance inst = generate_figure(FigureId::thm1);
    SolveOptions opts;
    opts.budget_nodes = 10;
    CHECK_THROWS_AS(solve_fair(inst, 4, Objective::k_median, cm_half(inst), opts),
                    BudgetExceeded);
  }
}

TEST_CASE("wc travels only through its dedicated entry point") {
  const Instance inst = line({0, 1, 10, 11}, {"red", "blue", "red", "blue"});
  Notion wc;
  wc.kind = NotionKind::wc;
  CHECK_THROWS_AS(solve_fair(inst, 2, Objective::k_median, wc), InvalidParams);
  CHECK_THROWS_AS(enumerate_optima(inst, 2, Objective::k_median, wc, 1e-9),
                  InvalidParams);
}

TEST_CASE("two-gap line: balance moves the centers into the gaps") {
  const Instance inst = generate_figure(FigureId::fig1_cm);

  const SolveReport agnostic = solve_exact(inst, 3, Objective::k_median);
  CHECK(agnostic.value == doctest::Approx(4.0));
  CHECK(agnostic.clustering.centers == ids({0, 5, 13}));

  const SolveReport fair =
      solve_fair(inst, 3, Objective::k_median, cm_half(inst));
  CHECK(fair.value == doctest::Approx(18.0));
  CHECK(fair.clustering.centers == ids({3, 11}));
  std::vector<int> expect(16, 3);
  for (int j = 8; j < 16; ++j) expect[j] = 11;
  CHECK(fair.clustering.assignment == expect);

  SUBCASE("the gap scales linearly with delta") {
    const Instance wide = generate_figure(FigureId::fig1_cm, {{"delta", 4.0}});
    CHECK(solve_exact(wide, 3, Objective::k_median).value ==
          doctest::Approx(16.0));
    CHECK(solve_fair(wide, 3, Objective::k_median, cm_half(wide)).value ==
          doctest::Approx(72.0));
  }
}

TEST_CASE("five-point chain: the ratio constraint pulls everyone inward") {
  const Instance inst = generate_figure(FigureId::fig2_eq);

  const SolveReport agnostic = solve_exact(inst, 2, Objective::k_center);
  CHECK(agnostic.value == doctest::Approx(9.5));
  CHECK(agnostic.clustering.centers == ids({0, 3}));

  const SolveReport eq =
      solve_fair(inst, 2, Objective::k_center, eq_alpha(1.2));
  CHECK(eq.value == doctest::Approx(10.0));
  CHECK(eq.clustering.centers == ids({2}));
  CHECK(eq.clustering.assignment == std::vector<int>(5, 2));

  SUBCASE("tightening alpha retreats to the paired anchors") {
    // Placing both centers inside one similarity pair frees its members from
    // the ratio, so the far side can be served at full stretch.
    const SolveReport far =
        solve_fair(inst, 2, Objective::k_center, eq_alpha(1.05));
    CHECK(far.value == doctest::Approx(19.5));
    CHECK(far.clustering.centers == ids({0, 1}));
    CHECK(far.clustering.assignment == std::vector<int>({0, 1, 0, 0, 1}));
    CHECK(check_eq(inst, far.clustering, EqSpec{1.05}).empty());
  }
}

TEST_CASE("group-averaged objective serves the far small group") {
  const Instance inst = generate_figure(FigureId::fig3_sf);
  const SolveReport rep = solve_fair(inst, 2, Objective::k_median, sf_p(1));
  CHECK(rep.value == doctest::Approx(2.0));
  CHECK(rep.clustering.centers == ids({0, 8}));

  SUBCASE("squared variant stays exact") {
    const SolveReport sq = solve_fair(inst, 2, Objective::k_median, sf_p(2));
    CHECK(sq.value ==
          doctest::Approx(8.0));  // four squared 4s over eight blues
  }
}

TEST_CASE("twin stacks admit symmetric optimal splits") {
  const Instance inst = generate_figure(FigureId::fig4_degradation);
  const auto optima =
      enumerate_optima(inst, 2, Objective::k_median, cm_half(inst), 1e-9);
  REQUIRE(optima.size() >= 2);

  bool red_burdened = false, blue_burdened = false;
  for (const auto& c : optima) {
    CHECK(evaluate_cost(inst, c, Objective::k_median) ==
          doctest::Approx(100.25));
    CHECK(check_cm(inst, c, cm_half(inst).cm).empty());
    const auto costs = group_costs(inst, c, 1);  // aligned: [blue, red]
    if (costs[1] > costs[0] + 1.0) red_burdened = true;
    if (costs[0] > costs[1] + 1.0) blue_burdened = true;
  }
  CHECK(red_burdened);
  CHECK(blue_burdened);

  const SolveReport best =
      solve_fair(inst, 2, Objective::k_median, cm_half(inst));
  CHECK(optima.front() == best.clustering);

  const auto capped =
      enumerate_optima(inst, 2, Objective::k_median, cm_half(inst), 1e-9, 1);
  CHECK(capped.size() == 1);
}

TEST_CASE("audit stage geometry solves to the frozen layouts") {
  const Instance inst = generate_figure(FigureId::fig5_outlier_cm);

  const SolveReport agnostic = solve_exact(inst, 2, Objective::k_median);
  CHECK(agnostic.value == doctest::Approx(10.0));
  CHECK(agnostic.clustering.centers == ids({4, 16}));

  const SolveReport fair =
      solve_fair(inst, 2, Objective::k_median, cm_half(inst));
  CHECK(fair.value == doctest::Approx(406.0));
  CHECK(fair.clustering.centers == ids({0, 10}));
  std::vector<int> expect(20, 0);
  for (int j = 8; j < 20; ++j) expect[j] = 10;
  CHECK(fair.clustering.assignment == expect);
}

TEST_CASE("anchored ratio forces the full crossover swap") {
  const Instance inst = generate_figure(FigureId::fig6_outlier_eq);

  const SolveReport agnostic = solve_exact(inst, 2, Objective::k_median);
  CHECK(agnostic.value == doctest::Approx(16.0));
  CHECK(agnostic.clustering.centers == ids({0, 9}));

  const SolveReport eq = solve_fair(inst, 2, Objective::k_median, eq_alpha(4));
  CHECK(eq.value == doctest::Approx(52.0));
  CHECK(eq.clustering.centers == ids({0, 9}));
  std::vector<int> swap(20, 9);
  for (int j = 9; j < 18; ++j) swap[j] = 0;
  CHECK(eq.clustering.assignment == swap);
  CHECK(check_eq(inst, eq.clustering, EqSpec{4.0}).empty());

  SUBCASE("just below the swap ratio the solver walks away instead") {
    const SolveReport far =
        solve_fair(inst, 2, Objective::k_median, eq_alpha(3.9));
    CHECK(far.value == doctest::Approx(88.0 + 9.0 * std::sqrt(68.0)));
    CHECK(far.clustering.centers == ids({9, 18}));
  }
}

TEST_CASE("four clumps under balance stretch across the long gap") {
  const Instance inst = generate_figure(FigureId::fig7_classifier);

  const SolveReport agnostic = solve_exact(inst, 3, Objective::k_median);
  CHECK(agnostic.clustering.centers == ids({0, 6, 12}));
  CHECK(agnostic.value ==
        doctest::Approx(15.0 + 4.0 * std::sqrt(10.0) + std::sqrt(13.0)));

  const SolveReport fair =
      solve_fair(inst, 3, Objective::k_median, cm_half(inst));
  CHECK(fair.clustering.centers == ids({2, 3, 10}));
  CHECK(fair.value == doctest::Approx(505.0 + std::sqrt(9810.0) +
                                      std::sqrt(10009.0) +
                                      std::sqrt(10210.0)));
  const std::vector<int> rows = {2, 3, 2,  3,  2,  3,  10, 3,
                                 10, 2, 10, 10, 10, 10, 10, 10};
  CHECK(fair.clustering.assignment == rows);
}

TEST_CASE("hub instance: the frozen optima of the three regimes") {
  const Instance inst = generate_figure(FigureId::thm1);

  SUBCASE("balance collapses each region onto its hubs") {
    const SolveReport cm =
        solve_fair(inst, 4, Objective::k_median, cm_half(inst));
    CHECK(cm.value == doctest::Approx(216.0));
    CHECK(cm.clustering.centers == ids({0, 26}));
    std::vector<int> expect(52, 0);
    for (int j = 26; j < 52; ++j) expect[j] = 26;
    CHECK(cm.clustering.assignment == expect);
  }
  SUBCASE("group averaging parks centers on the stacks") {
    const SolveReport sf = solve_fair(inst, 4, Objective::k_median, sf_p(1));
    CHECK(sf.value == doctest::Approx(33.0 / 26.0));
    CHECK(sf.clustering.centers == ids({2, 14, 28, 40}));
    // Hub pairs tie between the two stack centers and fall to the lower id.
    CHECK(sf.clustering.assignment[0] == 2);
    CHECK(sf.clustering.assignment[1] == 2);
    CHECK(sf.clustering.assignment[26] == 28);
    CHECK(sf.clustering.assignment[27] == 28);
  }
}

TEST_CASE("fixed-center assignments respect the requested notion") {
  const Instance inst = generate_figure(FigureId::fig1_cm);
  Notion agnostic;
  agnostic.kind = NotionKind::agnostic;

  const Clustering free =
      optimal_assignment(inst, {3, 11}, Objective::k_median, agnostic);
  CHECK(evaluate_cost(inst, free, Objective::k_median) == doctest::Approx(18.0));
  // Nearest assignment drifts the middle stack left and unbalances it.
  CHECK(free.assignment[8] == 3);
  CHECK_FALSE(check_cm(inst, free, cm_half(inst).cm).empty());

  const Clustering balanced =
      optimal_assignment(inst, {3, 11}, Objective::k_median, cm_half(inst));
  CHECK(evaluate_cost(inst, balanced, Objective::k_median) ==
        doctest::Approx(18.0));
  CHECK(balanced.assignment[8] == 11);
  CHECK(check_cm(inst, balanced, cm_half(inst).cm).empty());

  SUBCASE("infeasible bounds surface as such") {
    Notion tight;
    tight.kind = NotionKind::cm;
    tight.cm = CmBounds::uniform(inst, 0.9, 1.0);
    CHECK_THROWS_AS(
        optimal_assignment(inst, {3, 11}, Objective::k_median, tight),
        Infeasible);
  }
}

TEST_CASE("uniform metric scaling preserves every argmin") {
  const Instance base = generate_figure(FigureId::fig1_cm);
  InstanceData scaled_data = generate_figure_data(FigureId::fig1_cm);
  for (auto& pt : scaled_data.coords)
    for (auto& x : pt) x *= 3.0;
  const Instance scaled = build_instance(scaled_data);

  for (const Objective obj :
       {Objective::k_center, Objective::k_median, Objective::k_means}) {
    const SolveReport a = solve_exact(base, 3, obj);
    const SolveReport b = solve_exact(scaled, 3, obj);
    CHECK(a.clustering == b.clustering);
  }
  const SolveReport a =
      solve_fair(base, 3, Objective::k_median, cm_half(base));
  const SolveReport b =
      solve_fair(scaled, 3, Objective::k_median, cm_half(scaled));
  CHECK(a.clustering == b.clustering);
  CHECK(b.value == doctest::Approx(3.0 * a.value));

  const SolveReport sa = solve_fair(base, 3, Objective::k_median, sf_p(1));
  const SolveReport sb = solve_fair(scaled, 3, Objective::k_median, sf_p(1));
  CHECK(sa.clustering == sb.clustering);
}
