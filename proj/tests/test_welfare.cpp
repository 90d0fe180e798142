#include <doctest.h>

#include "fairclust/errors.hpp"
#include "fairclust/generators.hpp"
#include "fairclust/solver.hpp"
#include "fairclust/welfare.hpp"

using namespace fairclust;

namespace {

Instance mixed_line() {
  InstanceData data;
  data.coords = {{0}, {1}, {2}, {3}};
  data.colors = {"red", "blue", "blue", "blue"};
  data.outcome_labels[0] = 2.0;
  data.outcome_labels[2] = 0.5;
  return build_instance(data);
}

}  // namespace

TEST_CASE("diversity ratio is the worst pairwise count ratio") {
  const Instance inst = mixed_line();
  CHECK(diversity_ratio(inst, {1, 3}) == doctest::Approx(1.0 / 3.0));
  CHECK(diversity_ratio(inst, {2, 2}) == doctest::Approx(1.0));
  CHECK(diversity_ratio(inst, {0, 2}) == doctest::Approx(0.0));

  InstanceData mono;
  mono.coords = {{0}, {1}};
  mono.colors = {"x", "x"};
  const Instance single = build_instance(mono);
  CHECK(diversity_ratio(single, {2}) == doctest::Approx(1.0));
}

TEST_CASE("point utility combines distance and outcome terms") {
  const Instance inst = mixed_line();
  const Clustering c{{0, 2}, {0, 0, 2, 2}};

  UtilityModel model;
  model.base.distance = DistanceKind::linear;
  model.base.offset = 4.0;
  model.base.outcome = OutcomeKind::center_label;
  model.base.w_distance = 1.0;
  model.base.w_outcome = 2.0;
  // Point 1: d = 1, center 0 labelled 2 -> (4 - 1) + 2*2 = 7.
  CHECK(point_utility(model, inst, c, 1) == doctest::Approx(7.0));
  // Point 3: d = 1, center 2 labelled 0.5 -> 3 + 1 = 4.
  CHECK(point_utility(model, inst, c, 3) == doctest::Approx(4.0));

  SUBCASE("unlabelled center is an error for label models") {
    const Clustering bad{{1}, {1, 1, 1, 1}};
    CHECK_THROWS_AS(point_utility(model, inst, bad, 0), MissingOutcomeLabels);
  }
  SUBCASE("overrides replace the whole point model") {
    PointModel flat;
    flat.distance = DistanceKind::neg_identity;
    flat.outcome = OutcomeKind::constant;
    flat.constant = 10.0;
    model.overrides[1] = flat;
    CHECK(point_utility(model, inst, c, 1) == doctest::Approx(9.0));
  }
  SUBCASE("diversity outcome uses the point's cluster") {
    UtilityModel div;
    div.base.distance = DistanceKind::neg_identity;
    div.base.w_distance = 0.0;
    div.base.outcome = OutcomeKind::diversity_ratio;
    // Cluster of 0: one red one blue -> ratio 1; cluster of 2: two blue -> 0.
    CHECK(point_utility(div, inst, c, 0) == doctest::Approx(1.0));
    CHECK(point_utility(div, inst, c, 3) == doctest::Approx(0.0));
  }
}

TEST_CASE("theorem1 model shape") {
  const UtilityModel m = theorem1_model(2.0);
  CHECK(m.base.distance == DistanceKind::linear);
  CHECK(m.base.offset == doctest::Approx(6.0));
  CHECK(m.base.outcome == OutcomeKind::diversity_ratio);
  CHECK(m.base.w_distance == doctest::Approx(1.0));
  CHECK(m.base.w_outcome == doctest::Approx(6.0));
  CHECK(m.overrides.empty());
  CHECK_THROWS_AS(theorem1_model(0.0), InvalidParams);
}

TEST_CASE("welfare accounting identities") {
  const Instance inst = mixed_line();
  const Clustering c{{0, 2}, {0, 0, 2, 2}};
  UtilityModel model;  // -d with constant 0 outcome, weight 1 each
  const WelfareReport rep = welfare(model, inst, c);

  REQUIRE(rep.utility.size() == 4);
  double total = 0.0;
  for (const double u : rep.utility) total += u;
  CHECK(rep.total == doctest::Approx(total).epsilon(1e-12));

  // Group averages recompute from the per-point vector.
  double red = rep.utility[0];
  double blue = (rep.utility[1] + rep.utility[2] + rep.utility[3]) / 3.0;
  CHECK(rep.group_average.at("red") == doctest::Approx(red).epsilon(1e-12));
  CHECK(rep.group_average.at("blue") == doctest::Approx(blue).epsilon(1e-12));
  CHECK(rep.min_group ==
        doctest::Approx(std::min(red, blue)).epsilon(1e-12));
}

TEST_CASE("theorem1 welfare under the three reference clusterings") {
  const Instance inst = generate_figure(FigureId::thm1);
  const UtilityModel model = theorem1_model(1.0);

  SUBCASE("mix-constrained optimum lands below 2") {
    Clustering hubs;
    hubs.centers = {0, 26};
    hubs.assignment.assign(52, 0);
    for (int j = 26; j < 52; ++j) hubs.assignment[j] = 26;
    const WelfareReport rep = welfare(model, inst, hubs);
    CHECK(rep.group_average.at("red") == doctest::Approx(48.0 / 26.0));
    CHECK(rep.group_average.at("blue") == doctest::Approx(48.0 / 26.0));
  }
  SUBCASE("four-center split with both hubs on the red stacks") {
    Clustering split;
    split.centers = {2, 14, 28, 40};
    split.assignment.assign(52, 0);
    const auto to = [&](int first, int count, int center) {
      for (int j = first; j < first + count; ++j) split.assignment[j] = center;
    };
    to(0, 2, 2);    // both region-1 hubs tie to the red stack center
    to(2, 12, 2);   // red stacks
    to(14, 12, 14); // blue stacks
    to(26, 2, 28);
    to(28, 12, 28);
    to(40, 12, 40);
    const WelfareReport rep = welfare(model, inst, split);
    CHECK(rep.group_average.at("red") == doctest::Approx(51.0 / 26.0));
    CHECK(rep.group_average.at("blue") ==
          doctest::Approx((45.0 + 6.0 / 13.0) / 26.0));
  }
}
