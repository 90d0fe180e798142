#include <doctest.h>

#include <cmath>

#include "fairclust/errors.hpp"
#include "fairclust/generators.hpp"

using namespace fairclust;

namespace {

int count_color(const Instance& inst, const std::string& name) {
  int c = 0;
  for (int j = 0; j < inst.n; ++j)
    if (inst.color_names[inst.color[j]] == name) ++c;
  return c;
}

}  // namespace

TEST_CASE("figure names round-trip") {
  for (const FigureId id : all_figures())
    CHECK(figure_from_name(figure_name(id)) == id);
  CHECK(!figure_from_name("nope"));
}

TEST_CASE("unknown parameters are rejected") {
  CHECK_THROWS_AS(generate_figure(FigureId::fig1_cm, {{"bogus", 1.0}}),
                  InvalidParams);
}

TEST_CASE("fig1: hub pairs between one-color stacks") {
  const Instance inst = generate_figure(FigureId::fig1_cm);
  REQUIRE(inst.n == 16);
  CHECK(count_color(inst, "blue") == 8);
  CHECK(count_color(inst, "red") == 8);
  // Stacks at 0 (ids 0-2), hubs at 2 (3,4), the big red stack at 3 (5-10),
  // hubs at 4 (11,12), stack at 6 (13-15).
  CHECK(inst.d(0, 13) == doctest::Approx(6.0));
  CHECK(inst.d(3, 4) == 0.0);
  CHECK(inst.d(5, 10) == 0.0);
  CHECK(inst.d(3, 5) == doctest::Approx(1.0));
  CHECK(inst.metadata.at("suggested_k") == "3");
  CHECK(inst.metadata.at("suggested_objective") == "k_median");
  CHECK(inst.metadata.at("cm_lower") == "0.5");

  SUBCASE("separation scales") {
    const Instance wide = generate_figure(FigureId::fig1_cm, {{"delta", 2.0}});
    CHECK(wide.d(0, 13) == doctest::Approx(12.0));
  }
  SUBCASE("bad parameters") {
    CHECK_THROWS_AS(generate_figure(FigureId::fig1_cm, {{"delta", 0.0}}),
                    InvalidParams);
    CHECK_THROWS_AS(generate_figure(FigureId::fig1_cm, {{"m", 2.5}}),
                    InvalidParams);
  }
}

TEST_CASE("fig2: end pairs plus a lone middle point") {
  const Instance inst = generate_figure(FigureId::fig2_eq);
  REQUIRE(inst.n == 5);
  CHECK(inst.num_colors() == 1);
  CHECK(inst.d(0, 2) == doctest::Approx(10.0));
  CHECK(inst.d(0, 1) == doctest::Approx(0.5));
  CHECK(inst.d(3, 4) == doctest::Approx(0.5));
  REQUIRE(inst.has_similarity());
  CHECK(inst.similarity[0] == std::vector<int>{1});
  CHECK(inst.similarity[2] == std::vector<int>{2});
  CHECK(inst.similarity[4] == std::vector<int>{3});
  CHECK(inst.metadata.at("alpha") == "1.2");
  CHECK(inst.metadata.at("suggested_objective") == "k_center");

  SUBCASE("eps window") {
    CHECK_THROWS_AS(generate_figure(FigureId::fig2_eq, {{"eps", 5.0}}),
                    InvalidParams);
  }
  SUBCASE("alpha below the feasibility ratio") {
    CHECK_THROWS_AS(generate_figure(FigureId::fig2_eq, {{"alpha", 1.01}}),
                    InvalidParams);
  }
}

TEST_CASE("fig3: blue tops over red bottoms") {
  const Instance inst = generate_figure(FigureId::fig3_sf);
  REQUIRE(inst.n == 12);
  CHECK(count_color(inst, "blue") == 8);
  CHECK(count_color(inst, "red") == 4);
  CHECK(inst.d(0, 4) == doctest::Approx(4.0));   // top-left to top-right
  CHECK(inst.d(0, 8) == doctest::Approx(5.0));   // top-left to bottom-left
  CHECK(inst.d(8, 10) == doctest::Approx(4.0));  // bottom-left to bottom-right
  CHECK(inst.outcome_labels.at(0) == 1.0);
  CHECK(inst.outcome_labels.at(11) == 0.0);
  CHECK(inst.metadata.at("sf_p") == "1");

  SUBCASE("m window: color-split optimality needs m in (g, 1.5g)") {
    CHECK_THROWS_AS(generate_figure(FigureId::fig3_sf, {{"m", 4.0}}),
                    InvalidParams);
    CHECK_THROWS_AS(generate_figure(FigureId::fig3_sf, {{"m", 6.0}}),
                    InvalidParams);
    CHECK_NOTHROW(generate_figure(FigureId::fig3_sf, {{"g", 4.0}, {"m", 5.5}}));
  }
}

TEST_CASE("fig4: two far regions with a lone off-color point each") {
  const Instance inst = generate_figure(FigureId::fig4_degradation);
  REQUIRE(inst.n == 8);
  CHECK(inst.d(0, 3) == doctest::Approx(0.125));
  CHECK(inst.d(0, 4) == doctest::Approx(50.0));
  CHECK(inst.d(4, 7) == doctest::Approx(0.125));
  CHECK(count_color(inst, "red") == 4);
  CHECK_THROWS_AS(generate_figure(FigureId::fig4_degradation, {{"D", 1.0}}),
                  InvalidParams);
}

TEST_CASE("fig5: far blue set forced to pair with reds") {
  const Instance inst = generate_figure(FigureId::fig5_outlier_cm);
  REQUIRE(inst.n == 20);
  // 4 red at 0, 6 blue at 1, 6 red at 2, 4 blue at 102.
  CHECK(count_color(inst, "red") == 10);
  CHECK(inst.d(0, 4) == doctest::Approx(1.0));
  CHECK(inst.d(4, 10) == doctest::Approx(1.0));
  CHECK(inst.d(10, 16) == doctest::Approx(100.0));
  CHECK(inst.metadata.at("outlier_rule") == "multiple_of_median");
  CHECK(inst.metadata.at("outlier_value") == "10");
  // The stack split must come out in whole points.
  CHECK_THROWS_AS(generate_figure(FigureId::fig5_outlier_cm, {{"c", 0.45}}),
                  InvalidParams);
}

TEST_CASE("fig6: coincident halves plus a small high stack") {
  const Instance inst = generate_figure(FigureId::fig6_outlier_eq);
  REQUIRE(inst.n == 20);
  CHECK(count_color(inst, "red") == 9);
  CHECK(count_color(inst, "blue") == 11);
  CHECK(inst.d(0, 9) == doctest::Approx(2.0));
  CHECK(inst.d(9, 18) == doctest::Approx(8.0));
  CHECK(inst.d(18, 19) == 0.0);
  REQUIRE(inst.has_similarity());
  CHECK(inst.similarity[7].size() == 20);
  CHECK(inst.metadata.at("alpha") == "4");
  CHECK_THROWS_AS(
      generate_figure(FigureId::fig6_outlier_eq, {{"Rp", 3.0}, {"R", 2.0}}),
      InvalidParams);
}

TEST_CASE("fig7: clump grids with height-split class labels") {
  const Instance inst = generate_figure(FigureId::fig7_classifier);
  REQUIRE(inst.n == 16);
  REQUIRE(inst.has_class_labels());
  REQUIRE(inst.has_coords());
  CHECK(inst.coords[0] == std::vector<double>{0.0, 0.0});
  CHECK(inst.coords[4] == std::vector<double>{100.0, 0.0});
  CHECK(inst.coords[11] == std::vector<double>{103.0, 3.0});
  CHECK(inst.coords[15] == std::vector<double>{203.0, 3.0});
  // Blue clumps: + at the bottom; red clumps: + at the top.
  CHECK(inst.class_labels[0] == 1);
  CHECK(inst.class_labels[1] == -1);
  CHECK(inst.class_labels[4] == -1);
  CHECK(inst.class_labels[5] == 1);
  CHECK(count_color(inst, "red") == 8);
}

TEST_CASE("thm1: two regions of hub pairs and one-color stacks") {
  const Instance inst = generate_figure(FigureId::thm1);
  REQUIRE(inst.n == 52);
  CHECK(count_color(inst, "red") == 26);
  CHECK(count_color(inst, "blue") == 26);
  CHECK(inst.d(0, 1) == 0.0);             // region-1 hubs coincide
  CHECK(inst.d(0, 2) == doctest::Approx(7.0));    // hub to stack, region 1
  CHECK(inst.d(2, 8) == doctest::Approx(2.0));    // same-color stacks
  CHECK(inst.d(2, 14) == doctest::Approx(14.0));  // cross-color stacks
  CHECK(inst.d(26, 28) == doctest::Approx(2.0));  // hub to stack, region 2
  CHECK(inst.d(28, 40) == doctest::Approx(4.0));  // cross-color, region 2
  CHECK(inst.d(0, 26) == doctest::Approx(100.0)); // across regions
  CHECK(inst.d(2, 2) == 0.0);
  CHECK(inst.metadata.at("suggested_k") == "4");

  SUBCASE("r scales every distance") {
    const Instance big = generate_figure(FigureId::thm1, {{"r", 2.0}});
    CHECK(big.d(0, 2) == doctest::Approx(14.0));
    CHECK(big.d(0, 26) == doctest::Approx(200.0));
  }
}
