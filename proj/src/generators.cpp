#include "fairclust/generators.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <string>

#include "fairclust/errors.hpp"

namespace fairclust {
namespace {

const char* kRed = "red";
const char* kBlue = "blue";

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidParams(msg);
}

int as_count(double v, const std::string& name) {
  const double r = std::round(v);
  require(std::abs(v - r) < 1e-9 && r >= 1.0, name + " must be a positive integer");
  return static_cast<int>(r);
}

// Tracks which keys were consumed so typos surface as errors.
class Params {
 public:
  explicit Params(const GenParams& p) : params_(p) {}

  double get(const std::string& key, double fallback) {
    used_.insert(key);
    const auto it = params_.find(key);
    return it == params_.end() ? fallback : it->second;
  }

  void done(const std::string& figure) const {
    for (const auto& [key, value] : params_) {
      (void)value;
      if (!used_.count(key))
        throw InvalidParams("unknown parameter '" + key + "' for " + figure);
    }
  }

 private:
  const GenParams& params_;
  std::set<std::string> used_;
};

void suggest(InstanceData& data, int k, const std::string& objective) {
  data.metadata["suggested_k"] = std::to_string(k);
  data.metadata["suggested_objective"] = objective;
}

// Two mixed hub pairs between three one-color stacks on a line.  Agnostic
// clustering centers the stacks and leaves the outer clusters all blue; the
// half-half mix constraint forces everyone through the hubs.
InstanceData make_fig1(Params& p) {
  const double delta = p.get("delta", 1.0);
  const int m = as_count(p.get("m", 3.0), "m");
  require(delta > 0.0, "delta must be positive");
  InstanceData data = from_stacks({
      {{0.0}, m, kBlue},
      {{2.0 * delta}, 1, kRed},
      {{2.0 * delta}, 1, kBlue},
      {{3.0 * delta}, 2 * m, kRed},
      {{4.0 * delta}, 1, kRed},
      {{4.0 * delta}, 1, kBlue},
      {{6.0 * delta}, m, kBlue},
  });
  data.metadata["figure"] = "fig1_cm";
  data.metadata["delta"] = fmt(delta);
  data.metadata["m"] = fmt(m);
  data.metadata["cm_lower"] = "0.5";
  data.metadata["cm_upper"] = "0.5";
  suggest(data, 3, "k_median");
  return data;
}

// Five points on a line: two tight pairs at the ends, a lone middle point.
// Similarity ties each end pair together; the middle point is similar only to
// itself.  Under the distance-ratio constraint the only k-center optimum puts
// everyone on the middle point.
InstanceData make_fig2(Params& p) {
  const double big = p.get("M", 10.0);
  const double eps = p.get("eps", 0.5);
  const double alpha = p.get("alpha", 1.2);
  require(big > 0.0, "M must be positive");
  require(eps > 0.0 && eps < big / 2.0, "eps must lie in (0, M/2)");
  require(alpha >= big / (big - eps),
          "alpha must be at least M/(M-eps) or the middle solution is ruled out");
  InstanceData data;
  data.coords = {{0.0}, {eps}, {big}, {2.0 * big - eps}, {2.0 * big}};
  data.colors = {"all", "all", "all", "all", "all"};
  data.similarity_sets = {{1}, {0}, {2}, {4}, {3}};
  data.metadata["figure"] = "fig2_eq";
  data.metadata["M"] = fmt(big);
  data.metadata["eps"] = fmt(eps);
  data.metadata["alpha"] = fmt(alpha);
  suggest(data, 2, "k_center");
  return data;
}

// Two blue stacks on top, two smaller red stacks below them.  Agnostic
// clustering picks both top locations and mixes the groups proportionally;
// equalizing group averages splits by color instead, so no red reaches a
// (highly labeled) top center.
InstanceData make_fig3(Params& p) {
  const double g = p.get("g", 4.0);
  const double m = p.get("m", 5.0);
  require(g > 0.0, "g must be positive");
  require(m > g && m < 1.5 * g, "m must lie in (g, 1.5*g)");
  InstanceData data = from_stacks({
      {{0.0, 0.0}, 4, kBlue},
      {{g, 0.0}, 4, kBlue},
      {{0.0, -m}, 2, kRed},
      {{g, -m}, 2, kRed},
  });
  for (int j = 0; j < 8; ++j) data.outcome_labels[j] = 1.0;
  for (int j = 8; j < 12; ++j) data.outcome_labels[j] = 0.0;
  data.metadata["figure"] = "fig3_sf";
  data.metadata["g"] = fmt(g);
  data.metadata["m"] = fmt(m);
  data.metadata["sf_p"] = "1";
  suggest(data, 2, "k_median");
  return data;
}

// Two far regions, each a three-point stack of one color plus a single point
// of the other color eps away.  Under a half-half mix several assignments tie
// exactly; they differ in which group carries the crossing cost.
InstanceData make_fig4(Params& p) {
  const double big = p.get("D", 50.0);
  const double eps = p.get("eps", 0.125);
  require(eps > 0.0, "eps must be positive");
  require(big >= 100.0 * eps, "D must dominate eps (D >= 100*eps)");
  InstanceData data = from_stacks({
      {{0.0}, 3, kRed},
      {{eps}, 1, kBlue},
      {{big}, 3, kBlue},
      {{big + eps}, 1, kRed},
  });
  data.metadata["figure"] = "fig4_degradation";
  data.metadata["D"] = fmt(big);
  data.metadata["eps"] = fmt(eps);
  data.metadata["cm_lower"] = "0.5";
  data.metadata["cm_upper"] = "0.5";
  suggest(data, 2, "k_median");
  return data;
}

// Four stacks on a line: a red fringe, two near-coincident mixed middles, and
// a far blue set.  The mix constraint must pair the far blues with reds, so
// they sit far from their assigned center and get flagged as outliers.
InstanceData make_fig5(Params& p) {
  const int n = as_count(p.get("n", 20.0), "n");
  const double c = p.get("c", 0.4);
  const double r1 = p.get("r1", 1.0);
  const double r2 = p.get("r2", 1.0);
  const double big_r = p.get("R", 100.0);
  require(c > 0.0 && c < 0.5, "c must lie in (0, 1/2)");
  require(r1 > 0.0 && r2 >= r1, "need r2 >= r1 > 0");
  require(big_r >= 10.0 * (r1 + r2), "R must dominate r1 and r2");
  const double side_d = c * n / 2.0, mid_d = (1.0 - c) * n / 2.0;
  const int side = as_count(side_d, "c*n/2");
  const int mid = as_count(mid_d, "(1-c)*n/2");
  InstanceData data = from_stacks({
      {{0.0}, side, kRed},
      {{r2}, mid, kBlue},
      {{r2 + r1}, mid, kRed},
      {{r2 + r1 + big_r}, side, kBlue},
  });
  data.metadata["figure"] = "fig5_outlier_cm";
  data.metadata["n"] = fmt(n);
  data.metadata["c"] = fmt(c);
  data.metadata["r1"] = fmt(r1);
  data.metadata["r2"] = fmt(r2);
  data.metadata["R"] = fmt(big_r);
  data.metadata["cm_lower"] = "0.5";
  data.metadata["cm_upper"] = "0.5";
  data.metadata["outlier_rule"] = "multiple_of_median";
  data.metadata["outlier_value"] = "10";
  suggest(data, 2, "k_median");
  return data;
}

// Two large coinciding sets R' apart plus a small stack R above the second
// one; every similarity set is the whole dataset.  Agnostic clustering flags
// the small stack; the distance-ratio constraint swaps the big sets and the
// stack stops standing out.
InstanceData make_fig6(Params& p) {
  const int n = as_count(p.get("n", 20.0), "n");
  const double eps = p.get("eps", 0.1);
  const double rp = p.get("Rp", 2.0);
  const double big_r = p.get("R", 8.0);
  require(eps > 0.0 && eps < 1.0, "eps must lie in (0, 1)");
  require(rp > 0.0 && big_r > rp, "need R > Rp > 0");
  const int stack = as_count(eps * n, "eps*n");
  const int half = as_count((1.0 - eps) * n / 2.0, "(1-eps)*n/2");
  InstanceData data = from_stacks({
      {{0.0, 0.0}, half, kRed},
      {{rp, 0.0}, half, kBlue},
      {{rp, big_r}, stack, kBlue},
  });
  const int total = 2 * half + stack;
  std::vector<int> everyone(total);
  for (int j = 0; j < total; ++j) everyone[j] = j;
  data.similarity_sets.assign(total, everyone);
  data.metadata["figure"] = "fig6_outlier_eq";
  data.metadata["n"] = fmt(n);
  data.metadata["eps"] = fmt(eps);
  data.metadata["Rp"] = fmt(rp);
  data.metadata["R"] = fmt(big_r);
  data.metadata["alpha"] = fmt(big_r / rp);
  data.metadata["outlier_rule"] = "multiple_of_median";
  data.metadata["outlier_value"] = "10";
  suggest(data, 2, "k_median");
  return data;
}

// Three clumps of 2x2 grids with +/- class labels split by height; the red
// middle clump labels the heights the opposite way.  Per-clump clusters are
// linearly separable, half-half mixed clusters are not.
InstanceData make_fig7(Params& p) {
  (void)p;
  InstanceData data;
  auto clump = [&](double x0, const char* color, bool plus_low) {
    for (double dx : {0.0, 1.0})
      for (double dy : {0.0, 3.0}) {
        data.coords.push_back({x0 + dx, dy});
        data.colors.push_back(color);
        const bool low = dy == 0.0;
        data.class_labels.push_back(low == plus_low ? 1 : -1);
      }
  };
  clump(0.0, kBlue, true);
  clump(100.0, kRed, false);  // the red clump spans two grid halves
  clump(102.0, kRed, false);
  clump(202.0, kBlue, true);
  data.metadata["figure"] = "fig7_classifier";
  data.metadata["cm_lower"] = "0.5";
  data.metadata["cm_upper"] = "0.5";
  suggest(data, 3, "k_median");
  return data;
}

// Two regions, each with one mixed hub pair and four one-color stacks; the
// whole construction is given as an explicit metric.  Within region 1 stacks
// are 7r from the hub, same-color stacks 2r apart and cross-color 14r; in
// region 2 all stack-hub and same-color distances are 2r and cross-color 4r.
// The regions are 100r apart.
InstanceData make_thm1(Params& p) {
  const double r = p.get("r", 1.0);
  require(r > 0.0, "r must be positive");
  const int n = 52;
  // Group layout per region: hub red, hub blue, then four 6-point stacks
  // (red X, red Y, blue X, blue Y).
  struct Loc {
    int first, count;
    bool red;
    int kind;  // 0 hub, 1 X-stack, 2 Y-stack
  };
  const std::vector<Loc> locs = {
      {0, 1, true, 0},   {1, 1, false, 0},  {2, 6, true, 1},
      {8, 6, true, 2},   {14, 6, false, 1}, {20, 6, false, 2},
      {26, 1, true, 0},  {27, 1, false, 0}, {28, 6, true, 1},
      {34, 6, true, 2},  {40, 6, false, 1}, {46, 6, false, 2},
  };
  auto region_of = [](int j) { return j < 26 ? 0 : 1; };
  std::vector<int> loc_of(n);
  std::vector<bool> red(n);
  for (const auto& loc : locs)
    for (int j = loc.first; j < loc.first + loc.count; ++j) {
      loc_of[j] = static_cast<int>(&loc - locs.data());
      red[j] = loc.red;
    }
  auto pair_dist = [&](int a, int b) {
    if (a == b) return 0.0;
    if (region_of(locs[a].first) != region_of(locs[b].first)) return 100.0 * r;
    const double hub_d = region_of(locs[a].first) == 0 ? 7.0 * r : 2.0 * r;
    const bool a_hub = locs[a].kind == 0, b_hub = locs[b].kind == 0;
    if (a_hub && b_hub) return 0.0;
    if (a_hub || b_hub) return hub_d;
    if (locs[a].red == locs[b].red)
      return locs[a].kind == locs[b].kind ? 0.0 : 2.0 * r;
    return 2.0 * hub_d;
  };
  InstanceData data;
  data.matrix.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      data.matrix[i][j] = pair_dist(loc_of[i], loc_of[j]);
  data.colors.resize(n);
  for (int j = 0; j < n; ++j) data.colors[j] = red[j] ? kRed : kBlue;
  data.metadata["figure"] = "thm1";
  data.metadata["r"] = fmt(r);
  data.metadata["cm_lower"] = "0.5";
  data.metadata["cm_upper"] = "0.5";
  suggest(data, 4, "k_median");
  return data;
}

}  // namespace

std::string figure_name(FigureId id) {
  switch (id) {
    case FigureId::fig1_cm: return "fig1_cm";
    case FigureId::fig2_eq: return "fig2_eq";
    case FigureId::fig3_sf: return "fig3_sf";
    case FigureId::fig4_degradation: return "fig4_degradation";
    case FigureId::fig5_outlier_cm: return "fig5_outlier_cm";
    case FigureId::fig6_outlier_eq: return "fig6_outlier_eq";
    case FigureId::fig7_classifier: return "fig7_classifier";
    case FigureId::thm1: return "thm1";
  }
  throw InvalidParams("unknown figure id");
}

const std::vector<FigureId>& all_figures() {
  static const std::vector<FigureId> ids = {
      FigureId::fig1_cm,         FigureId::fig2_eq,
      FigureId::fig3_sf,         FigureId::fig4_degradation,
      FigureId::fig5_outlier_cm, FigureId::fig6_outlier_eq,
      FigureId::fig7_classifier, FigureId::thm1,
  };
  return ids;
}

std::optional<FigureId> figure_from_name(const std::string& name) {
  for (FigureId id : all_figures())
    if (figure_name(id) == name) return id;
  return std::nullopt;
}

InstanceData generate_figure_data(FigureId id, const GenParams& params) {
  Params p(params);
  InstanceData data;
  switch (id) {
    case FigureId::fig1_cm: data = make_fig1(p); break;
    case FigureId::fig2_eq: data = make_fig2(p); break;
    case FigureId::fig3_sf: data = make_fig3(p); break;
    case FigureId::fig4_degradation: data = make_fig4(p); break;
    case FigureId::fig5_outlier_cm: data = make_fig5(p); break;
    case FigureId::fig6_outlier_eq: data = make_fig6(p); break;
    case FigureId::fig7_classifier: data = make_fig7(p); break;
    case FigureId::thm1: data = make_thm1(p); break;
  }
  p.done(figure_name(id));
  return data;
}

Instance generate_figure(FigureId id, const GenParams& params) {
  return build_instance(generate_figure_data(id, params));
}

}  // namespace fairclust
