#include "fairclust/audit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fairclust/errors.hpp"

namespace fairclust {
namespace {

void validate_rule(const OutlierRule& rule) {
  if (rule.kind == OutlierKind::absolute_threshold) {
    if (rule.value <= 0.0)
      throw InvalidParams("absolute outlier threshold must be positive");
  } else if (rule.value <= 1.0) {
    throw InvalidParams("median multiple must exceed 1");
  }
}

std::vector<double> assigned_distances(const Instance& inst,
                                       const Clustering& c) {
  std::vector<double> d(inst.n);
  for (int j = 0; j < inst.n; ++j) d[j] = inst.d(j, c.assignment[j]);
  return d;
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

std::vector<int> diff_sorted(const std::vector<int>& a,
                             const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

// Bounded-variable primal simplex (Bland's rule) for max c*x, A x <= rhs,
// 0 <= x, rhs >= 0.  Small dense problems only.
struct Simplex {
  int m = 0, n = 0;
  std::vector<std::vector<double>> tab;  // m+1 rows, n+m+1 cols
  std::vector<int> basis;

  Simplex(const std::vector<std::vector<double>>& a,
          const std::vector<double>& rhs, const std::vector<double>& obj) {
    m = static_cast<int>(a.size());
    n = static_cast<int>(obj.size());
    tab.assign(m + 1, std::vector<double>(n + m + 1, 0.0));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) tab[i][j] = a[i][j];
      tab[i][n + i] = 1.0;
      tab[i][n + m] = rhs[i];
    }
    for (int j = 0; j < n; ++j) tab[m][j] = -obj[j];
    basis.resize(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;
  }

  void pivot(int row, int col) {
    const double p = tab[row][col];
    for (double& v : tab[row]) v /= p;
    for (int i = 0; i <= m; ++i) {
      if (i == row) continue;
      const double f = tab[i][col];
      if (f == 0.0) continue;
      for (int j = 0; j <= n + m; ++j) tab[i][j] -= f * tab[row][j];
    }
    basis[row] = col;
  }

  // Returns the optimum; box constraints keep the LP bounded.
  double run() {
    constexpr double kEps = 1e-11;
    while (true) {
      int col = -1;
      for (int j = 0; j < n + m; ++j)
        if (tab[m][j] < -kEps) {
          col = j;
          break;
        }
      if (col < 0) break;
      int row = -1;
      double best = 0.0;
      for (int i = 0; i < m; ++i) {
        if (tab[i][col] <= kEps) continue;
        const double ratio = tab[i][n + m] / tab[i][col];
        if (row < 0 || ratio < best - kEps ||
            (ratio < best + kEps && basis[i] < basis[row])) {
          row = i;
          best = ratio;
        }
      }
      if (row < 0) throw InvalidParams("internal: unbounded separability LP");
      pivot(row, col);
    }
    return tab[m][n + m];
  }

  double value_of(int var) const {
    for (int i = 0; i < m; ++i)
      if (basis[i] == var) return tab[i][n + m];
    return 0.0;
  }
};

}  // namespace

std::string outlier_kind_name(OutlierKind kind) {
  return kind == OutlierKind::absolute_threshold ? "absolute_threshold"
                                                 : "multiple_of_median";
}

std::vector<int> flag_outliers(const Instance& inst, const Clustering& c,
                               const OutlierRule& rule) {
  validate_rule(rule);
  validate_clustering(inst, c);
  const auto d = assigned_distances(inst, c);
  const double cut = rule.kind == OutlierKind::absolute_threshold
                         ? rule.value
                         : rule.value * median_of(d);
  std::vector<int> out;
  for (int j = 0; j < inst.n; ++j)
    if (d[j] > cut) out.push_back(j);
  return out;
}

OutlierConfusion outlier_confusion(const Instance& inst,
                                   const Clustering& fair,
                                   const Clustering& agnostic,
                                   const OutlierRule& rule) {
  OutlierConfusion conf;
  conf.rule = rule;
  conf.overall.fair_flagged = flag_outliers(inst, fair, rule);
  conf.overall.agnostic_flagged = flag_outliers(inst, agnostic, rule);
  conf.overall.false_positives =
      diff_sorted(conf.overall.fair_flagged, conf.overall.agnostic_flagged);
  conf.overall.false_negatives =
      diff_sorted(conf.overall.agnostic_flagged, conf.overall.fair_flagged);
  for (const auto& name : inst.color_names) conf.by_group[name] = {};
  auto split = [&](const std::vector<int>& points,
                   std::vector<int> GroupConfusion::*field) {
    for (int j : points)
      (conf.by_group[inst.color_names[inst.color[j]]].*field).push_back(j);
  };
  split(conf.overall.fair_flagged, &GroupConfusion::fair_flagged);
  split(conf.overall.agnostic_flagged, &GroupConfusion::agnostic_flagged);
  split(conf.overall.false_positives, &GroupConfusion::false_positives);
  split(conf.overall.false_negatives, &GroupConfusion::false_negatives);
  return conf;
}

std::vector<SeparabilityResult> per_cluster_separability(const Instance& inst,
                                                         const Clustering& c,
                                                         double margin) {
  if (!inst.has_coords())
    throw RequiresCoordinates("separability audit needs point coordinates");
  if (!inst.has_class_labels())
    throw MissingClassLabels("separability audit needs +1/-1 class labels");
  validate_clustering(inst, c);
  const auto members = cluster_members(inst, c);
  const int dim = static_cast<int>(inst.coords[0].size());

  std::vector<SeparabilityResult> results;
  for (size_t ci = 0; ci < c.centers.size(); ++ci) {
    SeparabilityResult res;
    res.center = c.centers[ci];
    res.members = members[ci];
    for (int j : res.members)
      (inst.class_labels[j] > 0 ? res.positives : res.negatives)++;

    // Variables: w+_1..w+_D, w-_1..w-_D, b+, b-, t; maximize t subject to
    //   t - y_j (w . x_j + b) <= 0  for every member,
    //   each w component <= 1, b components <= box, t <= 1.
    const int nv = 2 * dim + 3;
    const int iw_pos = 0, iw_neg = dim, ib_pos = 2 * dim, ib_neg = 2 * dim + 1,
              it = 2 * dim + 2;
    double box = 1.0;
    for (int j : res.members)
      for (double x : inst.coords[j]) box = std::max(box, std::abs(x));
    box = dim * box + 1.0;

    std::vector<std::vector<double>> a;
    std::vector<double> rhs;
    for (int j : res.members) {
      const double y = inst.class_labels[j];
      std::vector<double> row(nv, 0.0);
      for (int d = 0; d < dim; ++d) {
        row[iw_pos + d] = -y * inst.coords[j][d];
        row[iw_neg + d] = y * inst.coords[j][d];
      }
      row[ib_pos] = -y;
      row[ib_neg] = y;
      row[it] = 1.0;
      a.push_back(std::move(row));
      rhs.push_back(0.0);
    }
    for (int d = 0; d < 2 * dim; ++d) {
      std::vector<double> row(nv, 0.0);
      row[d] = 1.0;
      a.push_back(std::move(row));
      rhs.push_back(1.0);
    }
    for (int v : {ib_pos, ib_neg}) {
      std::vector<double> row(nv, 0.0);
      row[v] = 1.0;
      a.push_back(std::move(row));
      rhs.push_back(box);
    }
    {
      std::vector<double> row(nv, 0.0);
      row[it] = 1.0;
      a.push_back(std::move(row));
      rhs.push_back(1.0);
    }
    std::vector<double> obj(nv, 0.0);
    obj[it] = 1.0;

    Simplex lp(a, rhs, obj);
    res.margin = lp.run();
    res.separable = res.margin >= margin;
    if (res.separable) {
      res.weights.resize(dim);
      for (int d = 0; d < dim; ++d)
        res.weights[d] = lp.value_of(iw_pos + d) - lp.value_of(iw_neg + d);
      res.bias = lp.value_of(ib_pos) - lp.value_of(ib_neg);
    }
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace fairclust
