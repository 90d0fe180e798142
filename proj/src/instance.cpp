#include "fairclust/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "fairclust/errors.hpp"

namespace fairclust {

std::vector<std::vector<int>> Instance::points_by_color() const {
  std::vector<std::vector<int>> by(color_names.size());
  for (int i = 0; i < n; ++i) by[color[i]].push_back(i);
  return by;
}

namespace {

std::vector<std::vector<double>> matrix_from_coords(
    const std::vector<std::vector<double>>& coords) {
  const int n = static_cast<int>(coords.size());
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (size_t t = 0; t < coords[i].size(); ++t) {
        const double diff = coords[i][t] - coords[j][t];
        s += diff * diff;
      }
      m[i][j] = m[j][i] = std::sqrt(s);
    }
  }
  return m;
}

}  // namespace

Instance build_instance(const InstanceData& data, const BuildOptions& opts) {
  const bool has_coords = !data.coords.empty();
  const bool has_matrix = !data.matrix.empty();
  if (has_coords == has_matrix)
    throw InvalidParams("exactly one of coords or matrix must be given");

  Instance inst;
  if (has_coords) {
    inst.n = static_cast<int>(data.coords.size());
    const size_t dim = data.coords[0].size();
    if (dim == 0) throw InvalidParams("coords must have positive dimension");
    for (const auto& p : data.coords)
      if (p.size() != dim)
        throw InvalidParams("all coords must share one dimension");
    inst.coords = data.coords;
    inst.dist = matrix_from_coords(data.coords);
  } else {
    inst.n = static_cast<int>(data.matrix.size());
    for (const auto& row : data.matrix)
      if (row.size() != data.matrix.size())
        throw InvalidParams("distance matrix must be square");
    inst.dist = data.matrix;
    for (int i = 0; i < inst.n; ++i) {
      if (std::abs(inst.dist[i][i]) > opts.tol)
        throw MetricViolation("distance matrix diagonal must be zero");
      inst.dist[i][i] = 0.0;
      for (int j = i + 1; j < inst.n; ++j) {
        if (inst.dist[i][j] < -opts.tol || inst.dist[j][i] < -opts.tol)
          throw MetricViolation("distances must be non-negative");
        if (std::abs(inst.dist[i][j] - inst.dist[j][i]) > opts.tol)
          throw MetricViolation("distance matrix must be symmetric");
        const double v = std::max(0.0, inst.dist[i][j]);
        inst.dist[i][j] = inst.dist[j][i] = v;
      }
    }
    if (opts.check_triangle) {
      for (int i = 0; i < inst.n; ++i)
        for (int j = 0; j < inst.n; ++j)
          for (int l = 0; l < inst.n; ++l)
            if (inst.dist[i][j] > inst.dist[i][l] + inst.dist[l][j] + opts.tol) {
              std::ostringstream os;
              os << "triangle inequality violated: d(" << i << "," << j
                 << ") > d(" << i << "," << l << ") + d(" << l << "," << j << ")";
              throw MetricViolation(os.str());
            }
    }
  }
  if (inst.n == 0) throw InvalidParams("instance must contain at least one point");

  if (static_cast<int>(data.colors.size()) != inst.n)
    throw ColorMissing("every point needs exactly one color label");
  std::set<std::string> names(data.colors.begin(), data.colors.end());
  for (const auto& name : names)
    if (name.empty()) throw ColorMissing("empty color label");
  inst.color_names.assign(names.begin(), names.end());
  inst.color.resize(inst.n);
  for (int i = 0; i < inst.n; ++i) {
    const auto it = std::lower_bound(inst.color_names.begin(),
                                     inst.color_names.end(), data.colors[i]);
    inst.color[i] = static_cast<int>(it - inst.color_names.begin());
  }

  if (!data.similarity_sets.empty()) {
    if (static_cast<int>(data.similarity_sets.size()) != inst.n)
      throw InvalidParams("similarity_sets must list one set per point");
    inst.similarity.resize(inst.n);
    bool any = false;  // an empty entry means the point has no set
    for (int i = 0; i < inst.n; ++i) {
      std::set<int> s(data.similarity_sets[i].begin(),
                      data.similarity_sets[i].end());
      for (int j : s)
        if (j < 0 || j >= inst.n)
          throw InvalidParams("similarity set references unknown point");
      inst.similarity[i].assign(s.begin(), s.end());
      any = any || !s.empty();
    }
    if (!any) inst.similarity.clear();
  }

  for (const auto& [pt, label] : data.outcome_labels) {
    if (pt < 0 || pt >= inst.n)
      throw InvalidParams("outcome label references unknown point");
    inst.outcome_labels[pt] = label;
  }

  if (!data.class_labels.empty()) {
    if (static_cast<int>(data.class_labels.size()) != inst.n)
      throw InvalidParams("class_labels must list one label per point");
    for (int y : data.class_labels)
      if (y != 1 && y != -1)
        throw InvalidParams("class labels must be +1 or -1");
    inst.class_labels = data.class_labels;
  }

  inst.metadata = data.metadata;
  return inst;
}

InstanceData from_stacks(const std::vector<StackSpec>& stacks) {
  InstanceData data;
  for (const auto& s : stacks) {
    if (s.count < 1) throw InvalidParams("stack count must be positive");
    if (s.location.empty()) throw InvalidParams("stack needs a location");
    if (s.color.empty()) throw ColorMissing("stack needs a color");
    for (int c = 0; c < s.count; ++c) {
      data.coords.push_back(s.location);
      data.colors.push_back(s.color);
    }
  }
  return data;
}

std::vector<std::vector<int>> locations(const Instance& inst) {
  std::vector<std::vector<int>> groups;
  std::vector<int> rep;  // lowest id per group
  for (int i = 0; i < inst.n; ++i) {
    bool placed = false;
    for (size_t g = 0; g < groups.size(); ++g) {
      if (inst.d(i, rep[g]) == 0.0) {
        groups[g].push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) {
      groups.push_back({i});
      rep.push_back(i);
    }
  }
  return groups;
}

std::vector<int> location_of(const Instance& inst) {
  const auto groups = locations(inst);
  std::vector<int> of(inst.n, -1);
  for (size_t g = 0; g < groups.size(); ++g)
    for (int i : groups[g]) of[i] = static_cast<int>(g);
  return of;
}

}  // namespace fairclust
