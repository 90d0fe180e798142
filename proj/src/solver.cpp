#include "fairclust/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <future>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <thread>
#include <tuple>

#include "fairclust/errors.hpp"
#include "fairclust/transport.hpp"

namespace fairclust {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Margin used when pruning against incumbents shared across threads.  It is
// far wider than the value-tie tolerance, so pruning can only discard
// strictly worse branches and results stay independent of thread timing.
constexpr double kPruneMargin = 1e-7;

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FAIRCLUST_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct Ticker {
  std::shared_ptr<std::atomic<std::int64_t>> count =
      std::make_shared<std::atomic<std::int64_t>>(0);
  std::int64_t budget = 50'000'000;

  void tick(std::int64_t c = 1) const {
    if (count->fetch_add(c, std::memory_order_relaxed) + c > budget)
      throw BudgetExceeded("search node budget exhausted; raise --budget-nodes");
  }
  std::uint64_t total() const {
    return static_cast<std::uint64_t>(std::max<std::int64_t>(0, count->load()));
  }
};

void guard_shape(const Instance& inst, int k) {
  if (k < 1) throw InvalidParams("k must be at least 1");
  if (std::min(k, inst.n) > 4)
    throw BudgetExceeded("exact search handles at most 4 centers");
  if (inst.n > 16 && locations(inst).size() > 24)
    throw BudgetExceeded(
        "instance too large for exact search (more than 16 points and more "
        "than 24 distinct locations)");
}

// ---------------------------------------------------------------------------
// Candidate center sets.  Coincident points are interchangeable as centers
// for every notion except welfare-centric solving, so candidates are location
// representatives (lowest id per zero-distance class).

std::vector<std::vector<int>> location_center_sets(const Instance& inst, int k) {
  const auto locs = locations(inst);
  std::vector<int> reps;
  reps.reserve(locs.size());
  for (const auto& g : locs) reps.push_back(g.front());
  const int limit = std::min<int>(k, static_cast<int>(reps.size()));
  std::vector<std::vector<int>> sets;
  std::vector<int> cur;
  auto rec = [&](auto&& self, size_t from) -> void {
    if (!cur.empty()) sets.push_back(cur);
    if (static_cast<int>(cur.size()) == limit) return;
    for (size_t i = from; i < reps.size(); ++i) {
      cur.push_back(reps[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return sets;
}

// ---------------------------------------------------------------------------
// Member stacks: interchangeable points (same location, color and utility
// override status).  Override holders get singleton stacks.

struct Stack {
  int rep = 0;  // a member point; co-located with every other member
  int color = 0;
  std::vector<int> points;  // ascending
};

std::vector<Stack> make_stacks(const Instance& inst, const UtilityModel* model) {
  const auto loc_of = location_of(inst);
  std::map<std::tuple<int, int, int>, std::vector<int>> groups;
  for (int j = 0; j < inst.n; ++j) {
    const int override_key =
        model != nullptr && model->overrides.count(j) ? j : -1;
    groups[{loc_of[j], inst.color[j], override_key}].push_back(j);
  }
  std::vector<Stack> stacks;
  stacks.reserve(groups.size());
  for (auto& [key, points] : groups) {
    (void)key;
    Stack s;
    s.rep = points.front();
    s.color = inst.color[points.front()];
    s.points = std::move(points);
    stacks.push_back(std::move(s));
  }
  // Deterministic order: by lowest member id.
  std::sort(stacks.begin(), stacks.end(),
            [](const Stack& a, const Stack& b) { return a.rep < b.rep; });
  return stacks;
}

// Winner candidate carried across center sets.  Distinct sets always differ
// in their center list, so the assignment never enters the comparison here.
struct Candidate {
  double order_value = kInf;  // minimization orientation
  std::vector<int> centers;

  bool better_than(const Candidate& other, double tol) const {
    if (order_value < other.order_value - tol) return true;
    if (other.order_value < order_value - tol) return false;
    if (centers.size() != other.centers.size())
      return centers.size() < other.centers.size();
    return centers < other.centers;
  }
};

template <typename PerSet>
void run_over_sets(const std::vector<std::vector<int>>& sets, int threads,
                   PerSet per_set) {
  const int t = std::max(1, std::min<int>(threads, static_cast<int>(sets.size())));
  if (t <= 1) {
    for (size_t i = 0; i < sets.size(); ++i) per_set(i);
    return;
  }
  std::vector<std::future<void>> futures;
  futures.reserve(t);
  std::atomic<size_t> next{0};
  for (int w = 0; w < t; ++w)
    futures.push_back(std::async(std::launch::async, [&]() {
      while (true) {
        const size_t i = next.fetch_add(1);
        if (i >= sets.size()) return;
        per_set(i);
      }
    }));
  for (auto& f : futures) f.get();
}

// ---------------------------------------------------------------------------
// Nearest-assignment family: agnostic objectives and the socially fair value.

double nearest_value(const Instance& inst, const Clustering& c, Objective obj) {
  if (obj == Objective::k_center) {
    double worst = 0.0;
    for (int j = 0; j < inst.n; ++j)
      worst = std::max(worst, inst.d(j, c.assignment[j]));
    return worst;
  }
  const int p = distance_power(obj);
  double total = 0.0;
  for (int j = 0; j < inst.n; ++j) {
    const double d = inst.d(j, c.assignment[j]);
    total += p == 1 ? d : d * d;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Color composition engine shared by the CM solver.

struct CmProblem {
  const Instance& inst;
  std::vector<int> centers;
  std::vector<std::pair<double, double>> lu;
  Objective obj;
  int K = 0, H = 0;
  std::vector<int> totals;                       // points per color
  std::vector<std::vector<int>> color_stacks;    // stack index per color
  std::vector<std::vector<int>> supplies;        // aligned with color_stacks
  std::vector<std::vector<std::vector<double>>> cost;  // [h][stack][cluster]
  std::vector<std::vector<std::vector<double>>> dist;  // raw distances
  const std::vector<Stack>& stacks;

  CmProblem(const Instance& inst_, std::vector<int> centers_,
            std::vector<std::pair<double, double>> lu_, Objective obj_,
            const std::vector<Stack>& stacks_)
      : inst(inst_),
        centers(std::move(centers_)),
        lu(std::move(lu_)),
        obj(obj_),
        stacks(stacks_) {
    K = static_cast<int>(centers.size());
    H = inst.num_colors();
    totals.assign(H, 0);
    for (int j = 0; j < inst.n; ++j) ++totals[inst.color[j]];
    color_stacks.assign(H, {});
    supplies.assign(H, {});
    for (size_t s = 0; s < stacks.size(); ++s) {
      color_stacks[stacks[s].color].push_back(static_cast<int>(s));
      supplies[stacks[s].color].push_back(static_cast<int>(stacks[s].points.size()));
    }
    const int p = distance_power(obj);
    cost.assign(H, {});
    dist.assign(H, {});
    for (int h = 0; h < H; ++h) {
      cost[h].resize(color_stacks[h].size());
      dist[h].resize(color_stacks[h].size());
      for (size_t t = 0; t < color_stacks[h].size(); ++t) {
        cost[h][t].resize(K);
        dist[h][t].resize(K);
        for (int i = 0; i < K; ++i) {
          const double d = inst.d(stacks[color_stacks[h][t]].rep, centers[i]);
          dist[h][t][i] = d;
          cost[h][t][i] = p == 1 ? d : d * d;
        }
      }
    }
  }

  bool cluster_ok(const std::vector<int>& c) const {
    int size = 0;
    for (int h = 0; h < H; ++h) size += c[h];
    if (size == 0) return true;
    for (int h = 0; h < H; ++h)
      if (!(lu[h].first * size <= c[h] && c[h] <= lu[h].second * size))
        return false;
    return true;
  }

  // Enumerates complete compositions in lexicographic order.
  template <typename Leaf>
  void for_each_composition(const Ticker& ticker, Leaf leaf) const {
    std::vector<std::vector<int>> counts(K, std::vector<int>(H, 0));
    std::vector<int> rem = totals;
    auto cluster = [&](auto&& self, int i) -> void {
      ticker.tick();
      if (i == K - 1) {
        counts[i] = rem;
        if (cluster_ok(counts[i])) leaf(counts);
        return;
      }
      std::vector<int> c(H, 0);
      auto colors = [&](auto&& cself, int h) -> void {
        if (h == H) {
          if (!cluster_ok(c)) return;
          counts[i] = c;
          for (int x = 0; x < H; ++x) rem[x] -= c[x];
          self(self, i + 1);
          for (int x = 0; x < H; ++x) rem[x] += c[x];
          return;
        }
        for (c[h] = 0; c[h] <= rem[h]; ++c[h]) cself(cself, h + 1);
        c[h] = 0;
      };
      colors(colors, 0);
    };
    cluster(cluster, 0);
  }

  // Sum objectives: min transport cost of a composition, nullopt never.
  double composition_cost(const Ticker& ticker,
                          const std::vector<std::vector<int>>& counts) const {
    double total = 0.0;
    for (int h = 0; h < H; ++h) {
      std::vector<int> demand(K);
      for (int i = 0; i < K; ++i) demand[i] = counts[i][h];
      ticker.tick();
      const auto res = solve_transport(cost[h], supplies[h], demand);
      total += res->cost;  // totals always match, never nullopt
    }
    return total;
  }

  bool composition_feasible_at(const Ticker& ticker,
                               const std::vector<std::vector<int>>& counts,
                               double tmax) const {
    for (int h = 0; h < H; ++h) {
      std::vector<int> demand(K);
      for (int i = 0; i < K; ++i) demand[i] = counts[i][h];
      std::vector<std::vector<double>> allowed(dist[h].size(),
                                               std::vector<double>(K, kInf));
      for (size_t t = 0; t < dist[h].size(); ++t)
        for (int i = 0; i < K; ++i)
          if (dist[h][t][i] <= tmax + 1e-12) allowed[t][i] = 0.0;
      ticker.tick();
      if (!solve_transport(allowed, supplies[h], demand)) return false;
    }
    return true;
  }
};

std::optional<double> cm_set_value(const Ticker& ticker,
                                   const CmProblem& prob) {
  if (prob.obj != Objective::k_center) {
    std::optional<double> best;
    prob.for_each_composition(ticker, [&](const auto& counts) {
      const double c = prob.composition_cost(ticker, counts);
      if (!best || c < *best) best = c;
    });
    return best;
  }
  // k-center: search the smallest feasible max distance.
  std::set<double> cands{0.0};
  for (const auto& per_stack : prob.dist)
    for (const auto& row : per_stack)
      for (double d : row) cands.insert(d);
  std::vector<double> ts(cands.begin(), cands.end());
  auto feasible_at = [&](double t) {
    bool found = false;
    prob.for_each_composition(ticker, [&](const auto& counts) {
      if (!found && prob.composition_feasible_at(ticker, counts, t))
        found = true;
    });
    return found;
  };
  if (!feasible_at(ts.back())) return std::nullopt;
  size_t lo = 0, hi = ts.size() - 1;
  while (lo < hi) {
    const size_t mid = (lo + hi) / 2;
    if (feasible_at(ts[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return ts[lo];
}

// Lexicographically smallest assignment matching `counts`, hitting total cost
// `target` for sum objectives or max distance <= target for k-center.
Clustering cm_reconstruct(const Ticker& ticker, const CmProblem& prob,
                          const std::vector<std::vector<int>>& counts,
                          double target) {
  const Instance& inst = prob.inst;
  const int K = prob.K, H = prob.H;
  std::vector<int> stack_of(inst.n, -1);
  for (size_t s = 0; s < prob.stacks.size(); ++s)
    for (int j : prob.stacks[s].points) stack_of[j] = static_cast<int>(s);
  std::vector<int> stack_pos(prob.stacks.size(), -1);  // index within color
  for (int h = 0; h < H; ++h)
    for (size_t t = 0; t < prob.color_stacks[h].size(); ++t)
      stack_pos[prob.color_stacks[h][t]] = static_cast<int>(t);

  std::vector<std::vector<int>> demand = counts;  // remaining per cluster/color
  std::vector<std::vector<int>> supply = prob.supplies;  // remaining per color
  const bool center_mode = prob.obj == Objective::k_center;
  double fixed_cost = 0.0;

  auto completion_ok = [&](double fixed) {
    double total = fixed;
    for (int h = 0; h < H; ++h) {
      std::vector<int> dem(K);
      for (int i = 0; i < K; ++i) dem[i] = demand[i][h];
      if (center_mode) {
        std::vector<std::vector<double>> allowed(
            prob.dist[h].size(), std::vector<double>(K, kInf));
        for (size_t t = 0; t < prob.dist[h].size(); ++t)
          for (int i = 0; i < K; ++i)
            if (prob.dist[h][t][i] <= target + 1e-12) allowed[t][i] = 0.0;
        ticker.tick();
        if (!solve_transport(allowed, supply[h], dem)) return false;
      } else {
        ticker.tick();
        const auto res = solve_transport(prob.cost[h], supply[h], dem);
        if (!res) return false;
        total += res->cost;
      }
    }
    return center_mode || total <= target + 1e-9;
  };

  Clustering out;
  out.centers = prob.centers;
  std::sort(out.centers.begin(), out.centers.end());
  out.assignment.assign(inst.n, -1);
  for (int j = 0; j < inst.n; ++j) {
    const int s = stack_of[j], h = inst.color[j], t = stack_pos[s];
    bool placed = false;
    for (int i = 0; i < K && !placed; ++i) {
      if (demand[i][h] == 0) continue;
      if (center_mode && prob.dist[h][t][i] > target + 1e-12) continue;
      --demand[i][h];
      --supply[h][t];
      const double add = center_mode ? 0.0 : prob.cost[h][t][i];
      if (completion_ok(fixed_cost + add)) {
        fixed_cost += add;
        out.assignment[j] = prob.centers[i];
        placed = true;
      } else {
        ++demand[i][h];
        ++supply[h][t];
      }
    }
    if (!placed)
      throw Infeasible("internal: composition reconstruction failed");
  }
  return out;
}

// Several compositions can tie for the optimum of one center set, and their
// reconstructions differ; sweep them all and keep the smallest assignment.
Clustering cm_canonical(const Ticker& ticker, const CmProblem& prob,
                        double v_star, double tol) {
  std::optional<Clustering> best;
  auto consider = [&](const std::vector<std::vector<int>>& counts,
                      double target) {
    Clustering c = cm_reconstruct(ticker, prob, counts, target);
    if (!best || c.assignment < best->assignment) best = std::move(c);
  };
  prob.for_each_composition(ticker, [&](const auto& counts) {
    if (prob.obj == Objective::k_center) {
      if (prob.composition_feasible_at(ticker, counts, v_star))
        consider(counts, v_star);
    } else {
      const double c = prob.composition_cost(ticker, counts);
      if (c <= v_star + tol) consider(counts, c);
    }
  });
  if (!best) throw Infeasible("internal: canonical sweep found no composition");
  return *best;
}

// ---------------------------------------------------------------------------
// Equitability: depth-first search over per-point assignments.

struct EqSetResult {
  double value = kInf;
  std::vector<int> assignment;
};

struct EqSearch {
  const Instance& inst;
  const std::vector<int>& centers;
  double alpha;
  Objective obj;
  const Ticker& ticker;
  const std::vector<std::vector<int>>& inv;  // i in inv[j] iff j in S_i
  std::shared_ptr<std::atomic<double>> shared_best;  // cross-set hint

  int K = 0;
  std::vector<std::vector<double>> dj;  // [point][center index]
  std::vector<int> assign;              // center index per point, -1 unset
  std::vector<double> minref;           // min assigned distance within S_i
  EqSetResult best;
  double collect_limit = -1.0;  // >= 0: collect mode
  std::vector<EqSetResult>* collected = nullptr;
  std::size_t cap = 0;

  EqSearch(const Instance& inst_, const std::vector<int>& centers_,
           double alpha_, Objective obj_, const Ticker& ticker_,
           const std::vector<std::vector<int>>& inv_,
           std::shared_ptr<std::atomic<double>> shared)
      : inst(inst_),
        centers(centers_),
        alpha(alpha_),
        obj(obj_),
        ticker(ticker_),
        inv(inv_),
        shared_best(std::move(shared)) {
    K = static_cast<int>(centers.size());
    dj.assign(inst.n, std::vector<double>(K, 0.0));
    for (int j = 0; j < inst.n; ++j)
      for (int i = 0; i < K; ++i) dj[j][i] = inst.d(j, centers[i]);
    assign.assign(inst.n, -1);
    minref.assign(inst.n, kInf);
  }

  double assigned_distance(int j) const { return dj[j][assign[j]]; }

  void dfs(int j, double partial) {
    ticker.tick();
    if (j == inst.n) {
      for (int i = 0; i < inst.n; ++i)
        if (assigned_distance(i) > alpha * minref[i] + 1e-12) return;
      finish(partial);
      return;
    }
    for (int i = 0; i < K; ++i) {
      const double d = dj[j][i];
      const double next =
          obj == Objective::k_center
              ? std::max(partial, d)
              : partial + (obj == Objective::k_means ? d * d : d);
      if (!admissible(next)) continue;
      assign[j] = i;
      std::vector<std::pair<int, double>> touched;
      bool ok = true;
      for (int owner : inv[j]) {
        if (d < minref[owner]) {
          touched.push_back({owner, minref[owner]});
          minref[owner] = d;
          if (assign[owner] >= 0 &&
              assigned_distance(owner) > alpha * minref[owner] + 1e-12) {
            ok = false;
            break;
          }
        }
      }
      if (ok && minref[j] < kInf && d > alpha * minref[j] + 1e-12) ok = false;
      if (ok) dfs(j + 1, next);
      for (auto it = touched.rbegin(); it != touched.rend(); ++it)
        minref[it->first] = it->second;
      assign[j] = -1;
    }
  }

  bool admissible(double partial) const {
    if (collect_limit >= 0.0) return partial <= collect_limit + 1e-12;
    if (shared_best &&
        partial > shared_best->load(std::memory_order_relaxed) + kPruneMargin)
      return false;
    // Equal-value completions are lexicographically later; skip them.
    return !(best.value < kInf && partial > best.value - 1e-12);
  }

  void finish(double value) {
    if (collect_limit >= 0.0) {
      if (collected->size() < cap) collected->push_back({value, assign});
      return;
    }
    if (value < best.value - 1e-12) {
      best = {value, assign};
      if (shared_best) {
        double cur = shared_best->load(std::memory_order_relaxed);
        while (value < cur && !shared_best->compare_exchange_weak(cur, value)) {
        }
      }
    }
  }
};

std::vector<std::vector<int>> similarity_inverse(const Instance& inst) {
  std::vector<std::vector<int>> inv(inst.n);
  for (int i = 0; i < inst.n; ++i)
    for (int j : inst.similarity[i]) inv[j].push_back(i);
  return inv;
}

// ---------------------------------------------------------------------------
// Welfare-centric engine.

bool model_needs_labels(const UtilityModel& m) {
  if (m.base.outcome == OutcomeKind::center_label) return true;
  for (const auto& [j, pm] : m.overrides) {
    (void)j;
    if (pm.outcome == OutcomeKind::center_label) return true;
  }
  return false;
}

double model_distance_term(const PointModel& pm, double d) {
  return pm.distance == DistanceKind::linear ? pm.offset - d : -d;
}

// Candidate center point lists for welfare solving: location classes refined
// by outcome label, with repetitions (multisets) because splitting a location
// across co-located centers can raise the bottleneck group.
std::vector<std::vector<int>> wc_center_sets(const Instance& inst, int k,
                                             bool needs_labels) {
  const auto locs = locations(inst);
  std::vector<std::vector<int>> classes;
  for (const auto& g : locs) {
    std::map<std::pair<bool, double>, std::vector<int>> split;
    for (int j : g) {
      const auto it = inst.outcome_labels.find(j);
      if (it == inst.outcome_labels.end())
        split[{false, 0.0}].push_back(j);
      else
        split[{true, it->second}].push_back(j);
    }
    if (!needs_labels) {
      classes.push_back(g);
      continue;
    }
    for (auto& [key, pts] : split)
      if (key.first) classes.push_back(pts);
  }
  if (classes.empty())
    throw MissingOutcomeLabels(
        "utility model reads center labels but no point has one");
  const int limit = std::min(k, inst.n);
  std::vector<std::vector<int>> sets;
  std::vector<int> take(classes.size(), 0);
  auto rec = [&](auto&& self, size_t c, int used) -> void {
    if (c == classes.size()) {
      if (used == 0) return;
      std::vector<int> centers;
      for (size_t i = 0; i < classes.size(); ++i)
        for (int t = 0; t < take[i]; ++t) centers.push_back(classes[i][t]);
      std::sort(centers.begin(), centers.end());
      sets.push_back(std::move(centers));
      return;
    }
    const int room = limit - used;
    const int most = std::min<int>(room, static_cast<int>(classes[c].size()));
    for (int t = 0; t <= most; ++t) {
      take[c] = t;
      self(self, c + 1, used + t);
    }
    take[c] = 0;
  };
  rec(rec, 0, 0);
  return sets;
}

struct WcProblem {
  const Instance& inst;
  const UtilityModel& model;
  std::vector<int> centers;
  int K = 0, H = 0;
  std::vector<Stack> stacks;
  std::vector<std::vector<double>> A;  // [stack][cluster] fixed utility part
  std::vector<double> B;               // [stack] diversity weight
  std::vector<int> totals, group_size;
  std::vector<std::vector<int>> color_stacks, supplies;
  // Unit upper rates per color and cluster suffix, prefix-summed.
  std::vector<std::vector<std::vector<double>>> suffix_top;

  WcProblem(const Instance& inst_, const UtilityModel& model_,
            std::vector<int> centers_)
      : inst(inst_), model(model_), centers(std::move(centers_)) {
    K = static_cast<int>(centers.size());
    H = inst.num_colors();
    stacks = make_stacks(inst, &model);
    A.assign(stacks.size(), std::vector<double>(K, 0.0));
    B.assign(stacks.size(), 0.0);
    for (size_t s = 0; s < stacks.size(); ++s) {
      const PointModel& pm = model.for_point(stacks[s].points.front());
      for (int i = 0; i < K; ++i) {
        double a = pm.w_distance *
                   model_distance_term(pm, inst.d(stacks[s].rep, centers[i]));
        if (pm.outcome == OutcomeKind::center_label) {
          const auto it = inst.outcome_labels.find(centers[i]);
          if (it == inst.outcome_labels.end())
            throw MissingOutcomeLabels("no outcome label for center point " +
                                       std::to_string(centers[i]));
          a += pm.w_outcome * it->second;
        } else if (pm.outcome == OutcomeKind::constant) {
          a += pm.w_outcome * pm.constant;
        }
        A[s][i] = a;
      }
      if (pm.outcome == OutcomeKind::diversity_ratio) B[s] = pm.w_outcome;
    }
    totals.assign(H, 0);
    for (int j = 0; j < inst.n; ++j) ++totals[inst.color[j]];
    group_size = totals;
    color_stacks.assign(H, {});
    supplies.assign(H, {});
    for (size_t s = 0; s < stacks.size(); ++s) {
      color_stacks[stacks[s].color].push_back(static_cast<int>(s));
      supplies[stacks[s].color].push_back(
          static_cast<int>(stacks[s].points.size()));
    }
    suffix_top.assign(K + 1, {});
    for (int from = 0; from <= K; ++from) {
      suffix_top[from].assign(H, {});
      for (int h = 0; h < H; ++h) {
        std::vector<double> units;
        for (size_t t = 0; t < color_stacks[h].size(); ++t) {
          const int s = color_stacks[h][t];
          double rate = -kInf;
          for (int i = from; i < K; ++i)
            rate = std::max(rate, A[s][i] + std::max(B[s], 0.0));
          for (int u = 0; u < supplies[h][t]; ++u) units.push_back(rate);
        }
        std::sort(units.rbegin(), units.rend());
        std::vector<double> prefix{0.0};
        for (double u : units) prefix.push_back(prefix.back() + u);
        suffix_top[from][h] = std::move(prefix);
      }
    }
  }

  double cluster_div(const std::vector<int>& counts) const {
    return diversity_ratio(inst, counts);
  }

  // Best possible total for color h of c units entering cluster i, ignoring
  // competition from other clusters (admissible upper bound helper).
  double greedy_cluster(int h, int i, int c, double div) const {
    if (c == 0) return 0.0;
    std::vector<std::pair<double, int>> rated;
    for (size_t t = 0; t < color_stacks[h].size(); ++t) {
      const int s = color_stacks[h][t];
      rated.push_back({A[s][i] + B[s] * div, supplies[h][t]});
    }
    std::sort(rated.rbegin(), rated.rend());
    double sum = 0.0;
    int left = c;
    for (const auto& [rate, supply] : rated) {
      const int take = std::min(left, supply);
      sum += rate * take;
      left -= take;
      if (left == 0) break;
    }
    return sum;
  }

  // Exact per-color optimum for a full composition.
  std::vector<double> exact_color_values(
      const Ticker& ticker, const std::vector<std::vector<int>>& counts,
      const std::vector<double>& div) const {
    std::vector<double> vals(H, 0.0);
    for (int h = 0; h < H; ++h) {
      std::vector<std::vector<double>> gain(color_stacks[h].size(),
                                            std::vector<double>(K, 0.0));
      for (size_t t = 0; t < color_stacks[h].size(); ++t) {
        const int s = color_stacks[h][t];
        for (int i = 0; i < K; ++i) gain[t][i] = A[s][i] + B[s] * div[i];
      }
      std::vector<int> demand(K);
      for (int i = 0; i < K; ++i) demand[i] = counts[i][h];
      ticker.tick();
      const auto res = solve_transport_max(gain, supplies[h], demand);
      vals[h] = res->cost;
    }
    return vals;
  }
};

struct WcSetResult {
  double value = -kInf;
  std::vector<std::vector<int>> counts;
  std::vector<double> color_totals;
};

std::optional<WcSetResult> wc_best_for_set(
    const Ticker& ticker, const WcProblem& prob,
    const std::shared_ptr<std::atomic<double>>& shared_best,
    double tie_floor = kInf, std::vector<WcSetResult>* ties = nullptr) {
  const int K = prob.K, H = prob.H;
  std::optional<WcSetResult> best;

  auto consider_leafless = [&](const std::vector<std::vector<int>>& counts) {
    std::vector<double> div(K);
    for (int i = 0; i < K; ++i) div[i] = prob.cluster_div(counts[i]);
    const auto vals = prob.exact_color_values(ticker, counts, div);
    double value = kInf;
    for (int h = 0; h < H; ++h)
      if (prob.group_size[h] > 0)
        value = std::min(value, vals[h] / prob.group_size[h]);
    if (ties && value >= tie_floor) ties->push_back({value, counts, vals});
    if (!best || value > best->value + 1e-12)
      best = WcSetResult{value, counts, vals};
    if (shared_best) {
      double cur = shared_best->load(std::memory_order_relaxed);
      while (value > cur && !shared_best->compare_exchange_weak(cur, value)) {
      }
    }
  };

  // Incumbent seed: the nearest-assignment composition of this center set.
  {
    std::vector<std::vector<int>> counts(K, std::vector<int>(H, 0));
    for (int j = 0; j < prob.inst.n; ++j) {
      int bi = 0;
      double bd = prob.inst.d(j, prob.centers[0]);
      for (int i = 1; i < K; ++i) {
        const double d = prob.inst.d(j, prob.centers[i]);
        if (d < bd) {
          bd = d;
          bi = i;
        }
      }
      ++counts[bi][prob.inst.color[j]];
    }
    consider_leafless(counts);
  }

  std::vector<std::vector<int>> counts(K, std::vector<int>(H, 0));
  std::vector<int> rem = prob.totals;
  std::vector<std::vector<double>> assigned_greedy(K, std::vector<double>(H, 0.0));

  auto upper_bound_ok = [&](int next_cluster) {
    double hint = best ? best->value : -kInf;
    if (shared_best)
      hint = std::max(hint, shared_best->load(std::memory_order_relaxed));
    if (hint == -kInf) return true;
    for (int h = 0; h < H; ++h) {
      if (prob.group_size[h] == 0) continue;
      double ub = 0.0;
      for (int i = 0; i < next_cluster; ++i) ub += assigned_greedy[i][h];
      const auto& prefix = prob.suffix_top[next_cluster][h];
      ub += prefix[std::min<size_t>(rem[h], prefix.size() - 1)];
      if (ub / prob.group_size[h] <= hint - kPruneMargin) return false;
    }
    return true;
  };

  auto cluster = [&](auto&& self, int i) -> void {
    ticker.tick();
    if (i == K - 1) {
      counts[i] = rem;
      std::vector<int> save = rem;
      rem.assign(H, 0);
      consider_leafless(counts);
      rem = save;
      return;
    }
    std::vector<int> c(H, 0);
    auto colors = [&](auto&& cself, int h) -> void {
      if (h == H) {
        counts[i] = c;
        const double div = prob.cluster_div(c);
        for (int x = 0; x < H; ++x) {
          assigned_greedy[i][x] = prob.greedy_cluster(x, i, c[x], div);
          rem[x] -= c[x];
        }
        if (upper_bound_ok(i + 1)) self(self, i + 1);
        for (int x = 0; x < H; ++x) rem[x] += c[x];
        return;
      }
      for (c[h] = 0; c[h] <= rem[h]; ++c[h]) cself(cself, h + 1);
      c[h] = 0;
    };
    colors(colors, 0);
  };
  if (upper_bound_ok(0)) cluster(cluster, 0);
  return best;
}

Clustering wc_reconstruct(const Ticker& ticker, const WcProblem& prob,
                          const WcSetResult& win) {
  const Instance& inst = prob.inst;
  const int K = prob.K, H = prob.H;
  std::vector<double> div(K);
  for (int i = 0; i < K; ++i) div[i] = prob.cluster_div(win.counts[i]);

  std::vector<int> stack_of(inst.n, -1);
  for (size_t s = 0; s < prob.stacks.size(); ++s)
    for (int j : prob.stacks[s].points) stack_of[j] = static_cast<int>(s);
  std::vector<int> stack_pos(prob.stacks.size(), -1);
  for (int h = 0; h < H; ++h)
    for (size_t t = 0; t < prob.color_stacks[h].size(); ++t)
      stack_pos[prob.color_stacks[h][t]] = static_cast<int>(t);

  std::vector<std::vector<int>> demand = win.counts;
  std::vector<std::vector<int>> supply = prob.supplies;
  std::vector<double> fixed(H, 0.0);

  auto completion_ok = [&]() {
    for (int h = 0; h < H; ++h) {
      std::vector<int> dem(K);
      for (int i = 0; i < K; ++i) dem[i] = demand[i][h];
      std::vector<std::vector<double>> gain(prob.color_stacks[h].size(),
                                            std::vector<double>(K, 0.0));
      for (size_t t = 0; t < prob.color_stacks[h].size(); ++t) {
        const int s = prob.color_stacks[h][t];
        for (int i = 0; i < K; ++i) gain[t][i] = prob.A[s][i] + prob.B[s] * div[i];
      }
      ticker.tick();
      const auto res = solve_transport_max(gain, supply[h], dem);
      if (!res || fixed[h] + res->cost < win.color_totals[h] - 1e-9) return false;
    }
    return true;
  };

  Clustering out;
  out.centers = prob.centers;
  out.assignment.assign(inst.n, -1);
  for (int j = 0; j < inst.n; ++j) {
    const int s = stack_of[j], h = inst.color[j], t = stack_pos[s];
    bool placed = false;
    for (int i = 0; i < K && !placed; ++i) {
      if (demand[i][h] == 0) continue;
      --demand[i][h];
      --supply[h][t];
      const double add = prob.A[s][i] + prob.B[s] * div[i];
      fixed[h] += add;
      if (completion_ok()) {
        out.assignment[j] = prob.centers[i];
        placed = true;
      } else {
        ++demand[i][h];
        ++supply[h][t];
        fixed[h] -= add;
      }
    }
    if (!placed)
      throw Infeasible("internal: welfare reconstruction failed");
  }
  return out;
}

// ---------------------------------------------------------------------------

struct SolveOutcome {
  Clustering clustering;
  double value = 0.0;
};

SolveOptions normalized(const SolveOptions& opts) {
  SolveOptions o = opts;
  if (o.budget_nodes <= 0) o.budget_nodes = SolveOptions{}.budget_nodes;
  if (o.tol < 0.0) throw InvalidParams("tolerance must be non-negative");
  o.threads = resolve_threads(o.threads);
  return o;
}

SolveOutcome solve_nearest_family(const Instance& inst, int k, Objective obj,
                                  const SfSpec* sf, const SolveOptions& opts,
                                  const Ticker& ticker) {
  if (sf && sf->p != 1 && sf->p != 2)
    throw InvalidParams("socially fair power must be 1 or 2");
  const auto sets = location_center_sets(inst, k);
  std::vector<std::optional<Candidate>> results(sets.size());
  run_over_sets(sets, opts.threads, [&](size_t i) {
    ticker.tick();
    const Clustering c = nearest_assignment(inst, sets[i]);
    const double v = sf ? sf_objective(inst, c, *sf) : nearest_value(inst, c, obj);
    results[i] = Candidate{v, sets[i]};
  });
  std::optional<Candidate> best;
  for (const auto& r : results)
    if (r && (!best || r->better_than(*best, opts.tol))) best = r;
  const Clustering c = nearest_assignment(inst, best->centers);
  return {c, best->order_value};
}

SolveOutcome solve_cm(const Instance& inst, int k, Objective obj,
                      const CmBounds& bounds, const SolveOptions& opts,
                      const Ticker& ticker) {
  if (inst.num_colors() > 4)
    throw BudgetExceeded("exact CM search handles at most 4 colors");
  const auto lu = bounds.aligned(inst);
  const auto stacks = make_stacks(inst, nullptr);
  const auto sets = location_center_sets(inst, k);
  std::vector<std::optional<Candidate>> results(sets.size());
  run_over_sets(sets, opts.threads, [&](size_t i) {
    const CmProblem prob(inst, sets[i], lu, obj, stacks);
    if (const auto v = cm_set_value(ticker, prob))
      results[i] = Candidate{*v, sets[i]};
  });
  std::optional<Candidate> best;
  for (const auto& r : results)
    if (r && (!best || r->better_than(*best, opts.tol))) best = r;
  if (!best)
    throw Infeasible("no clustering satisfies the representation bounds");
  const CmProblem prob(inst, best->centers, lu, obj, stacks);
  Clustering c = cm_canonical(ticker, prob, best->order_value, opts.tol);
  return {c, best->order_value};
}

SolveOutcome solve_eq(const Instance& inst, int k, Objective obj,
                      const EqSpec& eq, const SolveOptions& opts,
                      const Ticker& ticker) {
  if (!inst.has_similarity())
    throw MissingSimilaritySets("equitability needs similarity sets");
  if (eq.alpha < 1.0) throw InvalidParams("equitability requires alpha >= 1");
  const auto inv = similarity_inverse(inst);
  const auto sets = location_center_sets(inst, k);
  auto shared = std::make_shared<std::atomic<double>>(kInf);
  struct SetWin {
    Candidate cand;
    std::vector<int> assignment;
  };
  std::vector<std::optional<SetWin>> results(sets.size());
  run_over_sets(sets, opts.threads, [&](size_t i) {
    EqSearch search(inst, sets[i], eq.alpha, obj, ticker, inv, shared);
    search.dfs(0, 0.0);
    if (search.best.value < kInf) {
      std::vector<int> assignment(inst.n);
      for (int j = 0; j < inst.n; ++j)
        assignment[j] = sets[i][search.best.assignment[j]];
      results[i] = SetWin{Candidate{search.best.value, sets[i]}, assignment};
    }
  });
  std::optional<SetWin> best;
  for (const auto& r : results)
    if (r && (!best || r->cand.better_than(best->cand, opts.tol))) best = r;
  if (!best)
    throw Infeasible("no clustering satisfies the equitability constraint");
  Clustering c;
  c.centers = best->cand.centers;
  c.assignment = best->assignment;
  return {c, best->cand.order_value};
}

SolveOutcome solve_wc(const Instance& inst, int k, const UtilityModel& model,
                      const SolveOptions& opts, const Ticker& ticker) {
  if (inst.num_colors() > 4)
    throw BudgetExceeded("exact welfare search handles at most 4 colors");
  const auto sets = wc_center_sets(inst, k, model_needs_labels(model));
  auto shared = std::make_shared<std::atomic<double>>(-kInf);
  // Seed the shared incumbent with every set's nearest-assignment welfare so
  // uncompetitive sets prune at the root of their composition search.
  for (const auto& centers : sets) {
    ticker.tick();
    const double seed =
        welfare(model, inst, nearest_assignment(inst, centers)).min_group;
    if (seed > shared->load(std::memory_order_relaxed))
      shared->store(seed, std::memory_order_relaxed);
  }
  struct SetWin {
    Candidate cand;  // order_value = -welfare
    WcSetResult win;
  };
  std::vector<std::optional<SetWin>> results(sets.size());
  run_over_sets(sets, opts.threads, [&](size_t i) {
    const WcProblem prob(inst, model, sets[i]);
    const auto r = wc_best_for_set(ticker, prob, shared);
    if (r) results[i] = SetWin{Candidate{-r->value, sets[i]}, *r};
  });
  std::optional<SetWin> best;
  for (const auto& r : results)
    if (r && (!best || r->cand.better_than(best->cand, opts.tol))) best = r;
  if (!best) throw Infeasible("welfare search found no clustering");
  // Re-sweep the winning set for tied compositions and keep the smallest
  // reconstructed assignment.
  const WcProblem prob(inst, model, best->cand.centers);
  std::vector<WcSetResult> ties;
  wc_best_for_set(ticker, prob, shared, best->win.value - opts.tol, &ties);
  Clustering c = wc_reconstruct(ticker, prob, best->win);
  for (const auto& t : ties) {
    Clustering u = wc_reconstruct(ticker, prob, t);
    if (u.assignment < c.assignment) c = std::move(u);
  }
  return {c, best->win.value};
}

SolveReport finish_report(const Instance& inst, const SolveOutcome& out,
                          const Ticker& ticker,
                          std::chrono::steady_clock::time_point start) {
  SolveReport rep;
  rep.clustering = out.clustering;
  validate_clustering(inst, rep.clustering);
  rep.value = out.value;
  rep.optimal = true;
  rep.achieved_ratio = 1.0;
  rep.stats.nodes = ticker.total();
  rep.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                start)
          .count();
  return rep;
}

}  // namespace

SolveReport solve_exact(const Instance& inst, int k, Objective obj,
                        const SolveOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const SolveOptions o = normalized(opts);
  guard_shape(inst, k);
  Ticker ticker;
  ticker.budget = o.budget_nodes;
  auto out = solve_nearest_family(inst, k, obj, nullptr, o, ticker);
  out.value = evaluate_cost(inst, out.clustering, obj);
  return finish_report(inst, out, ticker, start);
}

SolveReport solve_fair(const Instance& inst, int k, Objective obj,
                       const Notion& notion, const SolveOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const SolveOptions o = normalized(opts);
  guard_shape(inst, k);
  Ticker ticker;
  ticker.budget = o.budget_nodes;
  SolveOutcome out;
  switch (notion.kind) {
    case NotionKind::agnostic:
      out = solve_nearest_family(inst, k, obj, nullptr, o, ticker);
      out.value = evaluate_cost(inst, out.clustering, obj);
      break;
    case NotionKind::sf:
      out = solve_nearest_family(inst, k, obj, &notion.sf, o, ticker);
      out.value = sf_objective(inst, out.clustering, notion.sf);
      break;
    case NotionKind::cm:
      out = solve_cm(inst, k, obj, notion.cm, o, ticker);
      out.value = evaluate_cost(inst, out.clustering, obj);
      break;
    case NotionKind::eq:
      out = solve_eq(inst, k, obj, notion.eq, o, ticker);
      out.value = evaluate_cost(inst, out.clustering, obj);
      break;
    case NotionKind::wc:
      throw InvalidParams(
          "welfare-centric solving needs a utility model; call "
          "solve_welfare_centric");
  }
  return finish_report(inst, out, ticker, start);
}

SolveReport solve_welfare_centric(const Instance& inst, int k,
                                  const UtilityModel& model,
                                  const SolveOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const SolveOptions o = normalized(opts);
  guard_shape(inst, k);
  Ticker ticker;
  ticker.budget = o.budget_nodes;
  auto out = solve_wc(inst, k, model, o, ticker);
  out.value = welfare(model, inst, out.clustering).min_group;
  return finish_report(inst, out, ticker, start);
}

Clustering optimal_assignment(const Instance& inst, std::vector<int> centers,
                              Objective obj, const Notion& notion,
                              const SolveOptions& opts) {
  const SolveOptions o = normalized(opts);
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  if (centers.empty()) throw InvalidParams("optimal_assignment needs centers");
  for (int s : centers)
    if (s < 0 || s >= inst.n) throw InvalidParams("center id out of range");
  Ticker ticker;
  ticker.budget = o.budget_nodes;
  switch (notion.kind) {
    case NotionKind::agnostic:
    case NotionKind::sf:
      return nearest_assignment(inst, centers);
    case NotionKind::cm: {
      if (inst.num_colors() > 4)
        throw BudgetExceeded("exact CM search handles at most 4 colors");
      const auto stacks = make_stacks(inst, nullptr);
      const CmProblem prob(inst, centers, notion.cm.aligned(inst), obj, stacks);
      const auto v = cm_set_value(ticker, prob);
      if (!v)
        throw Infeasible(
            "no assignment to these centers satisfies the representation "
            "bounds");
      return cm_canonical(ticker, prob, *v, o.tol);
    }
    case NotionKind::eq: {
      if (!inst.has_similarity())
        throw MissingSimilaritySets("equitability needs similarity sets");
      if (notion.eq.alpha < 1.0)
        throw InvalidParams("equitability requires alpha >= 1");
      const auto inv = similarity_inverse(inst);
      EqSearch search(inst, centers, notion.eq.alpha, obj, ticker, inv, nullptr);
      search.dfs(0, 0.0);
      if (search.best.value == kInf)
        throw Infeasible(
            "no assignment to these centers satisfies the equitability "
            "constraint");
      Clustering c;
      c.centers = centers;
      c.assignment.resize(inst.n);
      for (int j = 0; j < inst.n; ++j)
        c.assignment[j] = centers[search.best.assignment[j]];
      return c;
    }
    case NotionKind::wc:
      throw InvalidParams(
          "welfare-centric assignment needs a utility model; call "
          "solve_welfare_centric");
  }
  throw InvalidParams("unknown notion");
}

std::vector<Clustering> enumerate_optima(const Instance& inst, int k,
                                         Objective obj, const Notion& notion,
                                         double tol, std::size_t cap,
                                         const SolveOptions& opts) {
  if (tol < 0.0) throw InvalidParams("tolerance must be non-negative");
  if (cap == 0) return {};
  const SolveOptions o = normalized(opts);
  guard_shape(inst, k);
  if (notion.kind == NotionKind::wc)
    throw InvalidParams("enumerate_optima supports agnostic, cm, sf and eq");

  const SolveReport best = solve_fair(inst, k, obj, notion, o);
  const double limit = best.value + tol;
  Ticker ticker;
  ticker.budget = o.budget_nodes;

  std::vector<std::pair<double, Clustering>> found;
  const auto sets = location_center_sets(inst, k);
  if (notion.kind == NotionKind::agnostic || notion.kind == NotionKind::sf) {
    for (const auto& centers : sets) {
      ticker.tick();
      const Clustering c = nearest_assignment(inst, centers);
      const double v = notion.kind == NotionKind::sf
                           ? sf_objective(inst, c, notion.sf)
                           : nearest_value(inst, c, obj);
      if (v <= limit) found.push_back({v, c});
    }
  } else if (notion.kind == NotionKind::cm) {
    const auto lu = notion.cm.aligned(inst);
    const auto stacks = make_stacks(inst, nullptr);
    for (const auto& centers : sets) {
      const CmProblem prob(inst, centers, lu, obj, stacks);
      if (obj == Objective::k_center) {
        const auto r = cm_set_value(ticker, prob);
        if (!r || *r > limit) continue;
        prob.for_each_composition(ticker, [&](const auto& counts) {
          if (found.size() >= cap * 4) return;
          if (!prob.composition_feasible_at(ticker, counts, *r)) return;
          found.push_back({*r, cm_reconstruct(ticker, prob, counts, *r)});
        });
      } else {
        prob.for_each_composition(ticker, [&](const auto& counts) {
          if (found.size() >= cap * 4) return;
          const double c = prob.composition_cost(ticker, counts);
          if (c <= limit)
            found.push_back({c, cm_reconstruct(ticker, prob, counts, c)});
        });
      }
    }
  } else {  // eq
    const auto inv = similarity_inverse(inst);
    for (const auto& centers : sets) {
      EqSearch search(inst, centers, notion.eq.alpha, obj, ticker, inv, nullptr);
      std::vector<EqSetResult> collected;
      search.collect_limit = limit;
      search.collected = &collected;
      search.cap = cap * 4;
      search.dfs(0, 0.0);
      for (const auto& r : collected) {
        Clustering c;
        c.centers = centers;
        c.assignment.resize(inst.n);
        for (int j = 0; j < inst.n; ++j)
          c.assignment[j] = centers[r.assignment[j]];
        found.push_back({r.value, c});
      }
    }
  }

  std::sort(found.begin(), found.end(),
            [&](const auto& a, const auto& b) {
              if (a.second == b.second) return false;
              return canonical_less(a.first, a.second, b.first, b.second, o.tol);
            });
  std::vector<Clustering> out;
  for (const auto& [v, c] : found) {
    (void)v;
    if (!out.empty() && std::find(out.begin(), out.end(), c) != out.end())
      continue;
    out.push_back(c);
    if (out.size() >= cap) break;
  }
  return out;
}

}  // namespace fairclust
