#include "fairclust/transport.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

namespace fairclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Small dense successive-shortest-path min-cost flow.  SPFA tolerates the
// negative arc costs that show up when maximizing gains.
struct McmF {
  struct Edge {
    int to;
    int cap;
    double cost;
    int rev;
  };
  std::vector<std::vector<Edge>> g;

  explicit McmF(int nodes) : g(nodes) {}

  void add_edge(int a, int b, int cap, double cost) {
    g[a].push_back({b, cap, cost, static_cast<int>(g[b].size())});
    g[b].push_back({a, 0, -cost, static_cast<int>(g[a].size()) - 1});
  }

  // Returns total shipped and accumulated cost.
  std::pair<int, double> run(int s, int t) {
    int shipped = 0;
    double total = 0.0;
    const int n = static_cast<int>(g.size());
    while (true) {
      std::vector<double> dist(n, kInf);
      std::vector<int> pv(n, -1), pe(n, -1);
      std::vector<char> inq(n, 0);
      std::deque<int> q;
      dist[s] = 0.0;
      q.push_back(s);
      while (!q.empty()) {
        const int v = q.front();
        q.pop_front();
        inq[v] = 0;
        for (size_t i = 0; i < g[v].size(); ++i) {
          const Edge& e = g[v][i];
          if (e.cap <= 0 || dist[v] + e.cost >= dist[e.to] - 1e-12) continue;
          dist[e.to] = dist[v] + e.cost;
          pv[e.to] = v;
          pe[e.to] = static_cast<int>(i);
          if (!inq[e.to]) {
            inq[e.to] = 1;
            q.push_back(e.to);
          }
        }
      }
      if (dist[t] == kInf) break;
      int push = std::numeric_limits<int>::max();
      for (int v = t; v != s; v = pv[v])
        push = std::min(push, g[pv[v]][pe[v]].cap);
      for (int v = t; v != s; v = pv[v]) {
        Edge& e = g[pv[v]][pe[v]];
        e.cap -= push;
        g[v][e.rev].cap += push;
      }
      shipped += push;
      total += push * dist[t];
    }
    return {shipped, total};
  }
};

}  // namespace

std::optional<TransportResult> solve_transport(
    const std::vector<std::vector<double>>& cost,
    const std::vector<int>& supply, const std::vector<int>& demand) {
  const int ns = static_cast<int>(supply.size());
  const int nd = static_cast<int>(demand.size());
  const int total_supply = std::accumulate(supply.begin(), supply.end(), 0);
  const int total_demand = std::accumulate(demand.begin(), demand.end(), 0);
  if (total_supply != total_demand) return std::nullopt;

  const int src = ns + nd, snk = ns + nd + 1;
  McmF net(ns + nd + 2);
  for (int i = 0; i < ns; ++i)
    if (supply[i] > 0) net.add_edge(src, i, supply[i], 0.0);
  for (int j = 0; j < nd; ++j)
    if (demand[j] > 0) net.add_edge(ns + j, snk, demand[j], 0.0);
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < nd; ++j)
      if (supply[i] > 0 && demand[j] > 0 && std::isfinite(cost[i][j]))
        net.add_edge(i, ns + j, supply[i], cost[i][j]);

  const auto [shipped, total] = net.run(src, snk);
  if (shipped != total_supply) return std::nullopt;

  TransportResult res;
  res.cost = total;
  res.flow.assign(ns, std::vector<int>(nd, 0));
  for (int i = 0; i < ns; ++i)
    for (const auto& e : net.g[i])
      if (e.to >= ns && e.to < ns + nd) {
        // Residual of the reverse arc is the amount shipped on this edge.
        const int used = net.g[e.to][e.rev].cap;
        res.flow[i][e.to - ns] += used;
      }
  return res;
}

std::optional<TransportResult> solve_transport_max(
    const std::vector<std::vector<double>>& gain,
    const std::vector<int>& supply, const std::vector<int>& demand) {
  std::vector<std::vector<double>> cost(gain.size());
  for (size_t i = 0; i < gain.size(); ++i) {
    cost[i].resize(gain[i].size());
    for (size_t j = 0; j < gain[i].size(); ++j)
      cost[i][j] = std::isfinite(gain[i][j]) ? -gain[i][j] : kInf;
  }
  auto res = solve_transport(cost, supply, demand);
  if (res) res->cost = -res->cost;
  return res;
}

}  // namespace fairclust
