#pragma once

#include <optional>
#include <vector>

namespace fairclust {

struct TransportResult {
  double cost = 0.0;
  std::vector<std::vector<int>> flow;  // supply index x demand index
};

// Minimum-cost transportation: ship supply[i] units from each source to meet
// demand[j] at each sink, paying cost[i][j] per unit.  Edges with infinite
// cost are forbidden.  Returns nullopt when demands cannot be met (forbidden
// edges or mismatched totals).  Deterministic for fixed inputs.
std::optional<TransportResult> solve_transport(
    const std::vector<std::vector<double>>& cost,
    const std::vector<int>& supply, const std::vector<int>& demand);

// Same network, maximizing total gain instead (gains may be negative).
std::optional<TransportResult> solve_transport_max(
    const std::vector<std::vector<double>>& gain,
    const std::vector<int>& supply, const std::vector<int>& demand);

}  // namespace fairclust
