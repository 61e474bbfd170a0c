#include "dyad/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dyad/error.hpp"

namespace dyad {

namespace {

bool nearly_equal(const EigenAssignment& x, const EigenAssignment& y) {
  for (int i = 0; i < 4; ++i) {
    if (std::abs(x[i] - y[i]) > kOptimizerTolerance) return false;
  }
  return true;
}

// Keeps the candidates of least sum, sorted and deduplicated.
OptimizationResult collect(std::vector<EigenAssignment> candidates) {
  if (candidates.empty()) throw Error(ErrorCode::kInfeasibleTable, "no feasible eigenvalue assignment");
  double best = candidates.front().sum();
  for (const auto& c : candidates) best = std::min(best, c.sum());
  std::erase_if(candidates, [&](const EigenAssignment& c) { return c.sum() > best + kOptimizerTolerance; });
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end(), nearly_equal), candidates.end());

  OptimizationResult result;
  result.optimal_sum = best;
  result.minimizers = std::move(candidates);
  for (const auto& m : result.minimizers) result.pairwise_rate_sums.push_back(pairwise_rate_sum(m));
  return result;
}

}  // namespace

bool feasible(const EigenAssignment& assignment, const DistanceTable& table, double tol) {
  for (int i = 0; i < 4; ++i) {
    if (assignment[i] < -tol) return false;
    for (int j = i + 1; j < 4; ++j) {
      if (std::abs(assignment[i] - assignment[j]) < table.at(i, j) - tol) return false;
    }
  }
  return true;
}

OptimizationResult solve(const DistanceTable& table) {
  std::array<int, 4> order{0, 1, 2, 3};
  std::vector<EigenAssignment> candidates;
  do {
    EigenAssignment x;
    double floor = 0.0;
    for (int k = 0; k < 4; ++k) {
      double v = floor;
      for (int j = 0; j < k; ++j) v = std::max(v, x[order[j]] + table.at(order[j], order[k]));
      x.lambda[order[k]] = v;
      floor = v;
    }
    if (feasible(x, table)) candidates.push_back(x);
  } while (std::next_permutation(order.begin(), order.end()));
  return collect(std::move(candidates));
}

double pairwise_rate_sum(const EigenAssignment& assignment) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) s += std::abs(assignment[i] - assignment[j]);
  return s;
}

OptimizationResult grid_oracle(const DistanceTable& table, double granularity, double bound) {
  if (!(granularity > 0.0) || !(bound >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "grid oracle needs granularity > 0 and bound >= 0");
  }
  const int steps = static_cast<int>(std::floor(bound / granularity + 1e-9));
  std::vector<EigenAssignment> candidates;
  double best = std::numeric_limits<double>::infinity();
  std::array<int, 4> k{};
  for (k[0] = 0; k[0] <= steps; ++k[0])
    for (k[1] = 0; k[1] <= steps; ++k[1])
      for (k[2] = 0; k[2] <= steps; ++k[2])
        for (k[3] = 0; k[3] <= steps; ++k[3]) {
          if (*std::min_element(k.begin(), k.end()) != 0) continue;
          EigenAssignment x{{k[0] * granularity, k[1] * granularity, k[2] * granularity, k[3] * granularity}};
          if (!feasible(x, table)) continue;
          double s = x.sum();
          if (s > best + kOptimizerTolerance) continue;
          if (s < best - kOptimizerTolerance) {
            candidates.clear();
            best = s;
          }
          candidates.push_back(x);
        }
  return collect(std::move(candidates));
}

}  // namespace dyad
