#pragma once

// Collapse-operator eigenvalues from Q-shape distances:
//
//   minimize  sum of lambda_s
//   subject to lambda_s >= 0 and |lambda_s - lambda_t| >= D(s, t) for s != t.
//
// The gap constraints are disjunctive, so the feasible set is a union of
// polyhedra, one per ordering of the eigenvalues.

#include <array>
#include <compare>
#include <vector>

#include "dyad/qshape.hpp"

namespace dyad {

/// Absolute tolerance for constraint checks and for comparing sums.
inline constexpr double kOptimizerTolerance = 1e-9;

struct EigenAssignment {
  /// lambda_00, lambda_01, lambda_10, lambda_11.
  std::array<double, 4> lambda{};

  double operator[](int i) const { return lambda[i]; }
  double operator[](DyadState s) const { return lambda[s.index()]; }
  double sum() const { return lambda[0] + lambda[1] + lambda[2] + lambda[3]; }

  auto operator<=>(const EigenAssignment&) const = default;
};

struct OptimizationResult {
  /// Sorted lexicographically, duplicates removed.
  std::vector<EigenAssignment> minimizers;
  double optimal_sum = 0.0;
  /// One entry per minimizer.
  std::vector<double> pairwise_rate_sums;

  /// The default pick when a single collapse operator is needed.
  const EigenAssignment& preferred() const { return minimizers.front(); }
};

bool feasible(const EigenAssignment& assignment, const DistanceTable& table,
              double tol = kOptimizerTolerance);

/// Exact minimizer set. Every one of the 24 orderings is completed greedily
/// (first value 0, each next value the smallest one clearing all gaps to the
/// values already placed); that completion is the componentwise-least point
/// of the ordering's polyhedron, hence its unique minimizer.
OptimizationResult solve(const DistanceTable& table);

/// Sum of |lambda_s - lambda_t| over the six unordered pairs.
double pairwise_rate_sum(const EigenAssignment& assignment);

/// Brute force over {0, g, 2g, ..., bound}^4 restricted to points with a zero
/// coordinate. Requires granularity > 0 and bound >= 0.
OptimizationResult grid_oracle(const DistanceTable& table, double granularity, double bound);

}  // namespace dyad
