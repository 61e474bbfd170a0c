#pragma once

// Collapse dynamics of the quantum dyad.
//
// Ensemble level:   d rho/dt = -i[H, rho] - (lambda/2) [A, [A, rho]]
// Trajectory level: d psi = [-i H dt + sqrt(lambda) (A - <A>) dW
//                            - (lambda/2) (A - <A>)^2 dt] psi
//
// A is diagonal in the computational basis, so the double commutator acts
// entrywise: [A, [A, rho]]_ik = (a_i - a_k)^2 rho_ik.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dyad/density.hpp"
#include "dyad/optimizer.hpp"

namespace dyad {

class CollapseOperator {
 public:
  CollapseOperator() = default;
  /// Eigenvalues in state order; throws kInvalidArgument if any is not finite.
  explicit CollapseOperator(const std::array<double, 4>& eigenvalues);

  const std::array<double, 4>& eigenvalues() const { return eigenvalues_; }
  double operator[](int i) const { return eigenvalues_[i]; }
  Matrix4c matrix() const;

 private:
  std::array<double, 4> eigenvalues_{};
};

CollapseOperator build_collapse_operator(const EigenAssignment& assignment);

/// Drift in trace or Hermiticity beyond this raises kStepTooLarge.
inline constexpr double kDriftTolerance = 1e-6;

/// (pi/2)(I - SWAP); exp(-iH) is the SWAP gate.
Matrix4c swap_hamiltonian();

/// Fixed-step RK4 from 0 to t. Throws kInvalidArgument for dt <= 0, t < 0 or
/// non-Hermitian H, and kStepTooLarge when the integration drifts.
DensityMatrix4 lindblad_evolve(const DensityMatrix4& rho0, const Matrix4c& hamiltonian, const CollapseOperator& op,
                               double lambda, double t, double dt);

/// As lindblad_evolve, returning the state at each of the (increasing)
/// sample times.
std::vector<DensityMatrix4> lindblad_path(const DensityMatrix4& rho0, const Matrix4c& hamiltonian,
                                          const CollapseOperator& op, double lambda,
                                          std::span<const double> sample_times, double dt);

/// Analytic damping exponent of rho_ik when H = 0: (lambda/2)(a_i - a_k)^2.
double coherence_decay_rate(const CollapseOperator& op, double lambda, DyadState i, DyadState k);

struct SdeOptions {
  double lambda = 1.0;
  double dt = 1e-4;
  double horizon = 1.0;
  /// Times to record; snapped to the step grid. Empty means {0, horizon}.
  std::vector<double> sample_times;
  /// Max population needed to call a trajectory collapsed.
  double collapse_threshold = 0.99;
  /// End the trajectory (and record its state) at the first collapsed step.
  bool stop_on_collapse = false;
};

struct TrajectoryRecord {
  std::uint64_t seed = 0;
  std::vector<double> times;
  std::vector<PureState4> states;
  /// Basis state whose population reached the threshold in the last
  /// recorded state.
  std::optional<DyadState> outcome;
};

/// Euler-Maruyama with renormalization after each step. Bitwise reproducible
/// for fixed (seed, options).
TrajectoryRecord sde_trajectory(const PureState4& psi0, const Matrix4c& hamiltonian, const CollapseOperator& op,
                                const SdeOptions& options, std::uint64_t seed);

/// Seed of trajectory `index` derived from a master seed; independent of how
/// many trajectories are run.
std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index);

/// Runs `count` trajectories on up to `threads` workers (0 = hardware
/// concurrency). Result i always uses trajectory_seed(master_seed, i).
std::vector<TrajectoryRecord> run_ensemble(const PureState4& psi0, const Matrix4c& hamiltonian,
                                           const CollapseOperator& op, const SdeOptions& options,
                                           std::uint64_t master_seed, std::size_t count, unsigned threads = 0);

/// Mean of |psi><psi| at time `at`. Throws kGridMismatch if the records do
/// not share a time grid containing `at`.
DensityMatrix4 ensemble_average(std::span<const TrajectoryRecord> trajectories, double at);

/// Outcome counts indexed by state, plus uncollapsed trajectories at [4].
std::array<std::size_t, 5> outcome_counts(std::span<const TrajectoryRecord> trajectories);

/// (|00> + |10>)/sqrt(2), the dyad's state after one SWAP of |0,+>.
PureState4 prepare_dyad_superposition();

/// |0,+> = (|00> + |01>)/sqrt(2).
PureState4 prepare_input_state();

/// Equal superposition of two distinct basis states.
PureState4 pair_superposition(DyadState i, DyadState k);

}  // namespace dyad
