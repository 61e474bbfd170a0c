#include "dyad/qdyn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <thread>

#include "dyad/error.hpp"

namespace dyad {

namespace {

void check_step(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
}

void check_hamiltonian(const Matrix4c& h) {
  if (!h.allFinite() || hermiticity_defect(h) > kHermitianTolerance) {
    throw Error(ErrorCode::kInvalidArgument, "Hamiltonian must be Hermitian");
  }
}

struct LindbladRhs {
  const Matrix4c& h;
  bool has_h;
  Eigen::Matrix4d damping;  // (lambda/2)(a_i - a_k)^2

  Matrix4c operator()(const Matrix4c& rho) const {
    Matrix4c out = -rho.cwiseProduct(damping.cast<Complex>());
    if (has_h) out += Complex(0.0, -1.0) * (h * rho - rho * h);
    return out;
  }
};

void check_drift(const Matrix4c& rho, double time) {
  double trace_drift = std::abs(rho.trace() - 1.0);
  double herm = hermiticity_defect(rho);
  if (!rho.allFinite() || trace_drift > kDriftTolerance || herm > kDriftTolerance) {
    throw Error(ErrorCode::kStepTooLarge,
                "integration drifted at t=" + std::to_string(time) + "; reduce dt");
  }
}

DensityMatrix4 checked_state(const Matrix4c& rho, double time) {
  try {
    return DensityMatrix4(rho, kDriftTolerance, kDriftTolerance, kPsdTolerance);
  } catch (const Error&) {
    throw Error(ErrorCode::kStepTooLarge, "state left the density-matrix set at t=" + std::to_string(time) +
                                              "; reduce dt");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::optional<DyadState> collapsed_to(const Vector4c& psi, double threshold) {
  for (int i = 0; i < 4; ++i) {
    if (std::norm(psi[i]) >= threshold) return kAllStates[i];
  }
  return std::nullopt;
}

}  // namespace

CollapseOperator::CollapseOperator(const std::array<double, 4>& eigenvalues) : eigenvalues_(eigenvalues) {
  for (double a : eigenvalues_) {
    if (!std::isfinite(a)) throw Error(ErrorCode::kInvalidArgument, "collapse eigenvalues must be finite");
  }
}

Matrix4c CollapseOperator::matrix() const {
  Matrix4c m = Matrix4c::Zero();
  for (int i = 0; i < 4; ++i) m(i, i) = eigenvalues_[i];
  return m;
}

CollapseOperator build_collapse_operator(const EigenAssignment& assignment) {
  for (double x : assignment.lambda) {
    if (!(x >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "eigenvalues must be non-negative");
  }
  return CollapseOperator(assignment.lambda);
}

Matrix4c swap_hamiltonian() {
  return (std::numbers::pi / 2.0) * (Matrix4c::Identity() - swap_unitary());
}

std::vector<DensityMatrix4> lindblad_path(const DensityMatrix4& rho0, const Matrix4c& hamiltonian,
                                          const CollapseOperator& op, double lambda,
                                          std::span<const double> sample_times, double dt) {
  check_step(dt);
  check_hamiltonian(hamiltonian);
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw Error(ErrorCode::kInvalidArgument, "lambda must be >= 0");
  double last = 0.0;
  for (double t : sample_times) {
    if (!(t >= last) || !std::isfinite(t)) {
      throw Error(ErrorCode::kInvalidArgument, "sample times must be non-negative and increasing");
    }
    last = t;
  }

  LindbladRhs rhs{hamiltonian, !hamiltonian.isZero(0.0), Eigen::Matrix4d::Zero()};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) rhs.damping(i, k) = 0.5 * lambda * (op[i] - op[k]) * (op[i] - op[k]);

  auto rk4 = [&](const Matrix4c& rho, double h) {
    Matrix4c k1 = rhs(rho);
    Matrix4c k2 = rhs(rho + (0.5 * h) * k1);
    Matrix4c k3 = rhs(rho + (0.5 * h) * k2);
    Matrix4c k4 = rhs(rho + h * k3);
    return Matrix4c(rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  };

  std::vector<DensityMatrix4> out;
  out.reserve(sample_times.size());
  Matrix4c rho = rho0.matrix();
  double now = 0.0;
  for (double target : sample_times) {
    // Whole steps while they fit, then one short step onto the sample time.
    auto whole = static_cast<long long>(std::floor((target - now) / dt * (1.0 + 1e-12)));
    for (long long n = 0; n < whole; ++n) {
      rho = rk4(rho, dt);
      check_drift(rho, now + static_cast<double>(n + 1) * dt);
    }
    now += static_cast<double>(whole) * dt;
    double rest = target - now;
    if (rest > 1e-12 * dt) {
      rho = rk4(rho, rest);
      check_drift(rho, target);
    }
    now = target;
    out.push_back(checked_state(rho, target));
  }
  return out;
}

DensityMatrix4 lindblad_evolve(const DensityMatrix4& rho0, const Matrix4c& hamiltonian, const CollapseOperator& op,
                               double lambda, double t, double dt) {
  if (!(t >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "t must be >= 0");
  const double times[] = {t};
  return lindblad_path(rho0, hamiltonian, op, lambda, times, dt).front();
}

double coherence_decay_rate(const CollapseOperator& op, double lambda, DyadState i, DyadState k) {
  if (i == k) throw Error(ErrorCode::kInvalidArgument, "coherence needs two distinct states");
  double gap = op[i.index()] - op[k.index()];
  return 0.5 * lambda * gap * gap;
}

TrajectoryRecord sde_trajectory(const PureState4& psi0, const Matrix4c& hamiltonian, const CollapseOperator& op,
                                const SdeOptions& options, std::uint64_t seed) {
  check_step(options.dt);
  check_hamiltonian(hamiltonian);
  if (!(options.horizon >= 0.0) || !(options.lambda >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "horizon and lambda must be >= 0");
  }
  const auto steps = static_cast<long long>(std::llround(options.horizon / options.dt));

  std::vector<long long> sample_steps;
  if (options.sample_times.empty()) {
    sample_steps = {0, steps};
  } else {
    for (double t : options.sample_times) {
      long long s = std::llround(t / options.dt);
      if (s < 0 || s > steps) throw Error(ErrorCode::kInvalidArgument, "sample time outside [0, horizon]");
      if (!sample_steps.empty() && s <= sample_steps.back()) {
        throw Error(ErrorCode::kInvalidArgument, "sample times must map to increasing steps");
      }
      sample_steps.push_back(s);
    }
  }

  TrajectoryRecord rec;
  rec.seed = seed;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  const bool has_h = !hamiltonian.isZero(0.0);
  const double sqrt_lambda = std::sqrt(options.lambda);
  const double sqrt_dt = std::sqrt(options.dt);
  const double half_lambda_dt = 0.5 * options.lambda * options.dt;
  const Complex minus_i_dt(0.0, -options.dt);
  const auto& a = op.eigenvalues();

  Vector4c psi = psi0.amplitudes();
  std::size_t next_sample = 0;
  auto record = [&](long long step) {
    rec.times.push_back(static_cast<double>(step) * options.dt);
    rec.states.emplace_back(psi, 1e-8);
  };

  for (long long step = 0;; ++step) {
    if (next_sample < sample_steps.size() && sample_steps[next_sample] == step) {
      record(step);
      ++next_sample;
    }
    if (options.stop_on_collapse && collapsed_to(psi, options.collapse_threshold)) {
      if (rec.times.empty() || rec.times.back() != static_cast<double>(step) * options.dt) record(step);
      break;
    }
    if (step == steps) break;

    double mean = 0.0;
    for (int i = 0; i < 4; ++i) mean += std::norm(psi[i]) * a[i];
    const double dw = sqrt_dt * normal(rng);
    Vector4c next = psi;
    if (has_h) next += minus_i_dt * (hamiltonian * psi);
    for (int i = 0; i < 4; ++i) {
      double c = a[i] - mean;
      next[i] += (sqrt_lambda * c * dw - half_lambda_dt * c * c) * psi[i];
    }
    psi = next / next.norm();
  }
  rec.outcome = collapsed_to(rec.states.back().amplitudes(), options.collapse_threshold);
  return rec;
}

std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(splitmix64(master_seed) ^ (index * 0xd1342543de82ef95ULL + 1));
}

std::vector<TrajectoryRecord> run_ensemble(const PureState4& psi0, const Matrix4c& hamiltonian,
                                           const CollapseOperator& op, const SdeOptions& options,
                                           std::uint64_t master_seed, std::size_t count, unsigned threads) {
  if (count == 0) throw Error(ErrorCode::kInvalidArgument, "need at least one trajectory");
  // Fail fast on bad options before spawning workers.
  check_step(options.dt);
  check_hamiltonian(hamiltonian);

  std::vector<TrajectoryRecord> out(count);
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));

  auto run_slice = [&](unsigned w) {
    for (std::size_t i = w; i < count; i += workers) {
      out[i] = sde_trajectory(psi0, hamiltonian, op, options, trajectory_seed(master_seed, i));
    }
  };
  if (workers == 1) {
    run_slice(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_slice, w);
  }
  return out;
}

DensityMatrix4 ensemble_average(std::span<const TrajectoryRecord> trajectories, double at) {
  if (trajectories.empty()) throw Error(ErrorCode::kInvalidArgument, "no trajectories to average");
  const auto& grid = trajectories.front().times;
  auto it = std::find_if(grid.begin(), grid.end(),
                         [&](double t) { return std::abs(t - at) <= 1e-12 * std::max(1.0, std::abs(at)); });
  if (it == grid.end()) throw Error(ErrorCode::kGridMismatch, "time " + std::to_string(at) + " not on the sample grid");
  const auto slot = static_cast<std::size_t>(it - grid.begin());

  Matrix4c sum = Matrix4c::Zero();
  for (const auto& rec : trajectories) {
    if (rec.times != grid) throw Error(ErrorCode::kGridMismatch, "trajectories have different sample grids");
    sum += rec.states[slot].projector();
  }
  sum /= static_cast<double>(trajectories.size());
  return DensityMatrix4(sum, 1e-9, 1e-9, kPsdTolerance);
}

std::array<std::size_t, 5> outcome_counts(std::span<const TrajectoryRecord> trajectories) {
  std::array<std::size_t, 5> counts{};
  for (const auto& rec : trajectories) ++counts[rec.outcome ? rec.outcome->index() : 4];
  return counts;
}

PureState4 prepare_dyad_superposition() { return pair_superposition(DyadState{0, 0}, DyadState{1, 0}); }

PureState4 prepare_input_state() { return pair_superposition(DyadState{0, 0}, DyadState{0, 1}); }

PureState4 pair_superposition(DyadState i, DyadState k) {
  if (i == k) throw Error(ErrorCode::kInvalidArgument, "superposition needs two distinct states");
  Vector4c v = Vector4c::Zero();
  v[i.index()] = std::numbers::sqrt2 / 2.0;
  v[k.index()] = std::numbers::sqrt2 / 2.0;
  return PureState4(v);
}

}  // namespace dyad
