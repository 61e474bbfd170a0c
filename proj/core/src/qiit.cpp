#include "dyad/qiit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "dyad/error.hpp"

namespace dyad {

namespace {

constexpr double kStateTolerance = 1e-10;

Matrix2c half_identity() { return Matrix2c::Identity() * 0.5; }

// Per-eigenvector terms p_i (log2 p_i - sum_j P_ij log2 q_j).
std::vector<double> qid_terms(const SpectralEnsemble& rho, const SpectralEnsemble& sigma) {
  if (rho.states.rows() != sigma.states.rows()) {
    throw Error(ErrorCode::kInvalidArgument, "operators act on different dimensions");
  }
  std::vector<double> terms;
  for (std::size_t i = 0; i < rho.weights.size(); ++i) {
    double p = rho.weights[i];
    if (p <= 0.0) {
      terms.push_back(0.0);
      continue;
    }
    double cross = 0.0;
    for (std::size_t j = 0; j < sigma.weights.size(); ++j) {
      double overlap = std::norm(rho.states.col(static_cast<Eigen::Index>(i))
                                     .dot(sigma.states.col(static_cast<Eigen::Index>(j))));
      if (overlap <= kSpectralCutoff) continue;
      if (sigma.weights[j] <= 0.0) {
        throw Error(ErrorCode::kInfiniteDivergence, "rho is not supported within sigma");
      }
      cross += overlap * std::log2(sigma.weights[j]);
    }
    terms.push_back(p * (std::log2(p) - cross));
  }
  return terms;
}

void require_unitary(const Matrix4c& u) {
  if (!u.allFinite() || ((u * u.adjoint()) - Matrix4c::Identity()).cwiseAbs().maxCoeff() > kStateTolerance) {
    throw Error(ErrorCode::kNotUnitary, "operator is not unitary");
  }
}

bool is_pure(const Matrix2c& m) { return std::abs((m * m).trace().real() - 1.0) <= kStateTolerance; }

bool is_maximally_mixed(const Matrix2c& m) { return (m - half_identity()).cwiseAbs().maxCoeff() <= kStateTolerance; }

// Reduced states of a supported product state, or kUnsupportedState.
std::array<Matrix2c, 2> supported_factors(const DensityMatrix4& state) {
  Matrix2c a = state.reduced(Unit::kA);
  Matrix2c b = state.reduced(Unit::kB);
  if ((kron(a, b) - state.matrix()).cwiseAbs().maxCoeff() > kStateTolerance) {
    throw Error(ErrorCode::kUnsupportedState, "only product states of the two units are supported");
  }
  for (const Matrix2c* f : {&a, &b}) {
    if (!is_pure(*f) && !is_maximally_mixed(*f)) {
      throw Error(ErrorCode::kUnsupportedState, "each unit must be pure or maximally mixed");
    }
  }
  return {a, b};
}

Matrix4c place(Unit unit, const Matrix2c& unit_state, const Matrix2c& other_state) {
  return unit == Unit::kA ? kron(unit_state, other_state) : kron(other_state, unit_state);
}

Matrix2c reduce(const Matrix4c& m, Unit keep) {
  return DensityMatrix4(m, 1e-9, 1e-9, 1e-8).reduced(keep);
}

}  // namespace

QubitDensity::QubitDensity(const Matrix2c& m) : m_(m) {
  if (!m_.allFinite() || hermiticity_defect(m_) > kStateTolerance ||
      std::abs(m_.trace() - Complex(1.0)) > kStateTolerance) {
    throw Error(ErrorCode::kInvalidArgument, "not a qubit density matrix");
  }
  Eigen::SelfAdjointEigenSolver<Matrix2c> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kStateTolerance) {
    throw Error(ErrorCode::kInvalidArgument, "qubit density matrix is not positive semidefinite");
  }
}

QubitDensity QubitDensity::maximally_mixed() { return QubitDensity(half_identity()); }

QubitDensity QubitDensity::pure(Complex c0, Complex c1) {
  Eigen::Matrix<Complex, 2, 1> v(c0, c1);
  double n = v.norm();
  if (!(n > 0.0)) throw Error(ErrorCode::kInvalidArgument, "zero amplitude vector");
  v /= n;
  return QubitDensity(v * v.adjoint());
}

double QubitDensity::purity() const { return (m_ * m_).trace().real(); }

SpectralEnsemble SpectralEnsemble::of(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != rho.cols() || hermiticity_defect(rho) > kStateTolerance) {
    throw Error(ErrorCode::kInvalidArgument, "spectral ensemble needs a Hermitian matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho + rho.adjoint()));
  SpectralEnsemble out;
  out.states = es.eigenvectors();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double w = es.eigenvalues()[i];
    out.weights.push_back(w < kSpectralCutoff ? 0.0 : w);
  }
  return out;
}

Eigen::MatrixXcd SpectralEnsemble::reconstruct() const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(states.rows(), states.rows());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    auto v = states.col(static_cast<Eigen::Index>(i));
    out += weights[i] * v * v.adjoint();
  }
  return out;
}

DensityMatrix4 unitary_step(const DensityMatrix4& rho, const Matrix4c& unitary) {
  require_unitary(unitary);
  Matrix4c out = unitary * rho.matrix() * unitary.adjoint();
  return DensityMatrix4(0.5 * (out + out.adjoint()));
}

double quantum_relative_entropy(const SpectralEnsemble& rho, const SpectralEnsemble& sigma) {
  double s = 0.0;
  for (double t : qid_terms(rho, sigma)) s += t;
  return std::max(0.0, s);
}

double quantum_relative_entropy(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma) {
  return quantum_relative_entropy(SpectralEnsemble::of(rho), SpectralEnsemble::of(sigma));
}

double qid(const SpectralEnsemble& rho, const SpectralEnsemble& sigma) {
  auto terms = qid_terms(rho, sigma);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (rho.weights[i] > 0.0) best = std::max(best, terms[i]);
  }
  return std::max(0.0, best);
}

double qid(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma) {
  return qid(SpectralEnsemble::of(rho), SpectralEnsemble::of(sigma));
}

double quantum_phi_unit(Unit unit, const DensityMatrix4& state, Direction direction) {
  auto factors = supported_factors(state);
  const Matrix2c& mechanism = factors[static_cast<int>(unit)];
  // The SWAP is self-inverse, so one step forward and one step back coincide.
  const Matrix4c step = swap_unitary();
  const Matrix4c& inverse_step = step;
  const Matrix4c& u = direction == Direction::kEffect ? step : inverse_step;

  // Mechanism fixed, rest of the system noised, evolved one step.
  Matrix4c constrained = u * place(unit, mechanism, half_identity()) * u.adjoint();
  // The partition noises the mechanism as well.
  Matrix4c partitioned = u * place(unit, half_identity(), half_identity()) * u.adjoint();

  double best = 0.0;
  for (Unit purview : kUnits) {
    best = std::max(best, qid(reduce(constrained, purview), reduce(partitioned, purview)));
  }
  return best;
}

QuantumPhiReport quantum_big_phi(const DensityMatrix4& state) {
  supported_factors(state);
  QuantumPhiReport r;
  for (Unit u : kUnits) {
    QuantumSubsystemPhi& part = u == Unit::kA ? r.a : r.b;
    part.phi_cause = quantum_phi_unit(u, state, Direction::kCause);
    part.phi_effect = quantum_phi_unit(u, state, Direction::kEffect);
    part.phi = std::min(part.phi_cause, part.phi_effect);
  }

  // Whole system: the repertoire is the evolved state itself; each partition
  // cuts one input->output link and noises that output if the link is used.
  const Matrix4c s = swap_unitary();
  for (Direction dir : {Direction::kCause, Direction::kEffect}) {
    // Past and future coincide under the SWAP.
    Matrix4c evolved = s * state.matrix() * s.adjoint();
    Matrix2c out_a = reduce(evolved, Unit::kA);
    Matrix2c out_b = reduce(evolved, Unit::kB);
    double least = std::numeric_limits<double>::infinity();
    for (Unit source : kUnits) {
      for (Unit target : kUnits) {
        bool link_used = source == partner(target);
        Matrix2c cut_a = (link_used && target == Unit::kA) ? half_identity() : out_a;
        Matrix2c cut_b = (link_used && target == Unit::kB) ? half_identity() : out_b;
        least = std::min(least, qid(evolved, kron(cut_a, cut_b)));
      }
    }
    (dir == Direction::kCause ? r.ab.phi_cause : r.ab.phi_effect) = least;
  }
  r.ab.phi = std::min(r.ab.phi_cause, r.ab.phi_effect);
  r.big_phi = r.a.phi + r.b.phi + r.ab.phi;
  return r;
}

}  // namespace dyad
