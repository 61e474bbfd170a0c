#pragma once

// Integrated information of the quantum dyad.
//
// Repertoires are density operators; noise is the maximally mixed qubit and
// differences are measured with the quantum intrinsic difference (QID):
//
//   QID(rho || sigma) = max_i p_i (log2 p_i - sum_j P_ij log2 q_j),
//   P_ij = |<psi_i|phi_j>|^2,
//
// where rho = sum_i p_i |psi_i><psi_i| and sigma = sum_j q_j |phi_j><phi_j|.

#include <vector>

#include <Eigen/Core>

#include "dyad/density.hpp"
#include "dyad/phi.hpp"

namespace dyad {

/// Eigenvalues below this are treated as zero.
inline constexpr double kSpectralCutoff = 1e-12;

class QubitDensity {
 public:
  /// Throws kInvalidArgument unless Hermitian, unit trace and PSD within 1e-10.
  explicit QubitDensity(const Matrix2c& m);

  static QubitDensity maximally_mixed();
  static QubitDensity pure(Complex c0, Complex c1);

  const Matrix2c& matrix() const { return m_; }
  double purity() const;

 private:
  Matrix2c m_;
};

struct SpectralEnsemble {
  std::vector<double> weights;
  /// Columns are orthonormal eigenvectors.
  Eigen::MatrixXcd states;

  /// Eigendecomposition of a Hermitian matrix. Weights below the cutoff are
  /// clamped to zero but their eigenvectors are kept.
  static SpectralEnsemble of(const Eigen::MatrixXcd& rho);

  Eigen::MatrixXcd reconstruct() const;
};

/// Throws kNotUnitary unless U U^dagger = 1 within 1e-10.
DensityMatrix4 unitary_step(const DensityMatrix4& rho, const Matrix4c& unitary);

/// S(rho || sigma) in bits. Throws kInfiniteDivergence when rho has weight
/// outside the support of sigma.
double quantum_relative_entropy(const SpectralEnsemble& rho, const SpectralEnsemble& sigma);
double quantum_relative_entropy(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma);

double qid(const SpectralEnsemble& rho, const SpectralEnsemble& sigma);
double qid(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& sigma);

/// Integrated information of one unit of the SWAP dyad. The state must be a
/// product rho_A (x) rho_B whose factors are each pure or maximally mixed;
/// anything else throws kUnsupportedState.
double quantum_phi_unit(Unit unit, const DensityMatrix4& state, Direction direction);

struct QuantumSubsystemPhi {
  double phi_cause = 0.0;
  double phi_effect = 0.0;
  double phi = 0.0;
};

struct QuantumPhiReport {
  QuantumSubsystemPhi a;
  QuantumSubsystemPhi b;
  QuantumSubsystemPhi ab;
  double big_phi = 0.0;
};

/// phi(A) + phi(B) + phi(AB). The whole system always has a partition that
/// cuts only a self-link the SWAP does not use, so phi(AB) comes out 0.
QuantumPhiReport quantum_big_phi(const DensityMatrix4& state);

}  // namespace dyad
