#include "dyad/qiit.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "dyad/error.hpp"
#include "dyad/qdyn.hpp"

using namespace dyad;

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2;

Matrix2c qubit(Complex c0, Complex c1) { return QubitDensity::pure(c0, c1).matrix(); }
Matrix2c plus() { return qubit(kInvSqrt2, kInvSqrt2); }
Matrix2c zero() { return qubit(1, 0); }
Matrix2c one() { return qubit(0, 1); }
Matrix2c mixed() { return QubitDensity::maximally_mixed().matrix(); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

// S(rho||sigma) = Tr rho log2 rho - Tr rho log2 sigma through matrix
// logarithms of full-rank operands.
double relative_entropy_by_logm(const Matrix2c& rho, const Matrix2c& sigma) {
  auto log2m = [](const Matrix2c& m) {
    Eigen::SelfAdjointEigenSolver<Matrix2c> es(m);
    Eigen::Vector2d l = es.eigenvalues().array().log() / std::log(2.0);
    return Matrix2c(es.eigenvectors() * l.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint());
  };
  return (rho * (log2m(rho) - log2m(sigma))).trace().real();
}

}  // namespace

TEST(UnitaryStep, examples) {
  DensityMatrix4 in = DensityMatrix4::product(zero(), plus());
  DensityMatrix4 out = unitary_step(in, swap_unitary());
  EXPECT_LE((out.matrix() - kron(plus(), zero())).cwiseAbs().maxCoeff(), 1e-15);

  DensityMatrix4 mm = DensityMatrix4::maximally_mixed();
  EXPECT_LE((unitary_step(mm, swap_unitary()).matrix() - mm.matrix()).cwiseAbs().maxCoeff(), 1e-15);

  DensityMatrix4 b01 = DensityMatrix4::from_pure(PureState4::basis({0, 1}));
  EXPECT_EQ(unitary_step(b01, swap_unitary()).matrix(), PureState4::basis({1, 0}).projector());
}

TEST(UnitaryStep, rejects_non_unitary) {
  Matrix4c u = swap_unitary() * 1.01;
  EXPECT_EQ(code_of([&] { unitary_step(DensityMatrix4::maximally_mixed(), u); }), ErrorCode::kNotUnitary);
}

TEST(UnitaryStep, preserves_density_invariants) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 20; ++trial) {
    Matrix4c g;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) g(i, k) = Complex(n(rng), n(rng));
    Matrix4c rho = g * g.adjoint();
    rho /= rho.trace();
    DensityMatrix4 out = unitary_step(DensityMatrix4(0.5 * (rho + rho.adjoint())), swap_unitary());
    EXPECT_LE(hermiticity_defect(out.matrix()), 1e-15);
    EXPECT_NEAR(out.matrix().trace().real(), 1.0, 1e-14);
    EXPECT_GE(out.min_eigenvalue(), -1e-14);
  }
}

TEST(RelativeEntropy, examples) {
  EXPECT_NEAR(quantum_relative_entropy(plus(), plus()), 0.0, 1e-12);
  EXPECT_NEAR(quantum_relative_entropy(zero(), mixed()), 1.0, 1e-12);
  EXPECT_NEAR(quantum_relative_entropy(plus(), mixed()), 1.0, 1e-12);
  EXPECT_NEAR(quantum_relative_entropy(mixed(), mixed()), 0.0, 1e-12);
}

TEST(RelativeEntropy, matches_matrix_logarithm_for_full_rank_states) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  for (int trial = 0; trial < 20; ++trial) {
    auto random_qubit = [&] {
      double p = u(rng);
      Matrix2c v = QubitDensity::pure(std::cos(angle(rng)), std::polar(1.0, angle(rng))).matrix();
      return Matrix2c(p * v + (1 - p) * (Matrix2c::Identity() - v));
    };
    Matrix2c rho = random_qubit();
    Matrix2c sigma = random_qubit();
    EXPECT_NEAR(quantum_relative_entropy(rho, sigma), relative_entropy_by_logm(rho, sigma), 1e-10);
  }
}

TEST(RelativeEntropy, infinite_divergence) {
  EXPECT_EQ(code_of([&] { quantum_relative_entropy(plus(), zero()); }), ErrorCode::kInfiniteDivergence);
  EXPECT_EQ(code_of([&] { qid(one(), zero()); }), ErrorCode::kInfiniteDivergence);
  EXPECT_EQ(code_of([&] { qid(mixed(), zero()); }), ErrorCode::kInfiniteDivergence);
}

TEST(Qid, examples) {
  EXPECT_NEAR(qid(plus(), plus()), 0.0, 1e-12);
  EXPECT_NEAR(qid(plus(), mixed()), 1.0, 1e-12);
  EXPECT_NEAR(qid(zero(), mixed()), 1.0, 1e-12);
}

TEST(Qid, equals_relative_entropy_for_pure_states) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix2c rho = QubitDensity::pure(std::cos(angle(rng)), std::polar(std::sin(angle(rng)), angle(rng))).matrix();
    double p = u(rng);
    Matrix2c sigma = p * zero() + (1 - p) * one();
    EXPECT_NEAR(qid(rho, sigma), quantum_relative_entropy(rho, sigma), 1e-12);
  }
}

TEST(Qid, reduces_to_intrinsic_difference_on_diagonal_states) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int trial = 0; trial < 20; ++trial) {
    double p = u(rng);
    double q = u(rng);
    Matrix2c rho = p * zero() + (1 - p) * one();
    Matrix2c sigma = q * zero() + (1 - q) * one();
    double expected = std::max(p * std::log2(p / q), (1 - p) * std::log2((1 - p) / (1 - q)));
    EXPECT_NEAR(qid(rho, sigma), std::max(0.0, expected), 1e-12);
  }
}

TEST(Qid, independent_of_basis_choice_in_degenerate_eigenspaces) {
  // The maximally mixed qubit is degenerate; two different eigenbases must
  // give the same overlap sums.
  SpectralEnsemble computational{{0.5, 0.5}, Eigen::MatrixXcd::Identity(2, 2)};
  Eigen::MatrixXcd hadamard(2, 2);
  hadamard << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
  SpectralEnsemble rotated{{0.5, 0.5}, hadamard};
  EXPECT_LE((computational.reconstruct() - rotated.reconstruct()).cwiseAbs().maxCoeff(), 1e-15);
  for (const Matrix2c& rho : {plus(), zero(), one(), Matrix2c(qubit(0.6, Complex(0, 0.8)))}) {
    SpectralEnsemble r = SpectralEnsemble::of(rho);
    EXPECT_NEAR(qid(r, computational), qid(r, rotated), 1e-12);
    EXPECT_NEAR(quantum_relative_entropy(r, computational), quantum_relative_entropy(r, rotated), 1e-12);
  }
}

TEST(SpectralEnsemble, round_trip) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXcd g(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) g(i, k) = Complex(n(rng), n(rng));
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace();
    SpectralEnsemble e = SpectralEnsemble::of(rho);
    EXPECT_LE((e.reconstruct() - rho).cwiseAbs().maxCoeff(), 1e-10);
    double total = 0;
    for (double w : e.weights) total += w;
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_LE((e.states.adjoint() * e.states - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(QubitDensity, validation) {
  EXPECT_NEAR(QubitDensity::maximally_mixed().purity(), 0.5, 1e-15);
  EXPECT_NEAR(QubitDensity::pure(1, 1).purity(), 1.0, 1e-15);
  EXPECT_THROW(QubitDensity(Matrix2c::Identity()), Error);
  Matrix2c negative;
  negative << 1.5, 0, 0, -0.5;
  EXPECT_THROW(QubitDensity{negative}, Error);
}

TEST(QuantumPhiUnit, examples) {
  DensityMatrix4 rho_plus = DensityMatrix4::product(plus(), zero());
  EXPECT_NEAR(quantum_phi_unit(Unit::kB, rho_plus, Direction::kEffect), 1.0, 1e-12);
  EXPECT_NEAR(quantum_phi_unit(Unit::kA, rho_plus, Direction::kEffect), 1.0, 1e-12);
  DensityMatrix4 rho_zero = DensityMatrix4::product(zero(), zero());
  EXPECT_NEAR(quantum_phi_unit(Unit::kA, rho_zero, Direction::kCause), 1.0, 1e-12);
}

TEST(QuantumBigPhi, superposed_input) {
  QuantumPhiReport r = quantum_big_phi(DensityMatrix4::product(plus(), zero()));
  EXPECT_NEAR(r.a.phi, 1.0, 1e-12);
  EXPECT_NEAR(r.b.phi, 1.0, 1e-12);
  EXPECT_NEAR(r.ab.phi, 0.0, 1e-12);
  EXPECT_NEAR(r.big_phi, 2.0, 1e-12);

  QuantumPhiReport s = quantum_big_phi(DensityMatrix4::product(zero(), plus()));
  EXPECT_NEAR(s.big_phi, 2.0, 1e-12);
}

TEST(QuantumBigPhi, classical_reduction) {
  Tpm2 swap = Tpm2::swap();
  for (DyadState st : kAllStates) {
    QuantumPhiReport q = quantum_big_phi(DensityMatrix4::from_pure(PureState4::basis(st)));
    PhiReport c = big_phi(swap, st);
    EXPECT_NEAR(q.big_phi, c.big_phi, 1e-12) << to_string(st);
    EXPECT_NEAR(q.a.phi_effect, c.phi_e_A, 1e-12);
    EXPECT_NEAR(q.a.phi_cause, c.phi_c_A, 1e-12);
    EXPECT_NEAR(q.b.phi_effect, c.phi_e_B, 1e-12);
    EXPECT_NEAR(q.b.phi_cause, c.phi_c_B, 1e-12);
  }
}

TEST(QuantumBigPhi, maximally_mixed_state_carries_nothing) {
  QuantumPhiReport r = quantum_big_phi(DensityMatrix4::maximally_mixed());
  EXPECT_EQ(r.a.phi_effect, 0.0);
  EXPECT_EQ(r.b.phi_effect, 0.0);
  EXPECT_EQ(r.big_phi, 0.0);
}

TEST(QuantumBigPhi, unsupported_states) {
  Vector4c bell;
  bell << kInvSqrt2, 0, 0, kInvSqrt2;
  DensityMatrix4 entangled = DensityMatrix4::from_pure(PureState4(bell));
  EXPECT_EQ(code_of([&] { quantum_big_phi(entangled); }), ErrorCode::kUnsupportedState);

  Matrix2c partial = 0.75 * zero() + 0.25 * one();
  DensityMatrix4 partly_mixed = DensityMatrix4::product(partial, zero());
  EXPECT_EQ(code_of([&] { quantum_phi_unit(Unit::kA, partly_mixed, Direction::kEffect); }),
            ErrorCode::kUnsupportedState);
}
