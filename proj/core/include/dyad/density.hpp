#pragma once

// Pure and mixed states of the two-qubit dyad in the computational basis
// |00>, |01>, |10>, |11>. The first qubit is unit A.

#include <array>
#include <complex>

#include <Eigen/Core>

#include "dyad/model.hpp"

namespace dyad {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Vector4c = Eigen::Matrix<Complex, 4, 1>;
using Matrix2c = Eigen::Matrix<Complex, 2, 2>;

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-8;
inline constexpr double kNormTolerance = 1e-10;

/// Largest |m(i,j) - conj(m(j,i))|.
double hermiticity_defect(const Eigen::Ref<const Eigen::MatrixXcd>& m);

/// Half the trace norm of the (Hermitian) difference.
double trace_distance(const Matrix4c& x, const Matrix4c& y);

/// The six coherences in CSV order: (0,1) (0,2) (0,3) (1,2) (1,3) (2,3).
inline constexpr std::array<std::array<int, 2>, 6> kCoherencePairs = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

class PureState4 {
 public:
  /// Throws kInvalidArgument unless |amplitudes| = 1 within `tol`.
  explicit PureState4(const Vector4c& amplitudes, double tol = kNormTolerance);

  /// Rescales to unit norm; throws kInvalidArgument for the zero vector.
  static PureState4 normalized(const Vector4c& amplitudes);
  static PureState4 basis(DyadState s);

  const Vector4c& amplitudes() const { return amplitudes_; }
  Complex operator[](int i) const { return amplitudes_[i]; }
  std::array<double, 4> populations() const;
  Matrix4c projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  Vector4c amplitudes_;
};

class DensityMatrix4 {
 public:
  /// Validates Hermiticity, unit trace and positivity against the given
  /// tolerances; throws kInvalidArgument on violation.
  explicit DensityMatrix4(const Matrix4c& m, double herm_tol = kHermitianTolerance,
                          double trace_tol = kTraceTolerance, double psd_tol = kPsdTolerance);

  static DensityMatrix4 from_pure(const PureState4& psi);
  static DensityMatrix4 maximally_mixed();
  /// rho_A (x) rho_B.
  static DensityMatrix4 product(const Matrix2c& a, const Matrix2c& b);

  const Matrix4c& matrix() const { return m_; }
  Complex operator()(int i, int k) const { return m_(i, k); }
  std::array<double, 4> populations() const;
  std::array<double, 6> coherence_magnitudes() const;
  double min_eigenvalue() const;

  /// Reduced state of one unit.
  Matrix2c reduced(Unit keep) const;

 private:
  Matrix4c m_;
};

Matrix4c swap_unitary();

/// Kronecker product a (x) b, a acting on unit A.
Matrix4c kron(const Matrix2c& a, const Matrix2c& b);

}  // namespace dyad
