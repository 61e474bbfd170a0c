#include "dyad/density.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "dyad/error.hpp"

namespace dyad {

double hermiticity_defect(const Eigen::Ref<const Eigen::MatrixXcd>& m) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

double trace_distance(const Matrix4c& x, const Matrix4c& y) {
  Matrix4c d = x - y;
  d = 0.5 * (d + d.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(d, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

PureState4::PureState4(const Vector4c& amplitudes, double tol) : amplitudes_(amplitudes) {
  double n = amplitudes_.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > tol) {
    throw Error(ErrorCode::kInvalidArgument, "state is not normalized (norm " + std::to_string(n) + ")");
  }
}

PureState4 PureState4::normalized(const Vector4c& amplitudes) {
  double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorCode::kInvalidArgument, "cannot normalize a zero vector");
  return PureState4(amplitudes / n);
}

PureState4 PureState4::basis(DyadState s) {
  Vector4c v = Vector4c::Zero();
  v[s.index()] = 1.0;
  return PureState4(v);
}

std::array<double, 4> PureState4::populations() const {
  return {std::norm(amplitudes_[0]), std::norm(amplitudes_[1]), std::norm(amplitudes_[2]),
          std::norm(amplitudes_[3])};
}

DensityMatrix4::DensityMatrix4(const Matrix4c& m, double herm_tol, double trace_tol, double psd_tol) : m_(m) {
  if (!m_.allFinite()) throw Error(ErrorCode::kInvalidArgument, "density matrix has non-finite entries");
  double herm = hermiticity_defect(m_);
  if (herm > herm_tol) {
    throw Error(ErrorCode::kInvalidArgument, "density matrix not Hermitian (defect " + std::to_string(herm) + ")");
  }
  Complex tr = m_.trace();
  if (std::abs(tr - 1.0) > trace_tol) {
    throw Error(ErrorCode::kInvalidArgument, "density matrix trace is " + std::to_string(tr.real()));
  }
  if (min_eigenvalue() < -psd_tol) {
    throw Error(ErrorCode::kInvalidArgument, "density matrix is not positive semidefinite");
  }
}

DensityMatrix4 DensityMatrix4::from_pure(const PureState4& psi) { return DensityMatrix4(psi.projector()); }

DensityMatrix4 DensityMatrix4::maximally_mixed() { return DensityMatrix4(Matrix4c::Identity() * 0.25); }

DensityMatrix4 DensityMatrix4::product(const Matrix2c& a, const Matrix2c& b) { return DensityMatrix4(kron(a, b)); }

std::array<double, 4> DensityMatrix4::populations() const {
  return {m_(0, 0).real(), m_(1, 1).real(), m_(2, 2).real(), m_(3, 3).real()};
}

std::array<double, 6> DensityMatrix4::coherence_magnitudes() const {
  std::array<double, 6> out{};
  for (std::size_t n = 0; n < kCoherencePairs.size(); ++n) out[n] = std::abs(m_(kCoherencePairs[n][0], kCoherencePairs[n][1]));
  return out;
}

double DensityMatrix4::min_eigenvalue() const {
  Matrix4c h = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Matrix2c DensityMatrix4::reduced(Unit keep) const {
  Matrix2c r = Matrix2c::Zero();
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int t = 0; t < 2; ++t) {
        if (keep == Unit::kA) {
          r(x, y) += m_(2 * x + t, 2 * y + t);
        } else {
          r(x, y) += m_(2 * t + x, 2 * t + y);
        }
      }
  return r;
}

Matrix4c swap_unitary() {
  Matrix4c u = Matrix4c::Zero();
  for (DyadState s : kAllStates) u(DyadState{s.b, s.a}.index(), s.index()) = 1.0;
  return u;
}

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

}  // namespace dyad
