#include "qpeprec/linalg.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qpeprec/error.hpp"

namespace qpeprec {
namespace {

constexpr double kBranchGuard = 1e-6;

}  // namespace

bool is_hermitian(const DenseOperator& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  if (a.size() == 0) return true;
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return true;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

bool is_unitary(const DenseOperator& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const DenseOperator id = DenseOperator::Identity(a.rows(), a.cols());
  return (a.adjoint() * a - id).cwiseAbs().maxCoeff() <= tol;
}

DenseOperator expm_hermitian(const DenseOperator& h, double scale) {
  if (!is_hermitian(h)) {
    throw NumericError("expm_hermitian: input is not Hermitian");
  }
  const DenseOperator sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseOperator> eig(sym);
  const Eigen::VectorXcd phases =
      (std::complex<double>(0.0, scale) * eig.eigenvalues().cast<std::complex<double>>())
          .array()
          .exp();
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

DenseOperator logm_unitary_hermitian(const DenseOperator& u, double scale) {
  if (!is_unitary(u)) {
    throw NumericError("logm_unitary_hermitian: input is not unitary");
  }
  if (scale == 0.0) {
    throw NumericError("logm_unitary_hermitian: scale must be nonzero");
  }
  // A unitary is normal, so its complex Schur form is diagonal up to
  // rounding and the Schur vectors are an orthonormal eigenbasis, including
  // inside degenerate eigenspaces.
  Eigen::ComplexSchur<DenseOperator> schur(u);
  const DenseOperator& q = schur.matrixU();
  const auto diag = schur.matrixT().diagonal();
  Eigen::VectorXcd log_phases(diag.size());
  for (Eigen::Index k = 0; k < diag.size(); ++k) {
    const double phase = std::arg(diag(k));
    if (std::numbers::pi - std::abs(phase) < kBranchGuard) {
      throw NumericError(
          "logm_unitary_hermitian: eigenphase at the branch cut (+-pi); "
          "reduce the step size");
    }
    log_phases(k) = phase / scale;
  }
  DenseOperator l = q * log_phases.asDiagonal() * q.adjoint();
  return 0.5 * (l + l.adjoint());
}

double spectral_norm(const DenseOperator& a) {
  if (a.size() == 0) return 0.0;
  if (is_hermitian(a, 1e-12)) {
    const DenseOperator sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<DenseOperator> eig(sym, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::BDCSVD<DenseOperator> svd(a);
  return svd.singularValues()(0);
}

std::complex<double> expectation(const DenseOperator& a, const StateVector& psi) {
  return psi.dot(a * psi);
}

}  // namespace qpeprec
