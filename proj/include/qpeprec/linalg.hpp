#pragma once

#include <Eigen/Dense>

namespace qpeprec {

// Matrix realization of Hamiltonians, unitaries and error operators.
using DenseOperator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

// max|A - A^dagger| <= rel_tol * max|A|.
bool is_hermitian(const DenseOperator& a, double rel_tol = 1e-10);

// max|A^dagger A - 1| <= tol.
bool is_unitary(const DenseOperator& a, double tol = 1e-9);

/// exp(i * scale * h) for Hermitian h, via its eigendecomposition.
DenseOperator expm_hermitian(const DenseOperator& h, double scale);

/// Hermitian L with exp(i * scale * L) = u.
///
/// Eigenphases of u are taken on the principal branch (-pi, pi] and divided
/// by scale. A phase within 1e-6 of +-pi is rejected: its branch is
/// ambiguous and the logarithm would not be continuous there.
DenseOperator logm_unitary_hermitian(const DenseOperator& u, double scale);

// Largest singular value; max|eigenvalue| when a is Hermitian.
double spectral_norm(const DenseOperator& a);

// <psi|a|psi>.
std::complex<double> expectation(const DenseOperator& a, const StateVector& psi);

}  // namespace qpeprec
