#include "qpeprec/spectrum.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "qpeprec/error.hpp"

namespace qpeprec {

double phase_of(double energy, double t) {
  const double x = -t * energy;
  double theta = x - std::floor(x);
  if (theta >= 1.0) theta = 0.0;
  return theta;
}

Spectrum::Spectrum(Eigen::VectorXd energies, DenseOperator states, double t)
    : energies_(std::move(energies)), states_(std::move(states)), t_(t) {
  if (states_.rows() != states_.cols() || states_.cols() != energies_.size()) {
    throw NumericError("Spectrum: energies and eigenvector matrix disagree in size");
  }
  for (Eigen::Index j = 1; j < energies_.size(); ++j) {
    if (energies_(j) < energies_(j - 1)) throw NumericError("Spectrum: energies not ascending");
  }
  const DenseOperator gram = states_.adjoint() * states_;
  if ((gram - DenseOperator::Identity(dim(), dim())).cwiseAbs().maxCoeff() > 1e-9) {
    throw NumericError("Spectrum: eigenvectors are not orthonormal");
  }
  phases_.resize(energies_.size());
  for (Eigen::Index j = 0; j < energies_.size(); ++j) phases_(j) = phase_of(energies_(j), t_);
}

double Spectrum::gap_of(Eigen::Index i) const {
  if (i < 0 || i >= dim()) throw NumericError("gap_of: state index out of range");
  if (dim() < 2) throw NumericError("gap_of: a one-level spectrum has no gap");
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < dim(); ++k) {
    if (k != i) gap = std::min(gap, std::abs(energies_(k) - energies_(i)));
  }
  if (gap < kDegeneracyThreshold) {
    throw NumericError("state " + std::to_string(i) +
                       " is degenerate; non-degenerate perturbation theory does not apply");
  }
  return gap;
}

Spectrum diagonalize(const DenseOperator& h, double t) {
  if (!is_hermitian(h)) throw NumericError("diagonalize: operator is not Hermitian");
  const DenseOperator sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseOperator> eig(sym);
  if (eig.info() != Eigen::Success) throw NumericError("diagonalize: eigensolver failed");

  DenseOperator states = eig.eigenvectors();
  for (Eigen::Index j = 0; j < states.cols(); ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index k = 0; k < states.rows(); ++k) {
      const double mag = std::abs(states(k, j));
      if (mag > best + 1e-12) {
        best = mag;
        arg = k;
      }
    }
    const auto pivot = states(arg, j);
    states.col(j) *= std::conj(pivot) / std::abs(pivot);
    states(arg, j) = std::abs(states(arg, j));
  }
  return Spectrum(eig.eigenvalues(), std::move(states), t);
}

InitialState::InitialState(StateVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw NumericError("InitialState: empty state");
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > 1e-10) {
    throw NumericError("InitialState: state is not normalized");
  }
}

InitialState InitialState::basis_state(std::string_view bits) {
  if (bits.empty() || bits.size() > 30) throw InputError("basis state needs 1..30 bits");
  Eigen::Index index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw InputError("basis state bits must be 0 or 1");
    index = (index << 1) | (c == '1' ? 1 : 0);
  }
  StateVector v = StateVector::Zero(Eigen::Index{1} << bits.size());
  v(index) = 1.0;
  return InitialState(std::move(v));
}

InitialState InitialState::lowest_diagonal(const DenseOperator& h) {
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < h.rows(); ++k) {
    if (h(k, k).real() < h(best, best).real() - 1e-12) best = k;
  }
  StateVector v = StateVector::Zero(h.rows());
  v(best) = 1.0;
  return InitialState(std::move(v));
}

Eigen::VectorXcd InitialState::overlaps(const Spectrum& spectrum) const {
  if (spectrum.dim() != dim()) throw NumericError("InitialState: dimension mismatch with spectrum");
  return spectrum.states().adjoint() * amplitudes_;
}

double InitialState::energy(const DenseOperator& h) const {
  if (h.rows() != dim()) throw NumericError("InitialState: dimension mismatch with operator");
  return expectation(h, amplitudes_).real();
}

}  // namespace qpeprec
