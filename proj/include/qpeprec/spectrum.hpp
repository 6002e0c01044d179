#pragma once

#include <string_view>

#include "qpeprec/linalg.hpp"

namespace qpeprec {

// Gaps below this are treated as degenerate for perturbation theory.
inline constexpr double kDegeneracyThreshold = 1e-8;

// (-t * energy) mod 1, in [0, 1).
double phase_of(double energy, double t);

// Full eigensystem of a Hermitian operator plus the QPE phases for a time t.
class Spectrum {
 public:
  // energies ascending; states column-orthonormal.
  Spectrum(Eigen::VectorXd energies, DenseOperator states, double t);

  Eigen::Index dim() const { return energies_.size(); }
  double t() const { return t_; }
  const Eigen::VectorXd& energies() const { return energies_; }
  const DenseOperator& states() const { return states_; }
  const Eigen::VectorXd& phases() const { return phases_; }

  double energy(Eigen::Index j) const { return energies_(j); }
  StateVector state(Eigen::Index j) const { return states_.col(j); }

  // min_{k != i} |E_k - E_i|; throws NumericError below kDegeneracyThreshold.
  double gap_of(Eigen::Index i) const;

  Spectrum with_time(double t) const { return Spectrum(energies_, states_, t); }

 private:
  Eigen::VectorXd energies_;
  DenseOperator states_;
  double t_;
  Eigen::VectorXd phases_;
};

// Each eigenvector is rotated so that its largest-magnitude component (first
// one on ties) is real and positive.
Spectrum diagonalize(const DenseOperator& h, double t);

// Normalized system-register state |psi_init>.
class InitialState {
 public:
  explicit InitialState(StateVector amplitudes);

  // Computational basis state from a bit string, qubit 0 first ("1100").
  static InitialState basis_state(std::string_view bits);
  // Basis state with the smallest diagonal element of h (the Hartree-Fock
  // determinant for Jordan-Wigner encoded molecules). First index on ties.
  static InitialState lowest_diagonal(const DenseOperator& h);

  const StateVector& amplitudes() const { return amplitudes_; }
  Eigen::Index dim() const { return amplitudes_.size(); }

  // c_j = <psi_j|psi_init>.
  Eigen::VectorXcd overlaps(const Spectrum& spectrum) const;
  double energy(const DenseOperator& h) const;

 private:
  StateVector amplitudes_;
};

}  // namespace qpeprec
