#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace qpeprec {

using Complex = std::complex<double>;

// Pauli strings are plain strings over {I,X,Y,Z}. Character k acts on qubit
// k, and qubit 0 is the most significant bit of a basis-state index, so the
// dense matrix of "AB" is kron(A, B).
bool is_pauli_axes(std::string_view axes);

struct PauliProduct {
  Complex phase;
  std::string axes;
};

// a * b as phase * (Pauli string). Both strings must have equal length.
PauliProduct multiply(std::string_view a, std::string_view b);

bool anticommute(std::string_view a, std::string_view b);

// m <- P m, without forming P.
void apply_pauli_left(std::string_view axes, Eigen::MatrixXcd& m);

Eigen::MatrixXcd pauli_matrix(std::string_view axes);

// Symbolic linear combination of Pauli strings with complex coefficients.
// Terms are kept in a sorted map so iteration (and therefore densification)
// is deterministic; coefficients that cancel to exactly zero are erased.
class PauliSum {
 public:
  explicit PauliSum(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::map<std::string, Complex>& terms() const { return terms_; }

  void add(const std::string& axes, Complex coefficient);
  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(Complex factor);

  // [*this, other] = *this * other - other * *this.
  PauliSum commutator(const PauliSum& other) const;

  // Drops terms with |coefficient| <= tol.
  void compress(double tol);

  Eigen::MatrixXcd to_dense() const;

 private:
  int n_qubits_;
  std::map<std::string, Complex> terms_;
};

PauliSum operator*(Complex factor, PauliSum sum);

}  // namespace qpeprec
