#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qpeprec/linalg.hpp"
#include "qpeprec/pauli.hpp"

namespace qpeprec {

struct PauliTerm {
  double coefficient = 0.0;  // Hartree
  std::string axes;
};

// Whether the identity coefficient counts toward the one-norm used to pick
// the evolution time. Excluding it reproduces the H2 reference time.
enum class OneNormConvention { kExcludeIdentity, kIncludeIdentity };

inline constexpr int kDefaultQubitCap = 12;

// H = sum_b gamma_b P_b with real weights and Pauli-string unitaries.
// Term order is preserved from the input (it fixes the Trotter product
// order); duplicate strings are merged into their first occurrence.
class LcuHamiltonian {
 public:
  static LcuHamiltonian from_terms(int n_qubits, std::vector<PauliTerm> terms);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  std::span<const PauliTerm> terms() const { return terms_; }

  // Sum of |gamma| over every stored term.
  double one_norm() const { return one_norm_; }
  double one_norm(OneNormConvention convention) const;
  double identity_coefficient() const;

  // H + c * I.
  LcuHamiltonian shifted(double c) const;
  LcuHamiltonian reversed() const;

  PauliSum as_pauli_sum() const;

 private:
  LcuHamiltonian(int n_qubits, std::vector<PauliTerm> terms);

  int n_qubits_;
  std::vector<PauliTerm> terms_;
  double one_norm_;
};

// Reads {"n_qubits": int, "terms": [{"coeff": float, "pauli": "IXYZ..."}]}.
LcuHamiltonian ingest_hamiltonian(const std::filesystem::path& path);
LcuHamiltonian parse_hamiltonian(std::string_view json_text);

DenseOperator to_dense(const LcuHamiltonian& h, int qubit_cap = kDefaultQubitCap);

}  // namespace qpeprec
