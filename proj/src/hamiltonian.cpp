#include "qpeprec/hamiltonian.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "qpeprec/error.hpp"

namespace qpeprec {

LcuHamiltonian::LcuHamiltonian(int n_qubits, std::vector<PauliTerm> terms)
    : n_qubits_(n_qubits), terms_(std::move(terms)), one_norm_(0.0) {
  for (const auto& term : terms_) one_norm_ += std::abs(term.coefficient);
}

LcuHamiltonian LcuHamiltonian::from_terms(int n_qubits, std::vector<PauliTerm> terms) {
  if (n_qubits <= 0) throw InputError("n_qubits must be positive");
  if (n_qubits > 62) throw InputError("n_qubits too large for a Pauli bit mask");
  if (terms.empty()) throw InputError("Hamiltonian has no terms");

  std::vector<PauliTerm> merged;
  std::unordered_map<std::string, std::size_t> index;
  for (auto& term : terms) {
    if (!is_pauli_axes(term.axes)) {
      throw InputError("malformed Pauli axes \"" + term.axes + "\" (expected I, X, Y, Z)");
    }
    if (static_cast<int>(term.axes.size()) != n_qubits) {
      throw InputError("Pauli string \"" + term.axes + "\" has length " +
                       std::to_string(term.axes.size()) + ", expected " +
                       std::to_string(n_qubits));
    }
    if (!std::isfinite(term.coefficient)) {
      throw InputError("non-finite coefficient for \"" + term.axes + "\"");
    }
    auto [it, inserted] = index.try_emplace(term.axes, merged.size());
    if (inserted) {
      merged.push_back(std::move(term));
    } else {
      merged[it->second].coefficient += term.coefficient;
    }
  }
  return LcuHamiltonian(n_qubits, std::move(merged));
}

double LcuHamiltonian::identity_coefficient() const {
  for (const auto& term : terms_) {
    if (term.axes.find_first_not_of('I') == std::string::npos) return term.coefficient;
  }
  return 0.0;
}

double LcuHamiltonian::one_norm(OneNormConvention convention) const {
  if (convention == OneNormConvention::kIncludeIdentity) return one_norm_;
  return one_norm_ - std::abs(identity_coefficient());
}

LcuHamiltonian LcuHamiltonian::shifted(double c) const {
  auto terms = terms_;
  terms.push_back({c, std::string(static_cast<std::size_t>(n_qubits_), 'I')});
  return from_terms(n_qubits_, std::move(terms));
}

LcuHamiltonian LcuHamiltonian::reversed() const {
  return LcuHamiltonian(n_qubits_, std::vector<PauliTerm>(terms_.rbegin(), terms_.rend()));
}

PauliSum LcuHamiltonian::as_pauli_sum() const {
  PauliSum sum(n_qubits_);
  for (const auto& term : terms_) sum.add(term.axes, term.coefficient);
  return sum;
}

LcuHamiltonian parse_hamiltonian(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("Hamiltonian file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n_qubits") || !doc.contains("terms")) {
    throw InputError("Hamiltonian JSON needs \"n_qubits\" and \"terms\"");
  }
  if (!doc["n_qubits"].is_number_integer()) throw InputError("\"n_qubits\" must be an integer");
  if (!doc["terms"].is_array()) throw InputError("\"terms\" must be an array");

  std::vector<PauliTerm> terms;
  for (const auto& entry : doc["terms"]) {
    if (!entry.is_object() || !entry.contains("coeff") || !entry.contains("pauli") ||
        !entry["coeff"].is_number() || !entry["pauli"].is_string()) {
      throw InputError("each term needs a numeric \"coeff\" and a string \"pauli\"");
    }
    terms.push_back({entry["coeff"].get<double>(), entry["pauli"].get<std::string>()});
  }
  return LcuHamiltonian::from_terms(doc["n_qubits"].get<int>(), std::move(terms));
}

LcuHamiltonian ingest_hamiltonian(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open Hamiltonian file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_hamiltonian(buffer.str());
}

DenseOperator to_dense(const LcuHamiltonian& h, int qubit_cap) {
  if (h.n_qubits() > qubit_cap) {
    throw NumericError("to_dense: " + std::to_string(h.n_qubits()) +
                       " qubits exceeds the dense cap of " + std::to_string(qubit_cap));
  }
  return h.as_pauli_sum().to_dense();
}

}  // namespace qpeprec
