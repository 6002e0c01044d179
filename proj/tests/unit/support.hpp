#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "qpeprec/hamiltonian.hpp"
#include "qpeprec/linalg.hpp"

namespace qpeprec::testing {

inline std::string fixture_path() { return std::string(QPEPREC_DATA_DIR) + "/h2_sto3g_0.50.json"; }
inline std::string test_data(const std::string& name) {
  return std::string(QPEPREC_TEST_DATA_DIR) + "/" + name;
}

inline const LcuHamiltonian& h2() {
  static const LcuHamiltonian h = ingest_hamiltonian(fixture_path());
  return h;
}

// Dense exp(-i 2 pi dt A) by Pade scaling and squaring, independent of the
// eigendecomposition path in the library.
inline Eigen::MatrixXcd pade_evolution(const Eigen::MatrixXcd& a, double dt) {
  const Eigen::MatrixXcd arg = std::complex<double>(0.0, -2.0 * M_PI * dt) * a;
  return arg.exp();
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Textbook Pauli matrices combined by Kronecker products.
inline Eigen::MatrixXcd kron_pauli(const std::string& axes) {
  using C = std::complex<double>;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : axes) {
    Eigen::Matrix2cd m;
    switch (c) {
      case 'X': m << 0, 1, 1, 0; break;
      case 'Y': m << 0, C(0, -1), C(0, 1), 0; break;
      case 'Z': m << 1, 0, 0, -1; break;
      default: m = Eigen::Matrix2cd::Identity();
    }
    out = kron(out, m);
  }
  return out;
}

inline Eigen::MatrixXcd dense_oracle(const LcuHamiltonian& h) {
  const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& term : h.terms()) out += term.coefficient * kron_pauli(term.axes);
  return out;
}

// -i/2 sum_{a<b} [g_b P_b, g_a P_a] with dense matrices.
inline Eigen::MatrixXcd delta_h1_oracle(const LcuHamiltonian& h) {
  const auto terms = h.terms();
  const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t a = 0; a < terms.size(); ++a) {
    const Eigen::MatrixXcd ha = terms[a].coefficient * kron_pauli(terms[a].axes);
    for (std::size_t b = a + 1; b < terms.size(); ++b) {
      const Eigen::MatrixXcd hb = terms[b].coefficient * kron_pauli(terms[b].axes);
      out += std::complex<double>(0.0, -0.5) * (hb * ha - ha * hb);
    }
  }
  return out;
}

inline std::string random_axes(std::mt19937_64& rng, int n_qubits, bool allow_identity = false) {
  static const char kAxes[] = {'I', 'X', 'Y', 'Z'};
  std::uniform_int_distribution<int> pick(0, 3);
  for (;;) {
    std::string s;
    for (int k = 0; k < n_qubits; ++k) s += kAxes[pick(rng)];
    if (allow_identity || s.find_first_not_of('I') != std::string::npos) return s;
  }
}

// M distinct non-identity Pauli strings with weights in +-[0.2, 1].
inline LcuHamiltonian random_lcu(std::mt19937_64& rng, int n_qubits, int m) {
  std::uniform_real_distribution<double> mag(0.2, 1.0);
  std::bernoulli_distribution sign(0.5);
  std::vector<PauliTerm> terms;
  while (static_cast<int>(terms.size()) < m) {
    auto axes = random_axes(rng, n_qubits);
    bool dup = false;
    for (const auto& t : terms) dup = dup || t.axes == axes;
    if (dup) continue;
    terms.push_back({(sign(rng) ? -1.0 : 1.0) * mag(rng), axes});
  }
  return LcuHamiltonian::from_terms(n_qubits, terms);
}

inline Eigen::MatrixXcd random_hermitian(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = {g(rng), g(rng)};
  }
  return 0.5 * (a + a.adjoint());
}

inline Eigen::VectorXcd random_state(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = {g(rng), g(rng)};
  return v.normalized();
}

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace qpeprec::testing
