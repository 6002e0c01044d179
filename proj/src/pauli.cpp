#include "qpeprec/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "qpeprec/error.hpp"

namespace qpeprec {
namespace {

constexpr Complex kI{0.0, 1.0};

// Single-qubit product table: a * b = phase * result.
std::pair<Complex, char> multiply_axis(char a, char b) {
  if (a == 'I') return {1.0, b};
  if (b == 'I') return {1.0, a};
  if (a == b) return {1.0, 'I'};
  // Cyclic XY -> Z, YZ -> X, ZX -> Y carry +i; the reverse order carries -i.
  const auto cyclic = [](char x, char y) {
    return (x == 'X' && y == 'Y') || (x == 'Y' && y == 'Z') || (x == 'Z' && y == 'X');
  };
  const char third = static_cast<char>('X' + 'Y' + 'Z' - a - b);
  return {cyclic(a, b) ? kI : -kI, third};
}

struct Masks {
  std::uint64_t x = 0;  // X or Y: flips the bit
  std::uint64_t z = 0;  // Z or Y: sign from the bit
  int n_y = 0;
};

Masks masks_of(std::string_view axes) {
  Masks m;
  const auto n = axes.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - k);
    switch (axes[k]) {
      case 'X': m.x |= bit; break;
      case 'Y': m.x |= bit; m.z |= bit; ++m.n_y; break;
      case 'Z': m.z |= bit; break;
      default: break;
    }
  }
  return m;
}

Complex i_power(int k) {
  switch (k & 3) {
    case 0: return 1.0;
    case 1: return kI;
    case 2: return -1.0;
    default: return -kI;
  }
}

}  // namespace

bool is_pauli_axes(std::string_view axes) {
  return !axes.empty() && std::all_of(axes.begin(), axes.end(), [](char c) {
    return c == 'I' || c == 'X' || c == 'Y' || c == 'Z';
  });
}

PauliProduct multiply(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) {
    throw InputError("Pauli strings of different lengths cannot be multiplied");
  }
  PauliProduct out{1.0, std::string(a.size(), 'I')};
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto [phase, axis] = multiply_axis(a[k], b[k]);
    out.phase *= phase;
    out.axes[k] = axis;
  }
  return out;
}

bool anticommute(std::string_view a, std::string_view b) {
  int clashes = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != 'I' && b[k] != 'I' && a[k] != b[k]) ++clashes;
  }
  return clashes % 2 == 1;
}

// Y|b> = i (-1)^b |1-b>, so P|b> = i^{n_Y} (-1)^{popcount(b & z)} |b ^ x>.
void apply_pauli_left(std::string_view axes, Eigen::MatrixXcd& m) {
  const Masks masks = masks_of(axes);
  const Complex base = i_power(masks.n_y);
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (Eigen::Index b = 0; b < m.rows(); ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    const double sign = (std::popcount(ub & masks.z) % 2 == 0) ? 1.0 : -1.0;
    out.row(static_cast<Eigen::Index>(ub ^ masks.x)) = (base * sign) * m.row(b);
  }
  m = std::move(out);
}

Eigen::MatrixXcd pauli_matrix(std::string_view axes) {
  const Eigen::Index dim = Eigen::Index{1} << axes.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const Masks masks = masks_of(axes);
  const Complex base = i_power(masks.n_y);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    const double sign = (std::popcount(ub & masks.z) % 2 == 0) ? 1.0 : -1.0;
    m(static_cast<Eigen::Index>(ub ^ masks.x), b) = base * sign;
  }
  return m;
}

PauliSum::PauliSum(int n_qubits) : n_qubits_(n_qubits) {}

void PauliSum::add(const std::string& axes, Complex coefficient) {
  if (static_cast<int>(axes.size()) != n_qubits_) {
    throw InputError("Pauli string length does not match the qubit count");
  }
  auto [it, inserted] = terms_.try_emplace(axes, coefficient);
  if (!inserted) it->second += coefficient;
  if (it->second == Complex{0.0, 0.0}) terms_.erase(it);
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  for (const auto& [axes, c] : other.terms_) add(axes, c);
  return *this;
}

PauliSum& PauliSum::operator*=(Complex factor) {
  if (factor == Complex{0.0, 0.0}) {
    terms_.clear();
    return *this;
  }
  for (auto& [axes, c] : terms_) c *= factor;
  return *this;
}

PauliSum PauliSum::commutator(const PauliSum& other) const {
  PauliSum out(n_qubits_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : other.terms_) {
      if (!anticommute(a, b)) continue;
      const PauliProduct ab = multiply(a, b);
      out.add(ab.axes, 2.0 * ca * cb * ab.phase);
    }
  }
  return out;
}

void PauliSum::compress(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

Eigen::MatrixXcd PauliSum::to_dense() const {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [axes, c] : terms_) {
    const Masks masks = masks_of(axes);
    const Complex base = c * i_power(masks.n_y);
    for (Eigen::Index b = 0; b < dim; ++b) {
      const auto ub = static_cast<std::uint64_t>(b);
      const double sign = (std::popcount(ub & masks.z) % 2 == 0) ? 1.0 : -1.0;
      m(static_cast<Eigen::Index>(ub ^ masks.x), b) += base * sign;
    }
  }
  return m;
}

PauliSum operator*(Complex factor, PauliSum sum) {
  sum *= factor;
  return sum;
}

}  // namespace qpeprec
