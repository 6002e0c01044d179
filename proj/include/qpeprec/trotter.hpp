#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpeprec/hamiltonian.hpp"
#include "qpeprec/linalg.hpp"
#include "qpeprec/pauli.hpp"

namespace qpeprec {

enum class TrotterOrder { kFirst = 1, kSecond = 2 };

inline int order_value(TrotterOrder p) { return static_cast<int>(p); }
TrotterOrder trotter_order_from_int(int p);

// Step counts n(q, t) for every controlled power U^{2^q} of a QPE circuit.
class TrotterPlan {
 public:
  enum class Mode { kFixed, kUniform, kPerQ };

  static constexpr int kDefaultMaxQ = 30;

  // Same n for every q.
  static TrotterPlan fixed(TrotterOrder order, double t, std::int64_t n,
                           int max_q = kDefaultMaxQ);
  // n(q) = n0 * 2^q, so every power reuses the q = 0 step matrix.
  static TrotterPlan uniform(TrotterOrder order, double t, std::int64_t n0,
                             int max_q = kDefaultMaxQ);
  // Explicit n(q) for q = 0 .. steps.size() - 1.
  static TrotterPlan per_q(TrotterOrder order, double t, std::vector<std::int64_t> steps);

  TrotterOrder order() const { return order_; }
  Mode mode() const { return mode_; }
  double t() const { return t_; }
  int max_q() const { return max_q_; }

  std::int64_t steps_for(int q) const;
  // Time slice of one Trotter step for the power 2^q: t * 2^q / n(q).
  double step_time(int q) const;
  // lambda_p = (2 pi t 2^q / n(q))^p.
  double lambda(int q) const;

  std::string describe() const;

 private:
  TrotterPlan(TrotterOrder order, double t, Mode mode, std::vector<std::int64_t> steps, int max_q);

  TrotterOrder order_;
  double t_;
  Mode mode_;
  std::vector<std::int64_t> steps_;  // one entry for fixed/uniform, one per q otherwise
  int max_q_;
};

// One product-formula step approximating exp(-i 2 pi dt H).
//
// Order 1 applies the terms in Hamiltonian order, the first term acting
// first: step = e^{-i 2pi dt g_M P_M} ... e^{-i 2pi dt g_1 P_1}. Order 2 is
// the mirrored sequence 1..M, M..1 with every angle halved.
DenseOperator trotter_step(const LcuHamiltonian& h, TrotterOrder order, double dt);

// step^n by square-and-multiply, arranged so that power(2n) = power(n)^2
// exactly.
DenseOperator matrix_power(const DenseOperator& step, std::int64_t n);

// S(U^{2^q}) = trotter_step(dt = t 2^q / n(q))^{n(q)}.
DenseOperator controlled_power_unitary(const LcuHamiltonian& h, const TrotterPlan& plan, int q);

// U^{2^q} = exp(-i 2 pi t 2^q H).
DenseOperator exact_power_unitary(const DenseOperator& h, double t, int q);

// First-order error operator of an order-p product formula, built as an
// exact Pauli-string sum and then densified.
struct ErrorOperator {
  TrotterOrder order;
  PauliSum symbolic;
  DenseOperator matrix;

  std::size_t term_count() const { return symbolic.size(); }
};

// -i/2 sum_{a<b} [g_b P_b, g_a P_a].
ErrorOperator delta_h1(const LcuHamiltonian& h);

// -1/3 sum_{a<b<=v} (1 - delta_{vb}/2) [g_v P_v, [g_b P_b, g_a P_a]] over the
// mirrored sequence of 2M terms (P_{M+i} = P_{M+1-i}, same for g).
ErrorOperator delta_h2(const LcuHamiltonian& h);

ErrorOperator delta_h(const LcuHamiltonian& h, TrotterOrder order);

// H^S for the power 2^q, from the Hermitian logarithm of a single step:
// dt * one_norm < 1/2 so every eigenphase stays inside (-pi, pi).
// dt * one_norm < 1/2 so every eigenphase stays inside (-pi, pi).
DenseOperator effective_hamiltonian(const LcuHamiltonian& h, const TrotterPlan& plan, int q);
DenseOperator effective_hamiltonian(const LcuHamiltonian& h, TrotterOrder order, double dt);

// Numerical estimate of dH = lim (H^S - H) / lambda_p from several step
// counts at q = 0, by polynomial extrapolation in lambda to lambda = 0.
struct FirstOrderExtraction {
  TrotterOrder order;
  DenseOperator estimate;
  std::vector<std::int64_t> n_values;
  std::vector<double> lambdas;
  std::vector<double> residuals;  // ||H^S - H - lambda * estimate||_2
  std::optional<double> residual_slope;  // empty when every residual is at round-off
};

FirstOrderExtraction extract_first_order(const LcuHamiltonian& h, TrotterOrder order, double t,
                                         std::span<const std::int64_t> n_values);

struct FormulaComparison {
  std::optional<double> ratio;  // best scalar c with extracted ~ c * formula
  double relative_residual;     // ||extracted - c * formula|| / ||extracted||
  double extracted_norm;
  double formula_norm;
};

FormulaComparison compare_with_formula(const FirstOrderExtraction& extraction,
                                       const ErrorOperator& formula);

}  // namespace qpeprec
