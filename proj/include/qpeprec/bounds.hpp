#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpeprec/hamiltonian.hpp"
#include "qpeprec/spectrum.hpp"
#include "qpeprec/trotter.hpp"

namespace qpeprec {

// Chemical precision, Hartree.
inline constexpr double kChemicalPrecision = 1.6e-3;
// Multiplier applied to first-order ("approximately less than") conditions.
inline constexpr double kDefaultFirstOrderSlack = 1.25;

struct PrecisionTarget {
  double eps_ch = kChemicalPrecision;
  std::optional<double> alpha_tar;  // trace-distance target in (0, 1]
  Eigen::Index state_index = 0;

  void validate() const;
};

struct TimeChoice {
  double t;
  int ceil_e0_t;  // always 0 for this choice of t
  // |E0| t < 1 follows from |E0| <= sum |gamma| (bound states, E0 <= 0
  // assumed), so ceil(E0 t) = 0 holds without knowing E0.
  bool ceil_guaranteed;
};

// t = alpha / one_norm, alpha in [1/2, 1].
TimeChoice choose_time(const LcuHamiltonian& h, double alpha,
                       OneNormConvention convention = OneNormConvention::kExcludeIdentity);

struct PhaseQubitCount {
  int value;
  bool clamped;  // the formula gave < 1
};

// N_min(t) = ceil(log2(1 / (t eps))) - 1, at least 1.
PhaseQubitCount n_phase_qubits_min(double t, double eps);

struct CVariants {
  double spectral;     // ||dH||_2
  double variance;     // sqrt(<psi_i|dH^2|psi_i>)
  double first_order;  // |<psi_i|dH|psi_i>|
};

CVariants c_variants(const ErrorOperator& delta, const Spectrum& spectrum, Eigen::Index i);
CVariants c_variants(const DenseOperator& delta, const StateVector& psi);

// 1/2 sum_a || sum_{b>a} [g_b P_b, g_a P_a] ||_2, the per-alpha triangle
// bound. Zero for fewer than two terms.
double triangle_c1(const LcuHamiltonian& h);

// sqrt(1 - <dH>^2 / <dH^2>) in [0, 1]. Throws when <dH^2> <= 1e-14.
double a_coefficient(const DenseOperator& delta, const StateVector& psi);

struct CombinedEpsilon {
  double eps;       // min(eps_ch, gap / A * alpha_tar), or eps_ch without a target
  double alpha_ch;  // A / gap * eps_ch, the trace distance implied by eps_ch alone
};

CombinedEpsilon epsilon_combined(const PrecisionTarget& target, double gap, double a_i);

struct TrotterResources {
  double script_c;    // pi (C_p / eps^{p+1})^{1/p}
  int n_min_phase;    // N_min(t) for the same eps
  int extra_qubits;   // a
  std::int64_t n_min_tot;

  // 2^q / 2^{N_min} * script_c before rounding.
  double n_min_unrounded(int q) const;
  // ceil of the above, at least 1.
  std::int64_t n_min_of(int q) const;
  // n_min_of(q) for q = 0 .. n_phase - 1.
  std::vector<std::int64_t> schedule(int n_phase) const;
};

TrotterResources trotter_resources(double c_p, TrotterOrder order, double t, double eps,
                                   int extra_qubits);

// Which first-order constant drives the resource estimate.
enum class CpChoice { kSpectral, kVariance, kFirstOrder, kTriangle };

CpChoice cp_choice_from_string(const std::string& name);
std::string to_string(CpChoice choice);

struct BoundReport {
  TrotterOrder order;
  Eigen::Index state_index;
  double t;
  CVariants c;
  std::optional<double> c_triangle;  // order 1 only
  std::optional<double> a_i;       // empty when dH |psi_i> = 0
  double gap;
  CombinedEpsilon epsilon;
  CpChoice c_choice;
  double c_used;
  TrotterResources resources;
};

BoundReport make_bound_report(const LcuHamiltonian& h, const Spectrum& spectrum,
                              const ErrorOperator& delta, const PrecisionTarget& target,
                              int extra_qubits, CpChoice choice = CpChoice::kSpectral);

struct ConditionCheck {
  std::string name;
  double lhs;
  double rhs;
  bool holds;
  double slack;  // rhs / lhs; +inf when lhs == 0
};

struct ConditionLedger {
  int q;
  std::int64_t n;
  double lambda;
  double eps;
  CVariants c;
  std::optional<double> a_i;
  double gap;
  // Measured left-hand sides.
  double unitary_lhs;  // ||U^{2^q} - S(U^{2^q})||_2 / (2 pi t 2^q)
  double energy_lhs;   // |E_i^S - E_i|
  double state_lhs;    // (gap / A_i) T(psi_i, psi_i^S)
  double heff_error;   // ||H^S - H||_2
  std::vector<ConditionCheck> checks;

  bool all_hold() const;
  const ConditionCheck& check(const std::string& name) const;
};

// Evaluates the unified, tighter and energy-only conditions for the power
// 2^q of a plan, plus the measured quantities they are meant to bound.
ConditionLedger verify_conditions(const LcuHamiltonian& h, const TrotterPlan& plan,
                                  const Spectrum& spectrum, const ErrorOperator& delta,
                                  const PrecisionTarget& target, int q = 0,
                                  double first_order_slack = kDefaultFirstOrderSlack);

}  // namespace qpeprec
