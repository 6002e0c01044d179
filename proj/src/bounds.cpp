#include "qpeprec/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qpeprec/error.hpp"
#include "qpeprec/qpe.hpp"

namespace qpeprec {
namespace {

constexpr double kVanishingSecondMoment = 1e-14;

// Measured quantities carry round-off even when the bound is exactly zero.
constexpr double kMeasuredFloor = 1e-10;

ConditionCheck make_check(std::string name, double lhs, double rhs, double floor = 0.0) {
  const double slack = lhs > 0.0 ? rhs / lhs : std::numeric_limits<double>::infinity();
  return {std::move(name), lhs, rhs, lhs <= rhs + floor, slack};
}

}  // namespace

void PrecisionTarget::validate() const {
  if (!(eps_ch > 0.0) || !std::isfinite(eps_ch)) throw InputError("eps_ch must be > 0");
  if (alpha_tar && !(*alpha_tar > 0.0 && *alpha_tar <= 1.0)) {
    throw InputError("alpha_tar must lie in (0, 1]");
  }
  if (state_index < 0) throw InputError("state index must be >= 0");
}

TimeChoice choose_time(const LcuHamiltonian& h, double alpha, OneNormConvention convention) {
  if (!(alpha >= 0.5 && alpha <= 1.0)) throw InputError("alpha must lie in [1/2, 1]");
  const double norm = h.one_norm(convention);
  if (!(norm > 0.0)) throw NumericError("choose_time: one-norm is zero");
  const double t = alpha / norm;
  return {t, 0, t * h.one_norm() < 1.0};
}

PhaseQubitCount n_phase_qubits_min(double t, double eps) {
  if (!(t > 0.0) || !(eps > 0.0)) throw NumericError("n_phase_qubits_min needs t > 0, eps > 0");
  const int raw = static_cast<int>(std::ceil(std::log2(1.0 / (t * eps)))) - 1;
  if (raw < 1) return {1, true};
  return {raw, false};
}

CVariants c_variants(const DenseOperator& delta, const StateVector& psi) {
  if (delta.rows() != psi.size()) throw NumericError("c_variants: dimension mismatch");
  const StateVector applied = delta * psi;
  return {spectral_norm(delta), applied.norm(), std::abs(psi.dot(applied))};
}

CVariants c_variants(const ErrorOperator& delta, const Spectrum& spectrum, Eigen::Index i) {
  if (delta.matrix.rows() != spectrum.dim()) throw NumericError("c_variants: dimension mismatch");
  if (i < 0 || i >= spectrum.dim()) throw NumericError("c_variants: state index out of range");
  return c_variants(delta.matrix, spectrum.state(i));
}

double triangle_c1(const LcuHamiltonian& h) {
  const auto terms = h.terms();
  double total = 0.0;
  for (std::size_t a = 0; a + 1 < terms.size(); ++a) {
    PauliSum inner(h.n_qubits());
    for (std::size_t b = a + 1; b < terms.size(); ++b) {
      if (!anticommute(terms[b].axes, terms[a].axes)) continue;
      const PauliProduct ba = multiply(terms[b].axes, terms[a].axes);
      inner.add(ba.axes, 2.0 * terms[b].coefficient * terms[a].coefficient * ba.phase);
    }
    if (!inner.empty()) total += spectral_norm(inner.to_dense());
  }
  return 0.5 * total;
}

double a_coefficient(const DenseOperator& delta, const StateVector& psi) {
  if (delta.rows() != psi.size()) throw NumericError("a_coefficient: dimension mismatch");
  const StateVector applied = delta * psi;
  const double second = applied.squaredNorm();
  if (second <= kVanishingSecondMoment) {
    throw NumericError("a_coefficient: <dH^2> vanishes, perturbation theory is irrelevant");
  }
  const double mean = psi.dot(applied).real();
  return std::clamp(std::sqrt(std::max(0.0, 1.0 - mean * mean / second)), 0.0, 1.0);
}

CombinedEpsilon epsilon_combined(const PrecisionTarget& target, double gap, double a_i) {
  target.validate();
  if (!(gap > 0.0)) throw NumericError("epsilon_combined: gap must be positive");
  if (!(a_i >= 0.0 && a_i <= 1.0)) throw NumericError("epsilon_combined: A must lie in [0, 1]");
  CombinedEpsilon out{target.eps_ch, a_i / gap * target.eps_ch};
  if (target.alpha_tar && a_i > 0.0) {
    out.eps = std::min(target.eps_ch, gap / a_i * *target.alpha_tar);
  }
  return out;
}

double TrotterResources::n_min_unrounded(int q) const {
  return std::ldexp(script_c, q - n_min_phase);
}

std::int64_t TrotterResources::n_min_of(int q) const {
  const double raw = std::ceil(n_min_unrounded(q));
  if (raw > 0x1p62) throw NumericError("n_min overflows the step-count range");
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(raw));
}

std::vector<std::int64_t> TrotterResources::schedule(int n_phase) const {
  std::vector<std::int64_t> out;
  for (int q = 0; q < n_phase; ++q) out.push_back(n_min_of(q));
  return out;
}

TrotterResources trotter_resources(double c_p, TrotterOrder order, double t, double eps,
                                   int extra_qubits) {
  if (c_p < 0.0 || !(eps > 0.0)) throw NumericError("trotter_resources needs c_p >= 0, eps > 0");
  if (extra_qubits < 0) throw InputError("extra phase qubits must be >= 0");
  const double p = order_value(order);
  const double script_c = std::numbers::pi * std::pow(c_p / std::pow(eps, p + 1.0), 1.0 / p);
  const double tot = std::ceil(std::ldexp(script_c, extra_qubits));
  if (tot > 0x1p62) throw NumericError("n_min-tot overflows the step-count range");
  return {script_c, n_phase_qubits_min(t, eps).value, extra_qubits,
          std::max<std::int64_t>(1, static_cast<std::int64_t>(tot))};
}

CpChoice cp_choice_from_string(const std::string& name) {
  if (name == "spectral") return CpChoice::kSpectral;
  if (name == "variance") return CpChoice::kVariance;
  if (name == "first-order") return CpChoice::kFirstOrder;
  if (name == "triangle") return CpChoice::kTriangle;
  throw InputError("unknown C_p choice \"" + name + "\" (spectral, variance, first-order, triangle)");
}

std::string to_string(CpChoice choice) {
  switch (choice) {
    case CpChoice::kSpectral: return "spectral";
    case CpChoice::kVariance: return "variance";
    case CpChoice::kFirstOrder: return "first-order";
    case CpChoice::kTriangle: return "triangle";
  }
  return "spectral";
}

BoundReport make_bound_report(const LcuHamiltonian& h, const Spectrum& spectrum,
                              const ErrorOperator& delta, const PrecisionTarget& target,
                              int extra_qubits, CpChoice choice) {
  target.validate();
  const Eigen::Index i = target.state_index;
  const CVariants c = c_variants(delta, spectrum, i);
  const double gap = spectrum.gap_of(i);

  std::optional<double> a_i;
  if (c.variance * c.variance > kVanishingSecondMoment) {
    a_i = a_coefficient(delta.matrix, spectrum.state(i));
  }
  const CombinedEpsilon eps = epsilon_combined(target, gap, a_i.value_or(1.0));

  std::optional<double> c_triangle;
  if (delta.order == TrotterOrder::kFirst) c_triangle = triangle_c1(h);

  double c_used = c.spectral;
  switch (choice) {
    case CpChoice::kSpectral: break;
    case CpChoice::kVariance: c_used = c.variance; break;
    case CpChoice::kFirstOrder: c_used = c.first_order; break;
    case CpChoice::kTriangle:
      if (!c_triangle) throw InputError("the triangle-bound constant is available for order 1 only");
      c_used = *c_triangle;
      break;
  }
  return {delta.order, i, spectrum.t(), c, c_triangle, a_i, gap, eps, choice, c_used,
          trotter_resources(c_used, delta.order, spectrum.t(), eps.eps, extra_qubits)};
}

bool ConditionLedger::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.holds; });
}

const ConditionCheck& ConditionLedger::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw InputError("no condition named " + name);
}

ConditionLedger verify_conditions(const LcuHamiltonian& h, const TrotterPlan& plan,
                                  const Spectrum& spectrum, const ErrorOperator& delta,
                                  const PrecisionTarget& target, int q,
                                  double first_order_slack) {
  target.validate();
  if (delta.order != plan.order()) throw InputError("error operator and plan orders differ");
  const Eigen::Index i = target.state_index;
  const double gap = spectrum.gap_of(i);
  const double t = plan.t();
  const DenseOperator exact = to_dense(h);
  if (exact.rows() != spectrum.dim()) throw NumericError("verify_conditions: dimension mismatch");

  ConditionLedger ledger{};
  ledger.q = q;
  ledger.n = plan.steps_for(q);
  ledger.lambda = plan.lambda(q);
  ledger.c = c_variants(delta, spectrum, i);
  ledger.gap = gap;
  if (ledger.c.variance * ledger.c.variance > kVanishingSecondMoment) {
    ledger.a_i = a_coefficient(delta.matrix, spectrum.state(i));
  }
  ledger.eps = epsilon_combined(target, gap, ledger.a_i.value_or(1.0)).eps;

  const DenseOperator heff = effective_hamiltonian(h, plan, q);
  const Spectrum effective = diagonalize(heff, t);
  const double two_pi_t_2q = 2.0 * std::numbers::pi * std::ldexp(t, q);
  const double unitary_diff = spectral_norm(exact_power_unitary(exact, t, q) -
                                            controlled_power_unitary(h, plan, q));
  ledger.heff_error = spectral_norm(heff - exact);
  ledger.unitary_lhs = unitary_diff / two_pi_t_2q;
  ledger.energy_lhs = std::abs(effective.energy(i) - spectrum.energy(i));
  ledger.state_lhs = gap / ledger.a_i.value_or(1.0) *
                     trace_distance(spectrum.state(i), effective.state(i));

  const double lam = ledger.lambda;
  const double slack = first_order_slack;
  auto& checks = ledger.checks;
  // Precision-target conditions.
  checks.push_back(make_check("unified_spectral", lam * ledger.c.spectral, ledger.eps));
  checks.push_back(make_check("unified_variance", lam * ledger.c.variance, ledger.eps));
  checks.push_back(make_check("energy_only", lam * ledger.c.first_order, slack * target.eps_ch));
  // Measured quantities against their first-order bounds.
  checks.push_back(make_check("unitary_exact_bound", unitary_diff,
                              two_pi_t_2q * ledger.heff_error + 1e-8));
  checks.push_back(make_check("unitary_first_order", ledger.unitary_lhs,
                              slack * lam * ledger.c.spectral, kMeasuredFloor));
  checks.push_back(make_check("energy_first_order", ledger.energy_lhs,
                              slack * lam * ledger.c.variance, kMeasuredFloor));
  checks.push_back(make_check("state_first_order", ledger.state_lhs,
                              slack * lam * ledger.c.variance, kMeasuredFloor));
  // Measured quantities against the precision target.
  checks.push_back(make_check("energy_within_eps", ledger.energy_lhs, ledger.eps, kMeasuredFloor));
  checks.push_back(make_check("state_within_eps", ledger.state_lhs, ledger.eps, kMeasuredFloor));
  return ledger;
}

}  // namespace qpeprec
