#include "qpeprec/trotter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qpeprec/error.hpp"

namespace qpeprec {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::complex<double> kI{0.0, 1.0};

// m <- exp(-i theta P) m = cos(theta) m - i sin(theta) P m.
void apply_rotation_left(std::string_view axes, double theta, DenseOperator& m) {
  DenseOperator pm = m;
  apply_pauli_left(axes, pm);
  m = std::cos(theta) * m - kI * std::sin(theta) * pm;
}

void check_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw NumericError("Trotter plan needs a finite t > 0");
}

}  // namespace

TrotterOrder trotter_order_from_int(int p) {
  if (p == 1) return TrotterOrder::kFirst;
  if (p == 2) return TrotterOrder::kSecond;
  throw InputError("Trotter order must be 1 or 2");
}

TrotterPlan::TrotterPlan(TrotterOrder order, double t, Mode mode, std::vector<std::int64_t> steps,
                         int max_q)
    : order_(order), t_(t), mode_(mode), steps_(std::move(steps)), max_q_(max_q) {
  check_time(t_);
  if (steps_.empty()) throw NumericError("Trotter plan has no step counts");
  for (auto n : steps_) {
    if (n < 1) throw NumericError("Trotter step counts must be >= 1");
  }
  if (max_q_ < 0 || max_q_ > 52) throw NumericError("Trotter plan power range must be 0..52");
}

TrotterPlan TrotterPlan::fixed(TrotterOrder order, double t, std::int64_t n, int max_q) {
  return TrotterPlan(order, t, Mode::kFixed, {n}, max_q);
}

TrotterPlan TrotterPlan::uniform(TrotterOrder order, double t, std::int64_t n0, int max_q) {
  if (max_q >= 0 && max_q < 62 && n0 > (std::numeric_limits<std::int64_t>::max() >> max_q)) {
    throw NumericError("uniform Trotter plan: n0 * 2^max_q overflows");
  }
  return TrotterPlan(order, t, Mode::kUniform, {n0}, max_q);
}

TrotterPlan TrotterPlan::per_q(TrotterOrder order, double t, std::vector<std::int64_t> steps) {
  const int max_q = static_cast<int>(steps.size()) - 1;
  return TrotterPlan(order, t, Mode::kPerQ, std::move(steps), max_q);
}

std::int64_t TrotterPlan::steps_for(int q) const {
  if (q < 0 || q > max_q_) {
    throw NumericError("power 2^" + std::to_string(q) + " is outside the plan range 0.." +
                       std::to_string(max_q_));
  }
  switch (mode_) {
    case Mode::kFixed: return steps_.front();
    case Mode::kUniform: return steps_.front() << q;
    case Mode::kPerQ: return steps_[static_cast<std::size_t>(q)];
  }
  return steps_.front();
}

double TrotterPlan::step_time(int q) const {
  return std::ldexp(t_, q) / static_cast<double>(steps_for(q));
}

double TrotterPlan::lambda(int q) const {
  return std::pow(kTwoPi * step_time(q), order_value(order_));
}

std::string TrotterPlan::describe() const {
  std::ostringstream out;
  switch (mode_) {
    case Mode::kFixed: out << "fixed:" << steps_.front(); break;
    case Mode::kUniform: out << "uniform:" << steps_.front(); break;
    case Mode::kPerQ: {
      out << "per-q:";
      for (std::size_t q = 0; q < steps_.size(); ++q) out << (q ? "/" : "") << steps_[q];
      break;
    }
  }
  return out.str();
}

DenseOperator trotter_step(const LcuHamiltonian& h, TrotterOrder order, double dt) {
  const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
  DenseOperator step = DenseOperator::Identity(dim, dim);
  const auto terms = h.terms();
  if (order == TrotterOrder::kFirst) {
    for (const auto& term : terms) {
      apply_rotation_left(term.axes, kTwoPi * dt * term.coefficient, step);
    }
    return step;
  }
  for (const auto& term : terms) {
    apply_rotation_left(term.axes, 0.5 * kTwoPi * dt * term.coefficient, step);
  }
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    apply_rotation_left(it->axes, 0.5 * kTwoPi * dt * it->coefficient, step);
  }
  return step;
}

DenseOperator matrix_power(const DenseOperator& step, std::int64_t n) {
  if (n < 0) throw NumericError("matrix_power: negative exponent");
  if (n == 0) return DenseOperator::Identity(step.rows(), step.cols());
  if (n == 1) return step;
  if (n % 2 == 0) {
    const DenseOperator half = matrix_power(step, n / 2);
    return half * half;
  }
  return step * matrix_power(step, n - 1);
}

DenseOperator controlled_power_unitary(const LcuHamiltonian& h, const TrotterPlan& plan, int q) {
  const std::int64_t n = plan.steps_for(q);
  return matrix_power(trotter_step(h, plan.order(), plan.step_time(q)), n);
}

DenseOperator exact_power_unitary(const DenseOperator& h, double t, int q) {
  return expm_hermitian(h, -kTwoPi * std::ldexp(t, q));
}

ErrorOperator delta_h1(const LcuHamiltonian& h) {
  PauliSum sum(h.n_qubits());
  const auto terms = h.terms();
  for (std::size_t a = 0; a + 1 < terms.size(); ++a) {
    for (std::size_t b = a + 1; b < terms.size(); ++b) {
      if (!anticommute(terms[b].axes, terms[a].axes)) continue;
      // [P_b, P_a] = 2 P_b P_a for anticommuting strings.
      const PauliProduct ba = multiply(terms[b].axes, terms[a].axes);
      sum.add(ba.axes, -0.5 * kI * 2.0 * terms[b].coefficient * terms[a].coefficient * ba.phase);
    }
  }
  DenseOperator matrix = sum.to_dense();
  return {TrotterOrder::kFirst, std::move(sum), std::move(matrix)};
}

ErrorOperator delta_h2(const LcuHamiltonian& h) {
  const auto terms = h.terms();
  const std::size_t m = terms.size();
  std::vector<const PauliTerm*> seq(2 * m);
  for (std::size_t k = 0; k < m; ++k) {
    seq[k] = &terms[k];
    seq[2 * m - 1 - k] = &terms[k];
  }

  PauliSum sum(h.n_qubits());
  for (std::size_t a = 0; a + 1 < seq.size(); ++a) {
    for (std::size_t b = a + 1; b < seq.size(); ++b) {
      if (!anticommute(seq[b]->axes, seq[a]->axes)) continue;
      const PauliProduct inner = multiply(seq[b]->axes, seq[a]->axes);
      const Complex inner_coeff = 2.0 * seq[b]->coefficient * seq[a]->coefficient * inner.phase;
      for (std::size_t v = b; v < seq.size(); ++v) {
        if (!anticommute(seq[v]->axes, inner.axes)) continue;
        const PauliProduct outer = multiply(seq[v]->axes, inner.axes);
        const double weight = (v == b) ? 0.5 : 1.0;
        sum.add(outer.axes,
                (-1.0 / 3.0) * weight * 2.0 * seq[v]->coefficient * inner_coeff * outer.phase);
      }
    }
  }
  DenseOperator matrix = sum.to_dense();
  return {TrotterOrder::kSecond, std::move(sum), std::move(matrix)};
}

ErrorOperator delta_h(const LcuHamiltonian& h, TrotterOrder order) {
  return order == TrotterOrder::kFirst ? delta_h1(h) : delta_h2(h);
}

DenseOperator effective_hamiltonian(const LcuHamiltonian& h, TrotterOrder order, double dt) {
  if (!(dt * h.one_norm() < 0.5)) {
    throw NumericError(
        "effective_hamiltonian: step is outside the principal-branch window "
        "(need dt * one_norm < 1/2); increase n");
  }
  return logm_unitary_hermitian(trotter_step(h, order, dt), -kTwoPi * dt);
}

DenseOperator effective_hamiltonian(const LcuHamiltonian& h, const TrotterPlan& plan, int q) {
  return effective_hamiltonian(h, plan.order(), plan.step_time(q));
}

FirstOrderExtraction extract_first_order(const LcuHamiltonian& h, TrotterOrder order, double t,
                                         std::span<const std::int64_t> n_values) {
  std::vector<std::int64_t> ns(n_values.begin(), n_values.end());
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (ns.size() < 3) throw InputError("extract_first_order needs at least 3 distinct n values");

  const DenseOperator exact = to_dense(h);
  const auto k = static_cast<Eigen::Index>(ns.size());
  std::vector<DenseOperator> diffs;
  std::vector<double> lambdas;
  for (auto n : ns) {
    const auto plan = TrotterPlan::fixed(order, t, n, 0);
    diffs.push_back(effective_hamiltonian(h, plan, 0) - exact);
    lambdas.push_back(plan.lambda(0));
  }

  // (H^S - H) / lambda = dH + lambda R1 + lambda^2 R2 + ...; least-squares
  // polynomial in lambda (degree <= 2), keep the intercept.
  const Eigen::Index degree = std::min<Eigen::Index>(k - 1, 2);
  Eigen::MatrixXd vander(k, degree + 1);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index d = 0; d <= degree; ++d) {
      vander(i, d) = std::pow(lambdas[static_cast<std::size_t>(i)], static_cast<double>(d));
    }
  }
  const Eigen::MatrixXd weights =
      vander.colPivHouseholderQr().solve(Eigen::MatrixXd::Identity(k, k));

  DenseOperator estimate = DenseOperator::Zero(exact.rows(), exact.cols());
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto si = static_cast<std::size_t>(i);
    estimate += (weights(0, i) / lambdas[si]) * diffs[si];
  }
  estimate = 0.5 * (estimate + estimate.adjoint());

  FirstOrderExtraction out{order, estimate, ns, lambdas, {}, std::nullopt};
  const double floor = 1e-11 * std::max(1.0, spectral_norm(exact));
  bool all_at_floor = true;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double r = spectral_norm(diffs[i] - lambdas[i] * estimate);
    out.residuals.push_back(r);
    if (r > floor) all_at_floor = false;
  }
  if (!all_at_floor) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const double x = std::log(lambdas[i]);
      const double y = std::log(std::max(out.residuals[i], std::numeric_limits<double>::min()));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double nk = static_cast<double>(ns.size());
    const double slope = (nk * sxy - sx * sy) / (nk * sxx - sx * sx);
    out.residual_slope = slope;
    if (!(slope >= 0.5 && slope <= 3.0)) {
      throw NumericError("extract_first_order: non-convergent regression (residual slope " +
                         std::to_string(slope) + ")");
    }
  }
  return out;
}

FormulaComparison compare_with_formula(const FirstOrderExtraction& extraction,
                                       const ErrorOperator& formula) {
  const DenseOperator& e = extraction.estimate;
  const DenseOperator& f = formula.matrix;
  if (e.rows() != f.rows()) throw NumericError("compare_with_formula: dimension mismatch");
  FormulaComparison out{std::nullopt, 0.0, spectral_norm(e), spectral_norm(f)};
  const double ff = f.squaredNorm();
  double c = 0.0;
  if (ff > 0.0) {
    c = (f.adjoint() * e).trace().real() / ff;
    out.ratio = c;
  }
  out.relative_residual =
      out.extracted_norm > 0.0 ? spectral_norm(e - c * f) / out.extracted_norm : 0.0;
  return out;
}

}  // namespace qpeprec
