#include "qpeprec/qpe.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <unsupported/Eigen/FFT>

#include "qpeprec/error.hpp"

namespace qpeprec {
namespace {

constexpr double kPi = std::numbers::pi;

std::int64_t argmax_first(const std::vector<double>& p) {
  std::size_t best = 0;
  for (std::size_t l = 1; l < p.size(); ++l) {
    if (p[l] > p[best]) best = l;
  }
  return static_cast<std::int64_t>(best);
}

void finish_outcome(QpeOutcome& out, const Spectrum& reference, const QpeConfig& config) {
  out.output_amplitudes = reference.states().adjoint() * out.output_state;
  out.trace_distance = trace_distance(reference.state(0), out.output_state);
  out.energy_estimate = energy_from_outcome(out.l_star, config);
}

}  // namespace

void QpeConfig::validate() const {
  if (n_phase < 1) throw InputError("QPE needs at least one phase qubit");
  if (n_phase > kPhaseQubitCap) {
    throw InputError("QPE phase register capped at " + std::to_string(kPhaseQubitCap) + " qubits");
  }
  if (!(t > 0.0) || !std::isfinite(t)) throw InputError("QPE time t must be > 0");
  if (extra_a < 0) throw InputError("extra phase qubits must be >= 0");
}

std::complex<double> blur(double x, int n_phase) {
  const double r = x - std::round(x);
  const double s = std::sin(kPi * r);
  if (s == 0.0) return 1.0;
  const double grid = std::ldexp(1.0, n_phase);
  const double magnitude = std::sin(kPi * grid * r) / (grid * s);
  return std::polar(magnitude, kPi * (grid - 1.0) * r);
}

std::vector<double> distribution_from_phases(std::span<const double> phases,
                                             std::span<const double> weights, int n_phase) {
  if (phases.size() != weights.size()) throw NumericError("phases and weights differ in size");
  const std::int64_t size = std::int64_t{1} << n_phase;
  const double grid = static_cast<double>(size);
  std::vector<double> p(static_cast<std::size_t>(size), 0.0);
  for (std::int64_t l = 0; l < size; ++l) {
    double acc = 0.0;
    for (std::size_t j = 0; j < phases.size(); ++j) {
      if (weights[j] == 0.0) continue;
      acc += weights[j] * std::norm(blur(phases[j] - static_cast<double>(l) / grid, n_phase));
    }
    p[static_cast<std::size_t>(l)] = acc;
  }
  return p;
}

QpeOutcome analytic_distribution(const Spectrum& spectrum, const QpeConfig& config) {
  config.validate();
  if (std::abs(spectrum.t() - config.t) > 1e-12 * config.t) {
    throw InputError("spectrum phases were computed for a different t");
  }
  const Eigen::VectorXcd c = config.initial.overlaps(spectrum);
  const Eigen::VectorXd weights = c.cwiseAbs2();
  const Eigen::VectorXd& phases = spectrum.phases();

  QpeOutcome out;
  out.distribution = distribution_from_phases(
      std::span<const double>(phases.data(), static_cast<std::size_t>(phases.size())),
      std::span<const double>(weights.data(), static_cast<std::size_t>(weights.size())),
      config.n_phase);
  out.l_star = argmax_first(out.distribution);

  const double shift = static_cast<double>(out.l_star) / static_cast<double>(config.grid_size());
  const double norm = std::sqrt(out.probability_l_star());
  Eigen::VectorXcd amps(c.size());
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    amps(j) = c(j) * blur(phases(j) - shift, config.n_phase) / norm;
  }
  out.output_state = spectrum.states() * amps;
  finish_outcome(out, spectrum, config);
  return out;
}

QpeOutcome qpe_from_powers(std::span<const DenseOperator> powers, const QpeConfig& config,
                           const Spectrum& reference) {
  config.validate();
  if (static_cast<int>(powers.size()) != config.n_phase) {
    throw InputError("need one controlled power per phase qubit");
  }
  const Eigen::Index dim = config.initial.dim();
  const std::int64_t size = config.grid_size();
  if (size * dim > kBranchEntryCap) {
    throw InputError("branch sweep of 2^N x dim = " + std::to_string(size * dim) +
                     " entries exceeds the cap");
  }
  for (const auto& u : powers) {
    if (u.rows() != dim || u.cols() != dim) throw NumericError("controlled power has wrong size");
  }
  if (reference.dim() != dim) throw NumericError("reference spectrum has wrong dimension");

  // Column m holds the system state on phase-register branch |m>.
  Eigen::MatrixXcd branches(dim, size);
  branches.col(0) = config.initial.amplitudes();
  for (int q = 0; q < config.n_phase; ++q) {
    const Eigen::Index half = Eigen::Index{1} << q;
    branches.middleCols(half, half).noalias() = powers[static_cast<std::size_t>(q)] *
                                                branches.leftCols(half);
  }

  // amplitude(l) = 2^-N sum_m exp(-2 pi i m l / 2^N) branch(m): a forward DFT.
  Eigen::FFT<double> fft;
  Eigen::MatrixXcd amplitudes(dim, size);
  std::vector<std::complex<double>> in(static_cast<std::size_t>(size));
  std::vector<std::complex<double>> spectrum_out;
  const double inv = 1.0 / static_cast<double>(size);
  for (Eigen::Index d = 0; d < dim; ++d) {
    for (std::int64_t m = 0; m < size; ++m) in[static_cast<std::size_t>(m)] = branches(d, m);
    fft.fwd(spectrum_out, in);
    for (std::int64_t l = 0; l < size; ++l) {
      amplitudes(d, l) = spectrum_out[static_cast<std::size_t>(l)] * inv;
    }
  }

  QpeOutcome out;
  out.distribution.resize(static_cast<std::size_t>(size));
  for (std::int64_t l = 0; l < size; ++l) {
    out.distribution[static_cast<std::size_t>(l)] = amplitudes.col(l).squaredNorm();
  }
  out.l_star = argmax_first(out.distribution);
  out.output_state = amplitudes.col(out.l_star) / std::sqrt(out.probability_l_star());
  finish_outcome(out, reference, config);
  return out;
}

QpeOutcome trotterized_qpe(const LcuHamiltonian& h, const TrotterPlan& plan,
                           const QpeConfig& config, const Spectrum& reference) {
  config.validate();
  if (plan.max_q() < config.n_phase - 1) {
    throw InputError("Trotter plan covers fewer powers than phase qubits");
  }
  std::vector<DenseOperator> powers;
  powers.reserve(static_cast<std::size_t>(config.n_phase));
  for (int q = 0; q < config.n_phase; ++q) powers.push_back(controlled_power_unitary(h, plan, q));
  return qpe_from_powers(powers, config, reference);
}

QpeOutcome exact_qpe(const DenseOperator& h, const QpeConfig& config, const Spectrum& reference) {
  config.validate();
  std::vector<DenseOperator> powers;
  powers.reserve(static_cast<std::size_t>(config.n_phase));
  for (int q = 0; q < config.n_phase; ++q) powers.push_back(exact_power_unitary(h, config.t, q));
  return qpe_from_powers(powers, config, reference);
}

double trace_distance(const StateVector& a, const StateVector& b) {
  if (a.size() != b.size()) throw NumericError("trace_distance: dimension mismatch");
  if (std::abs(a.norm() - 1.0) > 1e-6 || std::abs(b.norm() - 1.0) > 1e-6) {
    throw NumericError("trace_distance: states must be normalized");
  }
  const double fidelity = std::min(1.0, std::norm(a.dot(b)));
  return std::sqrt(1.0 - fidelity);
}

double energy_from_outcome(std::int64_t l_star, const QpeConfig& config) {
  const double frac = static_cast<double>(l_star) / static_cast<double>(config.grid_size());
  return (-frac + static_cast<double>(config.ceil_e0_t)) / config.t;
}

std::map<std::int64_t, std::int64_t> sample_outcomes(const QpeOutcome& outcome, std::int64_t shots,
                                                     std::uint64_t seed) {
  if (shots < 1) throw InputError("shots must be >= 1");
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::int64_t> dist(outcome.distribution.begin(),
                                                outcome.distribution.end());
  std::map<std::int64_t, std::int64_t> counts;
  for (std::int64_t s = 0; s < shots; ++s) ++counts[dist(rng)];
  return counts;
}

}  // namespace qpeprec
