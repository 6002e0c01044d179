#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qpeprec/hamiltonian.hpp"
#include "qpeprec/linalg.hpp"
#include "qpeprec/spectrum.hpp"
#include "qpeprec/trotter.hpp"

namespace qpeprec {

inline constexpr int kPhaseQubitCap = 16;
// Upper bound on 2^N * dim stored by the branch sweep (complex entries).
inline constexpr std::int64_t kBranchEntryCap = std::int64_t{1} << 25;

struct QpeConfig {
  int n_phase;        // N
  double t;
  int extra_a = 0;    // N = N_min + a, informational
  InitialState initial;
  int ceil_e0_t = 0;  // a priori ceil(E0 t)

  void validate() const;
  std::int64_t grid_size() const { return std::int64_t{1} << n_phase; }
};

struct QpeOutcome {
  std::vector<double> distribution;  // P(l), l = 0 .. 2^N - 1
  std::int64_t l_star = 0;
  double energy_estimate = 0.0;
  StateVector output_state;           // system register after measuring l_star
  Eigen::VectorXcd output_amplitudes; // <psi_j|output_state> in the reference eigenbasis
  double trace_distance = 0.0;        // to the reference ground state

  double probability_l_star() const { return distribution[static_cast<std::size_t>(l_star)]; }
};

// f(x) = (1/2^N) sin(pi 2^N x) / sin(pi x) * exp(i pi (2^N - 1) x), the
// Fourier kernel spreading a phase over the 2^N grid. 1-periodic; f = 1 on
// integers.
std::complex<double> blur(double x, int n_phase);

// P(l) = sum_j w_j |f(theta_j - l / 2^N)|^2.
std::vector<double> distribution_from_phases(std::span<const double> phases,
                                             std::span<const double> weights, int n_phase);

// QPE with an exact unitary whose eigensystem is `spectrum`; the output
// state is expressed in that eigenbasis (ties for l* go to the smallest l).
QpeOutcome analytic_distribution(const Spectrum& spectrum, const QpeConfig& config);

// Statevector QPE from explicit controlled powers (powers[q] replaces
// U^{2^q}). Branch m of the phase register carries
// prod_{q in bits(m)} powers[q] |psi_init>, with q = 0 applied first; the
// outcome amplitudes are the inverse Fourier transform over m.
QpeOutcome qpe_from_powers(std::span<const DenseOperator> powers, const QpeConfig& config,
                           const Spectrum& reference);

QpeOutcome trotterized_qpe(const LcuHamiltonian& h, const TrotterPlan& plan,
                           const QpeConfig& config, const Spectrum& reference);

QpeOutcome exact_qpe(const DenseOperator& h, const QpeConfig& config, const Spectrum& reference);

// sqrt(1 - |<a|b>|^2) for normalized pure states.
double trace_distance(const StateVector& a, const StateVector& b);

// E ~ -(1/t)(l / 2^N) + (1/t) ceil(E0 t).
double energy_from_outcome(std::int64_t l_star, const QpeConfig& config);

// Seeded finite-shot histogram {l: count} drawn from the exact distribution.
std::map<std::int64_t, std::int64_t> sample_outcomes(const QpeOutcome& outcome, std::int64_t shots,
                                                     std::uint64_t seed);

}  // namespace qpeprec
