#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "qpeprec/bounds.hpp"
#include "qpeprec/error.hpp"
#include "qpeprec/qpe.hpp"
#include "support.hpp"

using namespace qpeprec;

namespace {

// Direct geometric sum (1/2^N) sum_k exp(2 pi i k x), no closed form.
std::complex<double> blur_oracle(double x, int n_phase) {
  const int dim = 1 << n_phase;
  std::complex<double> s = 0;
  for (int k = 0; k < dim; ++k) s += std::polar(1.0, 2 * M_PI * k * x);
  return s / static_cast<double>(dim);
}

Spectrum random_spectrum(std::mt19937_64& rng, Eigen::Index dim, double t) {
  return diagonalize(testing::random_hermitian(rng, dim), t);
}

double total(const std::vector<double>& p) { return std::accumulate(p.begin(), p.end(), 0.0); }

}  // namespace

TEST_CASE("blur examples") {
  CHECK(std::abs(blur(0.0, 5) - 1.0) < 1e-15);
  CHECK(std::abs(blur(3.0, 5) - 1.0) < 1e-12);
  for (int k = 1; k < 8; ++k) CHECK(std::abs(blur(k / 8.0, 3)) < 1e-14);
  CHECK(std::abs(std::abs(blur(1.0 / 4096, 11)) - 0.63662) < 1e-5);
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int rep = 0; rep < 200; ++rep) {
    const double x = u(rng);
    const int n = 1 + rep % 8;
    CHECK(std::abs(blur(x, n) - blur_oracle(x, n)) < 1e-11);
  }
}

TEST_CASE("distribution normalization for any single phase") {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> u(0, 1);
  for (int rep = 0; rep < 100; ++rep) {
    const double theta = u(rng);
    const double w = 1.0;
    const auto p = distribution_from_phases(std::span(&theta, 1), std::span(&w, 1), 1 + rep % 10);
    CHECK(std::abs(total(p) - 1.0) < 1e-10);
  }
}

TEST_CASE("analytic distribution: exact phases") {
  // Single eigenstate on the grid.
  Eigen::VectorXd e(2);
  e << -0.375, 0.25;  // t = 1: theta = 0.375 = 3/8 and 0.75 = 6/8
  const Spectrum sp(e, Eigen::MatrixXcd::Identity(2, 2), 1.0);
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(2);
  psi0(0) = 1;
  const auto out = analytic_distribution(sp, QpeConfig{3, 1.0, 0, InitialState(psi0), 0});
  CHECK(out.l_star == 3);
  CHECK(out.probability_l_star() == doctest::Approx(1.0));
  CHECK(out.trace_distance < 1e-12);
  CHECK(out.energy_estimate == doctest::Approx(-0.375));

  Eigen::VectorXcd mix = Eigen::VectorXcd::Constant(2, std::sqrt(0.5));
  const auto both = analytic_distribution(sp, QpeConfig{3, 1.0, 0, InitialState(mix), 0});
  CHECK(both.distribution[3] == doctest::Approx(0.5));
  CHECK(both.distribution[6] == doctest::Approx(0.5));
  CHECK(both.l_star == 3);
  CHECK(both.trace_distance < 1e-12);
}

TEST_CASE("analytic distribution on H2") {
  const auto& h = testing::h2();
  const auto dense = to_dense(h);
  const auto time = choose_time(h, 0.5);
  const auto sp = diagonalize(dense, time.t);
  const QpeConfig cfg{11, time.t, 0, InitialState::basis_state("1100"), 0};
  const auto out = analytic_distribution(sp, cfg);
  CHECK(out.l_star == 465);
  CHECK(std::abs(out.energy_estimate - (-1.0553)) < 3e-4);
  CHECK(std::abs(out.energy_estimate - (-1.055160)) < 1.6e-3);
  CHECK(std::abs(total(out.distribution) - 1.0) < 1e-10);
  CHECK(std::abs(out.output_amplitudes.squaredNorm() - 1.0) < 1e-9);
  CHECK_THROWS_AS(analytic_distribution(sp.with_time(0.1), cfg), InputError);
}

TEST_CASE("energy_from_outcome and trace_distance") {
  const auto any = InitialState::basis_state("0");
  CHECK(energy_from_outcome(0, QpeConfig{4, 0.3, 0, any, 0}) == 0.0);
  CHECK(std::abs(energy_from_outcome(465, QpeConfig{11, 0.215149, 0, any, 0}) - (-1.05532)) < 1e-5);
  CHECK(energy_from_outcome(8, QpeConfig{4, 0.5, 0, any, 0}) == doctest::Approx(-1.0));

  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(2), b = Eigen::VectorXcd::Zero(2);
  a(0) = 1;
  b(1) = 1;
  CHECK(trace_distance(a, a) == doctest::Approx(0.0));
  CHECK(trace_distance(a, b) == doctest::Approx(1.0));
  Eigen::VectorXcd c = Eigen::VectorXcd::Constant(2, std::sqrt(0.5));
  CHECK(trace_distance(a, c) == doctest::Approx(0.70711).epsilon(1e-5));
  CHECK(trace_distance(c, a) == doctest::Approx(trace_distance(a, c)));
  CHECK_THROWS(trace_distance(a, 2.0 * c));
}

TEST_CASE("config validation") {
  const auto any = InitialState::basis_state("0");
  CHECK_THROWS_AS(QpeConfig({0, 0.3, 0, any, 0}).validate(), InputError);
  CHECK_THROWS_AS(QpeConfig({17, 0.3, 0, any, 0}).validate(), InputError);
  CHECK_THROWS_AS(QpeConfig({4, -0.3, 0, any, 0}).validate(), InputError);
}

TEST_CASE("random spectra: normalization and grid covariance") {
  std::mt19937_64 rng(79);
  for (int seed = 0; seed < 100; ++seed) {
    const int n_phase = 3 + seed % 6;
    const auto sp = random_spectrum(rng, 4, 0.3);
    const InitialState init(testing::random_state(rng, 4));
    const QpeConfig cfg{n_phase, 0.3, 0, init, 0};
    const auto out = analytic_distribution(sp, cfg);
    CHECK(std::abs(total(out.distribution) - 1.0) < 1e-10);
    CHECK(std::abs(out.output_amplitudes.squaredNorm() - 1.0) < 1e-9);
    CHECK(out.trace_distance >= 0.0);
    CHECK(out.trace_distance <= 1.0);

    // Shift every phase by k / 2^N.
    const std::int64_t dim = std::int64_t{1} << n_phase;
    const std::int64_t k = 1 + seed % (dim - 1);
    std::vector<double> ph(sp.phases().data(), sp.phases().data() + sp.dim());
    std::vector<double> shifted = ph;
    for (auto& x : shifted) x += static_cast<double>(k) / dim;
    const auto w = init.overlaps(sp).cwiseAbs2().eval();
    std::vector<double> weights(w.data(), w.data() + w.size());
    const auto p0 = distribution_from_phases(ph, weights, n_phase);
    const auto p1 = distribution_from_phases(shifted, weights, n_phase);
    for (std::int64_t l = 0; l < dim; ++l) {
      CHECK(std::abs(p1[(l + k) % dim] - p0[l]) < 1e-12);
    }
  }
}

TEST_CASE("statevector QPE with exact powers reproduces the analytic distribution") {
  std::mt19937_64 rng(83);
  for (int seed = 0; seed < 20; ++seed) {
    const auto h = testing::random_lcu(rng, 2, 3);
    const auto dense = to_dense(h);
    const double t = choose_time(h, 0.5).t;
    const auto sp = diagonalize(dense, t);
    const QpeConfig cfg{6, t, 0, InitialState(testing::random_state(rng, 4)), 0};
    const auto a = analytic_distribution(sp, cfg);
    const auto b = exact_qpe(dense, cfg, sp);
    for (std::size_t l = 0; l < a.distribution.size(); ++l) {
      CHECK(std::abs(a.distribution[l] - b.distribution[l]) < 1e-10);
    }
    CHECK(a.l_star == b.l_star);
    CHECK(std::abs(a.trace_distance - b.trace_distance) < 1e-8);
  }
}

TEST_CASE("uniform-plan QPE equals analytic QPE on the effective spectrum") {
  std::mt19937_64 rng(89);
  for (int seed = 0; seed < 20; ++seed) {
    const auto h = testing::random_lcu(rng, 2, 3);
    const double t = choose_time(h, 0.5).t;
    const auto plan = TrotterPlan::uniform(TrotterOrder::kFirst, t, 3, 10);
    const auto hs = effective_hamiltonian(h, plan, 0);
    const auto sp_s = diagonalize(hs, t);
    const QpeConfig cfg{7, t, 0, InitialState(testing::random_state(rng, 4)), 0};
    const auto a = analytic_distribution(sp_s, cfg);
    const auto b = trotterized_qpe(h, plan, cfg, sp_s);
    double worst = 0;
    for (std::size_t l = 0; l < a.distribution.size(); ++l) {
      worst = std::max(worst, std::abs(a.distribution[l] - b.distribution[l]));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("per-q bound plan on H2 reaches chemical precision at N = 11") {
  const auto& h = testing::h2();
  const auto dense = to_dense(h);
  const auto time = choose_time(h, 0.5);
  const auto sp = diagonalize(dense, time.t);
  const auto rep = make_bound_report(h, sp, delta_h1(h), PrecisionTarget{}, 0);
  const auto plan = TrotterPlan::per_q(TrotterOrder::kFirst, time.t, rep.resources.schedule(11));
  const QpeConfig cfg{11, time.t, 0, InitialState::basis_state("1100"), 0};
  const auto out = trotterized_qpe(h, plan, cfg, sp);
  CHECK(std::abs(out.energy_estimate - sp.energy(0)) <= 1.6e-3);
  CHECK(std::abs(total(out.distribution) - 1.0) < 1e-10);
}

TEST_CASE("shot sampling is seeded") {
  const auto& h = testing::h2();
  const auto time = choose_time(h, 0.5);
  const auto sp = diagonalize(to_dense(h), time.t);
  const auto out = analytic_distribution(sp, QpeConfig{8, time.t, 0, InitialState::basis_state("1100"), 0});
  const auto a = sample_outcomes(out, 500, 42);
  const auto b = sample_outcomes(out, 500, 42);
  CHECK(a == b);
  std::int64_t n = 0;
  for (const auto& [l, c] : a) n += c;
  CHECK(n == 500);
}
