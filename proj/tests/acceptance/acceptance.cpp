// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "qpeprec/bounds.hpp"
#include "qpeprec/qpe.hpp"
#include "qpeprec/reports.hpp"
#include "support.hpp"

using namespace qpeprec;
namespace tst = qpeprec::testing;

namespace {

class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)) {}

  void expect(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4))) {
    char buf[256];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    std::printf("    [%s] %s\n", ok ? "ok" : "FAILED", buf);
    ok_ = ok_ && ok;
  }
  bool ok() const { return ok_; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  bool ok_ = true;
};

struct H2 {
  const LcuHamiltonian& h = tst::h2();
  DenseOperator dense = to_dense(h);
  TimeChoice time = choose_time(h, 0.5);
  Spectrum spectrum = diagonalize(dense, time.t);
  InitialState hf = InitialState::basis_state("1100");
};

void table_reference(Criterion& c) {
  RunConfig cfg;
  cfg.hamiltonian = tst::fixture_path();
  const auto r = cmd_analyze(cfg);
  auto num = [&](const char* k) { return r.at(k).get<double>(); };
  c.expect(std::abs(num("E_0") + 1.055160) <= 1e-4, "E_0 = %.6f (ref -1.055160 +- 1e-4)", num("E_0"));
  c.expect(std::abs(num("E_init") + 1.042996) <= 1e-4, "E_init(HF) = %.6f (ref -1.042996 +- 1e-4)",
           num("E_init"));
  c.expect(std::abs(num("Delta_E_0") - 0.702985) <= 1e-3, "Delta E_0 = %.6f (ref 0.702985 +- 1e-3)",
           num("Delta_E_0"));
  c.expect(std::abs(num("t") - 0.215149) <= 1e-5, "t = %.6f (ref 0.215149 +- 1e-5)", num("t"));
  c.expect(r.at("ceil_E0_t").get<int>() == 0, "ceil(E_0 t) = %d (ref 0)", r.at("ceil_E0_t").get<int>());
  c.expect(r.at("N_min").get<int>() == 11, "N_min = %d (ref 11)", r.at("N_min").get<int>());
  // Independent dense commutator oracle for ||dH1||.
  const double oracle_norm = spectral_norm(tst::delta_h1_oracle(tst::h2()));
  c.expect(std::abs(num("norm_delta_H1") - 0.052420) <= 1e-4 &&
               std::abs(oracle_norm - num("norm_delta_H1")) <= 1e-12,
           "||dH1||_2 = %.6f, dense oracle %.6f (ref 0.052420 +- 1e-4)", num("norm_delta_H1"),
           oracle_norm);
  c.expect(std::abs(num("variance_root_delta_H1") - num("norm_delta_H1")) <= 1e-6,
           "variance root = %.8f equals ||dH1||_2 within 1e-6", num("variance_root_delta_H1"));
  c.expect(std::abs(num("A_0") - 1.0) <= 1e-9, "A_0 = %.12f (ref 1 +- 1e-9)", num("A_0"));
  c.expect(std::abs(num("C1_prime") - 0.196930) <= 1e-4, "C1' = %.6f (ref 0.196930 +- 1e-4)",
           num("C1_prime"));
  const double tot = num("n_min_tot");
  c.expect(std::abs(tot - 6.43e4) / 6.43e4 <= 0.02, "n_min-tot(a=0) = %.0f (ref 6.43e4 +- 2%%)", tot);
  const int n0 = r.at("n_min_q0").get<int>();
  c.expect(std::abs(n0 - 30) <= 3, "n_min(0,t) literal = %d (unrounded %.3f), reference 30, +-3", n0,
           num("n_min_q0_unrounded"));
}

void convergence_slopes(Criterion& c) {
  auto remainder_slope = [](const LcuHamiltonian& h) {
    const double t = 0.5 / h.one_norm(OneNormConvention::kExcludeIdentity);
    const auto d = tst::delta_h1_oracle(h);
    const auto dense = to_dense(h);
    std::vector<double> lam, res;
    for (std::int64_t n : {16, 23, 32, 45, 64, 91, 128}) {
      const auto plan = TrotterPlan::fixed(TrotterOrder::kFirst, t, n);
      lam.push_back(plan.lambda(0));
      res.push_back(spectral_norm(effective_hamiltonian(h, plan, 0) - dense - plan.lambda(0) * d));
    }
    return tst::loglog_slope(lam, res);
  };

  const double s_h2 = remainder_slope(tst::h2());
  c.expect(s_h2 >= 1.8 && s_h2 <= 2.2, "H2: slope of ||H^S - H - lambda dH1|| vs lambda = %.4f", s_h2);

  std::mt19937_64 rng(20240101);
  int built = 0;
  while (built < 10) {
    const auto h = tst::random_lcu(rng, 2, 3);
    if (spectral_norm(tst::delta_h1_oracle(h)) < 1e-3) continue;  // commuting draw, no error term
    const double s = remainder_slope(h);
    c.expect(s >= 1.8 && s <= 2.2, "random 2-qubit LCU #%d: slope = %.4f", built, s);
    ++built;
  }

  const H2 sys;
  const auto psi0 = sys.spectrum.state(0);
  std::vector<double> ns, energy, trace;
  for (std::int64_t n : {5, 7, 10, 14, 20, 30, 50, 70, 100, 140, 200, 300, 500}) {
    const auto plan = TrotterPlan::fixed(TrotterOrder::kFirst, sys.time.t, n);
    const auto sp = diagonalize(effective_hamiltonian(sys.h, plan, 0), sys.time.t);
    ns.push_back(static_cast<double>(n));
    energy.push_back(std::abs(sp.energy(0) - sys.spectrum.energy(0)));
    trace.push_back(trace_distance(psi0, sp.state(0)));
  }
  const double se = tst::loglog_slope(ns, energy);
  const double st = tst::loglog_slope(ns, trace);
  c.expect(se >= -2.2 && se <= -1.8, "H2: slope of |E_0^S - E_0| vs n = %.4f", se);
  c.expect(st >= -1.2 && st <= -0.8, "H2: slope of T(psi_0, psi_0^S) vs n = %.4f", st);
}

void property_suite(Criterion& c) {
  std::mt19937_64 rng(77);

  double worst_chain = 0;
  for (int seed = 0; seed < 200; ++seed) {
    const auto d = tst::random_hermitian(rng, 8);
    const auto psi = tst::random_state(rng, 8);
    const auto v = c_variants(d, psi);
    worst_chain = std::max({worst_chain, v.first_order - v.variance, v.variance - v.spectral});
  }
  c.expect(worst_chain <= 1e-12, "first-order <= variance <= spectral on 200 seeds (worst excess %.2e)",
           worst_chain);

  int triangle_fail = 0;
  for (int seed = 0; seed < 150; ++seed) {
    const auto h = tst::random_lcu(rng, 2 + seed % 2, 2 + seed % 5);
    triangle_fail += spectral_norm(delta_h1(h).matrix) > triangle_c1(h) + 1e-12;
  }
  c.expect(triangle_fail == 0, "C1 <= C1' on 150 random LCUs (%d violations)", triangle_fail);

  double worst_unitary = -1e300;
  int unitary_cases = 0;
  for (int seed = 0; seed < 100; ++seed) {
    const auto h = tst::random_lcu(rng, 2, 3 + seed % 3);
    const auto dense = to_dense(h);
    const double t = choose_time(h, 0.5 + 0.5 * (seed % 2)).t;
    const auto order = seed % 3 == 0 ? TrotterOrder::kSecond : TrotterOrder::kFirst;
    for (int q : {0, 2, 4}) {
      const std::int64_t n = (std::int64_t{1} << q) * (3 + seed % 7);
      const auto plan = TrotterPlan::fixed(order, t, n, q);
      const double lhs = spectral_norm(exact_power_unitary(dense, t, q) -
                                       controlled_power_unitary(h, plan, q));
      const double rhs = 2 * M_PI * std::ldexp(t, q) *
                         spectral_norm(effective_hamiltonian(h, plan, q) - dense);
      worst_unitary = std::max(worst_unitary, lhs - rhs);
      ++unitary_cases;
    }
  }
  c.expect(worst_unitary <= 1e-8,
           "||U^(2^q) - S|| <= 2 pi t 2^q ||H^S - H|| + 1e-8 over %d (n, q) cases (max excess %.2e)",
           unitary_cases, worst_unitary);

  double worst_sum = 0, worst_norm = 0, worst_shift = 0, worst_equiv = 0;
  for (int seed = 0; seed < 100; ++seed) {
    const int n_phase = 3 + seed % 5;
    const auto h = tst::random_lcu(rng, 2, 3);
    const double t = choose_time(h, 0.5).t;
    const InitialState init(tst::random_state(rng, 4));
    const auto plan = TrotterPlan::uniform(TrotterOrder::kFirst, t, 2 + seed % 4, 12);
    const auto sp_s = diagonalize(effective_hamiltonian(h, plan, 0), t);
    const QpeConfig cfg{n_phase, t, 0, init, 0};
    const auto trot = trotterized_qpe(h, plan, cfg, sp_s);
    const auto ana = analytic_distribution(sp_s, cfg);
    for (const auto* o : {&trot, &ana}) {
      worst_sum = std::max(worst_sum, std::abs(std::accumulate(o->distribution.begin(),
                                                               o->distribution.end(), 0.0) - 1.0));
      worst_norm = std::max(worst_norm, std::abs(o->output_state.squaredNorm() - 1.0));
      worst_norm = std::max(worst_norm, std::abs(o->output_amplitudes.squaredNorm() - 1.0));
    }
    for (std::size_t l = 0; l < ana.distribution.size(); ++l) {
      worst_equiv = std::max(worst_equiv, std::abs(trot.distribution[l] - ana.distribution[l]));
    }

    const std::int64_t dim = cfg.grid_size();
    const std::int64_t k = 1 + seed % (dim - 1);
    std::vector<double> ph(sp_s.phases().data(), sp_s.phases().data() + sp_s.dim());
    std::vector<double> moved = ph;
    for (auto& x : moved) x += static_cast<double>(k) / dim;
    const Eigen::VectorXd w = init.overlaps(sp_s).cwiseAbs2();
    const std::vector<double> weights(w.data(), w.data() + w.size());
    const auto p0 = distribution_from_phases(ph, weights, n_phase);
    const auto p1 = distribution_from_phases(moved, weights, n_phase);
    for (std::int64_t l = 0; l < dim; ++l) {
      worst_shift = std::max(worst_shift, std::abs(p1[(l + k) % dim] - p0[l]));
    }
  }
  c.expect(worst_sum <= 1e-10, "sum_l P(l) = 1 on 100 seeds (worst %.2e)", worst_sum);
  c.expect(worst_norm <= 1e-9, "output state normalized on 100 seeds (worst %.2e)", worst_norm);
  c.expect(worst_shift <= 1e-12, "grid shift k/2^N permutes P(l) -> P(l+k) (worst %.2e)", worst_shift);
  c.expect(worst_equiv <= 1e-8,
           "uniform-plan statevector QPE = analytic QPE on Spectrum(H^S) (worst %.2e)", worst_equiv);
}

void end_to_end(Criterion& c) {
  RunConfig cfg;
  cfg.hamiltonian = tst::fixture_path();
  cfg.N = 13;
  cfg.plan = "bound";
  cfg.c_choice = "spectral";
  const auto r = cmd_simulate(cfg);
  const double e_err = r.at("energy_error_Ha").get<double>();
  const double t_err = r.at("state_error_rescaled_Ha").get<double>();
  std::printf("    plan %s, l* = %lld, E_est = %.7f\n", r.at("plan_steps").get<std::string>().c_str(),
              r.at("l_star").get<long long>(), r.at("energy_estimate_Ha").get<double>());
  c.expect(e_err <= 1.6e-3, "|E_est - E_0| = %.3e <= 1.6e-3", e_err);
  c.expect(t_err <= 1.6e-3 * 1.5, "(Delta E_0 / A_0) T = %.3e <= 2.4e-3", t_err);
}

bool run(const char* name, double limit_s, const std::function<void(Criterion&)>& body) {
  Criterion c(name);
  std::printf("%s\n", name);
  const auto start = std::chrono::steady_clock::now();
  bool threw = false;
  try {
    body(c);
  } catch (const std::exception& e) {
    std::printf("    exception: %s\n", e.what());
    threw = true;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < limit_s;
  const bool ok = c.ok() && !threw && in_time;
  std::printf("%s: %s (%.2f s, limit %.0f s)\n\n", ok ? "PASS" : "FAIL", name, secs, limit_s);
  return ok;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run("reference table on the H2 fixture", 10, table_reference);
  ok &= run("convergence slopes", 60, convergence_slopes);
  ok &= run("inequality and property suite", 30, property_suite);
  ok &= run("end-to-end QPE, N = 13, per-q bound plan", 120, end_to_end);
  std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return ok ? 0 : 1;
}
