#include "qpeprec/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <sstream>
#include <thread>

#include "qpeprec/error.hpp"

namespace qpeprec {
namespace {

using nlohmann::json;

constexpr const char* kTrotterSchema = "qpeprec-trotter-sweep v1";
constexpr const char* kQpeSchema = "qpeprec-qpe-sweep v1";

std::string fmt(double v) {
  if (!std::isfinite(v)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Evaluates f over items on a small worker pool; results keep input order.
template <typename T, typename F>
auto parallel_map(const std::vector<T>& items, F f) {
  using R = decltype(f(items.front()));
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<R> out;
  out.reserve(items.size());
  for (std::size_t start = 0; start < items.size(); start += workers) {
    std::vector<std::future<R>> batch;
    const std::size_t stop = std::min(items.size(), start + workers);
    for (std::size_t i = start; i < stop; ++i) {
      batch.push_back(std::async(std::launch::async, f, std::cref(items[i])));
    }
    for (auto& fut : batch) out.push_back(fut.get());
  }
  return out;
}

// Branch-safe step counts for the first-order extraction oracle.
std::vector<std::int64_t> extraction_n_values(const LcuHamiltonian& h, double t) {
  const auto base = static_cast<std::int64_t>(
      64 * std::max(1.0, std::ceil(2.0 * t * h.one_norm())));
  return {base, 2 * base, 4 * base};
}

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

void RunConfig::validate() const {
  if (hamiltonian.empty()) throw InputError("--hamiltonian is required");
  if (!(alpha >= 0.5 && alpha <= 1.0)) throw InputError("--alpha must lie in [0.5, 1]");
  if (!(eps_ch > 0.0)) throw InputError("--eps must be > 0");
  if (alpha_tar && !(*alpha_tar > 0.0 && *alpha_tar <= 1.0)) {
    throw InputError("--alpha-tar must lie in (0, 1]");
  }
  trotter_order_from_int(order);
  cp_choice_from_string(c_choice);
  if (extra_a < 0) throw InputError("--a must be >= 0");
  if (q < 0) throw InputError("--q must be >= 0");
  for (auto n_value : n_list) {
    if (n_value < 1) throw InputError("--n-list entries must be >= 1");
  }
  for (int n_phase : N_list) {
    if (n_phase < 1 || n_phase > kPhaseQubitCap) {
      throw InputError("--N-list entries must lie in 1.." + std::to_string(kPhaseQubitCap));
    }
  }
  if (n && *n < 1) throw InputError("--n must be >= 1");
  if (N && (*N < 1 || *N > kPhaseQubitCap)) {
    throw InputError("--N must lie in 1.." + std::to_string(kPhaseQubitCap));
  }
  if (shots < 0) throw InputError("--shots must be >= 0");
}

Problem load_problem(const RunConfig& config) {
  config.validate();
  LcuHamiltonian h = ingest_hamiltonian(config.hamiltonian);
  DenseOperator dense = to_dense(h);
  const auto convention = config.include_identity ? OneNormConvention::kIncludeIdentity
                                                  : OneNormConvention::kExcludeIdentity;
  const TimeChoice time = choose_time(h, config.alpha, convention);
  Spectrum spectrum = diagonalize(dense, time.t);
  InitialState initial = config.init_bits.empty() ? InitialState::lowest_diagonal(dense)
                                                  : InitialState::basis_state(config.init_bits);
  if (initial.dim() != spectrum.dim()) throw InputError("--init-bits has the wrong qubit count");
  ErrorOperator delta = delta_h(h, trotter_order_from_int(config.order));
  PrecisionTarget target{config.eps_ch, config.alpha_tar, 0};
  BoundReport bounds = make_bound_report(h, spectrum, delta, target, config.extra_a,
                                         cp_choice_from_string(config.c_choice));
  return {std::move(h),       std::move(dense), time,   std::move(spectrum), std::move(initial),
          std::move(delta),   target,           bounds};
}

std::optional<TrotterPlan> plan_from_id(const std::string& id, const Problem& problem,
                                        int n_phase) {
  const TrotterOrder order = problem.delta.order;
  const double t = problem.time.t;
  const auto colon = id.find(':');
  const std::string kind = id.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : id.substr(colon + 1);
  try {
    if (kind == "exact" && arg.empty()) return std::nullopt;
    if (kind == "bound") {
      const double factor = arg.empty() ? 1.0 : std::stod(arg);
      if (!(factor > 0.0)) throw InputError("bound plan factor must be > 0");
      std::vector<std::int64_t> steps;
      for (int q = 0; q < n_phase; ++q) {
        const double raw = std::ceil(factor * problem.bounds.resources.n_min_unrounded(q));
        steps.push_back(std::max<std::int64_t>(1, static_cast<std::int64_t>(raw)));
      }
      return TrotterPlan::per_q(order, t, std::move(steps));
    }
    if ((kind == "uniform" || kind == "fixed") && !arg.empty() && std::stoll(arg) < 1) {
      throw InputError("plan step count must be >= 1 in \"" + id + "\"");
    }
    if (kind == "uniform" && !arg.empty()) {
      return TrotterPlan::uniform(order, t, std::stoll(arg), std::max(0, n_phase - 1));
    }
    if (kind == "fixed" && !arg.empty()) {
      return TrotterPlan::fixed(order, t, std::stoll(arg), std::max(0, n_phase - 1));
    }
  } catch (const std::logic_error&) {
    throw InputError("malformed plan id \"" + id + "\"");
  }
  throw InputError("unknown plan id \"" + id +
                   "\" (exact, bound[:factor], uniform:<n0>, fixed:<n>)");
}

json to_json(const BoundReport& r) {
  const int p = order_value(r.order);
  const std::string suffix = std::to_string(p);
  json j;
  j["order"] = p;
  j["state_index"] = r.state_index;
  j["t"] = r.t;
  j["norm_delta_H" + suffix] = r.c.spectral;
  j["variance_root_delta_H" + suffix] = r.c.variance;
  j["first_order_delta_H" + suffix] = r.c.first_order;
  j["C" + suffix + "_prime"] = optional_number(r.c_triangle);
  j["A_" + std::to_string(r.state_index)] = optional_number(r.a_i);
  j["Delta_E_" + std::to_string(r.state_index)] = r.gap;
  j["eps"] = r.epsilon.eps;
  j["alpha_ch"] = r.epsilon.alpha_ch;
  j["C_p_choice"] = to_string(r.c_choice);
  j["C_p"] = r.c_used;
  j["script_C"] = r.resources.script_c;
  j["N_min"] = r.resources.n_min_phase;
  j["a"] = r.resources.extra_qubits;
  j["n_min_q0"] = r.resources.n_min_of(0);
  j["n_min_q0_unrounded"] = r.resources.n_min_unrounded(0);
  j["n_min_schedule"] = r.resources.schedule(r.resources.n_min_phase + r.resources.extra_qubits);
  j["n_min_tot"] = r.resources.n_min_tot;
  return j;
}

json to_json(const ConditionLedger& ledger) {
  json j;
  j["q"] = ledger.q;
  j["n"] = ledger.n;
  j["lambda"] = ledger.lambda;
  j["eps"] = ledger.eps;
  j["gap"] = ledger.gap;
  j["A"] = optional_number(ledger.a_i);
  j["c_spectral"] = ledger.c.spectral;
  j["c_variance"] = ledger.c.variance;
  j["c_first_order"] = ledger.c.first_order;
  j["unitary_error_rescaled_Ha"] = ledger.unitary_lhs;
  j["energy_error_Ha"] = ledger.energy_lhs;
  j["state_error_rescaled_Ha"] = ledger.state_lhs;
  j["heff_error_Ha"] = ledger.heff_error;
  j["all_hold"] = ledger.all_hold();
  json checks = json::array();
  for (const auto& c : ledger.checks) {
    checks.push_back({{"name", c.name},
                      {"lhs", c.lhs},
                      {"rhs", c.rhs},
                      {"holds", c.holds},
                      {"slack", c.slack}});
  }
  j["checks"] = std::move(checks);
  return j;
}

json to_json(const QpeOutcome& outcome, bool emit_distribution) {
  json j;
  j["l_star"] = outcome.l_star;
  j["probability_l_star"] = outcome.probability_l_star();
  j["energy_estimate_Ha"] = outcome.energy_estimate;
  j["trace_distance_dimensionless"] = outcome.trace_distance;
  json amps = json::array();
  for (Eigen::Index k = 0; k < outcome.output_amplitudes.size(); ++k) {
    amps.push_back({outcome.output_amplitudes(k).real(), outcome.output_amplitudes(k).imag()});
  }
  j["output_amplitudes"] = std::move(amps);
  if (emit_distribution) j["distribution"] = outcome.distribution;
  return j;
}

json cmd_analyze(const RunConfig& config) {
  const Problem pb = load_problem(config);
  const double e0 = pb.spectrum.energy(0);
  const double e_init = pb.initial.energy(pb.dense);
  const double t = pb.time.t;

  json j;
  j["schema"] = "qpeprec-analyze v1";
  j["n_qubits"] = pb.h.n_qubits();
  j["n_terms"] = pb.h.size();
  j["one_norm_convention"] = config.include_identity ? "include-identity" : "exclude-identity";
  j["one_norm"] = pb.h.one_norm(config.include_identity ? OneNormConvention::kIncludeIdentity
                                                        : OneNormConvention::kExcludeIdentity);
  j["alpha"] = config.alpha;
  j["E_init"] = e_init;
  j["E_0"] = e0;
  j["Delta_E_0"] = pb.spectrum.gap_of(0);
  j["t"] = t;
  j["ceil_E0_t"] = static_cast<int>(std::ceil(e0 * t));
  j["ceil_Einit_t"] = static_cast<int>(std::ceil(e_init * t));
  j["ceil_guaranteed"] = pb.time.ceil_guaranteed;
  j["initial_overlap_sq"] = std::norm(pb.spectrum.state(0).dot(pb.initial.amplitudes()));
  j.update(to_json(pb.bounds));

  const auto order = pb.delta.order;
  const auto ns = extraction_n_values(pb.h, t);
  const FirstOrderExtraction ext = extract_first_order(pb.h, order, t, ns);
  const FormulaComparison cmp = compare_with_formula(ext, pb.delta);
  j["delta_h_validation"] = {{"n_values", ext.n_values},
                             {"extracted_norm", cmp.extracted_norm},
                             {"formula_norm", cmp.formula_norm},
                             {"ratio", optional_number(cmp.ratio)},
                             {"relative_residual", cmp.relative_residual},
                             {"residual_slope", optional_number(ext.residual_slope)}};
  return j;
}

std::string format_analysis_table(const json& r) {
  const int p = r.at("order").get<int>();
  const std::string s = std::to_string(p);
  std::ostringstream out;
  auto row = [&out](const std::string& name, const json& v) {
    char buf[96];
    if (v.is_null()) {
      std::snprintf(buf, sizeof buf, "  %-34s %16s\n", name.c_str(), "n/a");
    } else if (v.is_number_integer()) {
      std::snprintf(buf, sizeof buf, "  %-34s %16lld\n", name.c_str(), v.get<long long>());
    } else {
      std::snprintf(buf, sizeof buf, "  %-34s %16.6f\n", name.c_str(), v.get<double>());
    }
    out << buf;
  };
  out << "Initial system\n";
  row("E_init", r.at("E_init"));
  out << "Exact system\n";
  row("E_0", r.at("E_0"));
  row("Delta E_0", r.at("Delta_E_0"));
  out << "QPE parameters\n";
  row("t = alpha / sum|gamma|", r.at("t"));
  row("ceil(E_0 t)", r.at("ceil_E0_t"));
  row("N_min(t)", r.at("N_min"));
  out << "Order-" << s << " Trotter features\n";
  row("A_0", r.at("A_0"));
  row("||dH" + s + "||_2", r.at("norm_delta_H" + s));
  row("sqrt(<psi_0|(dH" + s + ")^2|psi_0>)", r.at("variance_root_delta_H" + s));
  row("|<psi_0|dH" + s + "|psi_0>|", r.at("first_order_delta_H" + s));
  row("C" + s + "'", r.at("C" + s + "_prime"));
  row("n_min(0,t)", r.at("n_min_q0"));
  row("n_min-tot(a=" + std::to_string(r.at("a").get<int>()) + ")", r.at("n_min_tot"));
  return out.str();
}

std::string cmd_sweep_trotter(const RunConfig& config) {
  const Problem pb = load_problem(config);
  std::vector<std::int64_t> ns = config.n_list;
  if (ns.empty()) ns = {5, 7, 10, 14, 20, 30, 50, 70, 100, 140, 200, 300, 500};
  const auto order = pb.delta.order;
  const double t = pb.time.t;
  const int q = config.q;
  const std::optional<double> c_triangle = pb.bounds.c_triangle;

  struct Row {
    std::int64_t n;
    double lambda;
    ConditionLedger ledger;
  };
  const auto rows = parallel_map(ns, [&](std::int64_t n) {
    const auto plan = TrotterPlan::fixed(order, t, n, q);
    return Row{n, plan.lambda(q), verify_conditions(pb.h, plan, pb.spectrum, pb.delta, pb.target, q)};
  });

  const std::string s = std::to_string(order_value(order));
  std::ostringstream out;
  out << "# schema: " << kTrotterSchema << "; order=" << s << "; q=" << q << "; t=" << fmt(t)
      << "; eps_ch_Ha=" << fmt(config.eps_ch) << "; Delta_E_0_Ha=" << fmt(pb.bounds.gap)
      << "; A_0=" << fmt(pb.bounds.a_i.value_or(1.0))
      << "; state error rescaled by Delta_E_0/A_0; unitary error rescaled by 1/(2 pi t 2^q)\n";
  out << "n,lambda_dimensionless,energy_error_Ha,state_error_rescaled_Ha,"
         "unitary_error_rescaled_Ha,heff_error_Ha,lambda_norm_delta_H"
      << s << "_Ha,lambda_C" << s << "_prime_Ha,lambda_variance_root_Ha\n";
  for (const auto& r : rows) {
    const auto& l = r.ledger;
    out << r.n << ',' << fmt(r.lambda) << ',' << fmt(l.energy_lhs) << ',' << fmt(l.state_lhs)
        << ',' << fmt(l.unitary_lhs) << ',' << fmt(l.heff_error) << ','
        << fmt(r.lambda * l.c.spectral) << ','
        << (c_triangle ? fmt(r.lambda * *c_triangle) : std::string()) << ','
        << fmt(r.lambda * l.c.variance) << '\n';
  }
  return out.str();
}

std::string cmd_sweep_qpe(const RunConfig& config) {
  const Problem pb = load_problem(config);
  std::vector<int> n_phases = config.N_list;
  if (n_phases.empty()) n_phases = {8, 9, 10, 11, 12, 13};
  std::vector<std::string> plans = config.plans;
  if (plans.empty()) plans = {"bound:0.01", "bound:0.1", "bound"};

  const double e0 = pb.spectrum.energy(0);
  const double rescale = pb.bounds.gap / pb.bounds.a_i.value_or(1.0);
  const StateVector ground = pb.spectrum.state(0);

  struct Job {
    int n_phase;
    std::string plan;
  };
  std::vector<Job> jobs;
  for (int n_phase : n_phases) {
    for (const auto& id : plans) jobs.push_back({n_phase, id});
  }
  // Validate every plan id before spending time on simulations.
  for (const auto& job : jobs) plan_from_id(job.plan, pb, job.n_phase);

  const auto outcomes = parallel_map(jobs, [&](const Job& job) {
    const QpeConfig qc{job.n_phase, pb.time.t, config.extra_a, pb.initial, pb.time.ceil_e0_t};
    const auto plan = plan_from_id(job.plan, pb, job.n_phase);
    return plan ? trotterized_qpe(pb.h, *plan, qc, pb.spectrum)
                : exact_qpe(pb.dense, qc, pb.spectrum);
  });

  std::ostringstream out;
  out << "# schema: " << kQpeSchema << "; order=" << order_value(pb.delta.order)
      << "; t=" << fmt(pb.time.t) << "; E_0_Ha=" << fmt(e0) << "; eps_ch_Ha=" << fmt(config.eps_ch)
      << "; alpha_ch=" << fmt(pb.bounds.epsilon.alpha_ch)
      << "; state error rescaled by Delta_E_0/A_0; plan=initial rows are the input-state baseline\n";
  out << "N,plan,energy_error_Ha,state_error_rescaled_Ha,l_star,energy_estimate_Ha,"
         "probability_l_star_dimensionless\n";
  const double init_energy_error = std::abs(pb.initial.energy(pb.dense) - e0);
  const double init_state_error = rescale * trace_distance(ground, pb.initial.amplitudes());
  std::size_t k = 0;
  for (int n_phase : n_phases) {
    out << n_phase << ",initial," << fmt(init_energy_error) << ',' << fmt(init_state_error)
        << ",,,\n";
    for (const auto& id : plans) {
      const QpeOutcome& o = outcomes[k++];
      out << n_phase << ',' << id << ',' << fmt(std::abs(o.energy_estimate - e0)) << ','
          << fmt(rescale * o.trace_distance) << ',' << o.l_star << ','
          << fmt(o.energy_estimate) << ',' << fmt(o.probability_l_star()) << '\n';
    }
  }
  return out.str();
}

json cmd_bounds(const RunConfig& config) {
  const Problem pb = load_problem(config);
  const int q = config.q;
  const double span = std::ldexp(pb.time.t, q) * pb.h.one_norm();
  const auto branch_safe = static_cast<std::int64_t>(std::floor(2.0 * span)) + 1;
  const std::int64_t n =
      config.n.value_or(std::max(pb.bounds.resources.n_min_of(q), branch_safe));
  const auto plan = TrotterPlan::fixed(pb.delta.order, pb.time.t, n, q);
  json j;
  j["schema"] = "qpeprec-bounds v1";
  j["bound_report"] = to_json(pb.bounds);
  j["ledger"] = to_json(verify_conditions(pb.h, plan, pb.spectrum, pb.delta, pb.target, q));
  return j;
}

json cmd_simulate(const RunConfig& config) {
  const Problem pb = load_problem(config);
  const int n_phase = config.N.value_or(pb.bounds.resources.n_min_phase + config.extra_a);
  if (n_phase > kPhaseQubitCap) throw InputError("phase register exceeds the cap");
  const QpeConfig qc{n_phase, pb.time.t, config.extra_a, pb.initial, pb.time.ceil_e0_t};
  const auto plan = plan_from_id(config.plan, pb, n_phase);
  const QpeOutcome o = plan ? trotterized_qpe(pb.h, *plan, qc, pb.spectrum)
                            : exact_qpe(pb.dense, qc, pb.spectrum);
  const double e0 = pb.spectrum.energy(0);
  json j;
  j["schema"] = "qpeprec-simulate v1";
  j["N"] = n_phase;
  j["plan"] = config.plan;
  j["plan_steps"] = plan ? json(plan->describe()) : json("exact");
  j["t"] = pb.time.t;
  j["E_0"] = e0;
  j.update(to_json(o, config.emit_distribution));
  j["energy_error_Ha"] = std::abs(o.energy_estimate - e0);
  j["state_error_rescaled_Ha"] = pb.bounds.gap / pb.bounds.a_i.value_or(1.0) * o.trace_distance;
  if (config.shots > 0) {
    json counts = json::object();
    for (const auto& [l, c] : sample_outcomes(o, config.shots, config.seed)) {
      counts[std::to_string(l)] = c;
    }
    j["shot_counts"] = std::move(counts);
  }
  return j;
}

}  // namespace qpeprec
