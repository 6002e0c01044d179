#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpeprec/bounds.hpp"
#include "qpeprec/hamiltonian.hpp"
#include "qpeprec/qpe.hpp"
#include "qpeprec/spectrum.hpp"
#include "qpeprec/trotter.hpp"

namespace qpeprec {

struct RunConfig {
  std::filesystem::path hamiltonian;
  double alpha = 0.5;
  double eps_ch = kChemicalPrecision;
  std::optional<double> alpha_tar;
  int order = 1;
  int extra_a = 0;
  std::string c_choice = "spectral";
  bool include_identity = false;
  std::string init_bits;  // empty: lowest-diagonal basis state
  int q = 0;

  std::vector<std::int64_t> n_list;  // sweep-trotter
  std::vector<int> N_list;           // sweep-qpe
  std::vector<std::string> plans;    // sweep-qpe
  std::optional<std::int64_t> n;     // bounds
  std::optional<int> N;              // simulate
  std::string plan = "bound";        // simulate
  bool emit_distribution = false;
  std::int64_t shots = 0;
  std::uint64_t seed = 1;

  void validate() const;
};

// Everything derived once from the Hamiltonian file and the run options.
struct Problem {
  LcuHamiltonian h;
  DenseOperator dense;
  TimeChoice time;
  Spectrum spectrum;
  InitialState initial;
  ErrorOperator delta;
  PrecisionTarget target;
  BoundReport bounds;
};

Problem load_problem(const RunConfig& config);

// Plan ids: "exact", "bound", "bound:<factor>", "uniform:<n0>", "fixed:<n>".
// Returns std::nullopt for "exact".
std::optional<TrotterPlan> plan_from_id(const std::string& id, const Problem& problem, int n_phase);

nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const ConditionLedger& ledger);
nlohmann::json to_json(const QpeOutcome& outcome, bool emit_distribution);

// Reference-table report: energies, time, phase qubits, first-order
// constants, step estimates, and the numerical check of the dH formula.
nlohmann::json cmd_analyze(const RunConfig& config);
std::string format_analysis_table(const nlohmann::json& report);

// One CSV row per n at fixed q: measured errors and first-order predictions.
std::string cmd_sweep_trotter(const RunConfig& config);

// One CSV row per (N, plan), plus "initial" baseline rows.
std::string cmd_sweep_qpe(const RunConfig& config);

nlohmann::json cmd_bounds(const RunConfig& config);
nlohmann::json cmd_simulate(const RunConfig& config);

}  // namespace qpeprec
