// Command-line front end: analyze, bounds, sweep-trotter, sweep-qpe, simulate.
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qpeprec/error.hpp"
#include "qpeprec/reports.hpp"

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& dir, const std::string& name, const std::string& text) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw qpeprec::InputError("cannot create output directory " + dir.string());
  std::ofstream out(dir / name);
  if (!out) throw qpeprec::InputError("cannot write " + (dir / name).string());
  out << text;
}

void add_common(CLI::App* cmd, qpeprec::RunConfig& cfg, bool& include_identity) {
  cmd->add_option("--hamiltonian", cfg.hamiltonian, "LCU Hamiltonian JSON")->required();
  cmd->add_option("--alpha", cfg.alpha, "t = alpha / one-norm, alpha in [0.5, 1]");
  cmd->add_option("--eps", cfg.eps_ch, "chemical precision in Ha");
  cmd->add_option("--alpha-tar", cfg.alpha_tar, "target overlap precision");
  cmd->add_option("--order", cfg.order, "Trotter order (1 or 2)");
  cmd->add_option("--a", cfg.extra_a, "extra phase qubits");
  cmd->add_option("--c-choice", cfg.c_choice, "spectral | variance | first-order | triangle");
  cmd->add_option("--include-identity-in-one-norm", include_identity,
                  "count the identity coefficient in the one-norm");
  cmd->add_option("--init-bits", cfg.init_bits, "initial basis state, qubit 0 first");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trotterized quantum phase estimation precision analysis"};
  app.require_subcommand(1);

  qpeprec::RunConfig cfg;
  bool include_identity = false;
  std::string out_dir;
  bool as_json = false;

  auto* analyze = app.add_subcommand("analyze", "reference table for one Hamiltonian");
  add_common(analyze, cfg, include_identity);
  analyze->add_option("--out", out_dir, "write analyze.json here");
  analyze->add_flag("--json", as_json, "print JSON instead of the table");

  auto* bounds = app.add_subcommand("bounds", "bound report and condition ledger");
  add_common(bounds, cfg, include_identity);
  bounds->add_option("--q", cfg.q, "controlled power index");
  bounds->add_option("--n", cfg.n, "Trotter steps (default n_min(q))");
  bounds->add_option("--out", out_dir, "write bounds.json here");

  auto* sweep_trotter = app.add_subcommand("sweep-trotter", "error versus Trotter steps");
  add_common(sweep_trotter, cfg, include_identity);
  sweep_trotter->add_option("--q", cfg.q, "controlled power index");
  sweep_trotter->add_option("--n-list", cfg.n_list, "step counts")->delimiter(',');
  sweep_trotter->add_option("--out", out_dir, "write trotter_sweep.csv here");

  auto* sweep_qpe = app.add_subcommand("sweep-qpe", "QPE error versus phase qubits");
  add_common(sweep_qpe, cfg, include_identity);
  sweep_qpe->add_option("--N-list", cfg.N_list, "phase register sizes")->delimiter(',');
  sweep_qpe->add_option("--plans", cfg.plans, "plan ids")->delimiter(',');
  sweep_qpe->add_option("--out", out_dir, "write qpe_sweep.csv here");

  auto* simulate = app.add_subcommand("simulate", "single QPE run");
  add_common(simulate, cfg, include_identity);
  simulate->add_option("--N", cfg.N, "phase qubits (default N_min + a)");
  simulate->add_option("--plan", cfg.plan, "exact | bound[:f] | uniform:<n0> | fixed:<n>");
  simulate->add_flag("--emit-distribution", cfg.emit_distribution, "include P(l)");
  simulate->add_option("--shots", cfg.shots, "sampled measurements");
  simulate->add_option("--seed", cfg.seed, "sampling seed");
  simulate->add_option("--out", out_dir, "write simulate.json here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  cfg.include_identity = include_identity;

  try {
    if (analyze->parsed()) {
      const auto report = qpeprec::cmd_analyze(cfg);
      if (!out_dir.empty()) write_file(out_dir, "analyze.json", report.dump(2) + "\n");
      std::cout << (as_json ? report.dump(2) + "\n" : qpeprec::format_analysis_table(report));
    } else if (bounds->parsed()) {
      const auto report = qpeprec::cmd_bounds(cfg);
      if (!out_dir.empty()) write_file(out_dir, "bounds.json", report.dump(2) + "\n");
      std::cout << report.dump(2) << "\n";
    } else if (sweep_trotter->parsed()) {
      const auto csv = qpeprec::cmd_sweep_trotter(cfg);
      if (!out_dir.empty()) write_file(out_dir, "trotter_sweep.csv", csv);
      else std::cout << csv;
    } else if (sweep_qpe->parsed()) {
      const auto csv = qpeprec::cmd_sweep_qpe(cfg);
      if (!out_dir.empty()) write_file(out_dir, "qpe_sweep.csv", csv);
      else std::cout << csv;
    } else if (simulate->parsed()) {
      const auto report = qpeprec::cmd_simulate(cfg);
      if (!out_dir.empty()) write_file(out_dir, "simulate.json", report.dump(2) + "\n");
      std::cout << report.dump(2) << "\n";
    }
  } catch (const qpeprec::InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
