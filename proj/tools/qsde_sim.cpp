// Command-line driver for the repeated-interaction simulator. One JSON
// config drives every subcommand; flags override individual fields.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qsde/commands.hpp"
#include "qsde/conditioning.hpp"

namespace {

void add_common_options(CLI::App* sub, qsde::cli::RunManifest& m, bool& has_seed,
                        std::uint64_t& seed, bool& has_runs, std::int64_t& runs, bool& has_slices,
                        int& slices, bool& has_recycle, bool& recycle) {
  sub->add_option("--config", m.config_path, "JSON config file")->required();
  sub->add_option("--out", m.out_dir, "output directory (default: current)");
  sub->add_option("--seed", seed, "master seed override")->each([&](const std::string&) {
    has_seed = true;
  });
  sub->add_option("--runs", runs, "runs per basis pair override")->each([&](const std::string&) {
    has_runs = true;
  });
  sub->add_option("--slices", slices, "slice count override")->each([&](const std::string&) {
    has_slices = true;
  });
  sub->add_option("--recycle", recycle, "field-qubit recycling override (true/false)")
      ->each([&](const std::string&) { has_recycle = true; });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"repeated-interaction simulator for a driven two-level atom"};
  app.require_subcommand(1);

  qsde::cli::RunManifest manifest;
  bool has_seed = false, has_runs = false, has_slices = false, has_recycle = false;
  std::uint64_t seed = 0;
  std::int64_t runs = 0;
  int slices = 0;
  bool recycle = true;

  CLI::App* master = app.add_subcommand("master", "unconditional master-equation curve");
  CLI::App* fh = app.add_subcommand("filter-homodyne", "homodyne filter trajectory for a record");
  CLI::App* fc = app.add_subcommand("filter-counting", "counting filter trajectory for a record");
  CLI::App* sample = app.add_subcommand("sample", "Monte Carlo record statistics");
  CLI::App* compare = app.add_subcommand("compare", "sampler vs filter vs exact conditioning");
  CLI::App* qasm = app.add_subcommand("emit-qasm", "OpenQASM 2.0 export of the chain circuit");
  CLI::App* limits = app.add_subcommand("limits", "continuum-limit coefficient check");

  for (CLI::App* sub : {master, fh, fc, sample, compare, qasm, limits})
    add_common_options(sub, manifest, has_seed, seed, has_runs, runs, has_slices, slices,
                       has_recycle, recycle);
  fh->add_option("--record", manifest.record, "x-basis record, e.g. +-++")->required();
  fc->add_option("--record", manifest.record, "z-basis record, e.g. 0010")->required();
  qasm->add_flag("--decompose-cry", manifest.decompose_cry,
                 "emit the 2-CNOT decomposition instead of cu3");

  CLI11_PARSE(app, argc, argv);

  if (has_seed) manifest.seed = seed;
  if (has_runs) manifest.runs = runs;
  if (has_slices) manifest.slices = slices;
  if (has_recycle) manifest.recycle = recycle;

  try {
    if (master->parsed()) return qsde::cli::cmd_master(manifest);
    if (fh->parsed()) return qsde::cli::cmd_filter(qsde::FilterKind::Homodyne, manifest);
    if (fc->parsed()) return qsde::cli::cmd_filter(qsde::FilterKind::Counting, manifest);
    if (sample->parsed()) return qsde::cli::cmd_sample(manifest);
    if (compare->parsed()) return qsde::cli::cmd_compare(manifest);
    if (qasm->parsed()) return qsde::cli::cmd_emit_qasm(manifest);
    if (limits->parsed()) return qsde::cli::cmd_limits(manifest);
  } catch (const qsde::ImpossibleRecordError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
