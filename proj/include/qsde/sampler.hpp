#pragma once

#include <cstdint>
#include <vector>

#include "qsde/circuit.hpp"

namespace qsde {

struct ExperimentConfig {
  ModelParams params;
  int n_slices = 4;
  std::int64_t runs_per_basis_pair = 10240;
  std::uint64_t master_seed = 1;
  bool recycle = true;
};

struct RecordStats {
  MeasurementRecord record;
  std::int64_t count = 0;
  double mean = 0.0;  // sample mean of the ±1 atom outcomes
  double sem = 0.0;   // sqrt((1 - mean^2) / count)
};

struct BasisPairStats {
  AtomBasis atom = AtomBasis::Z;
  FieldBasis field = FieldBasis::Z;
  std::vector<RecordStats> records;  // sorted by record bits ascending
};

// Runs runs_per_basis_pair chains for each of the 3x2 basis combinations and
// groups the atom outcomes by field record. Runs are sharded over workers;
// per-record counts and outcome sums are integers, so aggregation is
// order-independent and the result is bit-identical for a fixed master seed.
std::vector<BasisPairStats> run_experiment(const ExperimentConfig& cfg);

// k records with the most statistics; ties break toward the
// lexicographically smaller record string.
std::vector<RecordStats> top_records(const std::vector<RecordStats>& stats, int k);

struct StepwiseRow {
  int step = 0;  // 0..n_slices
  AtomBasis atom = AtomBasis::Z;
  MeasurementRecord prefix;  // length == step
  std::int64_t count = 0;
  double mean = 0.0;
  double sem = 0.0;
};

// Conditional atom expectations at intermediate steps. Measuring the atom
// ends a run, so step l gets its own batch of fresh length-l experiments;
// the records of a truncated chain are distributed as the first l increments
// of the full chain. Step 0 rows are the exact initial expectations
// (0, 0, -1) rather than coin-flip estimates.
std::vector<StepwiseRow> stepwise_conditional_means(const ExperimentConfig& cfg,
                                                    FieldBasis field_basis);

}  // namespace qsde
