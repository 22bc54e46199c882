#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "qsde/conditioning.hpp"
#include "qsde/filters.hpp"
#include "qsde/sampler.hpp"
#include "qsde/stats.hpp"
#include "test_util.hpp"

using namespace qsde;

namespace {

const ExperimentConfig kSmallPaperConfig{
    ModelParams::from_lambda2(1, 0, 12, 0.16), 4, 4096, 97, true};

bool stats_equal(const std::vector<BasisPairStats>& a, const std::vector<BasisPairStats>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].atom != b[i].atom || a[i].field != b[i].field) return false;
    if (a[i].records.size() != b[i].records.size()) return false;
    for (std::size_t r = 0; r < a[i].records.size(); ++r) {
      const RecordStats& x = a[i].records[r];
      const RecordStats& y = b[i].records[r];
      if (!(x.record == y.record) || x.count != y.count || x.mean != y.mean || x.sem != y.sem)
        return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE_BEGIN("sampler");

TEST_CASE("uncoupled undriven atom gives deterministic statistics") {
  ExperimentConfig cfg{ModelParams::from_lambda2(0, 0, 0, 0.16), 3, 500, 5, true};
  const auto stats = run_experiment(cfg);
  REQUIRE(stats.size() == 6);
  for (const BasisPairStats& pair : stats) {
    std::int64_t total = 0;
    for (const RecordStats& rs : pair.records) total += rs.count;
    CHECK(total == cfg.runs_per_basis_pair);
    if (pair.field == FieldBasis::Z) {
      REQUIRE(pair.records.size() == 1);
      CHECK(format_record(pair.records[0].record) == "000");
      if (pair.atom == AtomBasis::Z) {
        CHECK(pair.records[0].mean == -1.0);
        CHECK(pair.records[0].sem == 0.0);
      }
    }
  }
}

TEST_CASE("experiments are deterministic in the master seed") {
  ExperimentConfig cfg = kSmallPaperConfig;
  cfg.runs_per_basis_pair = 512;
  const auto a = run_experiment(cfg);
  const auto b = run_experiment(cfg);
  CHECK(stats_equal(a, b));
  cfg.master_seed += 1;
  CHECK(!stats_equal(a, run_experiment(cfg)));
}

TEST_CASE("determinism is independent of the worker count") {
  ExperimentConfig cfg = kSmallPaperConfig;
  cfg.runs_per_basis_pair = 512;
  setenv("QSDE_SIM_THREADS", "1", 1);
  const auto serial = run_experiment(cfg);
  setenv("QSDE_SIM_THREADS", "7", 1);
  const auto parallel = run_experiment(cfg);
  unsetenv("QSDE_SIM_THREADS");
  CHECK(stats_equal(serial, parallel));
}

TEST_CASE("counts always sum to the run count") {
  Rng rng(701);
  for (int trial = 0; trial < 3; ++trial) {
    ExperimentConfig cfg{test::random_params(rng), 3, 301, rng.next_u64(), trial % 2 == 0};
    for (const BasisPairStats& pair : run_experiment(cfg)) {
      std::int64_t total = 0;
      for (const RecordStats& rs : pair.records) {
        total += rs.count;
        CHECK(std::abs(rs.mean) <= 1.0);
        CHECK(rs.sem == doctest::Approx(std::sqrt((1.0 - rs.mean * rs.mean) / double(rs.count)))
                            .epsilon(1e-12));
      }
      CHECK(total == cfg.runs_per_basis_pair);
    }
  }
}

TEST_CASE("top_records ranks by count with lexicographic ties") {
  std::vector<RecordStats> stats;
  for (const char* rec : {"0010", "0001", "1000", "0100"}) {
    RecordStats rs;
    rs.record = parse_record(rec, FieldBasis::Z);
    rs.count = 10;
    stats.push_back(rs);
  }
  stats[2].count = 99;  // "1000"
  const auto top = top_records(stats, 3);
  REQUIRE(top.size() == 3);
  CHECK(format_record(top[0].record) == "1000");
  CHECK(format_record(top[1].record) == "0001");
  CHECK(format_record(top[2].record) == "0010");
  CHECK(top_records(stats, 0).empty());
  CHECK(top_records(stats, 99).size() == 4);
}

TEST_CASE("record frequencies track the exact probabilities") {
  const auto stats = run_experiment(kSmallPaperConfig);
  const auto probs = enumerate_record_probabilities(kSmallPaperConfig.params, FieldBasis::Z, 4,
                                                    ground_state());
  for (const BasisPairStats& pair : stats) {
    if (pair.field != FieldBasis::Z) continue;
    double tv = 0.0;
    for (const auto& [rec, prob] : probs) {
      double freq = 0.0;
      for (const RecordStats& rs : pair.records)
        if (rs.record == rec) freq = double(rs.count) / double(kSmallPaperConfig.runs_per_basis_pair);
      tv += std::abs(freq - prob);
    }
    tv *= 0.5;
    CHECK(tv <= 5.0 / std::sqrt(double(kSmallPaperConfig.runs_per_basis_pair)));
  }
}

TEST_CASE("conditional means agree with the filters on frequent records") {
  const auto stats = run_experiment(kSmallPaperConfig);
  for (const BasisPairStats& pair : stats) {
    const FilterKind kind =
        pair.field == FieldBasis::Z ? FilterKind::Counting : FilterKind::Homodyne;
    for (const RecordStats& rs : top_records(pair.records, 4)) {
      if (rs.count < 100) continue;
      const auto traj = run_filter(kind, kSmallPaperConfig.params, rs.record, ground_state());
      double predicted = 0.0;
      switch (pair.atom) {
        case AtomBasis::X: predicted = traj.back().sx; break;
        case AtomBasis::Y: predicted = traj.back().sy; break;
        case AtomBasis::Z: predicted = traj.back().sz; break;
      }
      CHECK(std::abs(conditional_mean_z(rs.mean, rs.count, predicted, rs.sem)) <= 4.0);
    }
  }
}

TEST_CASE("stepwise means start exact and follow the filter") {
  ExperimentConfig cfg = kSmallPaperConfig;
  cfg.runs_per_basis_pair = 2048;
  const auto rows = stepwise_conditional_means(cfg, FieldBasis::Z);

  int initial_rows = 0;
  for (const StepwiseRow& row : rows) {
    if (row.step > 0) continue;
    ++initial_rows;
    CHECK(row.count == cfg.runs_per_basis_pair);
    CHECK(row.sem == 0.0);
    CHECK(row.mean == (row.atom == AtomBasis::Z ? -1.0 : 0.0));
  }
  CHECK(initial_rows == 3);

  const auto no_photon = run_filter(FilterKind::Counting, cfg.params,
                                    parse_record("0000", FieldBasis::Z), ground_state());
  for (const StepwiseRow& row : rows) {
    if (row.atom != AtomBasis::Z || row.count < 100) continue;
    if (record_key(row.prefix) != 0) continue;  // all-zero prefixes
    const double predicted = no_photon[std::size_t(row.step)].sz;
    CHECK(std::abs(row.mean - predicted) <= 4.0 * std::max(row.sem, 1e-12));
  }
}

TEST_SUITE_END();
