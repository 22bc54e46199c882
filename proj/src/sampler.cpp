#include "qsde/sampler.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "qsde/parallel.hpp"
#include "qsde/rng.hpp"
#include "qsde/stats.hpp"

namespace qsde {

namespace {

constexpr std::uint64_t kEndpointDomain = 0x01;
constexpr std::uint64_t kStepwiseDomain = 0x02;

struct Accumulator {
  std::int64_t count = 0;
  std::int64_t outcome_sum = 0;
};

using RecordTally = std::map<std::uint32_t, Accumulator>;

void merge_into(RecordTally& into, const RecordTally& from) {
  for (const auto& [key, acc] : from) {
    auto& slot = into[key];
    slot.count += acc.count;
    slot.outcome_sum += acc.outcome_sum;
  }
}

std::vector<RecordStats> tally_to_stats(const RecordTally& tally, int n_slices,
                                        FieldBasis basis) {
  std::vector<RecordStats> out;
  out.reserve(tally.size());
  for (const auto& [key, acc] : tally) {
    RecordStats rs;
    rs.record = record_from_key(key, n_slices, basis);
    rs.count = acc.count;
    rs.mean = acc.count ? double(acc.outcome_sum) / double(acc.count) : 0.0;
    rs.sem = pm_one_stderr(rs.mean, rs.count);
    out.push_back(std::move(rs));
  }
  return out;
}

RecordTally tally_runs(const ExperimentConfig& cfg, int n_slices,
                       const MeasurementBasisPlan& plan, std::uint64_t domain,
                       std::uint64_t pair_id, std::uint64_t step_id) {
  const std::int64_t runs = cfg.runs_per_basis_pair;
  const int chunks = parallel_chunk_count(runs);
  std::vector<RecordTally> partial(std::size_t(std::max(chunks, 1)));
  parallel_chunks(runs, [&](int chunk, std::int64_t begin, std::int64_t end) {
    RecordTally& local = partial[std::size_t(chunk)];
    for (std::int64_t run = begin; run < end; ++run) {
      const std::uint64_t seed =
          derive_seed(cfg.master_seed, {domain, pair_id, step_id, std::uint64_t(run)});
      const ChainResult res = simulate_chain(cfg.params, n_slices, cfg.recycle, plan, seed);
      auto& acc = local[record_key(res.record)];
      acc.count += 1;
      acc.outcome_sum += res.atom_outcome;
    }
  });
  RecordTally total;
  for (const RecordTally& part : partial) merge_into(total, part);
  return total;
}

constexpr AtomBasis kAtomBases[] = {AtomBasis::X, AtomBasis::Y, AtomBasis::Z};
constexpr FieldBasis kFieldBases[] = {FieldBasis::X, FieldBasis::Z};

std::uint64_t pair_id_of(AtomBasis a, FieldBasis f) {
  return std::uint64_t(int(a) * 2 + int(f));
}

}  // namespace

std::vector<BasisPairStats> run_experiment(const ExperimentConfig& cfg) {
  cfg.params.validate();
  if (cfg.runs_per_basis_pair < 1) throw std::invalid_argument("runs_per_basis_pair must be >= 1");
  if (cfg.n_slices < 1) throw std::invalid_argument("n_slices must be >= 1");

  std::vector<BasisPairStats> out;
  out.reserve(6);
  for (AtomBasis ab : kAtomBases)
    for (FieldBasis fb : kFieldBases) {
      const MeasurementBasisPlan plan{ab, fb};
      const RecordTally tally =
          tally_runs(cfg, cfg.n_slices, plan, kEndpointDomain, pair_id_of(ab, fb), 0);
      out.push_back({ab, fb, tally_to_stats(tally, cfg.n_slices, fb)});
    }
  return out;
}

std::vector<RecordStats> top_records(const std::vector<RecordStats>& stats, int k) {
  std::vector<RecordStats> sorted = stats;
  std::sort(sorted.begin(), sorted.end(), [](const RecordStats& a, const RecordStats& b) {
    if (a.count != b.count) return a.count > b.count;
    return record_key(a.record) < record_key(b.record);
  });
  if (k < 0) k = 0;
  if (std::size_t(k) < sorted.size()) sorted.resize(std::size_t(k));
  return sorted;
}

std::vector<StepwiseRow> stepwise_conditional_means(const ExperimentConfig& cfg,
                                                    FieldBasis field_basis) {
  cfg.params.validate();
  if (cfg.runs_per_basis_pair < 1) throw std::invalid_argument("runs_per_basis_pair must be >= 1");
  if (cfg.n_slices < 1) throw std::invalid_argument("n_slices must be >= 1");

  std::vector<StepwiseRow> rows;
  for (AtomBasis ab : kAtomBases) {
    StepwiseRow init;
    init.step = 0;
    init.atom = ab;
    init.prefix = MeasurementRecord{field_basis, {}};
    init.count = cfg.runs_per_basis_pair;
    init.mean = (ab == AtomBasis::Z) ? -1.0 : 0.0;
    init.sem = 0.0;
    rows.push_back(std::move(init));
  }
  for (int l = 1; l <= cfg.n_slices; ++l) {
    for (AtomBasis ab : kAtomBases) {
      const MeasurementBasisPlan plan{ab, field_basis};
      const RecordTally tally = tally_runs(cfg, l, plan, kStepwiseDomain,
                                           pair_id_of(ab, field_basis), std::uint64_t(l));
      for (RecordStats& rs : tally_to_stats(tally, l, field_basis)) {
        StepwiseRow row;
        row.step = l;
        row.atom = ab;
        row.prefix = std::move(rs.record);
        row.count = rs.count;
        row.mean = rs.mean;
        row.sem = rs.sem;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

}  // namespace qsde
