#include "qsde/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"
#include "qsde/circuit.hpp"
#include "qsde/conditioning.hpp"
#include "qsde/sampler.hpp"
#include "qsde/stats.hpp"

namespace qsde::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::int64_t kMinCountForZ = 100;
constexpr double kFilterOracleTol = 1e-9;

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_out_dir(const std::string& dir) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
}

std::string record_file_token(const MeasurementRecord& r) {
  std::string s = format_record(r);
  for (char& ch : s) {
    if (ch == '+') ch = 'p';
    if (ch == '-') ch = 'm';
  }
  return s;
}

Json bloch_json(double sx, double sy, double sz) {
  return Json{{"sx", sx}, {"sy", sy}, {"sz", sz}};
}

double bloch_component(const TrajectoryPoint& pt, AtomBasis basis) {
  switch (basis) {
    case AtomBasis::X: return pt.sx;
    case AtomBasis::Y: return pt.sy;
    case AtomBasis::Z: return pt.sz;
  }
  return 0.0;
}


std::string master_plot_script() {
  return R"(#!/usr/bin/env python3
"""Plot the master-equation Bloch components from master.csv."""
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))
ts, sx, sy, sz = [], [], [], []
with open(os.path.join(HERE, "master.csv")) as f:
    for row in csv.DictReader(f):
        ts.append(float(row["t"]))
        sx.append(float(row["sx"]))
        sy.append(float(row["sy"]))
        sz.append(float(row["sz"]))
plt.figure(figsize=(6.4, 3.6))
plt.plot(ts, sx, label="<sigma_x>")
plt.plot(ts, sy, label="<sigma_y>")
plt.plot(ts, sz, label="<sigma_z>")
plt.xlabel("t")
plt.ylim(-1.05, 1.05)
plt.legend(loc="best")
plt.tight_layout()
plt.savefig(os.path.join(HERE, "fig_master.png"), dpi=160)
)";
}

std::string trajectory_plot_script(const std::string& scheme, char basis) {
  std::string script = R"(#!/usr/bin/env python3
"""Plot conditional trajectories ({SCHEME}, sigma_{BASIS}): filter curve,
exact conditioning, and sampled conditional means with error bars."""
import json
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))
SCHEME = "{SCHEME}"
BASIS = "{BASIS}"

with open(os.path.join(HERE, "compare_summary.json")) as f:
    summary = json.load(f)
scheme = next(s for s in summary["schemes"] if s["scheme"] == SCHEME)
records = scheme["records"][:4]
n = max(len(records), 1)
fig, axes = plt.subplots(1, n, figsize=(3.4 * n, 3.2), squeeze=False)
for ax, rec in zip(axes[0], records):
    ts = [pt["t"] for pt in rec["steps"]]
    ax.plot(ts, [pt["filter"]["s" + BASIS] for pt in rec["steps"]], "-", label="filter")
    ax.plot(ts, [pt["oracle"]["s" + BASIS] for pt in rec["steps"]], "--", label="exact")
    xs, ys, es = [], [], []
    for pt in rec["steps"]:
        s = pt["sampled"].get(BASIS)
        if s and s["count"] > 0:
            xs.append(pt["t"])
            ys.append(s["mean"])
            es.append(s["sem"])
    ax.errorbar(xs, ys, yerr=es, fmt="o", ms=3, capsize=2, label="sampled")
    ax.set_title(rec["record"])
    ax.set_xlabel("t")
    ax.set_ylim(-1.05, 1.05)
axes[0][0].set_ylabel("<sigma_" + BASIS + ">")
axes[0][-1].legend(loc="best", fontsize=8)
fig.tight_layout()
fig.savefig(os.path.join(HERE, "fig_" + SCHEME + "_s" + BASIS + ".png"), dpi=160)
)";
  const auto replace_all = [&script](const std::string& from, const std::string& to) {
    for (std::size_t pos = script.find(from); pos != std::string::npos;
         pos = script.find(from, pos + to.size()))
      script.replace(pos, from.size(), to);
  };
  replace_all("{SCHEME}", scheme);
  replace_all("{BASIS}", std::string(1, basis));
  return script;
}

struct SchemeComparison {
  std::string name;
  FieldBasis field_basis = FieldBasis::Z;
  FilterKind kind = FilterKind::Counting;
  Json json;                      // per-scheme block of compare_summary.json
  double max_abs_z = 0.0;
  double filter_oracle_max_diff = 0.0;
  std::string samples_csv;
  std::string theory_csv;
  std::string report;
};

// Filter and exact-conditioning Bloch trajectories for one record prefix,
// cached by (length, packed bits).
class TrajectoryCache {
 public:
  TrajectoryCache(const ModelParams& params, FilterKind kind, FieldBasis basis)
      : params_(params), kind_(kind), basis_(basis) {}

  const std::vector<TrajectoryPoint>& filter(const MeasurementRecord& rec) {
    auto [it, inserted] = filter_.try_emplace(cache_key(rec));
    if (inserted) it->second = run_filter(kind_, params_, rec, ground_state());
    return it->second;
  }

  const std::vector<TrajectoryPoint>& oracle(const MeasurementRecord& rec) {
    auto [it, inserted] = oracle_.try_emplace(cache_key(rec));
    if (inserted) {
      std::vector<TrajectoryPoint> traj;
      traj.reserve(rec.outcomes.size() + 1);
      const double l2 = params_.lambda2();
      Matrix2 rho = ground_state();
      auto push = [&](int step, const Matrix2& state) {
        const auto b = bloch_vector(state);
        traj.push_back({step, step * l2, b[0], b[1], b[2], state});
      };
      push(0, rho);
      const auto states = condition_exact(params_, rec, rho);
      for (std::size_t l = 0; l < states.size(); ++l) push(int(l + 1), states[l].rho);
      it->second = std::move(traj);
    }
    return it->second;
  }

 private:
  static std::uint64_t cache_key(const MeasurementRecord& rec) {
    return (std::uint64_t(rec.outcomes.size()) << 32) | record_key(rec);
  }

  ModelParams params_;
  FilterKind kind_;
  FieldBasis basis_;
  std::map<std::uint64_t, std::vector<TrajectoryPoint>> filter_;
  std::map<std::uint64_t, std::vector<TrajectoryPoint>> oracle_;
};

SchemeComparison compare_scheme(const AppConfig& cfg, const std::string& name, FilterKind kind,
                                FieldBasis fb, const std::vector<BasisPairStats>& end_stats) {
  SchemeComparison out;
  out.name = name;
  out.field_basis = fb;
  out.kind = kind;

  const int n = cfg.n_slices;
  const ExperimentConfig exp_cfg{cfg.params, n, cfg.runs, cfg.seed, cfg.recycle};
  TrajectoryCache cache(cfg.params, kind, fb);

  // Oracle record distribution.
  std::map<std::uint32_t, double> prob;
  for (const auto& [rec, p] : enumerate_record_probabilities(cfg.params, fb, n, ground_state()))
    prob[record_key(rec)] = p;

  // Filter/exact agreement over every attainable record, all steps, all
  // components.
  for (const auto& [key, p] : prob) {
    if (p <= 1e-10) continue;
    const MeasurementRecord rec = record_from_key(key, n, fb);
    const auto& ft = cache.filter(rec);
    const auto& ot = cache.oracle(rec);
    for (std::size_t l = 0; l < ft.size(); ++l) {
      out.filter_oracle_max_diff = std::max(
          {out.filter_oracle_max_diff, std::abs(ft[l].sx - ot[l].sx),
           std::abs(ft[l].sy - ot[l].sy), std::abs(ft[l].sz - ot[l].sz)});
    }
  }

  // End-time statistics for this field basis, plus total-variation distances.
  std::map<std::uint32_t, std::map<AtomBasis, const RecordStats*>> end_by_record;
  std::map<std::uint32_t, std::int64_t> total_count;
  Json tv_json;
  for (const BasisPairStats& pair : end_stats) {
    if (pair.field != fb) continue;
    double tv = 0.0;
    std::map<std::uint32_t, double> freq;
    for (const RecordStats& rs : pair.records) {
      const std::uint32_t key = record_key(rs.record);
      end_by_record[key][pair.atom] = &rs;
      total_count[key] += rs.count;
      freq[key] = double(rs.count) / double(cfg.runs);
    }
    for (const auto& [key, p] : prob) tv += std::abs(freq.count(key) ? freq[key] - p : -p);
    for (const auto& [key, f] : freq)
      if (!prob.count(key)) tv += f;
    tv *= 0.5;
    tv_json[std::string(1, basis_char(pair.atom))] = tv;
  }

  // Stepwise conditional means against the filter prediction of the prefix.
  const std::vector<StepwiseRow> stepwise = stepwise_conditional_means(exp_cfg, fb);
  std::map<std::uint64_t, std::map<AtomBasis, const StepwiseRow*>> step_rows;
  for (const StepwiseRow& row : stepwise) {
    const std::uint64_t key = (std::uint64_t(row.step) << 32) | record_key(row.prefix);
    step_rows[key][row.atom] = &row;
    if (row.count >= kMinCountForZ) {
      const auto& ft = cache.filter(row.prefix);
      const double z =
          conditional_mean_z(row.mean, row.count, bloch_component(ft[std::size_t(row.step)], row.atom), row.sem);
      out.max_abs_z = std::max(out.max_abs_z, std::abs(z));
    }
  }
  for (const auto& [key, by_atom] : end_by_record)
    for (const auto& [ab, rs] : by_atom)
      if (rs->count >= kMinCountForZ) {
        const auto& ft = cache.filter(rs->record);
        const double z = conditional_mean_z(rs->mean, rs->count, bloch_component(ft.back(), ab), rs->sem);
        out.max_abs_z = std::max(out.max_abs_z, std::abs(z));
      }

  // Records ranked by accumulated statistics.
  std::vector<std::pair<std::uint32_t, std::int64_t>> ranked(total_count.begin(),
                                                             total_count.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  // CSV outputs.
  std::ostringstream samples_csv;
  samples_csv << "record,step,atom_basis,count,mean,sem\n";
  for (const StepwiseRow& row : stepwise)
    samples_csv << format_record(row.prefix) << ',' << row.step << ','
                << basis_char(row.atom) << ',' << row.count << ',' << fmt_g12(row.mean) << ','
                << fmt_g12(row.sem) << '\n';
  out.samples_csv = samples_csv.str();

  std::ostringstream theory_csv;
  theory_csv << "record,step,t,probability,filter_sx,filter_sy,filter_sz,"
                "oracle_sx,oracle_sy,oracle_sz\n";
  for (const auto& [key, p] : prob) {
    if (p <= 1e-10) continue;
    const MeasurementRecord rec = record_from_key(key, n, fb);
    const auto& ft = cache.filter(rec);
    const auto& ot = cache.oracle(rec);
    for (std::size_t l = 0; l < ft.size(); ++l)
      theory_csv << format_record(rec) << ',' << ft[l].step << ',' << fmt_g12(ft[l].t) << ','
                 << fmt_g12(p) << ',' << fmt_g12(ft[l].sx) << ',' << fmt_g12(ft[l].sy) << ','
                 << fmt_g12(ft[l].sz) << ',' << fmt_g12(ot[l].sx) << ',' << fmt_g12(ot[l].sy)
                 << ',' << fmt_g12(ot[l].sz) << '\n';
  }
  out.theory_csv = theory_csv.str();

  // JSON block and text report.
  Json records_json = Json::array();
  std::ostringstream report;
  report << "== " << name << " (field basis " << basis_char(fb) << ") ==\n";
  for (const auto& [key, count] : ranked) {
    const MeasurementRecord rec = record_from_key(key, n, fb);
    const double p = prob.count(key) ? prob[key] : 0.0;
    Json rec_json;
    rec_json["record"] = format_record(rec);
    rec_json["probability"] = p;
    Json end_counts;
    for (const auto& [ab, rs] : end_by_record[key])
      end_counts[std::string(1, basis_char(ab))] = rs->count;
    rec_json["end_counts"] = end_counts;

    report << "record " << format_record(rec) << "  probability " << fmt_g12(p)
           << "  total end count " << count << "\n";
    report << "  step        t basis  count        mean         sem      filter      oracle"
              "           z\n";

    const bool attainable = p > 1e-10;
    Json steps_json = Json::array();
    if (attainable) {
      const auto& ft = cache.filter(rec);
      const auto& ot = cache.oracle(rec);
      for (std::size_t l = 0; l < ft.size(); ++l) {
        Json step_json;
        step_json["step"] = ft[l].step;
        step_json["t"] = ft[l].t;
        step_json["filter"] = bloch_json(ft[l].sx, ft[l].sy, ft[l].sz);
        step_json["oracle"] = bloch_json(ot[l].sx, ot[l].sy, ot[l].sz);
        Json sampled;
        MeasurementRecord prefix{fb, {rec.outcomes.begin(), rec.outcomes.begin() + long(l)}};
        const std::uint64_t skey = (std::uint64_t(l) << 32) | record_key(prefix);
        const auto rows_it = step_rows.find(skey);
        for (AtomBasis ab : {AtomBasis::X, AtomBasis::Y, AtomBasis::Z}) {
          const StepwiseRow* row = nullptr;
          if (rows_it != step_rows.end()) {
            const auto it = rows_it->second.find(ab);
            if (it != rows_it->second.end()) row = it->second;
          }
          const double predicted = bloch_component(ft[l], ab);
          Json cell;
          if (row) {
            cell["count"] = row->count;
            cell["mean"] = row->mean;
            cell["sem"] = row->sem;
            if (row->count >= kMinCountForZ)
              cell["z"] = conditional_mean_z(row->mean, row->count, predicted, row->sem);
            report << "  " << std::setw(4) << l << ' ' << std::setw(8) << fmt_g12(ft[l].t) << ' '
                   << std::setw(5) << basis_char(ab) << ' ' << std::setw(6) << row->count << ' '
                   << std::setw(11) << fmt_g12(row->mean) << ' ' << std::setw(11)
                   << fmt_g12(row->sem) << ' ' << std::setw(11) << fmt_g12(predicted) << ' '
                   << std::setw(11) << fmt_g12(bloch_component(ot[l], ab)) << ' ' << std::setw(11)
                   << (row->count >= kMinCountForZ ? fmt_g12(conditional_mean_z(row->mean, row->count, predicted, row->sem))
                                                   : std::string("-"))
                   << '\n';
          } else {
            cell["count"] = 0;
          }
          sampled[std::string(1, basis_char(ab))] = cell;
        }
        step_json["sampled"] = sampled;
        steps_json.push_back(step_json);
      }
    }
    rec_json["steps"] = steps_json;
    records_json.push_back(rec_json);
    report << '\n';
  }

  out.json["scheme"] = name;
  out.json["field_basis"] = std::string(1, basis_char(fb));
  out.json["total_variation"] = tv_json;
  out.json["records"] = records_json;
  out.json["max_abs_z"] = out.max_abs_z;
  out.json["filter_oracle_max_diff"] = out.filter_oracle_max_diff;
  out.report = report.str();
  return out;
}

}  // namespace

AppConfig resolve_config(const RunManifest& m) {
  AppConfig cfg = load_config(m.config_path);
  if (m.seed) cfg.seed = *m.seed;
  if (m.runs) cfg.runs = *m.runs;
  if (m.slices) cfg.n_slices = *m.slices;
  if (m.recycle) cfg.recycle = *m.recycle;
  if (cfg.n_slices < 1) throw std::invalid_argument("n_slices must be >= 1");
  if (cfg.runs < 1) throw std::invalid_argument("runs must be >= 1");
  return cfg;
}

int cmd_master(const RunManifest& m) {
  const AppConfig cfg = resolve_config(m);
  ensure_out_dir(m.out_dir);
  const auto traj = master_trajectory(cfg.params, cfg.n_slices, ground_state());
  std::ostringstream csv;
  csv << "t,sx,sy,sz\n";
  for (const TrajectoryPoint& pt : traj)
    csv << fmt_g12(pt.t) << ',' << fmt_g12(pt.sx) << ',' << fmt_g12(pt.sy) << ','
        << fmt_g12(pt.sz) << '\n';
  const std::string path = join_path(m.out_dir, "master.csv");
  write_text_file(path, csv.str());
  write_text_file(join_path(m.out_dir, "plot_master.py"), master_plot_script());
  std::cout << "wrote " << path << " (" << cfg.n_slices << " steps, lambda2 "
            << fmt_g12(cfg.params.lambda2()) << ")\n";
  return 0;
}

int cmd_filter(FilterKind kind, const RunManifest& m) {
  const AppConfig cfg = resolve_config(m);
  ensure_out_dir(m.out_dir);
  if (m.record.empty())
    throw std::invalid_argument("--record is required for the filter subcommands");
  const FieldBasis basis = kind == FilterKind::Homodyne ? FieldBasis::X : FieldBasis::Z;
  const MeasurementRecord record = parse_record(m.record, basis);
  const auto traj = run_filter(kind, cfg.params, record, ground_state());
  std::ostringstream csv;
  csv << "step,t,sx,sy,sz\n";
  for (const TrajectoryPoint& pt : traj)
    csv << pt.step << ',' << fmt_g12(pt.t) << ',' << fmt_g12(pt.sx) << ',' << fmt_g12(pt.sy)
        << ',' << fmt_g12(pt.sz) << '\n';
  const std::string name = kind == FilterKind::Homodyne ? "homodyne" : "counting";
  const std::string path =
      join_path(m.out_dir, "filter_" + name + "_" + record_file_token(record) + ".csv");
  write_text_file(path, csv.str());
  std::cout << "wrote " << path << '\n';
  return 0;
}

int cmd_sample(const RunManifest& m) {
  const AppConfig cfg = resolve_config(m);
  ensure_out_dir(m.out_dir);
  const ExperimentConfig exp_cfg{cfg.params, cfg.n_slices, cfg.runs, cfg.seed, cfg.recycle};
  const auto stats = run_experiment(exp_cfg);

  Json j;
  j["config"] = Json{{"kappa", cfg.params.kappa},
                     {"omega", cfg.params.omega},
                     {"Omega", cfg.params.Omega},
                     {"lambda2", cfg.params.lambda2()},
                     {"n_slices", cfg.n_slices},
                     {"runs", cfg.runs},
                     {"seed", cfg.seed},
                     {"recycle", cfg.recycle}};
  Json pairs = Json::array();
  for (const BasisPairStats& pair : stats) {
    Json pj;
    pj["atom_basis"] = std::string(1, basis_char(pair.atom));
    pj["field_basis"] = std::string(1, basis_char(pair.field));
    Json records = Json::array();
    for (const RecordStats& rs : pair.records)
      records.push_back(Json{{"record", format_record(rs.record)},
                             {"count", rs.count},
                             {"mean", rs.mean},
                             {"stderr", rs.sem}});
    pj["records"] = records;
    pairs.push_back(pj);
  }
  j["pairs"] = pairs;
  const std::string json_path = join_path(m.out_dir, "sample_stats.json");
  write_text_file(json_path, j.dump(2) + "\n");

  const auto stepwise = stepwise_conditional_means(exp_cfg, cfg.field_basis);
  std::ostringstream csv;
  csv << "record,step,atom_basis,count,mean,sem\n";
  for (const StepwiseRow& row : stepwise)
    csv << format_record(row.prefix) << ',' << row.step << ',' << basis_char(row.atom) << ','
        << row.count << ',' << fmt_g12(row.mean) << ',' << fmt_g12(row.sem) << '\n';
  const std::string csv_path = join_path(m.out_dir, "sample_stepwise.csv");
  write_text_file(csv_path, csv.str());
  std::cout << "wrote " << json_path << " and " << csv_path << '\n';
  return 0;
}

int cmd_compare(const RunManifest& m) {
  const AppConfig cfg = resolve_config(m);
  ensure_out_dir(m.out_dir);
  if (cfg.n_slices > 12)
    throw std::runtime_error("compare enumerates all records; use n_slices <= 12");

  const ExperimentConfig exp_cfg{cfg.params, cfg.n_slices, cfg.runs, cfg.seed, cfg.recycle};
  const auto end_stats = run_experiment(exp_cfg);

  SchemeComparison counting =
      compare_scheme(cfg, "counting", FilterKind::Counting, FieldBasis::Z, end_stats);
  SchemeComparison homodyne =
      compare_scheme(cfg, "homodyne", FilterKind::Homodyne, FieldBasis::X, end_stats);

  const double max_abs_z = std::max(counting.max_abs_z, homodyne.max_abs_z);
  const double max_diff =
      std::max(counting.filter_oracle_max_diff, homodyne.filter_oracle_max_diff);
  const bool pass = max_abs_z <= cfg.z_threshold && max_diff <= kFilterOracleTol;

  Json summary;
  summary["z_threshold"] = cfg.z_threshold;
  summary["min_count"] = kMinCountForZ;
  summary["max_abs_z"] = max_abs_z;
  summary["filter_oracle_max_diff"] = max_diff;
  summary["pass"] = pass;
  summary["schemes"] = Json::array({counting.json, homodyne.json});
  write_text_file(join_path(m.out_dir, "compare_summary.json"), summary.dump(2) + "\n");

  write_text_file(join_path(m.out_dir, "samples_counting.csv"), counting.samples_csv);
  write_text_file(join_path(m.out_dir, "samples_homodyne.csv"), homodyne.samples_csv);
  write_text_file(join_path(m.out_dir, "theory_counting.csv"), counting.theory_csv);
  write_text_file(join_path(m.out_dir, "theory_homodyne.csv"), homodyne.theory_csv);

  std::ostringstream report;
  report << counting.report << homodyne.report;
  report << "max |z| = " << fmt_g12(max_abs_z) << " (threshold " << fmt_g12(cfg.z_threshold)
         << ", rows with count >= " << kMinCountForZ << ")\n";
  report << "max |filter - exact| = " << fmt_g12(max_diff) << " (tolerance "
         << fmt_g12(kFilterOracleTol) << ")\n";
  report << (pass ? "PASS" : "FAIL") << '\n';
  write_text_file(join_path(m.out_dir, "compare_report.txt"), report.str());

  for (const char* scheme : {"counting", "homodyne"})
    for (char basis : {'x', 'y', 'z'})
      write_text_file(
          join_path(m.out_dir, std::string("plot_") + scheme + "_s" + basis + ".py"),
          trajectory_plot_script(scheme, basis));

  std::cout << report.str();
  return pass ? 0 : 1;
}

int cmd_emit_qasm(const RunManifest& m) {
  const AppConfig cfg = resolve_config(m);
  ensure_out_dir(m.out_dir);
  const MeasurementBasisPlan plan{cfg.atom_basis, cfg.field_basis};
  const std::string text = emit_qasm(cfg.params, cfg.n_slices, plan, m.decompose_cry);
  const std::string path = join_path(m.out_dir, "circuit.qasm");
  write_text_file(path, text);
  std::cout << "wrote " << path << '\n';
  return 0;
}

int cmd_limits(const RunManifest& m) {
  const AppConfig cfg = resolve_config(m);
  ensure_out_dir(m.out_dir);
  const std::vector<double> seq =
      cfg.lambda_seq.empty() ? default_lambda_seq() : cfg.lambda_seq;
  const LimitReport rep = limit_triple(cfg.params, seq);

  std::ostringstream csv;
  csv << "lambda,err_s,err_l,err_h,ldag_mismatch,pm_norm\n";
  for (std::size_t i = 0; i < rep.lambdas.size(); ++i)
    csv << fmt_g12(rep.lambdas[i]) << ',' << fmt_g12(rep.err_s[i]) << ','
        << fmt_g12(rep.err_l[i]) << ',' << fmt_g12(rep.err_h[i]) << ','
        << fmt_g12(rep.ldag_mismatch[i]) << ',' << fmt_g12(rep.pm_norm[i]) << '\n';
  write_text_file(join_path(m.out_dir, "limits.csv"), csv.str());

  const auto matrix_json = [](const Matrix2& mat) {
    Json rows = Json::array();
    for (int r = 0; r < 2; ++r) {
      Json row = Json::array();
      for (int c = 0; c < 2; ++c) row.push_back(Json::array({mat(r, c).real(), mat(r, c).imag()}));
      rows.push_back(row);
    }
    return rows;
  };
  const auto rate_json = [](const std::optional<double>& r) {
    return r ? Json(*r) : Json(nullptr);
  };
  Json j;
  j["lambda_seq"] = seq;
  j["S"] = matrix_json(rep.limit.s);
  j["L"] = matrix_json(rep.limit.l);
  j["H"] = matrix_json(rep.limit.h);
  j["h_hermiticity"] = rep.h_hermiticity;
  j["rates"] = Json{{"S", rate_json(rep.rate_s)},
                    {"L", rate_json(rep.rate_l)},
                    {"H", rate_json(rep.rate_h)},
                    {"Ldag_consistency", rate_json(rep.rate_ldag)},
                    {"pm_norm", rate_json(rep.rate_pm)}};
  write_text_file(join_path(m.out_dir, "limits.json"), j.dump(2) + "\n");

  const Matrix2 s_expect = Matrix2::Identity();
  std::cout << "limit check over " << seq.size() << " steps down to lambda = "
            << fmt_g12(seq.back()) << '\n';
  std::cout << "  |S - I|        = " << fmt_g12(max_abs(rep.limit.s - s_expect)) << '\n';
  std::cout << "  |L - sqrt(kappa) sm| = "
            << fmt_g12(max_abs(rep.limit.l - std::sqrt(cfg.params.kappa) * sigma_minus()))
            << '\n';
  const Matrix2 h_expect =
      cfg.params.omega * number_op() + 0.5 * cfg.params.Omega * sigma_y();
  std::cout << "  |H - (omega n + Omega/2 sy)| = " << fmt_g12(max_abs(rep.limit.h - h_expect))
            << '\n';
  std::cout << "  |H - H^dag|    = " << fmt_g12(rep.h_hermiticity) << '\n';
  const auto rate_str = [](const std::optional<double>& r) {
    return r ? fmt_g12(*r) : std::string("exact");
  };
  std::cout << "  rates: S " << rate_str(rep.rate_s) << ", L " << rate_str(rep.rate_l) << ", H "
            << rate_str(rep.rate_h) << ", Ldag " << rate_str(rep.rate_ldag) << ", S-I norm "
            << rate_str(rep.rate_pm) << '\n';
  return 0;
}

}  // namespace qsde::cli
