#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsde/model.hpp"
#include "qsde/record.hpp"

namespace qsde {

// One JSON file drives every subcommand. Model keys: kappa, omega, Omega and
// either lambda2 or {T, N}. Experiment keys (all optional): n_slices, runs,
// seed, recycle, atom_basis, field_basis, z_threshold, lambda_seq.
struct AppConfig {
  ModelParams params;
  int n_slices = 4;
  std::int64_t runs = 10240;
  std::uint64_t seed = 1;
  bool recycle = true;
  AtomBasis atom_basis = AtomBasis::Z;
  FieldBasis field_basis = FieldBasis::Z;
  double z_threshold = 4.0;
  std::vector<double> lambda_seq;  // empty -> the default half-decade ladder
};

AppConfig parse_config(const std::string& json_text);
AppConfig load_config(const std::string& path);
std::vector<double> default_lambda_seq();

// 12-significant-digit float rendering used by every CSV/JSON writer, so
// outputs are diffable across runs.
std::string fmt_g12(double x);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qsde
