#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qsde/config.hpp"
#include "qsde/filters.hpp"

namespace qsde::cli {

// Resolved invocation: one config file plus command-line overrides.
struct RunManifest {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> runs;
  std::optional<int> slices;
  std::optional<bool> recycle;
  std::string record;  // filter subcommands only
  bool decompose_cry = false;
};

AppConfig resolve_config(const RunManifest& m);

int cmd_master(const RunManifest& m);
int cmd_filter(FilterKind kind, const RunManifest& m);
int cmd_sample(const RunManifest& m);
int cmd_compare(const RunManifest& m);
int cmd_emit_qasm(const RunManifest& m);
int cmd_limits(const RunManifest& m);

}  // namespace qsde::cli
