#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "qsde/commands.hpp"
#include "qsde/config.hpp"

using namespace qsde;
namespace fs = std::filesystem;

namespace {

const char* kPaperConfig = R"({
  "kappa": 1.0, "omega": 0.0, "Omega": 12.0, "lambda2": 0.16,
  "n_slices": 4, "runs": 512, "seed": 11, "recycle": true,
  "atom_basis": "z", "field_basis": "z"
})";

fs::path test_dir() {
  const fs::path dir = fs::path("cli_test_scratch");
  fs::create_directories(dir);
  return dir;
}

std::string write_config(const std::string& name, const std::string& text) {
  const fs::path path = test_dir() / name;
  write_text_file(path.string(), text);
  return path.string();
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(QSDE_SIM_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("config parsing covers both discretization forms") {
  const AppConfig a = parse_config(R"({"kappa":1,"omega":0,"Omega":12,"lambda2":0.16})");
  CHECK(a.params.lambda == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(a.n_slices == 4);
  CHECK(a.runs == 10240);

  const AppConfig b = parse_config(R"({"kappa":1,"omega":0,"Omega":12,"T":4.0,"N":400})");
  CHECK(b.params.lambda2() == doctest::Approx(0.01).epsilon(1e-12));

  CHECK_THROWS_AS(parse_config(R"({"kappa":1,"omega":0,"Omega":12})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"omega":0,"Omega":12,"lambda2":0.16})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      parse_config(R"({"kappa":1,"omega":0,"Omega":12,"lambda2":0.16,"T":1,"N":4})"),
      std::invalid_argument);
  CHECK_THROWS_AS(parse_config("not json"), std::invalid_argument);
}

TEST_CASE("config accepts the nested basis object") {
  const AppConfig cfg = parse_config(
      R"({"kappa":1,"omega":0,"Omega":12,"lambda2":0.16,"basis":{"atom":"y","field":"x"}})");
  CHECK(cfg.atom_basis == AtomBasis::Y);
  CHECK(cfg.field_basis == FieldBasis::X);
}

TEST_CASE("master command writes a deterministic curve") {
  const std::string config = write_config(
      "master.json", R"({"kappa":1.0,"omega":0.0,"Omega":12.0,"lambda2":0.01,"n_slices":400})");
  const std::string out = (test_dir() / "master_out").string();
  cli::RunManifest m;
  m.config_path = config;
  m.out_dir = out;
  CHECK(cli::cmd_master(m) == 0);

  const std::string csv = read_text_file(out + "/master.csv");
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t,sx,sy,sz");
  std::string first;
  std::getline(lines, first);
  CHECK(first == "0,0,0,-1");
  int rows = 1;
  for (std::string line; std::getline(lines, line);)
    if (!line.empty()) ++rows;
  CHECK(rows == 401);

  CHECK(cli::cmd_master(m) == 0);
  CHECK(read_text_file(out + "/master.csv") == csv);  // rerun overwrites identical bytes
  CHECK(fs::exists(out + "/plot_master.py"));
}

TEST_CASE("filter commands write trajectories and flag impossible records") {
  const std::string config = write_config("filter.json", kPaperConfig);
  const std::string out = (test_dir() / "filter_out").string();
  cli::RunManifest m;
  m.config_path = config;
  m.out_dir = out;

  m.record = "0010";
  CHECK(cli::cmd_filter(FilterKind::Counting, m) == 0);
  const std::string csv = read_text_file(out + "/filter_counting_0010.csv");
  CHECK(csv.rfind("step,t,sx,sy,sz\n", 0) == 0);

  m.record = "+-++";
  CHECK(cli::cmd_filter(FilterKind::Homodyne, m) == 0);
  CHECK(fs::exists(out + "/filter_homodyne_pmpp.csv"));

  // An undriven ground-state atom can never emit: the record is impossible
  // and the process exit code says so.
  const std::string still = write_config(
      "still.json", R"({"kappa":1.0,"omega":0.0,"Omega":0.0,"lambda2":0.16})");
  CHECK(run_tool("filter-counting --config " + still + " --out " + out + " --record 1") == 2);
}

TEST_CASE("emit-qasm honors overrides and the decompose flag") {
  const std::string config = write_config("qasm.json", kPaperConfig);
  const std::string out = (test_dir() / "qasm_out").string();
  CHECK(run_tool("emit-qasm --config " + config + " --out " + out + " --slices 2") == 0);
  const std::string qasm = read_text_file(out + "/circuit.qasm");
  CHECK(qasm.find("qreg q[3];") != std::string::npos);
  CHECK(qasm.find("cu3(0.8,0,0)") != std::string::npos);

  CHECK(run_tool("emit-qasm --config " + config + " --out " + out +
                 " --slices 2 --decompose-cry") == 0);
  const std::string decomposed = read_text_file(out + "/circuit.qasm");
  CHECK(decomposed.find("cu3") == std::string::npos);
  CHECK(decomposed.find("ry(0.4)") != std::string::npos);
}

TEST_CASE("limits command reports the continuum coefficients") {
  const std::string config = write_config("limits.json", kPaperConfig);
  const std::string out = (test_dir() / "limits_out").string();
  CHECK(run_tool("limits --config " + config + " --out " + out) == 0);
  const std::string csv = read_text_file(out + "/limits.csv");
  CHECK(csv.rfind("lambda,err_s,err_l,err_h,ldag_mismatch,pm_norm\n", 0) == 0);
  CHECK(fs::exists(out + "/limits.json"));
}

TEST_CASE("sample command writes stats and stepwise tables") {
  const std::string config = write_config("sample.json", kPaperConfig);
  const std::string out = (test_dir() / "sample_out").string();
  cli::RunManifest m;
  m.config_path = config;
  m.out_dir = out;
  m.runs = 256;
  CHECK(cli::cmd_sample(m) == 0);
  const std::string json = read_text_file(out + "/sample_stats.json");
  CHECK(json.find("\"pairs\"") != std::string::npos);
  CHECK(json.find("\"stderr\"") != std::string::npos);
  const std::string csv = read_text_file(out + "/sample_stepwise.csv");
  CHECK(csv.rfind("record,step,atom_basis,count,mean,sem\n", 0) == 0);

  CHECK(cli::cmd_sample(m) == 0);
  CHECK(read_text_file(out + "/sample_stats.json") == json);
}

TEST_CASE("compare command passes on sane configurations") {
  const std::string config = write_config("compare.json", kPaperConfig);
  const std::string out = (test_dir() / "compare_out").string();
  cli::RunManifest m;
  m.config_path = config;
  m.out_dir = out;
  CHECK(cli::cmd_compare(m) == 0);
  for (const char* name :
       {"compare_summary.json", "compare_report.txt", "samples_counting.csv",
        "samples_homodyne.csv", "theory_counting.csv", "theory_homodyne.csv",
        "plot_counting_sz.py", "plot_homodyne_sx.py"})
    CHECK(fs::exists(fs::path(out) / name));
  const std::string summary = read_text_file(out + "/compare_summary.json");
  CHECK(summary.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("compare is deterministic in the z basis for a frozen seed") {
  // Deterministic rows carry zero spread and must match the filter exactly.
  const std::string config = write_config(
      "compare_det.json",
      R"({"kappa":0.0,"omega":0.0,"Omega":0.0,"lambda2":0.16,"n_slices":2,"runs":128})");
  const std::string out = (test_dir() / "compare_det_out").string();
  cli::RunManifest m;
  m.config_path = config;
  m.out_dir = out;
  CHECK(cli::cmd_compare(m) == 0);
  const std::string report = read_text_file(out + "/compare_report.txt");
  CHECK(report.find("PASS") != std::string::npos);
}

TEST_SUITE_END();
