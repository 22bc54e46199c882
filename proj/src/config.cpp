#include "qsde/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qsde {

namespace {

using Json = nlohmann::ordered_json;

ModelParams params_from_json(const Json& j) {
  for (const char* key : {"kappa", "omega", "Omega"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("config missing key: ") + key);
  const double kappa = j.at("kappa").get<double>();
  const double omega = j.at("omega").get<double>();
  const double Omega = j.at("Omega").get<double>();

  const bool has_lambda2 = j.contains("lambda2");
  const bool has_horizon = j.contains("T") || j.contains("N");
  if (has_lambda2 && has_horizon)
    throw std::invalid_argument("config must give either lambda2 or {T, N}, not both");
  if (has_lambda2) return ModelParams::from_lambda2(kappa, omega, Omega, j.at("lambda2").get<double>());
  if (j.contains("T") && j.contains("N"))
    return ModelParams::from_horizon(kappa, omega, Omega, j.at("T").get<double>(),
                                     j.at("N").get<std::int64_t>());
  throw std::invalid_argument("config must give lambda2 or both T and N");
}

}  // namespace

AppConfig parse_config(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  AppConfig cfg;
  cfg.params = params_from_json(j);
  if (j.contains("n_slices")) cfg.n_slices = j.at("n_slices").get<int>();
  if (j.contains("runs")) cfg.runs = j.at("runs").get<std::int64_t>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("recycle")) cfg.recycle = j.at("recycle").get<bool>();
  if (j.contains("atom_basis")) cfg.atom_basis = parse_atom_basis(j.at("atom_basis").get<std::string>());
  if (j.contains("field_basis"))
    cfg.field_basis = parse_field_basis(j.at("field_basis").get<std::string>());
  if (j.contains("basis")) {
    const Json& b = j.at("basis");
    if (b.contains("atom")) cfg.atom_basis = parse_atom_basis(b.at("atom").get<std::string>());
    if (b.contains("field")) cfg.field_basis = parse_field_basis(b.at("field").get<std::string>());
  }
  if (j.contains("z_threshold")) cfg.z_threshold = j.at("z_threshold").get<double>();
  if (j.contains("lambda_seq")) {
    cfg.lambda_seq = j.at("lambda_seq").get<std::vector<double>>();
    if (cfg.lambda_seq.size() < 2)
      throw std::invalid_argument("lambda_seq needs at least two entries");
  }
  if (cfg.n_slices < 1) throw std::invalid_argument("n_slices must be >= 1");
  if (cfg.runs < 1) throw std::invalid_argument("runs must be >= 1");
  return cfg;
}

AppConfig load_config(const std::string& path) { return parse_config(read_text_file(path)); }

std::vector<double> default_lambda_seq() {
  // Half-decade ladder from 1e-1 down to 1e-4.
  std::vector<double> seq;
  double decade = 1e-1;
  for (int i = 0; i < 3; ++i) {
    seq.push_back(decade);
    seq.push_back(decade * 0.31622776601683794);
    decade *= 0.1;
  }
  seq.push_back(decade);
  return seq;
}

std::string fmt_g12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace qsde
