#include "qsde/conditioning.hpp"

#include <cmath>
#include <string>

namespace qsde {

namespace {
constexpr double kZeroProbability = 1e-14;
}

std::array<Matrix2, 2> field_kraus(const Matrix4& u) {
  std::array<Matrix2, 2> k;
  for (int b = 0; b < 2; ++b)
    for (int a_row = 0; a_row < 2; ++a_row)
      for (int a_col = 0; a_col < 2; ++a_col)
        k[b](a_row, a_col) = u(2 * a_row + b, 2 * a_col);
  return k;
}

std::array<Matrix2, 2> measurement_kraus(const Matrix4& u, FieldBasis basis) {
  const auto kz = field_kraus(u);
  if (basis == FieldBasis::Z) return kz;
  const double r = 1.0 / std::sqrt(2.0);
  return {r * (kz[0] + kz[1]), r * (kz[0] - kz[1])};
}

std::vector<ConditionalResult> condition_exact(const ModelParams& p,
                                               const MeasurementRecord& record,
                                               const Matrix2& atom_init) {
  const Matrix4 u = build_interaction_unitary(p).matrix;
  const auto kraus = measurement_kraus(u, record.basis);

  std::vector<ConditionalResult> out;
  out.reserve(record.outcomes.size());
  Matrix2 rho = atom_init;
  double cumulative = 1.0;
  for (std::size_t l = 0; l < record.outcomes.size(); ++l) {
    const Matrix2& k = kraus[record.outcomes[l]];
    const Matrix2 mapped = k * rho * k.adjoint();
    const double prob = mapped.trace().real();
    if (prob < kZeroProbability)
      throw ImpossibleRecordError(
          int(l + 1), "record has ~zero probability: outcome '" +
                          format_record(record).substr(l, 1) + "' at step " + std::to_string(l + 1));
    rho = mapped / prob;
    cumulative *= prob;
    out.push_back({rho, cumulative});
  }
  return out;
}

std::vector<Matrix2> reduced_dynamics_exact(const ModelParams& p, int n_slices,
                                            const Matrix2& atom_init) {
  if (n_slices < 0) throw std::invalid_argument("n_slices must be non-negative");
  const Matrix4 u = build_interaction_unitary(p).matrix;
  const auto k = field_kraus(u);
  std::vector<Matrix2> out;
  out.reserve(std::size_t(n_slices) + 1);
  Matrix2 rho = atom_init;
  out.push_back(rho);
  for (int l = 0; l < n_slices; ++l) {
    rho = k[0] * rho * k[0].adjoint() + k[1] * rho * k[1].adjoint();
    out.push_back(rho);
  }
  return out;
}

std::vector<std::pair<MeasurementRecord, double>> enumerate_record_probabilities(
    const ModelParams& p, FieldBasis basis, int n_slices, const Matrix2& atom_init) {
  if (n_slices < 1 || n_slices > 16)
    throw std::invalid_argument("record enumeration supports 1..16 slices");
  const Matrix4 u = build_interaction_unitary(p).matrix;
  const auto kraus = measurement_kraus(u, basis);

  std::vector<std::pair<MeasurementRecord, double>> out;
  out.reserve(std::size_t(1) << n_slices);
  for (std::uint32_t key = 0; key < (std::uint32_t(1) << n_slices); ++key) {
    MeasurementRecord rec = record_from_key(key, n_slices, basis);
    Matrix2 rho = atom_init;
    double prob = 1.0;
    for (int l = 0; l < n_slices && prob > 0.0; ++l) {
      const Matrix2& k = kraus[rec.outcomes[std::size_t(l)]];
      const Matrix2 mapped = k * rho * k.adjoint();
      const double step_prob = mapped.trace().real();
      prob *= std::max(step_prob, 0.0);
      if (step_prob > 0.0) rho = mapped / step_prob;
    }
    out.emplace_back(std::move(rec), prob);
  }
  return out;
}

Matrix2 ground_state() {
  Matrix2 m;
  m << 0, 0, 0, 1;
  return m;
}

Matrix2 excited_state() {
  Matrix2 m;
  m << 1, 0, 0, 0;
  return m;
}

}  // namespace qsde
