#include "qsde/statevector.hpp"

#include <cmath>
#include <stdexcept>

namespace qsde {

namespace {

std::uint64_t bit_mask(const StateVector& sv, int qubit) {
  if (qubit < 0 || qubit >= sv.n_qubits) throw std::invalid_argument("qubit index out of range");
  return std::uint64_t(1) << (sv.n_qubits - 1 - qubit);
}

}  // namespace

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
  if (n_qubits < 1 || n_qubits > 30) throw std::invalid_argument("unsupported qubit count");
  StateVector sv;
  sv.n_qubits = n_qubits;
  sv.amps = Vector::Zero(Eigen::Index(1) << n_qubits);
  if (index >= sv.dim()) throw std::invalid_argument("basis index out of range");
  sv.amps[Eigen::Index(index)] = 1.0;
  return sv;
}

void apply_1q(StateVector& sv, const Matrix2& m, int qubit) {
  const std::uint64_t bit = bit_mask(sv, qubit);
  const std::uint64_t dim = sv.dim();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const std::uint64_t j = i | bit;
    const Complex a0 = sv.amps[Eigen::Index(i)];
    const Complex a1 = sv.amps[Eigen::Index(j)];
    sv.amps[Eigen::Index(i)] = m(0, 0) * a0 + m(0, 1) * a1;
    sv.amps[Eigen::Index(j)] = m(1, 0) * a0 + m(1, 1) * a1;
  }
}

void apply_controlled_1q(StateVector& sv, const Matrix2& m, int control, int control_state,
                         int target) {
  if (control == target) throw std::invalid_argument("control equals target");
  if (control_state != 0 && control_state != 1)
    throw std::invalid_argument("control_state must be 0 or 1");
  const std::uint64_t cbit = bit_mask(sv, control);
  const std::uint64_t tbit = bit_mask(sv, target);
  const std::uint64_t dim = sv.dim();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & tbit) continue;
    if (((i & cbit) != 0) != (control_state == 1)) continue;
    const std::uint64_t j = i | tbit;
    const Complex a0 = sv.amps[Eigen::Index(i)];
    const Complex a1 = sv.amps[Eigen::Index(j)];
    sv.amps[Eigen::Index(i)] = m(0, 0) * a0 + m(0, 1) * a1;
    sv.amps[Eigen::Index(j)] = m(1, 0) * a0 + m(1, 1) * a1;
  }
}

void apply_2q(StateVector& sv, const Matrix4& m, int q_hi, int q_lo) {
  if (q_hi == q_lo) throw std::invalid_argument("two-qubit gate needs distinct qubits");
  const std::uint64_t hbit = bit_mask(sv, q_hi);
  const std::uint64_t lbit = bit_mask(sv, q_lo);
  const std::uint64_t dim = sv.dim();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & hbit) || (i & lbit)) continue;
    const std::uint64_t idx[4] = {i, i | lbit, i | hbit, i | hbit | lbit};
    Complex in[4];
    for (int k = 0; k < 4; ++k) in[k] = sv.amps[Eigen::Index(idx[k])];
    for (int r = 0; r < 4; ++r) {
      Complex acc = 0.0;
      for (int c = 0; c < 4; ++c) acc += m(r, c) * in[c];
      sv.amps[Eigen::Index(idx[r])] = acc;
    }
  }
}

int measure_qubit(StateVector& sv, int qubit, double u) {
  const std::uint64_t bit = bit_mask(sv, qubit);
  const std::uint64_t dim = sv.dim();
  double p1 = 0.0;
  for (std::uint64_t i = 0; i < dim; ++i)
    if (i & bit) p1 += std::norm(sv.amps[Eigen::Index(i)]);
  const int outcome = (u < p1) ? 1 : 0;
  const double p = outcome ? p1 : 1.0 - p1;
  if (p <= 0.0) throw std::runtime_error("measurement branch has zero probability");
  const double inv = 1.0 / std::sqrt(p);
  for (std::uint64_t i = 0; i < dim; ++i) {
    const bool is_one = (i & bit) != 0;
    if (is_one == (outcome == 1))
      sv.amps[Eigen::Index(i)] *= inv;
    else
      sv.amps[Eigen::Index(i)] = 0.0;
  }
  return outcome;
}

std::uint64_t sample_index(const StateVector& sv, double u) {
  const std::uint64_t dim = sv.dim();
  double cum = 0.0;
  std::uint64_t last_nonzero = 0;
  for (std::uint64_t i = 0; i < dim; ++i) {
    const double w = std::norm(sv.amps[Eigen::Index(i)]);
    if (w > 0.0) last_nonzero = i;
    cum += w;
    if (u < cum) return i;
  }
  return last_nonzero;
}

}  // namespace qsde
