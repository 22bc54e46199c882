#pragma once

#include <cstdint>

#include "qsde/linalg.hpp"

namespace qsde {

// Dense n-qubit state. Qubit 0 is the most significant bit of the basis
// index; appended qubits are less significant.
struct StateVector {
  int n_qubits = 0;
  Vector amps;

  static StateVector basis_state(int n_qubits, std::uint64_t index);
  std::uint64_t dim() const { return std::uint64_t(1) << n_qubits; }
  double norm_sq() const { return amps.squaredNorm(); }
};

void apply_1q(StateVector& sv, const Matrix2& m, int qubit);

// Applies m to `target` on the amplitudes where `control` is in the
// computational state `control_state` (0 or 1).
void apply_controlled_1q(StateVector& sv, const Matrix2& m, int control, int control_state,
                         int target);

// Applies a two-qubit gate; the 4x4 matrix is indexed by the pair
// (q_hi, q_lo) in the order {00, 01, 10, 11}.
void apply_2q(StateVector& sv, const Matrix4& m, int q_hi, int q_lo);

// Projective computational-basis measurement of one qubit. The branch is
// decided by u in [0,1): outcome 1 iff u < P(bit = 1). Collapses and
// renormalizes the state, returns the bit.
int measure_qubit(StateVector& sv, int qubit, double u);

// Samples a full computational-basis index by inverse CDF; does not collapse.
std::uint64_t sample_index(const StateVector& sv, double u);

}  // namespace qsde
