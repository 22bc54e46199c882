#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsde/model.hpp"
#include "qsde/record.hpp"
#include "qsde/statevector.hpp"

namespace qsde {

enum class GateKind { Ry, Rz, Cnot, CRy };

// One gate on the (atom, field) wire pair of a slice. control_state selects
// the computational state of the control wire that fires the gate. With the
// atom ordering {|e>, |g>}, control_state 0 on an atom control means "fires
// when the atom is excited".
struct Gate {
  GateKind kind = GateKind::Ry;
  double angle = 0.0;
  int target = 0;
  int control = -1;  // -1: no control
  int control_state = 1;
};

using GateSequence = std::vector<Gate>;

// Gate realization of one interaction slice; wire 0 is the atom, wire 1 the
// fresh field slice. Composes to the slice unitary up to a global phase of
// exp(i omega lambda^2 / 2) contributed by the Rz convention.
struct SliceCircuit {
  GateSequence gates;
};

struct MeasurementBasisPlan {
  AtomBasis atom = AtomBasis::Z;
  FieldBasis field = FieldBasis::Z;
};

struct ChainResult {
  MeasurementRecord record;
  int atom_outcome = 0;  // +1/-1 eigenvalue in the plan's atom basis
};

// Rotation conventions: Ry(t) = exp(-i t sigma_y / 2),
// Rz(t) = diag(exp(-i t/2), exp(+i t/2)).
Matrix2 ry_matrix(double theta);
Matrix2 rz_matrix(double theta);
Matrix2 hadamard();
Matrix2 s_dagger();
Matrix2 pauli_x_matrix();

SliceCircuit build_slice_circuit(const ModelParams& p);

// Composed 4x4 unitary of the slice circuit on {e0, e1, g0, g1}.
Matrix4 slice_unitary(const SliceCircuit& circuit);

constexpr int kMaxStatevectorQubits = 22;

// Runs the n-slice chain from atom |g> and field vacuum. With recycle on,
// one field qubit is measured in the plan's basis after every slice, reset
// to |0> by a conditional flip, and reused; otherwise all n field qubits are
// measured at the end. The atom is rotated to the plan's basis and measured
// last. Outcome encoding: a z-measurement of a qubit returns bit b for |b>,
// eigenvalue 1 - 2b; x via H, y via S^dag then H.
ChainResult simulate_chain(const ModelParams& p, int n_slices, bool recycle,
                           const MeasurementBasisPlan& plan, std::uint64_t rng_seed);

// OpenQASM 2.0 program for the n-slice chain (no recycling: one wire per
// slice). Deterministic byte-for-byte for fixed inputs. The atom wire keeps
// the {|e>, |g>} ordering of the matrix representation, so the program
// prepares |g> with an explicit x and implements atom-controlled gates that
// fire on |e> by conjugating the control with x.
std::string emit_qasm(const ModelParams& p, int n_slices, const MeasurementBasisPlan& plan,
                      bool decompose_cry = false);

}  // namespace qsde
