#include "qsde/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "qsde/rng.hpp"

namespace qsde {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void apply_gate(StateVector& sv, const Gate& g, int atom_wire, int field_wire) {
  const auto wire = [&](int w) { return w == 0 ? atom_wire : field_wire; };
  switch (g.kind) {
    case GateKind::Ry:
      apply_1q(sv, ry_matrix(g.angle), wire(g.target));
      break;
    case GateKind::Rz:
      apply_1q(sv, rz_matrix(g.angle), wire(g.target));
      break;
    case GateKind::Cnot:
      apply_controlled_1q(sv, pauli_x_matrix(), wire(g.control), g.control_state, wire(g.target));
      break;
    case GateKind::CRy:
      apply_controlled_1q(sv, ry_matrix(g.angle), wire(g.control), g.control_state,
                          wire(g.target));
      break;
  }
}

void apply_atom_basis_change(StateVector& sv, AtomBasis basis, int atom_wire) {
  switch (basis) {
    case AtomBasis::X:
      apply_1q(sv, hadamard(), atom_wire);
      break;
    case AtomBasis::Y:
      apply_1q(sv, s_dagger(), atom_wire);
      apply_1q(sv, hadamard(), atom_wire);
      break;
    case AtomBasis::Z:
      break;
  }
}

}  // namespace

Matrix2 ry_matrix(double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  Matrix2 m;
  m << c, -s, s, c;
  return m;
}

Matrix2 rz_matrix(double theta) {
  Matrix2 m;
  m << std::exp(Complex(0.0, -0.5 * theta)), 0.0, 0.0, std::exp(Complex(0.0, 0.5 * theta));
  return m;
}

Matrix2 hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix2 m;
  m << r, r, r, -r;
  return m;
}

Matrix2 s_dagger() {
  Matrix2 m;
  m << 1.0, 0.0, 0.0, Complex(0.0, -1.0);
  return m;
}

Matrix2 pauli_x_matrix() {
  Matrix2 m;
  m << 0, 1, 1, 0;
  return m;
}

SliceCircuit build_slice_circuit(const ModelParams& p) {
  p.validate();
  const double l = p.lambda;
  const double l2 = l * l;
  SliceCircuit sc;
  // The excitation exchange couples |e0> and |g1>, so the CNOTs fire on the
  // excited atom (control_state 0 in the {|e>, |g>} ordering) and the CRy on
  // the occupied field slice.
  sc.gates = {
      {GateKind::Ry, p.Omega * l2, 0, -1, 1},
      {GateKind::Rz, p.omega * l2, 0, -1, 1},
      {GateKind::Cnot, 0.0, 1, 0, 0},
      {GateKind::CRy, 2.0 * std::sqrt(p.kappa) * l, 0, 1, 1},
      {GateKind::Cnot, 0.0, 1, 0, 0},
  };
  return sc;
}

Matrix4 slice_unitary(const SliceCircuit& circuit) {
  Matrix4 u;
  for (int col = 0; col < 4; ++col) {
    StateVector sv = StateVector::basis_state(2, std::uint64_t(col));
    for (const Gate& g : circuit.gates) apply_gate(sv, g, 0, 1);
    u.col(col) = sv.amps;
  }
  return u;
}

ChainResult simulate_chain(const ModelParams& p, int n_slices, bool recycle,
                           const MeasurementBasisPlan& plan, std::uint64_t rng_seed) {
  p.validate();
  if (n_slices < 1) throw std::invalid_argument("n_slices must be at least 1");
  const SliceCircuit sc = build_slice_circuit(p);
  Rng rng(rng_seed);

  ChainResult result;
  result.record.basis = plan.field;
  result.record.outcomes.reserve(std::size_t(n_slices));

  int atom_bit = 0;
  if (recycle) {
    // Atom (wire 0) starts in |g> = |1>, the single field wire in vacuum.
    StateVector sv = StateVector::basis_state(2, 0b10);
    for (int slice = 0; slice < n_slices; ++slice) {
      for (const Gate& g : sc.gates) apply_gate(sv, g, 0, 1);
      if (plan.field == FieldBasis::X) apply_1q(sv, hadamard(), 1);
      const int bit = measure_qubit(sv, 1, rng.uniform());
      result.record.outcomes.push_back(std::uint8_t(bit));
      if (bit == 1) apply_1q(sv, pauli_x_matrix(), 1);  // reset to |0>
    }
    apply_atom_basis_change(sv, plan.atom, 0);
    atom_bit = measure_qubit(sv, 0, rng.uniform());
  } else {
    const int n_qubits = n_slices + 1;
    if (n_qubits > kMaxStatevectorQubits)
      throw std::runtime_error("statevector too large; enable recycling or reduce slices");
    StateVector sv = StateVector::basis_state(n_qubits, std::uint64_t(1) << n_slices);
    for (int slice = 1; slice <= n_slices; ++slice)
      for (const Gate& g : sc.gates) apply_gate(sv, g, 0, slice);
    if (plan.field == FieldBasis::X)
      for (int q = 1; q <= n_slices; ++q) apply_1q(sv, hadamard(), q);
    apply_atom_basis_change(sv, plan.atom, 0);
    const std::uint64_t idx = sample_index(sv, rng.uniform());
    atom_bit = int((idx >> n_slices) & 1u);
    for (int slice = 1; slice <= n_slices; ++slice)
      result.record.outcomes.push_back(std::uint8_t((idx >> (n_slices - slice)) & 1u));
  }
  result.atom_outcome = 1 - 2 * atom_bit;
  return result;
}

std::string emit_qasm(const ModelParams& p, int n_slices, const MeasurementBasisPlan& plan,
                      bool decompose_cry) {
  p.validate();
  if (n_slices < 1) throw std::invalid_argument("n_slices must be at least 1");
  const double l = p.lambda;
  const double l2 = l * l;
  const double cry_angle = 2.0 * std::sqrt(p.kappa) * l;
  const int n_qubits = n_slices + 1;

  std::ostringstream os;
  os << "OPENQASM 2.0;\n";
  os << "include \"qelib1.inc\";\n";
  os << "// repeated-interaction chain: atom + " << n_slices << " field slices\n";
  os << "// wire 0: atom (|0> = excited, |1> = ground); wires 1.." << n_slices
     << ": field slices (|0> = vacuum)\n";
  os << "// kappa=" << num(p.kappa) << " omega=" << num(p.omega) << " Omega=" << num(p.Omega)
     << " lambda2=" << num(l2) << "\n";
  os << "// measurement plan: atom " << basis_char(plan.atom) << ", field "
     << basis_char(plan.field) << "\n";
  os << "qreg q[" << n_qubits << "];\n";
  os << "creg c[" << n_qubits << "];\n";
  os << "x q[0];\n";
  for (int slice = 1; slice <= n_slices; ++slice) {
    os << "// slice " << slice << "\n";
    os << "ry(" << num(p.Omega * l2) << ") q[0];\n";
    os << "rz(" << num(p.omega * l2) << ") q[0];\n";
    os << "x q[0];\n";
    os << "cx q[0],q[" << slice << "];\n";
    os << "x q[0];\n";
    if (decompose_cry) {
      os << "ry(" << num(0.5 * cry_angle) << ") q[0];\n";
      os << "cx q[" << slice << "],q[0];\n";
      os << "ry(" << num(-0.5 * cry_angle) << ") q[0];\n";
      os << "cx q[" << slice << "],q[0];\n";
    } else {
      os << "cu3(" << num(cry_angle) << ",0,0) q[" << slice << "],q[0];\n";
    }
    os << "x q[0];\n";
    os << "cx q[0],q[" << slice << "];\n";
    os << "x q[0];\n";
  }
  os << "// measurement basis changes\n";
  if (plan.atom == AtomBasis::X) {
    os << "h q[0];\n";
  } else if (plan.atom == AtomBasis::Y) {
    os << "sdg q[0];\n";
    os << "h q[0];\n";
  }
  if (plan.field == FieldBasis::X)
    for (int q = 1; q <= n_slices; ++q) os << "h q[" << q << "];\n";
  for (int q = 0; q < n_qubits; ++q) os << "measure q[" << q << "] -> c[" << q << "];\n";
  return os.str();
}

}  // namespace qsde
