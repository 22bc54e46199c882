#include <cmath>

#include "doctest.h"
#include "qsde/circuit.hpp"
#include "qsde/statevector.hpp"
#include "test_util.hpp"

using namespace qsde;

TEST_SUITE_BEGIN("statevector");

TEST_CASE("basis states and qubit significance") {
  // Qubit 0 is the most significant index.
  StateVector sv = StateVector::basis_state(3, 0b100);
  CHECK(sv.amps[4] == Complex(1.0, 0.0));
  apply_1q(sv, sigma_x(), 2);  // least significant qubit
  CHECK(std::abs(sv.amps[0b101] - 1.0) <= 1e-15);
}

TEST_CASE("single-qubit gates preserve the norm") {
  Rng rng(3);
  StateVector sv;
  sv.n_qubits = 3;
  sv.amps = test::random_matrix(rng, 8, 1);
  sv.amps.normalize();
  apply_1q(sv, hadamard(), 1);
  apply_1q(sv, ry_matrix(0.37), 0);
  apply_1q(sv, rz_matrix(-1.2), 2);
  CHECK(std::abs(sv.norm_sq() - 1.0) <= 1e-12);
}

TEST_CASE("controlled gate matches its embedded 4x4 matrix") {
  Rng rng(5);
  const Matrix2 m = ry_matrix(0.83);
  for (int control_state : {0, 1}) {
    StateVector sv;
    sv.n_qubits = 2;
    sv.amps = test::random_matrix(rng, 4, 1);
    sv.amps.normalize();
    Vector before = sv.amps;
    apply_controlled_1q(sv, m, 0, control_state, 1);

    Matrix4 embedded = Matrix4::Identity();
    const int base = control_state ? 2 : 0;  // control is the high qubit
    embedded.block<2, 2>(base, base) = m;
    CHECK(test::diff(sv.amps, embedded * before) <= 1e-14);
  }
}

TEST_CASE("two-qubit gate application matches kron embedding") {
  Rng rng(7);
  Matrix4 u;
  {
    const Matrix g = test::random_matrix(rng, 4, 4);
    const Matrix anti = 0.5 * (g - g.adjoint());
    u = expm(anti);  // random unitary
  }
  StateVector sv;
  sv.n_qubits = 3;
  sv.amps = test::random_matrix(rng, 8, 1);
  sv.amps.normalize();
  const Vector before = sv.amps;

  apply_2q(sv, u, 0, 2);  // acts on the outer qubits, middle untouched
  // Embed by hand: index = (a b c), gate on (a, c).
  Vector expect = Vector::Zero(8);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        const int row = a * 2 + c;
        for (int a2 = 0; a2 < 2; ++a2)
          for (int c2 = 0; c2 < 2; ++c2)
            expect[a * 4 + b * 2 + c] += u(row, a2 * 2 + c2) * before[a2 * 4 + b * 2 + c2];
      }
  CHECK(test::diff(sv.amps, expect) <= 1e-13);
}

TEST_CASE("measurement collapses and renormalizes") {
  StateVector sv = StateVector::basis_state(2, 0);
  apply_1q(sv, hadamard(), 0);  // (|00> + |10>)/sqrt2
  SUBCASE("branch chosen by the uniform draw") {
    const int one = measure_qubit(sv, 0, 0.49);  // u < p1 = 0.5 -> outcome 1
    CHECK(one == 1);
    CHECK(std::abs(sv.amps[2] - 1.0) <= 1e-12);
  }
  SUBCASE("other branch") {
    const int zero = measure_qubit(sv, 0, 0.51);
    CHECK(zero == 0);
    CHECK(std::abs(sv.amps[0] - 1.0) <= 1e-12);
  }
}

TEST_CASE("measurement of a deterministic qubit") {
  StateVector sv = StateVector::basis_state(2, 0b01);
  CHECK(measure_qubit(sv, 1, 0.999999) == 1);
  CHECK(measure_qubit(sv, 0, 0.0) == 0);
}

TEST_CASE("sample_index walks the cumulative distribution") {
  StateVector sv = StateVector::basis_state(2, 0);
  apply_1q(sv, hadamard(), 0);
  apply_1q(sv, hadamard(), 1);  // uniform over 4 indices
  CHECK(sample_index(sv, 0.10) == 0);
  CHECK(sample_index(sv, 0.30) == 1);
  CHECK(sample_index(sv, 0.60) == 2);
  CHECK(sample_index(sv, 0.90) == 3);
}

TEST_SUITE_END();
