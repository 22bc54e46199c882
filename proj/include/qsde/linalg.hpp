#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

namespace qsde {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Vector = Eigen::VectorXcd;

/// 2x2 density matrix of the two-level atom, basis {|e>, |g>}.
using AtomState = Eigen::Matrix2cd;

// Two-level atom operators in the {|e>, |g>} basis (excited state first),
// so sigma_plus = |e><g| and sigma_z |e> = +|e>.
Matrix2 sigma_x();
Matrix2 sigma_y();
Matrix2 sigma_z();
Matrix2 sigma_plus();
Matrix2 sigma_minus();
Matrix2 number_op();  // sigma_plus * sigma_minus = |e><e|

Matrix kron(const Matrix& a, const Matrix& b);

// Taylor series with scaling and squaring. Kept as a cross-check oracle for
// the closed-form unitaries; the production paths never call it.
Matrix expm(const Matrix& a);

// Reduced density matrix on the leading subsystem after tracing out the last
// k qubits. Qubit 0 is the most significant index of the state.
Matrix partial_trace_last_qubits(const Vector& psi, int k);
Matrix partial_trace_last_qubits(const Matrix& rho, int k);

double max_abs(const Matrix& a);
std::array<double, 3> bloch_vector(const Matrix2& rho);  // tr(rho sigma_a), a = x,y,z
double min_eigenvalue(const Matrix2& m);                 // of the Hermitian part

}  // namespace qsde
