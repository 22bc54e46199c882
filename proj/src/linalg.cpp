#include "qsde/linalg.hpp"

#include <stdexcept>

namespace qsde {

namespace {
constexpr Complex kI{0.0, 1.0};
}

Matrix2 sigma_x() {
  Matrix2 m;
  m << 0, 1, 1, 0;
  return m;
}

Matrix2 sigma_y() {
  Matrix2 m;
  m << 0, -kI, kI, 0;
  return m;
}

Matrix2 sigma_z() {
  Matrix2 m;
  m << 1, 0, 0, -1;
  return m;
}

Matrix2 sigma_plus() {
  Matrix2 m;
  m << 0, 1, 0, 0;
  return m;
}

Matrix2 sigma_minus() {
  Matrix2 m;
  m << 0, 0, 1, 0;
  return m;
}

Matrix2 number_op() {
  Matrix2 m;
  m << 1, 0, 0, 0;
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix expm(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix must be square");
  const Eigen::Index n = a.rows();

  // Scale until the infinity norm is at most 1/2, then square back up.
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.5) {
    scale *= 0.5;
    ++squarings;
  }

  const Matrix x = a * scale;
  Matrix term = Matrix::Identity(n, n);
  Matrix sum = term;
  for (int k = 1; k <= 40; ++k) {
    term = (term * x) / double(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

Matrix partial_trace_last_qubits(const Vector& psi, int k) {
  if (k < 0) throw std::invalid_argument("partial_trace: k must be non-negative");
  const Eigen::Index dim = psi.size();
  const Eigen::Index traced = Eigen::Index(1) << k;
  if (traced == 0 || dim % traced != 0)
    throw std::invalid_argument("partial_trace: dimension not divisible by 2^k");
  const Eigen::Index kept = dim / traced;
  Matrix rho = Matrix::Zero(kept, kept);
  for (Eigen::Index i = 0; i < kept; ++i)
    for (Eigen::Index j = 0; j < kept; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index r = 0; r < traced; ++r)
        acc += psi[i * traced + r] * std::conj(psi[j * traced + r]);
      rho(i, j) = acc;
    }
  return rho;
}

Matrix partial_trace_last_qubits(const Matrix& rho, int k) {
  if (k < 0) throw std::invalid_argument("partial_trace: k must be non-negative");
  if (rho.rows() != rho.cols()) throw std::invalid_argument("partial_trace: matrix must be square");
  const Eigen::Index dim = rho.rows();
  const Eigen::Index traced = Eigen::Index(1) << k;
  if (traced == 0 || dim % traced != 0)
    throw std::invalid_argument("partial_trace: dimension not divisible by 2^k");
  const Eigen::Index kept = dim / traced;
  Matrix out = Matrix::Zero(kept, kept);
  for (Eigen::Index i = 0; i < kept; ++i)
    for (Eigen::Index j = 0; j < kept; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index r = 0; r < traced; ++r) acc += rho(i * traced + r, j * traced + r);
      out(i, j) = acc;
    }
  return out;
}

double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

std::array<double, 3> bloch_vector(const Matrix2& rho) {
  return {(rho * sigma_x()).trace().real(), (rho * sigma_y()).trace().real(),
          (rho * sigma_z()).trace().real()};
}

double min_eigenvalue(const Matrix2& m) {
  const Matrix2 herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix2> es(herm);
  return es.eigenvalues().minCoeff();
}

}  // namespace qsde
