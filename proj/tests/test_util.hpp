#pragma once

#include "qsde/linalg.hpp"
#include "qsde/model.hpp"
#include "qsde/rng.hpp"

namespace qsde::test {

inline Matrix random_matrix(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m(i, j) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return m;
}

// Random density matrix via G G^dag / tr.
inline Matrix2 random_density(Rng& rng) {
  Matrix g = random_matrix(rng, 2, 2);
  Matrix2 rho = (g * g.adjoint());
  return rho / rho.trace().real();
}

// Parameter draws used by the randomized properties: kappa in [0,4],
// omega in [-2,2], Omega in [0,15], lambda2 in [0.01, 0.2].
inline ModelParams random_params(Rng& rng) {
  return ModelParams::from_lambda2(rng.uniform(0.0, 4.0), rng.uniform(-2.0, 2.0),
                                   rng.uniform(0.0, 15.0), rng.uniform(0.01, 0.2));
}

inline double diff(const Matrix& a, const Matrix& b) { return max_abs(a - b); }

}  // namespace qsde::test
