#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qsde/linalg.hpp"

namespace qsde {

// Physical and discretization parameters. lambda is the root step
// sqrt(T/N); one interaction slice advances time by lambda^2.
struct ModelParams {
  double kappa = 0.0;   // decay rate, >= 0
  double omega = 0.0;   // transition frequency of the atom
  double Omega = 0.0;   // Rabi frequency of the drive
  double lambda = 0.1;  // root time step, > 0

  double lambda2() const { return lambda * lambda; }
  void validate() const;

  static ModelParams from_lambda2(double kappa, double omega, double Omega, double lambda2);
  static ModelParams from_horizon(double kappa, double omega, double Omega, double T,
                                  std::int64_t N);
};

// Unitary coupling the atom to one fresh field slice, on the joint basis
// {e0, e1, g0, g1} (atom index major, field slice minor, vacuum = |0>).
struct InteractionUnitary {
  Matrix4 matrix;
};

// Atom-space coefficients of the block decomposition
//   U - I = m_pm (x) dLambda + m_plus (x) dA* + m_minus (x) dA + m0 (x) dt
// with field factors dLambda = |1><1|, dA* = lambda |1><0|,
// dA = lambda |0><1|, dt = lambda^2 I.
struct CoefficientSet {
  Matrix2 m0;
  Matrix2 m_minus;
  Matrix2 m_plus;
  Matrix2 m_pm;
  double lambda = 0.0;
};

// Continuum limit of the coefficients: scattering operator s (unitary),
// coupling operator l, Hamiltonian h (Hermitian).
struct LimitTriple {
  Matrix2 s, l, h;
};

struct LimitReport {
  LimitTriple limit;  // Richardson-extrapolated from the two smallest steps
  std::vector<double> lambdas;
  std::vector<double> err_s, err_l, err_h;  // distance from the extrapolated limit
  std::vector<double> ldag_mismatch;        // ||(-m_minus s*)^dag - m_plus||
  std::vector<double> pm_norm;              // ||m_pm||
  std::optional<double> rate_s, rate_l, rate_h, rate_ldag, rate_pm;  // log-log slopes
  double h_hermiticity = 0.0;               // ||h - h^dag|| of the limit
};

// Closed form of the product
//   exp(sqrt(kappa)(sm (x) lambda sp_f - sp (x) lambda sm_f))
//   * exp(-i omega n (x) lambda^2 I) * exp(-i Omega/2 sigma_y (x) lambda^2 I).
InteractionUnitary build_interaction_unitary(const ModelParams& p);

// Reads the four field-space 2x2 blocks of u - I; the decomposition above is
// unique given the four noise factors.
CoefficientSet extract_coefficients(const InteractionUnitary& u, double lambda);
CoefficientSet coefficients_for(const ModelParams& p);

// Evaluates the coefficient limits along a strictly decreasing step sequence
// and extrapolates; reports per-step errors, consistency defects and
// empirical convergence rates.
LimitReport limit_triple(const ModelParams& base, std::span<const double> lambda_seq);

}  // namespace qsde
