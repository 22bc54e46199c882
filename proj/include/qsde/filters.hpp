#pragma once

#include <stdexcept>
#include <vector>

#include "qsde/conditioning.hpp"
#include "qsde/model.hpp"
#include "qsde/record.hpp"

namespace qsde {

struct HomodyneIncrement {
  double dy = 0.0;  // +lambda or -lambda
};

struct CountIncrement {
  std::uint8_t dy = 0;  // 1 = photon detected in the slice
};

// Raised when a filter denominator degenerates, i.e. the step size is too
// large for the filter to be meaningful.
class StepSizeError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Discretized Lindblad generator:
//   L(rho) = m+ rho m+* + lambda^2 m0 rho m0* + m0 rho + rho m0*.
Matrix2 lindblad_discrete(const Matrix2& rho, const CoefficientSet& c);

// One step of the discrete master equation rho += L(rho) lambda^2. Exact for
// the discrete model (it is the z-basis Kraus map written in coefficients).
Matrix2 step_master(const Matrix2& rho, const CoefficientSet& c);

// Diffusive filter step conditioned on the quadrature increment dy = ±lambda:
//   drho = L(rho) lambda^2
//        + [J(rho) - tr J(rho) (rho + lambda^2 L(rho))] / (1 - lambda^2 tr[J(rho)]^2)
//          * (dy - tr J(rho) lambda^2),
// with J(rho) = m+ rho + rho m+* + lambda^2 (m+ rho m0* + m0 rho m+*).
Matrix2 step_homodyne(const Matrix2& rho, const CoefficientSet& c, HomodyneIncrement dy);

// Jump filter step conditioned on the count dy in {0,1}:
//   drho = L(rho) lambda^2
//        + [m+ rho m+* / r - rho - lambda^2 L(rho)] / (1 - lambda^2 r)
//          * (dy - r lambda^2),   r = tr[rho m+* m+].
// Throws ImpossibleRecordError on dy = 1 with r below 1e-14; the dy = 0
// branch multiplies the jump term through so no division by r occurs.
Matrix2 step_counting(const Matrix2& rho, const CoefficientSet& c, CountIncrement dy);

enum class FilterKind { Homodyne, Counting };

struct TrajectoryPoint {
  int step = 0;
  double t = 0.0;
  double sx = 0.0, sy = 0.0, sz = 0.0;
  Matrix2 rho;
};

// Folds the filter over a record, starting from atom_init; point 0 is the
// initial state. Homodyne expects an x-basis record (bit 0 -> +lambda),
// counting a z-basis record (bit = count).
std::vector<TrajectoryPoint> run_filter(FilterKind kind, const ModelParams& p,
                                        const MeasurementRecord& record, const Matrix2& atom_init);

// Unconditional master-equation trajectory over n steps.
std::vector<TrajectoryPoint> master_trajectory(const ModelParams& p, int n_steps,
                                               const Matrix2& atom_init);

}  // namespace qsde
