#include "qsde/filters.hpp"

#include <cmath>
#include <string>

namespace qsde {

namespace {

constexpr double kDenominatorFloor = 1e-12;
constexpr double kJumpRateFloor = 1e-14;

Matrix2 quadrature_generator(const Matrix2& rho, const CoefficientSet& c) {
  const double l2 = c.lambda * c.lambda;
  return c.m_plus * rho + rho * c.m_plus.adjoint() +
         l2 * (c.m_plus * rho * c.m0.adjoint() + c.m0 * rho * c.m_plus.adjoint());
}

TrajectoryPoint make_point(int step, double l2, const Matrix2& rho) {
  const auto b = bloch_vector(rho);
  return {step, step * l2, b[0], b[1], b[2], rho};
}

}  // namespace

Matrix2 lindblad_discrete(const Matrix2& rho, const CoefficientSet& c) {
  const double l2 = c.lambda * c.lambda;
  return c.m_plus * rho * c.m_plus.adjoint() + l2 * (c.m0 * rho * c.m0.adjoint()) + c.m0 * rho +
         rho * c.m0.adjoint();
}

Matrix2 step_master(const Matrix2& rho, const CoefficientSet& c) {
  return rho + c.lambda * c.lambda * lindblad_discrete(rho, c);
}

Matrix2 step_homodyne(const Matrix2& rho, const CoefficientSet& c, HomodyneIncrement dy) {
  const double l2 = c.lambda * c.lambda;
  if (std::abs(std::abs(dy.dy) - c.lambda) > 1e-12 * std::max(1.0, c.lambda))
    throw std::invalid_argument("homodyne increment must be +lambda or -lambda");
  const Matrix2 lind = lindblad_discrete(rho, c);
  const Matrix2 j = quadrature_generator(rho, c);
  const double tj = j.trace().real();
  const double denom = 1.0 - l2 * tj * tj;
  if (denom < kDenominatorFloor)
    throw StepSizeError("homodyne filter denominator underflow; lambda too large");
  const Matrix2 innovation = j - tj * (rho + l2 * lind);
  return rho + l2 * lind + innovation * ((dy.dy - tj * l2) / denom);
}

Matrix2 step_counting(const Matrix2& rho, const CoefficientSet& c, CountIncrement dy) {
  const double l2 = c.lambda * c.lambda;
  const Matrix2 lind = lindblad_discrete(rho, c);
  const Matrix2 jump_unnorm = c.m_plus * rho * c.m_plus.adjoint();
  const double rate = (rho * c.m_plus.adjoint() * c.m_plus).trace().real();
  const double denom = 1.0 - l2 * rate;
  if (denom < kDenominatorFloor)
    throw StepSizeError("counting filter denominator underflow; lambda too large");
  if (dy.dy) {
    if (rate < kJumpRateFloor)
      throw ImpossibleRecordError(0, "count with ~zero jump rate");
    const Matrix2 bracket = jump_unnorm / rate - rho - l2 * lind;
    return rho + l2 * lind + bracket * ((1.0 - rate * l2) / denom);
  }
  // dy = 0: the increment factor -rate*lambda^2 cancels the division by the
  // rate, so multiply the jump term through.
  const Matrix2 bracket = -l2 * jump_unnorm + rate * l2 * (rho + l2 * lind);
  return rho + l2 * lind + bracket / denom;
}

std::vector<TrajectoryPoint> run_filter(FilterKind kind, const ModelParams& p,
                                        const MeasurementRecord& record,
                                        const Matrix2& atom_init) {
  p.validate();
  if (kind == FilterKind::Homodyne && record.basis != FieldBasis::X)
    throw std::invalid_argument("homodyne filter needs an x-basis record");
  if (kind == FilterKind::Counting && record.basis != FieldBasis::Z)
    throw std::invalid_argument("counting filter needs a z-basis record");

  const CoefficientSet c = coefficients_for(p);
  const double l2 = p.lambda2();
  std::vector<TrajectoryPoint> out;
  out.reserve(record.outcomes.size() + 1);
  Matrix2 rho = atom_init;
  out.push_back(make_point(0, l2, rho));
  for (std::size_t l = 0; l < record.outcomes.size(); ++l) {
    const std::uint8_t bit = record.outcomes[l];
    try {
      if (kind == FilterKind::Homodyne)
        rho = step_homodyne(rho, c, HomodyneIncrement{bit ? -p.lambda : p.lambda});
      else
        rho = step_counting(rho, c, CountIncrement{bit});
    } catch (const ImpossibleRecordError&) {
      throw ImpossibleRecordError(int(l + 1),
                                  "record has ~zero probability: outcome '" +
                                      format_record(record).substr(l, 1) + "' at step " +
                                      std::to_string(l + 1));
    }
    out.push_back(make_point(int(l + 1), l2, rho));
  }
  return out;
}

std::vector<TrajectoryPoint> master_trajectory(const ModelParams& p, int n_steps,
                                               const Matrix2& atom_init) {
  p.validate();
  if (n_steps < 0) throw std::invalid_argument("n_steps must be non-negative");
  const CoefficientSet c = coefficients_for(p);
  const double l2 = p.lambda2();
  std::vector<TrajectoryPoint> out;
  out.reserve(std::size_t(n_steps) + 1);
  Matrix2 rho = atom_init;
  out.push_back(make_point(0, l2, rho));
  for (int l = 1; l <= n_steps; ++l) {
    rho = step_master(rho, c);
    out.push_back(make_point(l, l2, rho));
  }
  return out;
}

}  // namespace qsde
