#pragma once

#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qsde/model.hpp"
#include "qsde/record.hpp"

namespace qsde {

struct ConditionalResult {
  Matrix2 rho;               // normalized conditional atom state after the step
  double probability = 0.0;  // cumulative probability of the record prefix
};

class ImpossibleRecordError : public std::runtime_error {
 public:
  ImpossibleRecordError(int step, const std::string& what)
      : std::runtime_error(what), step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

// Field blocks K_b = <b| U |0> of the slice unitary: the Kraus operators of
// one slice when the slice is read out in the z basis.
std::array<Matrix2, 2> field_kraus(const Matrix4& u);

// Kraus operators for reading the slice in the requested basis; outcome bit
// order matches MeasurementRecord (x: bit 0 projects on |+> = (|0>+|1>)/sqrt2).
std::array<Matrix2, 2> measurement_kraus(const Matrix4& u, FieldBasis basis);

// Conditional atom states along a record: per step, evolve atom (x) |0> by
// the slice unitary, project the slice on the recorded outcome, renormalize.
// Iterates 2x2 maps, so cost is linear in the record length. Throws
// ImpossibleRecordError when a step's conditional probability falls below
// 1e-14.
std::vector<ConditionalResult> condition_exact(const ModelParams& p,
                                               const MeasurementRecord& record,
                                               const Matrix2& atom_init);

// Unconditional reduced atom dynamics: rho -> K_0 rho K_0^dag + K_1 rho K_1^dag.
std::vector<Matrix2> reduced_dynamics_exact(const ModelParams& p, int n_slices,
                                            const Matrix2& atom_init);

// All 2^n record probabilities for one basis (n capped to keep enumeration
// at desk scale). Probabilities sum to 1 by unitarity.
std::vector<std::pair<MeasurementRecord, double>> enumerate_record_probabilities(
    const ModelParams& p, FieldBasis basis, int n_slices, const Matrix2& atom_init);

Matrix2 ground_state();   // |g><g|
Matrix2 excited_state();  // |e><e|

}  // namespace qsde
