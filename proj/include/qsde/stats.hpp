#pragma once

#include <cstdint>
#include <vector>

namespace qsde {

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

// Two-sample homogeneity test on aligned count vectors (cells with zero
// total are skipped; dof = included cells - 1).
ChiSquareResult chi_square_two_sample(const std::vector<std::int64_t>& a,
                                      const std::vector<std::int64_t>& b);

double chi_square_p_value(double statistic, int dof);

// Standard error of a sample mean of ±1-valued outcomes.
double pm_one_stderr(double mean, std::int64_t count);

// z-score of a conditional ±1 sample mean against a prediction. A degenerate
// sample (every outcome equal, zero sample spread) falls back to the spread
// implied by the predicted mean; when the prediction itself is deterministic
// the comparison is exact (0 on agreement, infinity otherwise).
double conditional_mean_z(double mean, std::int64_t count, double predicted, double sample_sem);

}  // namespace qsde
