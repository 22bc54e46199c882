#include "qsde/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qsde {

ChiSquareResult chi_square_two_sample(const std::vector<std::int64_t>& a,
                                      const std::vector<std::int64_t>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("count vectors must be aligned");
  double total_a = 0, total_b = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    total_a += double(a[i]);
    total_b += double(b[i]);
  }
  if (total_a <= 0 || total_b <= 0) throw std::invalid_argument("empty sample");
  const double total = total_a + total_b;

  double stat = 0.0;
  int cells = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double cell = double(a[i] + b[i]);
    if (cell == 0.0) continue;
    ++cells;
    const double ea = cell * total_a / total;
    const double eb = cell * total_b / total;
    stat += (double(a[i]) - ea) * (double(a[i]) - ea) / ea;
    stat += (double(b[i]) - eb) * (double(b[i]) - eb) / eb;
  }
  const int dof = cells > 1 ? cells - 1 : 0;
  return {stat, dof, chi_square_p_value(stat, dof)};
}

double chi_square_p_value(double statistic, int dof) {
  if (dof <= 0) return 1.0;
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

double pm_one_stderr(double mean, std::int64_t count) {
  if (count <= 0) return 0.0;
  const double var = std::max(0.0, 1.0 - mean * mean);
  return std::sqrt(var / double(count));
}

double conditional_mean_z(double mean, std::int64_t count, double predicted, double sample_sem) {
  const double se = sample_sem > 0.0 ? sample_sem : pm_one_stderr(predicted, count);
  if (se > 0.0) return (mean - predicted) / se;
  return std::abs(mean - predicted) <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace qsde
