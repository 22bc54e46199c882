#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "qsde/rng.hpp"
#include "qsde/stats.hpp"

using namespace qsde;

TEST_SUITE_BEGIN("stats");

TEST_CASE("chi-square tail probabilities match tabulated quantiles") {
  CHECK(chi_square_p_value(0.0, 5) == 1.0);
  CHECK(chi_square_p_value(11.0705, 5) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(chi_square_p_value(3.8415, 1) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(chi_square_p_value(30.5779, 15) == doctest::Approx(0.01).epsilon(1e-3));
}

TEST_CASE("identical samples give a zero statistic") {
  const std::vector<std::int64_t> counts{100, 200, 50, 0, 650};
  const ChiSquareResult res = chi_square_two_sample(counts, counts);
  CHECK(res.statistic == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(res.dof == 3);  // four non-empty cells
  CHECK(res.p_value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("clearly different samples are rejected") {
  const std::vector<std::int64_t> a{900, 100};
  const std::vector<std::int64_t> b{100, 900};
  CHECK(chi_square_two_sample(a, b).p_value < 1e-10);
}

TEST_CASE("same-distribution samples pass at moderate sizes") {
  Rng rng(881);
  std::vector<std::int64_t> a(8, 0), b(8, 0);
  for (int i = 0; i < 20000; ++i) {
    a[std::size_t(rng.uniform() * 8)] += 1;
    b[std::size_t(rng.uniform() * 8)] += 1;
  }
  CHECK(chi_square_two_sample(a, b).p_value > 0.001);
}

TEST_CASE("stderr of ±1 outcomes") {
  CHECK(pm_one_stderr(1.0, 100) == 0.0);
  CHECK(pm_one_stderr(0.0, 100) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(pm_one_stderr(0.5, 0) == 0.0);
}

TEST_CASE("mismatched vectors are rejected") {
  CHECK_THROWS_AS(chi_square_two_sample({1, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST_SUITE_END();
