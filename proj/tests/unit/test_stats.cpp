#include "ucshape/stats.hpp"

#include <doctest.h>

using namespace ucshape;

TEST_CASE("chi-square tail probabilities at textbook points") {
  CHECK(chi_square_pvalue(3.841, 1) == doctest::Approx(0.05).epsilon(0.01));
  CHECK(chi_square_pvalue(16.266, 3) == doctest::Approx(0.001).epsilon(0.02));
  CHECK(chi_square_pvalue(0.0, 5) == doctest::Approx(1.0));
  CHECK(chi_square_pvalue(11.07, 5) == doctest::Approx(0.05).epsilon(0.01));
}

TEST_CASE("gof on exact data passes, on skewed data fails") {
  std::vector<double> exp{250, 250, 250, 250};
  CHECK(chi_square_gof({251, 249, 252, 248}, exp).pass(0.001));
  CHECK_FALSE(chi_square_gof({400, 100, 300, 200}, exp).pass(0.001));
}

TEST_CASE("multiplicity gof accepts a synthetic binomial profile") {
  // fake a batch whose multiplicity histogram is exactly the rounded
  // binomial expectation for N=100000 over 3696 classes
  BatchResult br;
  br.total = 0;
  const long long classes = 3696;
  const double n = 100000, p = 1.0 / 3696;
  int next_id = 0;
  for (long long ell = 1; ell < 100; ++ell) {
    double expct = classes * std::exp(std::lgamma(n + 1) - std::lgamma(ell + 1) -
                                      std::lgamma(n - ell + 1) + ell * std::log(p) +
                                      (n - ell) * std::log1p(-p));
    long long cnt = static_cast<long long>(expct + 0.5);
    for (long long i = 0; i < cnt; ++i) {
      br.word_counts["w" + std::to_string(next_id++)] = ell;
      br.total += ell;
    }
  }
  CHECK(multiplicity_gof(br, classes).pass(0.001));
}

TEST_CASE("linear fit r2") {
  CHECK(linear_fit_r2({1, 2, 3, 4}, {2, 4, 6, 8}) == doctest::Approx(1.0));
  CHECK(linear_fit_r2({1, 2, 3, 4}, {5, 5, 5, 5}) == doctest::Approx(1.0));
  CHECK(linear_fit_r2({1, 2, 3, 4, 5}, {2, 9, 3, 8, 1}) < 0.5);
}
