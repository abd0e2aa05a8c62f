#include "ucshape/counting.hpp"

#include <doctest.h>

using namespace ucshape;

namespace {

// Frozen from the published tables.
const BigInt kShapeTotals[] = {BigInt("4"), BigInt("3696"), BigInt("15214144"),
                               BigInt("148120104704"), BigInt("2638025019442176")};
const char* kKappa[][5] = {
    {"1"},
    {"21", "105"},
    {"1485", "18018", "50050"},
    {"225225", "4660227", "29099070", "56581525"},
    {"59520825", "1804142340", "18472089636", "78082504500", "117123756750"},
};

std::vector<BigRational> neg_pow_series(const BigRational& e, int n_max) {
  std::vector<BigRational> c(n_max + 1);
  c[0] = 1;
  for (int i = 1; i <= n_max; ++i) c[i] = c[i - 1] * 4 * (e + i - 1) / i;
  return c;
}

}  // namespace

TEST_CASE("unicellular map counts") {
  CHECK(epsilon_g(0, 3) == 5);
  CHECK(epsilon_g(1, 2) == 1);
  CHECK(epsilon_g(1, 3) == 10);
  CHECK(epsilon_g(1, 4) == 70);
  CHECK(epsilon_g(2, 4) == 21);
  // the trisection identity behind the recursion: 2 * eps_1(3) = C(4,3) * eps_0(3)
  CHECK(2 * epsilon_g(1, 3) == binomial(4, 3) * epsilon_g(0, 3));
}

TEST_CASE("product form over genus chains matches the recursion") {
  for (int g = 0; g <= 3; ++g)
    for (int n = 0; n <= 10; ++n) CHECK(epsilon_g_product(g, n) == epsilon_g(g, n));
}

TEST_CASE("kappa table reproduces the published coefficients") {
  for (int g = 1; g <= 5; ++g) {
    const KappaTable& tab = kappa_table(g);
    REQUIRE(static_cast<int>(tab.entries.size()) == g);
    for (int t = 0; t < g; ++t) CHECK(tab.entries[t].kappa == parse_bigint(kKappa[g - 1][t]));
  }
  CHECK(kappa_table(1).entries[0].a == BigRational(1, 2));
}

TEST_CASE("kappa integrality holds through g = 6") {
  for (int g = 1; g <= 6; ++g) {
    const KappaTable& tab = kappa_table(g);
    for (int t = 0; t < g; ++t)
      CHECK(tab.entries[t].kappa == to_integer(tab.entries[t].a * BigRational(catalan(2 * g + t))));
  }
}

TEST_CASE("P_g polynomials") {
  CHECK(pg_polynomial(1).to_string() == "1");
  CHECK(pg_polynomial(2).to_string() == "126 - 84*z");
  CHECK(pg_polynomial(3).coeff(0) == 1485 + 18018 + 50050);
}

TEST_CASE("kappa series reproduces the map counts") {
  // C_g(z) = sum_t kappa_t z^{2g+t} (1-4z)^{-(2g+t+1/2)} must expand to
  // eps_g(n); this pins the kappa values against the genus recursion.
  const int n_max = 12;
  for (int g = 1; g <= 3; ++g) {
    std::vector<BigRational> series(n_max + 1);
    const KappaTable& tab = kappa_table(g);
    for (int t = 0; t < g; ++t) {
      auto tail = neg_pow_series(BigRational(2 * (2 * g + t) + 1, 2), n_max);
      for (int n = 2 * g + t; n <= n_max; ++n)
        series[n] += BigRational(tab.entries[t].kappa) * tail[n - (2 * g + t)];
    }
    for (int n = 0; n <= n_max; ++n) CHECK(series[n] == BigRational(epsilon_g(g, n)));
  }
}

TEST_CASE("eta0 closed form") {
  CHECK(eta0(2, 3) == 2);  // Cat(2)
  CHECK(eta0(4, 3) == 2);
  CHECK(eta0(5, 3) == 0);  // outside support
  CHECK(eta0(3, 3) == binomial(2, 1) * catalan(2));
  CHECK(eta0(0, 1) == 1);
  CHECK(eta0(3, 0) == 0);
}

TEST_CASE("shape counts and polynomials") {
  CHECK(shape_count(1, 2) == 1);
  CHECK(shape_count(1, 3) == 2);
  CHECK(shape_count(1, 4) == 1);
  CHECK(shape_polynomial(1).to_string() == "z^2 + 2*z^3 + z^4");

  const BigInt s2[] = {21, 189, 651, 1134, 1071, 525, 105};
  for (int n = 4; n <= 10; ++n) CHECK(shape_polynomial(2).coeff(n) == s2[n - 4]);

  for (int g = 1; g <= 5; ++g) {
    IntPolynomial s = shape_polynomial(g);
    BigInt total = 0;
    for (int n = 0; n <= max_arcs(g); ++n) {
      CHECK(s.coeff(n) == shape_count(g, n));
      total += shape_count(g, n);
    }
    CHECK(total == kShapeTotals[g - 1]);
    CHECK(s.eval(1) == kShapeTotals[g - 1]);
    CHECK(shape_total(g) == kShapeTotals[g - 1]);
    // proposition route: eta_g(n,0) = sum_t a_t eta_0(n, 2g+t+1)
    for (int n = min_arcs(g); n <= max_arcs(g); ++n) {
      BigRational alt = 0;
      for (int t = 0; t < g; ++t)
        alt += kappa_table(g).entries[t].a * BigRational(eta0(n, 2 * g + t + 1));
      CHECK(alt == BigRational(shape_count(g, n)));
    }
  }
}

TEST_CASE("probability families sum to one") {
  for (int g = 1; g <= 5; ++g) {
    BigRational sum = 0;
    for (int n = min_arcs(g); n <= max_arcs(g); ++n) sum += prob_arcs(g, n);
    CHECK(sum == BigRational(1));
    for (int n = min_arcs(g); n <= max_arcs(g); ++n) {
      BigRational ksum = 0;
      for (int k = 2 * g + 1; k <= 3 * g; ++k) ksum += prob_labels(g, n, k);
      CHECK(ksum == BigRational(1));
    }
  }
  CHECK(prob_arcs(1, 2) == BigRational(1, 4));
  CHECK(prob_arcs(1, 3) == BigRational(2, 4));
  CHECK(prob_arcs(1, 4) == BigRational(1, 4));
}

TEST_CASE("trace machinery") {
  // suffix weights from the start state recover a_t (independent route)
  for (int g = 1; g <= 5; ++g)
    for (int t = 0; t < g; ++t)
      CHECK(trace_suffix_weight(g, 0, 2 * g + t + 1) == kappa_table(g).entries[t].a);

  auto d1 = trace_distribution(1, 0);
  REQUIRE(d1.size() == 1);
  CHECK(d1[0].first.steps() == std::vector<std::pair<int, int>>{{1, 0}});
  CHECK(d1[0].second == BigRational(1));

  for (int g = 1; g <= 3; ++g)
    for (int t = 0; t < g; ++t) {
      BigRational sum = 0;
      for (const auto& [tr, p] : trace_distribution(g, t)) {
        tr.validate_for(g, 2 * g + t + 1);
        sum += p;
      }
      CHECK(sum == BigRational(1));
    }

  // g=2, t=0: the two traces have probabilities 1/6 and 5/6
  auto d2 = trace_distribution(2, 0);
  REQUIRE(d2.size() == 2);
  BigRational lo = d2[0].second < d2[1].second ? d2[0].second : d2[1].second;
  CHECK(lo == BigRational(1, 6));

  SUBCASE("sampled traces follow the exact distribution") {
    SplitMix64 rng(31);
    std::map<std::string, long long> counts;
    const int draws = 30000;
    for (int i = 0; i < draws; ++i) counts[sample_trace(2, 5, rng).to_string()]++;
    REQUIRE(counts.size() == 2);
    long long single = counts["((2,0))"];
    CHECK(single > draws / 6 - 400);
    CHECK(single < draws / 6 + 400);
  }

  SUBCASE("trace validation rejects inconsistent label budgets") {
    GlueTrace two_step({{1, 0}, {2, 0}});
    two_step.validate_for(2, 6);
    CHECK_THROWS(two_step.validate_for(2, 7));
    CHECK_THROWS(GlueTrace({{1, 0}, {1, 0}}));
    CHECK_THROWS(GlueTrace({{1, 1}}));
    CHECK_THROWS(GlueTrace({{1, 0}, {2, 2}}));
  }
}
