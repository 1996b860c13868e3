#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "sprinkle/bounds.hpp"
#include "sprinkle/rng.hpp"

using namespace sprinkle;

TEST_CASE("hoeffding bound reproduces hand-computed values") {
  // 100 unit ranges, lambda 20: 2*exp(-2*400/100) = 2e^{-8}
  std::vector<std::pair<double, double>> unit(100, {0.0, 1.0});
  CHECK(hoeffding_bound(unit, 20.0) ==
        doctest::Approx(2.0 * std::exp(-8.0)).epsilon(1e-12));
  // 25 ranges of width 2, lambda 10: 2*exp(-2*100/100) = 2e^{-2}
  std::vector<std::pair<double, double>> wide(25, {0.0, 2.0});
  CHECK(hoeffding_bound(wide, 10.0) ==
        doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("hoeffding bound clamps and handles degenerate ranges") {
  std::vector<std::pair<double, double>> unit(4, {0.0, 1.0});
  CHECK(hoeffding_bound(unit, 0.0) == 2.0);  // trivial bound
  std::vector<std::pair<double, double>> point(3, {1.0, 1.0});
  CHECK(hoeffding_bound(point, 0.5) == 0.0);
  CHECK(hoeffding_bound(point, 0.0) == 2.0);
}

TEST_CASE("hoeffding bound rejects malformed queries") {
  CHECK_THROWS_AS(hoeffding_bound({}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(hoeffding_bound({{1.0, 0.0}}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(hoeffding_bound({{0.0, 1.0}}, -1.0), std::invalid_argument);
}

TEST_CASE("hoeffding bound is monotone") {
  // decreasing in lambda, increasing in added ranges
  for (int t = 0; t < 1000; ++t) {
    Rng rng(substream(101, Stream::kSolver, t));
    int m = 1 + static_cast<int>(rng.below(20));
    std::vector<std::pair<double, double>> ranges;
    for (int i = 0; i < m; ++i) {
      double a = rng.uniform();
      ranges.push_back({a, a + rng.uniform()});
    }
    double l1 = 5.0 * rng.uniform();
    double l2 = l1 + 5.0 * rng.uniform() + 1e-9;
    CHECK(hoeffding_bound(ranges, l2) <= hoeffding_bound(ranges, l1));
    auto more = ranges;
    more.push_back({0.0, 1.0});
    CHECK(hoeffding_bound(more, l1) >= hoeffding_bound(ranges, l1));
  }
}

TEST_CASE("expected round weight closed form") {
  CHECK(expected_round_weight(0.25, 0.05, 0, 100, 3) == 0.0);
  // one step: just delta/n^{k-1}
  CHECK(expected_round_weight(0.25, 0.05, 1, 100, 3) ==
        doctest::Approx(0.25 / 1e4).epsilon(1e-12));
  // geometric series: (delta/n^2)*(1-r^ell)/(delta-beta), r = 1-delta+beta
  double r = 1 - 0.25 + 0.05;
  double want = (0.25 / 1e4) * (1 - std::pow(r, 8)) / 0.2;
  CHECK(expected_round_weight(0.25, 0.05, 8, 100, 3) ==
        doctest::Approx(want).epsilon(1e-12));
  CHECK_THROWS_AS(expected_round_weight(0.1, 0.1, 3, 100, 3),
                  std::invalid_argument);
}

TEST_CASE("expected round weight equals the direct step sum") {
  // sum over j of q_j * P(fixed edge uncovered at step j) under the
  // idealized schedule: q_j*(n_j/n)^k = (delta/n^k) * n_j
  double delta = 0.25, beta = 0.2;
  int n = 60, k = 3, ell = 12;
  double direct = 0.0, nj = n;
  for (int j = 0; j < ell; ++j) {
    direct += (delta / std::pow(nj, k - 1)) * std::pow(nj / n, k);
    nj *= 1 - delta + beta;
  }
  CHECK(expected_round_weight(delta, beta, ell, n, k) ==
        doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("isolated probability bound") {
  auto b = isolated_prob_bound(16, 3, 0.25, 0.05);
  double q = 0.25 / 256.0;
  double want = q * std::pow(1 - q, 16 * 16 * 16 - 15 * 15 * 15);
  CHECK(b.exact == doctest::Approx(want).epsilon(1e-12));
  CHECK(b.lower == doctest::Approx((0.25 - 0.025) / 256.0).epsilon(1e-12));
}

TEST_CASE("isolated lower bound is valid when beta >= 2k delta^2") {
  for (int m : {20, 40, 80, 200}) {
    for (double delta : {0.01, 0.02, 0.03}) {
      double beta = 10 * 3 * delta * delta;
      auto b = isolated_prob_bound(m, 3, delta, beta);
      CHECK(b.exact >= b.lower);
    }
  }
}

TEST_CASE("wilson interval") {
  auto w = wilson95(0, 100);
  CHECK(w.lo <= 1e-12);
  CHECK(w.hi > 0.0);
  CHECK(w.hi < 0.05);
  auto full = wilson95(100, 100);
  CHECK(full.hi >= 1.0 - 1e-12);
  CHECK(full.lo > 0.95);
  auto half = wilson95(50, 100);
  CHECK(half.lo < 0.5);
  CHECK(half.hi > 0.5);
  CHECK(half.hi - half.lo < 0.22);
  // interval tightens with more trials
  auto big = wilson95(500, 1000);
  CHECK(big.hi - big.lo < half.hi - half.lo);
}
