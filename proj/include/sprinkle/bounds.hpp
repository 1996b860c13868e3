#pragma once

#include <utility>
#include <vector>

namespace sprinkle {

// Two-sided Hoeffding tail for a sum of independent bounded variables:
// 2*exp(-2*lambda^2 / sum (b_i - a_i)^2), clamped to [0, 2]. Degenerate
// ranges (sum of squared widths 0): 0 for lambda > 0, 2 for lambda = 0.
// Throws std::invalid_argument on an empty query or a range with b < a.
double hoeffding_bound(const std::vector<std::pair<double, double>>& ranges,
                       double lambda);

// Closed-form expected per-round weight of a fixed edge under the idealized
// (floor-free) schedule: (delta/n^{k-1}) * (1-(1-delta+beta)^ell)/(delta-beta).
// Throws std::invalid_argument when delta <= beta.
double expected_round_weight(double delta, double beta, int ell, int n, int k);

struct IsolatedBound {
  double exact;  // q*(1-q)^(m^k-(m-1)^k) with q = delta*m^{-(k-1)}
  double lower;  // (delta - beta/2) * m^{-(k-1)}
};

IsolatedBound isolated_prob_bound(int m, int k, double delta, double beta);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

// 95% Wilson score interval for a binomial proportion.
WilsonInterval wilson95(int successes, int trials);

}  // namespace sprinkle
