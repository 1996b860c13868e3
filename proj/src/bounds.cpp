#include "sprinkle/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace sprinkle {

double hoeffding_bound(const std::vector<std::pair<double, double>>& ranges,
                       double lambda) {
  if (ranges.empty()) throw std::invalid_argument("hoeffding_bound: no ranges");
  if (lambda < 0.0) throw std::invalid_argument("hoeffding_bound: lambda < 0");
  double denom = 0.0;
  for (auto [a, b] : ranges) {
    if (b < a) throw std::invalid_argument("hoeffding_bound: range with b < a");
    denom += (b - a) * (b - a);
  }
  if (denom == 0.0) return lambda > 0.0 ? 0.0 : 2.0;
  double v = 2.0 * std::exp(-2.0 * lambda * lambda / denom);
  return std::min(v, 2.0);
}

double expected_round_weight(double delta, double beta, int ell, int n, int k) {
  if (delta <= beta)
    throw std::invalid_argument("expected_round_weight: delta must exceed beta");
  if (ell < 0) throw std::invalid_argument("expected_round_weight: ell < 0");
  if (ell == 0) return 0.0;
  double base = 1.0 - delta + beta;
  double nk1 = std::pow(static_cast<double>(n), k - 1);
  return delta / nk1 * (1.0 - std::pow(base, ell)) / (delta - beta);
}

IsolatedBound isolated_prob_bound(int m, int k, double delta, double beta) {
  if (m < 2) throw std::invalid_argument("isolated_prob_bound: m must be >= 2");
  double mk1 = std::pow(static_cast<double>(m), k - 1);
  double q = delta / mk1;
  double neighbors = std::pow(static_cast<double>(m), k) -
                     std::pow(static_cast<double>(m - 1), k);
  IsolatedBound out;
  out.exact = q * std::pow(1.0 - q, neighbors);
  out.lower = (delta - beta / 2.0) / mk1;
  return out;
}

WilsonInterval wilson95(int successes, int trials) {
  if (trials <= 0) return {};
  const double z = 1.959963984540054;
  double n = trials, phat = static_cast<double>(successes) / n;
  double z2 = z * z;
  double center = (phat + z2 / (2 * n)) / (1 + z2 / n);
  double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) /
                (1 + z2 / n);
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace sprinkle
