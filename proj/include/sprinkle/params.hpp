#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sprinkle {

enum class Regime { kAsymptotic, kDesk };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raw inputs; optional fields fall back to regime defaults.
struct ParamInputs {
  int n = 0;
  int k = 3;
  double p = 0.0;
  double epsilon = 0.1;
  std::optional<double> delta;  // asymptotic default: 1/(20k)
  std::optional<double> alpha;
  std::optional<double> beta;  // derived 10*k*delta^2 unless overridden (desk)
  std::optional<double> q2;
  double gamma = 0.01;
  uint64_t seed = 1;
  Regime regime = Regime::kDesk;
  bool allow_k2 = false;  // the disjointness guarantee is stated for k >= 3
};

struct PackingParams {
  int n = 0;
  int k = 0;
  double p = 0;
  double epsilon = 0;
  double delta = 0;
  double beta = 0;
  double alpha = 0;
  double gamma = 0;
  double q2 = 0;
  int ell = 0;          // steps per round
  int64_t rounds = 0;   // N = floor((1-epsilon) * n^{k-1} * p)
  uint64_t seed = 0;
  Regime regime = Regime::kDesk;
  bool allow_k2 = false;

  double residual_fraction() const;  // realized n_ell / n
};

// Validates inputs and fills every derived quantity. Pure: identical inputs
// give identical outputs. Throws ConfigError with a field-level message.
PackingParams derive_params(const ParamInputs& in);

// The fixed flooring recurrence n_{j+1} = n_j - floor((delta-beta)*n_j),
// returned as n_0..n_ell.
std::vector<int> nibble_schedule(int n, double delta, double beta, int ell);

inline int bite_size(int nj, double delta, double beta) {
  return static_cast<int>((delta - beta) * nj);
}

const char* regime_name(Regime r);
Regime regime_from_name(const std::string& s);

}  // namespace sprinkle
