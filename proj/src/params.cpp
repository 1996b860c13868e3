#include "sprinkle/params.hpp"

#include <cmath>

namespace sprinkle {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw ConfigError(msg);
}

}  // namespace

std::vector<int> nibble_schedule(int n, double delta, double beta, int ell) {
  std::vector<int> nj;
  nj.reserve(ell + 1);
  nj.push_back(n);
  for (int j = 0; j < ell; ++j)
    nj.push_back(nj.back() - bite_size(nj.back(), delta, beta));
  return nj;
}

double PackingParams::residual_fraction() const {
  auto sched = nibble_schedule(n, delta, beta, ell);
  return static_cast<double>(sched.back()) / n;
}

PackingParams derive_params(const ParamInputs& in) {
  PackingParams out;
  out.regime = in.regime;
  out.allow_k2 = in.allow_k2;
  out.seed = in.seed;

  require(in.n >= 1, "n: must be a positive integer");
  int min_k = in.allow_k2 ? 2 : 3;
  require(in.k >= min_k,
          "k: must be >= " + std::to_string(min_k) +
              (in.allow_k2 ? "" : " (pass allow_k2 to experiment with k=2)"));
  require(in.p > 0.0 && in.p <= 1.0, "p: must be in (0, 1]");
  require(in.epsilon > 0.0 && in.epsilon < 1.0, "epsilon: must be in (0, 1)");
  require(in.gamma >= 0.0, "gamma: must be nonnegative");
  out.n = in.n;
  out.k = in.k;
  out.p = in.p;
  out.epsilon = in.epsilon;
  out.gamma = in.gamma;

  bool desk = in.regime == Regime::kDesk;

  out.delta = in.delta.value_or(1.0 / (20.0 * in.k));
  if (desk) {
    require(out.delta > 0.0 && out.delta < 1.0, "delta: must be in (0, 1)");
  } else {
    require(out.delta > 0.0 && out.delta < 1.0 / (10.0 * in.k),
            "delta: must be in (0, 1/(10k)) in the asymptotic regime");
  }

  double derived_beta = 10.0 * in.k * out.delta * out.delta;
  if (in.beta.has_value()) {
    require(desk, "beta: overridable only in the desk regime");
    out.beta = *in.beta;
  } else {
    out.beta = derived_beta;
  }
  require(out.beta >= 0.0 && out.beta < out.delta,
          "beta: must satisfy 0 <= beta < delta" +
              std::string(in.beta.has_value()
                              ? ""
                              : "; pick a smaller delta or override beta"));

  if (in.alpha.has_value()) {
    out.alpha = *in.alpha;
  } else if (desk) {
    out.alpha = 0.2;
  } else {
    double ln = std::log(static_cast<double>(in.n));
    require(ln > 1.0, "n: too small for the asymptotic alpha default");
    out.alpha = 1.0 / (ln * ln * ln);
  }
  require(out.alpha > 0.0 && out.alpha < 1.0, "alpha: must be in (0, 1)");
  require(out.alpha * in.n >= in.k,
          "alpha: alpha*n must be at least k (use the desk regime override)");

  double base = 1.0 - out.delta + out.beta;
  require(base > 0.0 && base < 1.0, "delta/beta: need 0 < 1-delta+beta < 1");
  int ell = static_cast<int>(std::ceil(std::log(out.alpha) / std::log(base)));
  if (ell < 0) ell = 0;
  // pin the bracket (1-delta+beta)^ell <= alpha < (1-delta+beta)^(ell-1)
  while (std::pow(base, ell) > out.alpha) ++ell;
  while (ell > 0 && std::pow(base, ell - 1) <= out.alpha) --ell;
  out.ell = ell;

  double nk1 = std::pow(static_cast<double>(in.n), in.k - 1);
  double rounds = std::floor((1.0 - in.epsilon) * nk1 * in.p);
  require(rounds >= 1.0, "p/epsilon: N = floor((1-epsilon)*n^(k-1)*p) is 0");
  require(rounds < 9.0e15, "p: N too large");
  out.rounds = static_cast<int64_t>(rounds);

  if (desk)
    require(bite_size(static_cast<int>(out.alpha * in.n), out.delta,
                      out.beta) >= 1 ||
                out.ell == 0,
            "delta/alpha: floor((delta-beta)*alpha*n) must be >= 1 in desk "
            "mode");

  if (in.q2.has_value()) {
    out.q2 = *in.q2;
    require(out.q2 > 0.0 && out.q2 <= 1.0, "q2: must be in (0, 1]");
  } else {
    int n_ell = nibble_schedule(in.n, out.delta, out.beta, out.ell).back();
    if (desk) {
      // comfortably supercritical: q2 * n_ell^{k-1} >= 3 ln(n_ell * k)
      double d = std::pow(static_cast<double>(n_ell), in.k - 1);
      out.q2 = std::min(1.0, 3.0 * std::log(static_cast<double>(n_ell) * in.k) / d);
    } else {
      double ln = std::log(static_cast<double>(in.n));
      out.q2 = std::min(1.0, std::pow(ln, 5) / nk1);
    }
    if (n_ell <= 1) out.q2 = 1.0;
  }

  return out;
}

const char* regime_name(Regime r) {
  return r == Regime::kDesk ? "desk" : "asymptotic";
}

Regime regime_from_name(const std::string& s) {
  if (s == "desk") return Regime::kDesk;
  if (s == "asymptotic") return Regime::kAsymptotic;
  throw ConfigError("regime: expected 'asymptotic' or 'desk'");
}

}  // namespace sprinkle
