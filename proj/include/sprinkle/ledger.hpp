#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "sprinkle/types.hpp"

namespace sprinkle {

inline constexpr int kNeverCovered = std::numeric_limits<int>::max();

enum class DenseMode { kAuto, kOn, kOff };

struct StepExposure {
  int step;  // step index j within the round
  double q;  // q_{ij} used for that exposure
};

// Explicit capture of an exposed edge block; only kept when the dense
// oracle is enabled.
struct DenseBatch {
  Block parts;
  double q;
};

// Compressed per-round record. An edge e belongs to the batch of step j iff
// j <= cover_step[m][e.v[m]] for every part m (a vertex covered by the bite
// of step j was still in that step's exposed block), so cover times plus the
// step probability list reproduce every per-edge survival product exactly.
struct RoundLedger {
  std::vector<StepExposure> steps;
  std::vector<std::vector<int>> cover_step;  // [part][vertex], kNeverCovered if free
  std::vector<DenseBatch> dense;             // phase-1 batches, dense mode only
  bool completed = false;                    // round finished all ell steps
};

struct Phase2Entry {
  int round;
  Block parts;  // the leftover block S_1 x ... x S_k
  double q;
};

// Multiplies survival[index(e)] by (1-q) for every edge of the block.
// Shared by the dense replay and by test oracles.
void apply_batch_survival(std::vector<double>& survival, int n,
                          const Block& parts, double q);

// Per-edge exposure-weight ledger: omega(e) = 1 - prod over batches
// containing e of (1 - q_i). The compressed cover-time form is authoritative;
// the dense array is an exact oracle kept at small n.
class ExposureLedger {
 public:
  ExposureLedger(int n, int k, int num_rounds, DenseMode mode = DenseMode::kAuto);

  static bool dense_fits(int n, int k);  // n^k <= 2^24

  int n() const { return n_; }
  int k() const { return k_; }
  int num_rounds() const { return static_cast<int>(rounds_.size()); }
  bool dense_enabled() const { return dense_; }

  RoundLedger& round(int i) { return rounds_[i]; }
  const RoundLedger& round(int i) const { return rounds_[i]; }

  void add_phase2(int round, const Block& parts, double q);
  const std::vector<Phase2Entry>& phase2() const { return phase2_; }

  // Exact omega(e): flat sequential product over batches in canonical order
  // (rounds ascending, steps ascending, then phase-2 entries ascending).
  double weight(const Edge& e) const;

  // Sum of batch probabilities over the batches containing e.
  double weight_sum(const Edge& e) const;

  // Exact dense replay from the explicitly captured batches, same canonical
  // order. Requires dense_enabled().
  std::vector<double> dense_weights() const;

  struct AuditResult {
    double phase1_max = 0.0;   // max over edges of the Phase-1-only weight
    double total_max = 0.0;    // max over edges of the full weight
    Edge argmax;               // edge attaining total_max
    bool phase1_ok = true;     // phase1_max <= (1-eps/2)*p
    bool total_ok = true;      // total_max <= p
    bool sum_ok = true;        // omega(e) <= sum of batch probabilities, all e
    bool gamma_ok = true;      // omega(e) <= (1+gamma)*sum, all e
    bool pass = true;          // phase1_ok && total_ok
    int uncovered_max = 0;     // max over edges of #{completed i : e in U_i}
    std::vector<uint64_t> histogram;  // weights binned uniformly over [0, p]
  };

  // One pass over all n^k edges computing the Claim-5.5-style coupling audit
  // together with the uncovered-multiplicity count consumed by the
  // Claim-5.4 audit.
  AuditResult sweep(double p, double epsilon, double gamma,
                    int bins = 50) const;

 private:
  int n_, k_;
  bool dense_;
  std::vector<RoundLedger> rounds_;
  std::vector<Phase2Entry> phase2_;
};

}  // namespace sprinkle
