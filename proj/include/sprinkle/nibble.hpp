#pragma once

#include <cstdint>
#include <vector>

#include "sprinkle/ledger.hpp"
#include "sprinkle/params.hpp"
#include "sprinkle/rng.hpp"
#include "sprinkle/types.hpp"

namespace sprinkle {

struct StepStats {
  int step = 0;
  int nj = 0;        // common uncovered size before the step
  double q = 0.0;    // q_{ij} = delta * nj^{-(k-1)}
  int bite_target = 0;
  int colored = 0;
  int isolated = 0;
  int bite = 0;
  bool failed = false;   // fewer isolated edges than the bite target
  bool skipped = false;  // degenerate bite target of 0, no exposure
};

struct NibbleOutcome {
  int round = 0;
  Matching matching;      // M_i, size n - n_ell when the round completes
  Block leftover;         // U_i = S_1 x ... x S_k
  std::vector<StepStats> steps;
  bool aborted = false;   // BiteFailure: round terminated early
  int fail_step = -1;
  bool retried = false;
};

// Edges all of whose vertices have degree exactly 1 in the colored set.
std::vector<Edge> isolated_edges(const std::vector<Edge>& colored, int n, int k);

// Uniformly random b-subset of the isolated edges. The rule only consults
// the set through a partial Fisher-Yates pass, so it is equivariant under
// independent per-part vertex relabelings. Precondition: |isolated| >= b.
Matching uniform_bite_select(std::vector<Edge> isolated, int b, Rng& rng);

// One full round of ell nibble steps. Ledger rl records every exposure
// (cover times + step probabilities); cover times are written as bites land.
// retry: re-expose a failing step once with a fresh substream before
// aborting (off by default; audits exclude retried runs).
NibbleOutcome run_round(int round, const PackingParams& params, RoundLedger& rl,
                        uint64_t seed, bool dense_capture, bool retry = false);

struct Phase1Result {
  std::vector<NibbleOutcome> rounds;
  int bite_failures = 0;
};

// N independent rounds, fanned out over `threads` workers (0 = auto).
// Results and the merged ledger are identical for every worker count.
Phase1Result phase1(const PackingParams& params, ExposureLedger& ledger,
                    int threads = 0, bool retry = false);

}  // namespace sprinkle
