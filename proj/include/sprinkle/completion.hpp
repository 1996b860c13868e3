#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sprinkle/ledger.hpp"
#include "sprinkle/nibble.hpp"
#include "sprinkle/params.hpp"
#include "sprinkle/rng.hpp"
#include "sprinkle/types.hpp"

namespace sprinkle {

struct SolveStats {
  int restarts = 0;
  bool proven_infeasible = false;  // exact: search space exhausted
  bool budget_exhausted = false;   // absence within budget only
};

// Perfect-matching search on a k-partite block with m vertices per part.
// Edges use local coordinates in [0, m). Strategy: forced-move propagation
// (degree-1 vertices), then randomized min-degree backtracking under a node
// budget with up to max_restarts restarts, then the exhaustive fallback when
// m^k fits the oracle guard.
std::optional<Matching> find_perfect_matching(int m, int k,
                                              const std::vector<Edge>& edges,
                                              Rng& rng,
                                              SolveStats* stats = nullptr,
                                              int max_restarts = 50,
                                              long node_budget = 20000);

// Exact existence by backtracking over part-0 vertices in index order.
// Guard: m^k <= 10^6.
bool pm_oracle_exhaustive(int m, int k, const std::vector<Edge>& edges,
                          Matching* witness = nullptr);

struct CompletionOutcome {
  int round = 0;
  bool attempted = false;
  bool success = false;
  Matching completion;  // Q_i in global vertex labels
  int exposed = 0;
  SolveStats stats;
};

// Phase 2 for one round: expose the leftover block at q2 (ledger updated by
// the caller via the returned entry -- see phase2()), search for a perfect
// matching of the exposed edges, return Q_i with M_i and Q_i disjoint.
CompletionOutcome phase2_complete(const NibbleOutcome& outcome,
                                  const PackingParams& params, double q2,
                                  uint64_t seed);

// Phase 2 over all rounds; records every exposure in the ledger.
std::vector<CompletionOutcome> phase2(const std::vector<NibbleOutcome>& rounds,
                                      const PackingParams& params,
                                      ExposureLedger& ledger, int threads = 0);

}  // namespace sprinkle
