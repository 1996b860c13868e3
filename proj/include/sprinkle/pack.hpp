#pragma once

#include <memory>
#include <vector>

#include "sprinkle/completion.hpp"
#include "sprinkle/ledger.hpp"
#include "sprinkle/nibble.hpp"
#include "sprinkle/params.hpp"

namespace sprinkle {

// One full Phase-1 + Phase-2 execution of the partite pipeline.
struct PartiteRun {
  PackingParams params;
  std::vector<NibbleOutcome> rounds;
  std::vector<CompletionOutcome> completions;  // empty if phase 2 disabled
  std::unique_ptr<ExposureLedger> ledger;
  int bite_failures = 0;
  int completion_failures = 0;
  bool budget_exhausted = false;
  bool retried = false;

  // M_i (union Q_i when completed) for every round, in round order.
  std::vector<Matching> combined_matchings() const;
};

struct RunOptions {
  int threads = 0;  // 0 = resolve from SPRINKLE_THREADS / hardware
  DenseMode dense = DenseMode::kAuto;
  bool retry = false;
  bool phase2_enabled = true;
};

PartiteRun run_partite(const PackingParams& params, const RunOptions& opts);

// Worker-count resolution: explicit request wins, then SPRINKLE_THREADS
// (0 = auto), then hardware concurrency.
int resolve_threads(int requested);

}  // namespace sprinkle
