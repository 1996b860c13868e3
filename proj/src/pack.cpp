#include "sprinkle/pack.hpp"

#include <cstdlib>
#include <thread>

namespace sprinkle {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SPRINKLE_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  return hw > 0 ? hw : 1;
}

std::vector<Matching> PartiteRun::combined_matchings() const {
  std::vector<Matching> out;
  out.reserve(rounds.size());
  for (size_t i = 0; i < rounds.size(); ++i) {
    Matching m = rounds[i].matching;
    if (i < completions.size() && completions[i].success)
      for (const auto& e : completions[i].completion.edges) m.edges.push_back(e);
    out.push_back(std::move(m));
  }
  return out;
}

PartiteRun run_partite(const PackingParams& params, const RunOptions& opts) {
  PartiteRun run;
  run.params = params;
  int threads = resolve_threads(opts.threads);

  run.ledger = std::make_unique<ExposureLedger>(
      params.n, params.k, static_cast<int>(params.rounds), opts.dense);

  auto p1 = phase1(params, *run.ledger, threads, opts.retry);
  run.rounds = std::move(p1.rounds);
  run.bite_failures = p1.bite_failures;
  for (const auto& r : run.rounds) run.retried |= r.retried;

  if (opts.phase2_enabled) {
    run.completions = phase2(run.rounds, params, *run.ledger, threads);
    for (const auto& c : run.completions) {
      if (c.attempted && !c.success) run.completion_failures++;
      run.budget_exhausted |= c.stats.budget_exhausted;
    }
  }
  return run;
}

}  // namespace sprinkle
