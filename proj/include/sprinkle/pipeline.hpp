#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "sprinkle/pack.hpp"
#include "sprinkle/params.hpp"
#include "sprinkle/report.hpp"

namespace sprinkle {

enum class Mode { kPartitePack, kNonpartitePack, kRoundOnly, kBounds, kEnsemble };

Mode mode_from_name(const std::string& s);
const char* mode_name(Mode m);

struct RunConfig {
  Mode mode = Mode::kPartitePack;
  ParamInputs params;
  std::vector<uint64_t> seeds;  // explicit list; empty = {params.seed}
  int seed_count = 0;           // expands to params.seed .. params.seed+count-1
  RunOptions options;
  ReportOptions report;
  bool strict = false;
  int t = 2;  // nonpartite-pack partition count
};

struct RunResult {
  nlohmann::json report;
  bool audit_failed = false;
  bool budget_exhausted = false;
};

// Executes the selected pipeline deterministically for each seed and
// assembles the JSON report (single object for one seed, {"runs": [...]}
// for several, aggregate table for ensembles).
RunResult run(const RunConfig& config);

RunConfig config_from_json(const nlohmann::json& j);

// Aggregates audit verdicts over a seed ensemble of identically configured
// reports; per-claim pass rates with 95% Wilson intervals. Rejects
// mixed-parameter report sets.
nlohmann::json empirical_concentration(const std::vector<nlohmann::json>& reports);

// The bound table emitted by mode=bounds (and attached to run reports).
nlohmann::json bounds_table(const PackingParams& params);

}  // namespace sprinkle
