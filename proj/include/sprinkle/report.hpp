#pragma once

#include <string>

#include "json.hpp"

#include "sprinkle/pack.hpp"
#include "sprinkle/reductions.hpp"

namespace sprinkle {

inline constexpr int kReportSchemaVersion = 1;

struct ReportOptions {
  bool store_matchings = true;
  bool normalize = false;  // drop timestamps/wall-clock for byte-replayable output
};

// Full JSON report for one partite run: config echo, per-round and per-step
// diagnostics, audit verdicts, ledger summary, serialized matchings.
nlohmann::json build_report(const PartiteRun& run, const ReportOptions& opts,
                            double wall_ms);

nlohmann::json build_nonpartite_report(const NonpartiteResult& res,
                                       const ReportOptions& opts,
                                       double wall_ms);

// Independent re-validation of a report's serialized matchings (perfection,
// pairwise disjointness) using only core-model predicates; never re-runs the
// generator. Accepts single-run, {"runs": [...]}, and nonpartite reports.
nlohmann::json verify_report(const nlohmann::json& report);

// Per-round / per-step CSV time series.
std::string steps_csv(const nlohmann::json& report);
std::string completion_csv(const nlohmann::json& report);

}  // namespace sprinkle
