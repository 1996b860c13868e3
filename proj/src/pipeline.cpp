#include "sprinkle/pipeline.hpp"

#include <chrono>
#include <cmath>

#include "sprinkle/bounds.hpp"
#include "sprinkle/reductions.hpp"

using nlohmann::json;

namespace sprinkle {

Mode mode_from_name(const std::string& s) {
  if (s == "partite-pack") return Mode::kPartitePack;
  if (s == "nonpartite-pack") return Mode::kNonpartitePack;
  if (s == "round-only") return Mode::kRoundOnly;
  if (s == "bounds") return Mode::kBounds;
  if (s == "ensemble") return Mode::kEnsemble;
  throw ConfigError("mode: unknown mode '" + s + "'");
}

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::kPartitePack: return "partite-pack";
    case Mode::kNonpartitePack: return "nonpartite-pack";
    case Mode::kRoundOnly: return "round-only";
    case Mode::kBounds: return "bounds";
    case Mode::kEnsemble: return "ensemble";
  }
  return "?";
}

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

std::vector<uint64_t> seed_list(const RunConfig& c) {
  if (!c.seeds.empty()) return c.seeds;
  std::vector<uint64_t> out;
  int count = std::max(1, c.seed_count);
  for (int i = 0; i < count; ++i) out.push_back(c.params.seed + i);
  return out;
}

json run_one_partite(const RunConfig& c, uint64_t seed) {
  ParamInputs in = c.params;
  in.seed = seed;
  PackingParams P = derive_params(in);
  double t0 = now_ms();
  auto run = run_partite(P, c.options);
  json rep = build_report(run, c.report, now_ms() - t0);
  rep["bounds"] = bounds_table(P);
  return rep;
}

json run_round_only(const RunConfig& c, uint64_t seed) {
  ParamInputs in = c.params;
  in.seed = seed;
  PackingParams P = derive_params(in);
  P.rounds = 1;
  RunOptions opts = c.options;
  opts.phase2_enabled = false;
  double t0 = now_ms();
  auto run = run_partite(P, opts);
  json rep = build_report(run, c.report, now_ms() - t0);
  rep["mode"] = "round-only";
  return rep;
}

json run_one_nonpartite(const RunConfig& c, uint64_t seed) {
  ParamInputs in = c.params;
  in.seed = seed;
  int kn = in.n;  // for this mode --n is the total vertex count
  if (in.k <= 0 || kn % in.k != 0)
    throw ConfigError("n: total vertex count must be divisible by k");
  double t0 = now_ms();
  auto res = pack_nonpartite(kn, in.k, c.t, in, c.options);
  return build_nonpartite_report(res, c.report, now_ms() - t0);
}

bool report_audits_pass(const json& rep) {
  if (!rep.contains("audits")) return true;
  const auto& a = rep.at("audits");
  if (a.contains("structural")) {
    bool ok = a.at("structural").at("pass").get<bool>() &&
              a.at("disjointness").at("pass").get<bool>() &&
              a.at("coupling").at("pass").get<bool>() &&
              a.at("uncovered").at("pass").get<bool>();
    if (a.at("ledger").contains("dense_match"))
      ok &= a.at("ledger").at("dense_match").get<bool>();
    return ok;
  }
  if (a.contains("all_perfect"))
    return a.at("all_perfect").get<bool>() &&
           a.at("globally_disjoint").get<bool>();
  return true;
}

bool report_budget_exhausted(const json& rep) {
  if (!rep.contains("rounds")) return false;
  for (const auto& r : rep.at("rounds"))
    if (r.contains("completion") &&
        r.at("completion").at("budget_exhausted").get<bool>())
      return true;
  return false;
}

}  // namespace

json bounds_table(const PackingParams& P) {
  json out;
  double erw = expected_round_weight(P.delta, P.beta, P.ell, P.n, P.k);
  out["expected_round_weight"] = erw;
  out["phase1_weight_estimate"] =
      (1.0 + P.gamma) * erw * static_cast<double>(P.rounds);
  out["phase1_weight_bound_rhs"] = (1.0 - P.epsilon / 2.0) * P.p;

  int n_ell = nibble_schedule(P.n, P.delta, P.beta, P.ell).back();
  if (n_ell >= 2) {
    auto iso = isolated_prob_bound(n_ell, P.k, P.delta, P.beta);
    out["isolated_prob_at_n_ell"] = {{"m", n_ell},
                                     {"exact", iso.exact},
                                     {"lower", iso.lower}};
  }

  // Hoeffding tail for the per-edge weight sum: N variables, each within
  // [0, ell * delta / (alpha n)^{k-1}], deviation epsilon*p/2.
  double width = P.ell * P.delta /
                 std::pow(P.alpha * static_cast<double>(P.n), P.k - 1);
  std::vector<std::pair<double, double>> ranges(
      static_cast<size_t>(P.rounds), {0.0, width});
  double lambda = P.epsilon * P.p / 2.0;
  out["weight_concentration"] = {
      {"variables", P.rounds},
      {"range_width", width},
      {"lambda", lambda},
      {"tail_bound", hoeffding_bound(ranges, lambda)},
  };
  return out;
}

json empirical_concentration(const std::vector<json>& reports) {
  if (reports.size() < 2)
    throw ConfigError("empirical_concentration: need at least 2 reports");

  json ref = reports.front().at("config");
  ref.erase("seed");
  for (const auto& r : reports) {
    json c = r.at("config");
    c.erase("seed");
    if (c != ref)
      throw ConfigError("empirical_concentration: mixed-parameter reports");
  }

  struct Counter {
    int pass = 0;
  };
  std::map<std::string, Counter> claims;
  for (const auto& r : reports) {
    const auto& a = r.at("audits");
    claims["structural"].pass += a.at("structural").at("pass").get<bool>();
    claims["disjointness"].pass += a.at("disjointness").at("pass").get<bool>();
    claims["coupling"].pass += a.at("coupling").at("pass").get<bool>();
    claims["coupling_total"].pass += a.at("coupling").at("total_ok").get<bool>();
    claims["coupling_sum_product"].pass +=
        a.at("coupling").at("sum_product_ok").get<bool>();
    claims["uncovered"].pass += a.at("uncovered").at("pass").get<bool>();
    claims["no_bite_failure"].pass += a.at("bite_failures").get<int>() == 0;
    claims["all_completions"].pass +=
        a.at("completion_failures").get<int>() == 0;
  }

  int total = static_cast<int>(reports.size());
  json out;
  for (const auto& [name, c] : claims) {
    auto ci = wilson95(c.pass, total);
    out[name] = {{"pass", c.pass},
                 {"total", total},
                 {"rate", static_cast<double>(c.pass) / total},
                 {"wilson95", {ci.lo, ci.hi}}};
  }
  return out;
}

RunResult run(const RunConfig& c) {
  RunResult res;
  auto seeds = seed_list(c);

  switch (c.mode) {
    case Mode::kBounds: {
      PackingParams P = derive_params(c.params);
      res.report = {{"schema_version", kReportSchemaVersion},
                    {"mode", "bounds"},
                    {"config", {{"n", P.n}, {"k", P.k}, {"p", P.p},
                                {"epsilon", P.epsilon}, {"delta", P.delta},
                                {"beta", P.beta}, {"alpha", P.alpha},
                                {"q2", P.q2}}},
                    {"bounds", bounds_table(P)}};
      // the Theorem-5-style worked examples
      res.report["bounds"]["examples"] = {
          {{"ranges", "100 x [0,1]"},
           {"lambda", 20.0},
           {"bound", hoeffding_bound(
                         std::vector<std::pair<double, double>>(100, {0, 1}),
                         20.0)}},
          {{"ranges", "25 x [0,2]"},
           {"lambda", 10.0},
           {"bound", hoeffding_bound(
                         std::vector<std::pair<double, double>>(25, {0, 2}),
                         10.0)}},
      };
      break;
    }
    case Mode::kRoundOnly:
    case Mode::kPartitePack: {
      json runs = json::array();
      for (uint64_t s : seeds)
        runs.push_back(c.mode == Mode::kRoundOnly ? run_round_only(c, s)
                                                  : run_one_partite(c, s));
      for (const auto& r : runs) {
        res.audit_failed |= !report_audits_pass(r);
        res.budget_exhausted |= report_budget_exhausted(r);
      }
      if (runs.size() == 1) {
        res.report = std::move(runs[0]);
      } else {
        res.report = {{"schema_version", kReportSchemaVersion},
                      {"mode", mode_name(c.mode)},
                      {"runs", std::move(runs)}};
      }
      break;
    }
    case Mode::kNonpartitePack: {
      json runs = json::array();
      for (uint64_t s : seeds) runs.push_back(run_one_nonpartite(c, s));
      for (const auto& r : runs) res.audit_failed |= !report_audits_pass(r);
      if (runs.size() == 1) {
        res.report = std::move(runs[0]);
      } else {
        res.report = {{"schema_version", kReportSchemaVersion},
                      {"mode", "nonpartite-pack"},
                      {"runs", std::move(runs)}};
      }
      break;
    }
    case Mode::kEnsemble: {
      std::vector<json> runs;
      runs.reserve(seeds.size());
      RunConfig one = c;
      one.report.store_matchings = false;
      for (uint64_t s : seeds) runs.push_back(run_one_partite(one, s));
      for (const auto& r : runs)
        res.budget_exhausted |= report_budget_exhausted(r);
      json rates = runs.size() >= 2 ? empirical_concentration(runs)
                                    : json::object();
      res.report = {{"schema_version", kReportSchemaVersion},
                    {"mode", "ensemble"},
                    {"seeds", seeds},
                    {"rates", rates}};
      // an ensemble "fails" its audit when any headline rate drops below 1
      for (const auto& r : runs) res.audit_failed |= !report_audits_pass(r);
      break;
    }
  }
  return res;
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  try {
    if (j.contains("mode")) c.mode = mode_from_name(j.at("mode").get<std::string>());
    auto& in = c.params;
    if (j.contains("n")) in.n = j.at("n").get<int>();
    if (j.contains("k")) in.k = j.at("k").get<int>();
    if (j.contains("p")) in.p = j.at("p").get<double>();
    if (j.contains("epsilon")) in.epsilon = j.at("epsilon").get<double>();
    if (j.contains("delta")) in.delta = j.at("delta").get<double>();
    if (j.contains("alpha")) in.alpha = j.at("alpha").get<double>();
    if (j.contains("beta")) in.beta = j.at("beta").get<double>();
    if (j.contains("q2")) in.q2 = j.at("q2").get<double>();
    if (j.contains("gamma")) in.gamma = j.at("gamma").get<double>();
    if (j.contains("seed")) in.seed = j.at("seed").get<uint64_t>();
    if (j.contains("regime"))
      in.regime = regime_from_name(j.at("regime").get<std::string>());
    if (j.contains("allow_k2")) in.allow_k2 = j.at("allow_k2").get<bool>();
    if (j.contains("seeds")) {
      if (j.at("seeds").is_array())
        c.seeds = j.at("seeds").get<std::vector<uint64_t>>();
      else
        c.seed_count = j.at("seeds").get<int>();
    }
    if (j.contains("t")) c.t = j.at("t").get<int>();
    if (j.contains("strict")) c.strict = j.at("strict").get<bool>();
    if (j.contains("threads")) c.options.threads = j.at("threads").get<int>();
    if (j.contains("retry")) c.options.retry = j.at("retry").get<bool>();
    if (j.contains("dense_ledger")) {
      auto s = j.at("dense_ledger").get<std::string>();
      if (s == "auto") c.options.dense = DenseMode::kAuto;
      else if (s == "on") c.options.dense = DenseMode::kOn;
      else if (s == "off") c.options.dense = DenseMode::kOff;
      else throw ConfigError("dense_ledger: expected auto|on|off");
    }
    if (j.contains("store_matchings"))
      c.report.store_matchings = j.at("store_matchings").get<bool>();
    if (j.contains("normalize")) c.report.normalize = j.at("normalize").get<bool>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

}  // namespace sprinkle
