#include "sprinkle/report.hpp"

#include <cmath>
#include <map>
#include <sstream>

using nlohmann::json;

namespace sprinkle {

namespace {

json params_json(const PackingParams& P) {
  return {
      {"n", P.n},           {"k", P.k},
      {"p", P.p},           {"epsilon", P.epsilon},
      {"delta", P.delta},   {"beta", P.beta},
      {"alpha", P.alpha},   {"gamma", P.gamma},
      {"q2", P.q2},         {"seed", P.seed},
      {"regime", regime_name(P.regime)}, {"allow_k2", P.allow_k2},
  };
}

json audits_json(const PartiteRun& run) {
  const auto& P = run.params;
  auto matchings = run.combined_matchings();

  json audits;

  // structural validity: completed rounds must be perfect matchings,
  // everything else still vertex-disjoint
  bool structural = true;
  int checked = 0;
  for (size_t i = 0; i < matchings.size(); ++i) {
    bool complete = i < run.completions.size() && run.completions[i].success;
    auto v = validate_matching(matchings[i], P.n, P.k, complete);
    structural &= v.ok;
    ++checked;
  }
  audits["structural"] = {{"pass", structural}, {"checked", checked}};

  auto dj = pairwise_disjoint(matchings, P.n);
  json collisions = json::array();
  for (const auto& c : dj.collisions)
    collisions.push_back({{"edge", c.edge.v}, {"matchings", c.matchings}});
  audits["disjointness"] = {{"pass", dj.ok}, {"collisions", collisions}};

  auto sw = run.ledger->sweep(P.p, P.epsilon, P.gamma);
  audits["coupling"] = {
      {"pass", sw.pass},
      {"phase1_max", sw.phase1_max},
      {"phase1_bound", (1.0 - P.epsilon / 2.0) * P.p},
      {"phase1_ok", sw.phase1_ok},
      {"total_max", sw.total_max},
      {"total_bound", P.p},
      {"total_ok", sw.total_ok},
      {"argmax_edge", sw.argmax.v},
      {"sum_product_ok", sw.sum_ok},
      {"gamma_ok", sw.gamma_ok},
  };

  double residual = P.residual_fraction();
  double bound = 2.0 * std::pow(residual, P.k) * static_cast<double>(P.rounds);
  audits["uncovered"] = {
      {"pass", sw.uncovered_max <= bound},
      {"max_multiplicity", sw.uncovered_max},
      {"bound", bound},
      {"residual_fraction", residual},
  };

  audits["bite_failures"] = run.bite_failures;
  audits["completion_failures"] = run.completion_failures;
  audits["retried"] = run.retried;

  json ledger = {
      {"dense_enabled", run.ledger->dense_enabled()},
      {"max_weight", sw.total_max},
      {"argmax_edge", sw.argmax.v},
      {"histogram",
       {{"bins", 50}, {"range", {0.0, P.p}}, {"counts", sw.histogram}}},
  };
  if (run.ledger->dense_enabled()) {
    auto dense = run.ledger->dense_weights();
    bool match = true;
    for (uint64_t idx = 0; idx < dense.size() && match; ++idx) {
      Edge e = decode_edge(idx, P.n, P.k);
      match = run.ledger->weight(e) == dense[idx];
    }
    ledger["dense_match"] = match;
  }
  audits["ledger"] = ledger;
  return audits;
}

}  // namespace

json build_report(const PartiteRun& run, const ReportOptions& opts,
                  double wall_ms) {
  const auto& P = run.params;
  json rep;
  rep["schema_version"] = kReportSchemaVersion;
  rep["mode"] = "partite-pack";
  rep["config"] = params_json(P);

  auto sched = nibble_schedule(P.n, P.delta, P.beta, P.ell);
  rep["derived"] = {
      {"ell", P.ell},
      {"rounds", P.rounds},
      {"schedule", sched},
      {"n_ell", sched.back()},
      {"residual_fraction", P.residual_fraction()},
  };

  json rounds = json::array();
  for (size_t i = 0; i < run.rounds.size(); ++i) {
    const auto& r = run.rounds[i];
    json steps = json::array();
    for (const auto& st : r.steps)
      steps.push_back({{"step", st.step},
                       {"n_j", st.nj},
                       {"q", st.q},
                       {"bite_target", st.bite_target},
                       {"colored", st.colored},
                       {"isolated", st.isolated},
                       {"bite", st.bite},
                       {"failed", st.failed},
                       {"skipped", st.skipped}});
    json jr = {{"round", r.round},
               {"aborted", r.aborted},
               {"fail_step", r.fail_step},
               {"retried", r.retried},
               {"steps", steps}};
    if (i < run.completions.size()) {
      const auto& c = run.completions[i];
      jr["completion"] = {{"attempted", c.attempted},
                          {"success", c.success},
                          {"n_ell", r.leftover.empty()
                                        ? 0
                                        : static_cast<int>(r.leftover[0].size())},
                          {"exposed", c.exposed},
                          {"restarts", c.stats.restarts},
                          {"proven_infeasible", c.stats.proven_infeasible},
                          {"budget_exhausted", c.stats.budget_exhausted}};
    }
    rounds.push_back(std::move(jr));
  }
  rep["rounds"] = rounds;

  rep["audits"] = audits_json(run);

  if (opts.store_matchings) {
    json ms = json::array();
    auto matchings = run.combined_matchings();
    for (size_t i = 0; i < matchings.size(); ++i) {
      std::vector<EdgeIndex> idx;
      idx.reserve(matchings[i].size());
      for (const auto& e : matchings[i].edges)
        idx.push_back(encode_edge(e, P.n));
      bool complete = i < run.completions.size() && run.completions[i].success;
      ms.push_back({{"round", static_cast<int>(i)},
                    {"complete", complete},
                    {"edges", idx}});
    }
    rep["matchings"] = ms;
  }

  if (!opts.normalize) rep["timing"] = {{"wall_ms", wall_ms}};
  return rep;
}

json build_nonpartite_report(const NonpartiteResult& res,
                             const ReportOptions& opts, double wall_ms) {
  json rep;
  rep["schema_version"] = kReportSchemaVersion;
  rep["mode"] = "nonpartite-pack";
  rep["config"] = {{"kn", res.kn}, {"k", res.k},      {"t", res.t},
                   {"p", res.p},   {"class_p", res.class_p}};
  rep["partitions"] = {{"t", res.t},
                       {"exposed", res.exposed},
                       {"discarded", res.discarded}};
  json classes = json::array();
  for (const auto& c : res.classes) {
    json jc = {{"class", c.cls},
               {"rounds", c.rounds},
               {"assigned_edges", c.assigned_edges},
               {"bite_failures", c.bite_failures},
               {"completion_failures", c.completion_failures},
               {"matchings_found", c.matchings.size()}};
    if (opts.store_matchings) jc["matchings"] = c.matchings;
    classes.push_back(std::move(jc));
  }
  rep["classes"] = classes;
  rep["audits"] = {{"all_perfect", res.all_perfect},
                   {"globally_disjoint", res.globally_disjoint},
                   {"collision_count", res.collision_count},
                   {"total_matchings", res.total_matchings}};
  if (!opts.normalize) rep["timing"] = {{"wall_ms", wall_ms}};
  return rep;
}

namespace {

json verify_partite_single(const json& rep) {
  json out;
  if (!rep.contains("matchings"))
    throw ConfigError("verify: report has no matchings section");
  int n = rep.at("config").at("n").get<int>();
  int k = rep.at("config").at("k").get<int>();

  bool structural = true, disjoint = true;
  json violations = json::array();
  std::vector<Matching> ms;
  for (const auto& jm : rep.at("matchings")) {
    Matching m;
    for (EdgeIndex idx : jm.at("edges").get<std::vector<EdgeIndex>>()) {
      if (idx >= std::pow(static_cast<double>(n), k))
        throw ConfigError("verify: edge index out of range");
      m.edges.push_back(decode_edge(idx, n, k));
    }
    auto v = validate_matching(m, n, k, jm.at("complete").get<bool>());
    if (!v.ok) {
      structural = false;
      violations.push_back({{"round", jm.at("round")},
                            {"reason", v.reason},
                            {"part", v.part},
                            {"vertex", v.vertex}});
    }
    ms.push_back(std::move(m));
  }
  auto dj = pairwise_disjoint(ms, n);
  disjoint = dj.ok;
  for (const auto& c : dj.collisions)
    violations.push_back({{"edge", c.edge.v}, {"matchings", c.matchings}});

  out["structural_ok"] = structural;
  out["disjoint_ok"] = disjoint;
  out["pass"] = structural && disjoint;
  out["violations"] = violations;
  return out;
}

json verify_nonpartite(const json& rep) {
  int kn = rep.at("config").at("kn").get<int>();
  bool perfect = true, disjoint = true;
  std::map<std::vector<Vertex>, int> seen_edges;
  int id = 0;
  json violations = json::array();
  for (const auto& jc : rep.at("classes")) {
    if (!jc.contains("matchings"))
      throw ConfigError("verify: report has no matchings section");
    for (const auto& jm : jc.at("matchings")) {
      std::vector<char> covered(kn, 0);
      for (const auto& je : jm) {
        auto verts = je.get<std::vector<Vertex>>();
        for (Vertex v : verts) {
          if (v < 0 || v >= kn || covered[v]) perfect = false;
          if (v >= 0 && v < kn) covered[v] = 1;
        }
        auto key = verts;
        std::sort(key.begin(), key.end());
        auto [it, fresh] = seen_edges.emplace(key, id);
        if (!fresh) {
          disjoint = false;
          violations.push_back({{"edge", key}, {"matchings", {it->second, id}}});
        }
      }
      for (char c : covered) perfect &= c != 0;
      ++id;
    }
  }
  return {{"structural_ok", perfect},
          {"disjoint_ok", disjoint},
          {"pass", perfect && disjoint},
          {"violations", violations}};
}

}  // namespace

json verify_report(const json& rep) {
  if (!rep.is_object() || !rep.contains("schema_version"))
    throw ConfigError("verify: not a report (missing schema_version)");
  if (rep.at("schema_version").get<int>() != kReportSchemaVersion)
    throw ConfigError("verify: unsupported schema version");
  if (rep.contains("runs")) {
    json out;
    out["pass"] = true;
    out["runs"] = json::array();
    for (const auto& r : rep.at("runs")) {
      auto v = verify_report(r);
      out["pass"] = out["pass"].get<bool>() && v.at("pass").get<bool>();
      out["runs"].push_back(std::move(v));
    }
    return out;
  }
  auto mode = rep.at("mode").get<std::string>();
  if (mode == "nonpartite-pack") return verify_nonpartite(rep);
  if (mode == "partite-pack" || mode == "round-only")
    return verify_partite_single(rep);
  throw ConfigError("verify: mode '" + mode + "' carries no matchings");
}

std::string steps_csv(const json& rep) {
  std::ostringstream os;
  os << "round,step,n_j,q_ij,colored,isolated,bite,failure\n";
  auto one = [&os](const json& r) {
    for (const auto& jr : r.at("rounds"))
      for (const auto& st : jr.at("steps"))
        os << jr.at("round").get<int>() << "," << st.at("step").get<int>()
           << "," << st.at("n_j").get<int>() << "," << st.at("q").get<double>()
           << "," << st.at("colored").get<int>() << ","
           << st.at("isolated").get<int>() << "," << st.at("bite").get<int>()
           << "," << (st.at("failed").get<bool>() ? 1 : 0) << "\n";
  };
  if (rep.contains("runs"))
    for (const auto& r : rep.at("runs")) one(r);
  else if (rep.contains("rounds"))
    one(rep);
  return os.str();
}

std::string completion_csv(const json& rep) {
  std::ostringstream os;
  os << "round,n_ell,exposed,restarts,success\n";
  auto one = [&os](const json& r) {
    for (const auto& jr : r.at("rounds")) {
      if (!jr.contains("completion")) continue;
      const auto& c = jr.at("completion");
      os << jr.at("round").get<int>() << "," << c.at("n_ell").get<int>() << ","
         << c.at("exposed").get<int>() << "," << c.at("restarts").get<int>()
         << "," << (c.at("success").get<bool>() ? 1 : 0) << "\n";
    }
  };
  if (rep.contains("runs"))
    for (const auto& r : rep.at("runs")) one(r);
  else if (rep.contains("rounds"))
    one(rep);
  return os.str();
}

}  // namespace sprinkle
