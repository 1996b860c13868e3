#include <string>

#include "doctest.h"

#include "sprinkle/pipeline.hpp"
#include "sprinkle/report.hpp"

using namespace sprinkle;
using nlohmann::json;

namespace {

json feasible_config() {
  return {{"mode", "partite-pack"}, {"n", 40},      {"k", 3},
          {"p", 0.2},               {"epsilon", 0.9}, {"delta", 0.25},
          {"beta", 0.2},            {"alpha", 0.6},   {"seed", 3},
          {"threads", 1}};
}

}  // namespace

TEST_CASE("mode names round-trip") {
  for (auto name : {"partite-pack", "nonpartite-pack", "round-only", "bounds",
                    "ensemble"})
    CHECK(mode_name(mode_from_name(name)) == std::string(name));
  CHECK_THROWS_AS(mode_from_name("bogus"), ConfigError);
}

TEST_CASE("config parsing fills defaults and rejects junk") {
  auto cfg = config_from_json(feasible_config());
  CHECK(cfg.mode == Mode::kPartitePack);
  CHECK(cfg.params.n == 40);
  CHECK(cfg.params.beta.has_value());
  CHECK_FALSE(cfg.strict);

  json bad = feasible_config();
  bad["n"] = "forty";
  CHECK_THROWS_AS(config_from_json(bad), ConfigError);
  bad = feasible_config();
  bad["dense_ledger"] = "sometimes";
  CHECK_THROWS_AS(config_from_json(bad), ConfigError);
}

TEST_CASE("partite run emits a complete report") {
  auto r = run(config_from_json(feasible_config()));
  const auto& rep = r.report;
  CHECK(rep.at("schema_version") == kReportSchemaVersion);
  CHECK(rep.at("mode") == "partite-pack");
  CHECK(rep.at("derived").at("rounds") == 31);
  CHECK(rep.at("rounds").size() == 31);
  CHECK(rep.at("matchings").size() == 31);
  CHECK(rep.contains("audits"));
  CHECK(rep.at("audits").at("structural").at("pass") == true);
  CHECK(rep.at("audits").at("ledger").at("dense_match") == true);
  // structural audits never fail in-process; coupling may
  CHECK(r.audit_failed ==
        !(rep.at("audits").at("coupling").at("pass").get<bool>() &&
          rep.at("audits").at("disjointness").at("pass").get<bool>() &&
          rep.at("audits").at("uncovered").at("pass").get<bool>()));
}

TEST_CASE("round-only mode runs a single round without completion") {
  json cfg = feasible_config();
  cfg["mode"] = "round-only";
  auto r = run(config_from_json(cfg));
  CHECK(r.report.at("derived").at("rounds") == 1);
  CHECK(r.report.at("rounds").size() == 1);
  CHECK_FALSE(r.report.at("rounds")[0].contains("completion"));
}

TEST_CASE("bounds mode emits the bound table without running rounds") {
  json cfg = feasible_config();
  cfg["mode"] = "bounds";
  auto r = run(config_from_json(cfg));
  CHECK(r.report.contains("bounds"));
  CHECK_FALSE(r.report.contains("rounds"));
  auto& b = r.report.at("bounds");
  CHECK(b.at("expected_round_weight").get<double>() > 0);
  CHECK(b.at("examples").size() == 2);
  // worked example: 100 unit ranges at lambda 20
  CHECK(b.at("examples")[0].at("bound").get<double>() ==
        doctest::Approx(2.0 * std::exp(-8.0)).epsilon(1e-12));
}

TEST_CASE("multiple seeds wrap into a runs array") {
  json cfg = feasible_config();
  cfg["seeds"] = 3;
  auto r = run(config_from_json(cfg));
  REQUIRE(r.report.contains("runs"));
  REQUIRE(r.report.at("runs").size() == 3);
  CHECK(r.report.at("runs")[0].at("config").at("seed") == 3);
  CHECK(r.report.at("runs")[2].at("config").at("seed") == 5);

  json listed = feasible_config();
  listed["seeds"] = {10, 20};
  auto r2 = run(config_from_json(listed));
  CHECK(r2.report.at("runs").size() == 2);
  CHECK(r2.report.at("runs")[1].at("config").at("seed") == 20);
}

TEST_CASE("ensemble mode aggregates per-claim pass rates") {
  json cfg = feasible_config();
  cfg["mode"] = "ensemble";
  cfg["seeds"] = 5;
  auto r = run(config_from_json(cfg));
  REQUIRE(r.report.contains("rates"));
  auto& rates = r.report.at("rates");
  for (auto name : {"structural", "disjointness", "coupling", "coupling_total",
                    "coupling_sum_product", "uncovered", "no_bite_failure",
                    "all_completions"}) {
    REQUIRE(rates.contains(name));
    auto& c = rates.at(name);
    CHECK(c.at("total") == 5);
    CHECK(c.at("pass").get<int>() >= 0);
    CHECK(c.at("wilson95")[0].get<double>() <= c.at("wilson95")[1].get<double>());
  }
  CHECK(rates.at("structural").at("pass") == 5);
  CHECK(rates.at("coupling_sum_product").at("pass") == 5);
}

TEST_CASE("ensemble aggregation rejects mixed configurations") {
  json a = feasible_config();
  json b = feasible_config();
  b["p"] = 0.1;
  auto ra = run(config_from_json(a));
  auto rb = run(config_from_json(b));
  CHECK_THROWS_AS(empirical_concentration({ra.report, rb.report}), ConfigError);
  // identical configs differing only in seed are fine
  json c = feasible_config();
  c["seed"] = 4;
  auto rc = run(config_from_json(c));
  CHECK_NOTHROW(empirical_concentration({ra.report, rc.report}));
}

TEST_CASE("identical seeds give byte-identical normalized reports") {
  json cfg = feasible_config();
  cfg["normalize"] = true;
  cfg["threads"] = 1;
  auto a = run(config_from_json(cfg));
  cfg["threads"] = 4;
  auto b = run(config_from_json(cfg));
  CHECK(a.report.dump() == b.report.dump());

  cfg["mode"] = "nonpartite-pack";
  cfg["n"] = 90;  // total vertex count; 30 per part
  cfg["alpha"] = 0.7;
  cfg["t"] = 2;
  cfg["threads"] = 1;
  auto c = run(config_from_json(cfg));
  cfg["threads"] = 4;
  auto d = run(config_from_json(cfg));
  CHECK(c.report.dump() == d.report.dump());
}

TEST_CASE("verification accepts intact reports and flags tampering") {
  auto r = run(config_from_json(feasible_config()));
  auto v = verify_report(r.report);
  CHECK(v.at("structural_ok") == true);

  // corrupt one matching edge into a duplicate
  json tampered = r.report;
  auto& edges = tampered.at("matchings")[0].at("edges");
  edges[1] = edges[0];
  auto v2 = verify_report(tampered);
  CHECK(v2.at("pass") == false);
  CHECK(v2.at("structural_ok") == false);
}

TEST_CASE("verification covers multi-run and nonpartite reports") {
  json cfg = feasible_config();
  cfg["seeds"] = 2;
  auto r = run(config_from_json(cfg));
  CHECK_NOTHROW(verify_report(r.report));

  json np = feasible_config();
  np["mode"] = "nonpartite-pack";
  np["n"] = 90;  // total vertex count; 30 per part
  np["alpha"] = 0.7;
  auto rn = run(config_from_json(np));
  auto v = verify_report(rn.report);
  CHECK(v.at("structural_ok") == true);

  CHECK_THROWS_AS(verify_report(json{{"mode", "bounds"}}), ConfigError);
}

TEST_CASE("csv tables carry the per-step and per-round series") {
  auto r = run(config_from_json(feasible_config()));
  auto steps = steps_csv(r.report);
  CHECK(steps.rfind("round,step,n_j,q_ij,colored,isolated,bite,failure", 0) == 0);
  // 31 rounds x up to 10 steps plus header
  auto lines = std::count(steps.begin(), steps.end(), '\n');
  CHECK(lines > 31);
  auto comp = completion_csv(r.report);
  CHECK(comp.rfind("round,n_ell,exposed,restarts,success", 0) == 0);
  CHECK(std::count(comp.begin(), comp.end(), '\n') == 32);
}

TEST_CASE("strict mode surfaces audit failures in the result") {
  json cfg = feasible_config();
  cfg["strict"] = true;
  auto r = run(config_from_json(cfg));
  // outcome depends on the audits; the flag must mirror the report
  const auto& a = r.report.at("audits");
  bool pass = a.at("structural").at("pass").get<bool>() &&
              a.at("coupling").at("pass").get<bool>() &&
              a.at("disjointness").at("pass").get<bool>() &&
              a.at("uncovered").at("pass").get<bool>();
  if (a.at("ledger").contains("dense_match"))
    pass = pass && a.at("ledger").at("dense_match").get<bool>();
  CHECK(r.audit_failed == !pass);
}
