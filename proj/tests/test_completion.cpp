#include <set>

#include "doctest.h"

#include "sprinkle/completion.hpp"
#include "sprinkle/exposure.hpp"
#include "sprinkle/pack.hpp"

using namespace sprinkle;

namespace {

std::vector<Edge> all_edges(int m, int k) {
  Rng rng(0);
  return expose_block(full_block(m, k), 1.0, rng);
}

}  // namespace

TEST_CASE("oracle trivial cases") {
  CHECK_FALSE(pm_oracle_exhaustive(1, 3, {}));
  CHECK(pm_oracle_exhaustive(1, 3, {Edge{0, 0, 0}}));
  CHECK(pm_oracle_exhaustive(3, 3, all_edges(3, 3)));
  // part-2 vertex 1 untouched
  std::vector<Edge> es = {Edge{0, 0, 0}, Edge{1, 1, 0}};
  CHECK_FALSE(pm_oracle_exhaustive(2, 3, es));
  // diagonal-only edge set
  std::vector<Edge> diag = {Edge{0, 0, 0}, Edge{1, 1, 1}, Edge{2, 2, 2}};
  Matching w;
  CHECK(pm_oracle_exhaustive(3, 3, diag, &w));
  CHECK(w.size() == 3);
  CHECK(validate_matching(w, 3, 3, true).ok);
}

TEST_CASE("oracle witness edges come from the input") {
  std::vector<Edge> es = {Edge{0, 1, 0}, Edge{1, 0, 1}, Edge{0, 0, 0},
                          Edge{1, 1, 1}};
  Matching w;
  REQUIRE(pm_oracle_exhaustive(2, 3, es, &w));
  std::set<Edge> pool(es.begin(), es.end());
  for (const auto& e : w.edges) CHECK(pool.count(e));
  CHECK(validate_matching(w, 2, 3, true).ok);
}

TEST_CASE("oracle guard rejects oversized blocks") {
  CHECK_THROWS_AS(pm_oracle_exhaustive(101, 3, {}), std::invalid_argument);
}

TEST_CASE("solver handles isolated vertices instantly") {
  Rng rng(1);
  SolveStats stats;
  std::vector<Edge> es = {Edge{0, 0, 0}, Edge{1, 1, 0}};
  auto r = find_perfect_matching(2, 3, es, rng, &stats);
  CHECK_FALSE(r.has_value());
  CHECK(stats.proven_infeasible);
}

TEST_CASE("solver finds matchings in dense small blocks") {
  Rng rng(2);
  auto r = find_perfect_matching(4, 3, all_edges(4, 3), rng);
  REQUIRE(r.has_value());
  CHECK(validate_matching(*r, 4, 3, true).ok);
}

TEST_CASE("solver agrees with the oracle on random instances") {
  int yes = 0;
  for (int t = 0; t < 2000; ++t) {
    Rng gen(substream(77, Stream::kSolver, t));
    int m = 2 + static_cast<int>(gen.below(4));  // 2..5
    double q = 0.05 + 0.4 * gen.uniform();
    auto es = expose_block(full_block(m, 3), q, gen);
    bool oracle = pm_oracle_exhaustive(m, 3, es);
    Rng srng(substream(78, Stream::kSolver, t));
    SolveStats stats;
    auto got = find_perfect_matching(m, 3, es, srng, &stats);
    REQUIRE(got.has_value() == oracle);
    if (got) {
      CHECK(validate_matching(*got, m, 3, true).ok);
      std::set<Edge> pool(es.begin(), es.end());
      for (const auto& e : got->edges) CHECK(pool.count(e));
      ++yes;
    }
  }
  CHECK(yes > 100);  // the sample covers both outcomes
  CHECK(yes < 1900);
}

namespace {

PackingParams feasible_params(uint64_t seed) {
  ParamInputs in;
  in.n = 40;
  in.k = 3;
  in.p = 0.2;
  in.epsilon = 0.9;
  in.delta = 0.25;
  in.beta = 0.2;
  in.alpha = 0.6;
  in.seed = seed;
  return derive_params(in);
}

}  // namespace

TEST_CASE("phase 2 completes rounds into perfect matchings") {
  auto P = feasible_params(3);
  RunOptions opts;
  opts.threads = 1;
  auto run = run_partite(P, opts);
  REQUIRE(run.rounds.size() == static_cast<size_t>(P.rounds));
  int completed = 0;
  for (size_t i = 0; i < run.completions.size(); ++i) {
    const auto& c = run.completions[i];
    const auto& r = run.rounds[i];
    if (r.aborted) {
      CHECK_FALSE(c.attempted);
      continue;
    }
    CHECK(c.attempted);
    if (!c.success) continue;
    ++completed;
    // Q_i covers exactly the leftover block and avoids M_i's vertices
    Matching unionm = r.matching;
    for (const auto& e : c.completion.edges) unionm.edges.push_back(e);
    CHECK(validate_matching(unionm, P.n, P.k, true).ok);
    for (const auto& e : c.completion.edges)
      for (int m = 0; m < P.k; ++m) {
        bool in_leftover = false;
        for (Vertex v : r.leftover[m]) in_leftover |= v == e.v[m];
        CHECK(in_leftover);
      }
  }
  CHECK(completed > 0);
  CHECK(run.completion_failures ==
        static_cast<int>(run.completions.size()) - completed -
            run.bite_failures);
}

TEST_CASE("phase 2 exposures are recorded in the ledger") {
  auto P = feasible_params(5);
  RunOptions opts;
  opts.threads = 1;
  auto run = run_partite(P, opts);
  int attempted = 0;
  for (const auto& c : run.completions) attempted += c.attempted;
  CHECK(static_cast<int>(run.ledger->phase2().size()) == attempted);
  for (const auto& e : run.ledger->phase2()) {
    CHECK(e.q == doctest::Approx(P.q2).epsilon(1e-12));
    for (const auto& part : e.parts)
      CHECK(part.size() == run.rounds[e.round].leftover[0].size());
  }
  // entries are sorted by round regardless of completion order
  for (size_t i = 1; i < run.ledger->phase2().size(); ++i)
    CHECK(run.ledger->phase2()[i - 1].round < run.ledger->phase2()[i].round);
}

TEST_CASE("combined matchings mix phase 1 and phase 2") {
  auto P = feasible_params(9);
  RunOptions opts;
  opts.threads = 2;
  auto run = run_partite(P, opts);
  auto ms = run.combined_matchings();
  REQUIRE(ms.size() == static_cast<size_t>(P.rounds));
  for (size_t i = 0; i < ms.size(); ++i) {
    if (run.rounds[i].aborted) continue;
    if (run.completions[i].success)
      CHECK(validate_matching(ms[i], P.n, P.k, true).ok);
    else
      CHECK(validate_matching(ms[i], P.n, P.k, false).ok);
  }
}
