#include "sprinkle/completion.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "sprinkle/exposure.hpp"

namespace sprinkle {

namespace {

bool oracle_fits(int m, int k) {
  return std::pow(static_cast<double>(m), k) <= 1e6;
}

// Backtracking PM search shared by the solver and the oracle. Branches on a
// single uncovered vertex per node, which is exhaustive.
struct Searcher {
  int m, k;
  const std::vector<Edge>& edges;
  std::vector<std::vector<int>> incident;  // [part*m + v] -> edge ids
  std::vector<char> used;                  // part*m + v
  std::vector<int> chosen;
  long nodes = 0;
  long budget = 0;  // 0 = unlimited
  bool cut = false;
  Rng* rng = nullptr;  // non-null = randomized branching order
  bool min_degree_pick = true;

  Searcher(int m_, int k_, const std::vector<Edge>& es)
      : m(m_), k(k_), edges(es), incident(static_cast<size_t>(m_) * k_),
        used(static_cast<size_t>(m_) * k_, 0) {
    for (size_t i = 0; i < edges.size(); ++i)
      for (int part = 0; part < k; ++part)
        incident[static_cast<size_t>(part) * m + edges[i].v[part]].push_back(
            static_cast<int>(i));
  }

  bool available(int e) const {
    for (int part = 0; part < k; ++part)
      if (used[static_cast<size_t>(part) * m + edges[e].v[part]]) return false;
    return true;
  }

  void place(int e, bool on) {
    for (int part = 0; part < k; ++part)
      used[static_cast<size_t>(part) * m + edges[e].v[part]] = on ? 1 : 0;
  }

  bool solve() {
    if (static_cast<int>(chosen.size()) == m) return true;
    if (budget > 0 && ++nodes > budget) {
      cut = true;
      return false;
    }
    // branch vertex: uncovered, minimum available degree
    int best = -1, best_deg = 0;
    std::vector<int> best_cands;
    for (int vi = 0; vi < m * k; ++vi) {
      if (used[vi]) continue;
      std::vector<int> cands;
      for (int e : incident[vi])
        if (available(e)) cands.push_back(e);
      if (cands.empty()) return false;  // this vertex can never be covered
      if (best < 0 || static_cast<int>(cands.size()) < best_deg) {
        best = vi;
        best_deg = static_cast<int>(cands.size());
        best_cands = std::move(cands);
        if (!min_degree_pick || best_deg == 1) break;
      }
    }
    if (rng && best_cands.size() > 1)
      rng->shuffle(best_cands.begin(), best_cands.end());
    for (int e : best_cands) {
      place(e, true);
      chosen.push_back(e);
      if (solve()) return true;
      chosen.pop_back();
      place(e, false);
    }
    return false;
  }

  Matching matching() const {
    Matching out;
    for (int e : chosen) out.edges.push_back(edges[e]);
    return out;
  }
};

}  // namespace

bool pm_oracle_exhaustive(int m, int k, const std::vector<Edge>& edges,
                          Matching* witness) {
  if (!oracle_fits(m, k))
    throw std::invalid_argument("pm_oracle_exhaustive: m^k exceeds guard");
  Searcher s(m, k, edges);
  s.min_degree_pick = false;  // part-0 vertices in index order
  if (!s.solve()) return false;
  if (witness) *witness = s.matching();
  return true;
}

std::optional<Matching> find_perfect_matching(int m, int k,
                                              const std::vector<Edge>& edges,
                                              Rng& rng, SolveStats* stats,
                                              int max_restarts,
                                              long node_budget) {
  SolveStats local;
  SolveStats& st = stats ? *stats : local;
  st = {};

  // isolated vertex: proven nonexistence without search
  {
    std::vector<int> degree(static_cast<size_t>(m) * k, 0);
    for (const auto& e : edges)
      for (int part = 0; part < k; ++part)
        degree[static_cast<size_t>(part) * m + e.v[part]]++;
    for (int d : degree)
      if (d == 0) {
        st.proven_infeasible = true;
        return std::nullopt;
      }
  }

  for (int r = 0; r < max_restarts; ++r) {
    Searcher s(m, k, edges);
    s.budget = node_budget;
    s.rng = &rng;
    bool found = s.solve();
    st.restarts = r + 1;
    if (found) return s.matching();
    if (!s.cut) {
      st.proven_infeasible = true;  // full space exhausted under budget
      return std::nullopt;
    }
  }

  if (oracle_fits(m, k)) {
    Matching w;
    if (pm_oracle_exhaustive(m, k, edges, &w)) return w;
    st.proven_infeasible = true;
    return std::nullopt;
  }
  st.budget_exhausted = true;
  return std::nullopt;
}

CompletionOutcome phase2_complete(const NibbleOutcome& outcome,
                                  const PackingParams& P, double q2,
                                  uint64_t seed) {
  CompletionOutcome out;
  out.round = outcome.round;
  if (outcome.aborted) return out;  // skipped; no exposure
  out.attempted = true;

  const Block& block = outcome.leftover;
  const int m = static_cast<int>(block[0].size());
  const int k = P.k;

  Rng expose_rng(substream(seed, Stream::kPhase2Expose, outcome.round));
  std::vector<Edge> exposed = expose_block(block, q2, expose_rng);
  out.exposed = static_cast<int>(exposed.size());

  // global -> local coordinates
  std::vector<std::vector<Vertex>> pos(k, std::vector<Vertex>(P.n, -1));
  for (int part = 0; part < k; ++part)
    for (int i = 0; i < m; ++i) pos[part][block[part][i]] = i;
  std::vector<Edge> local;
  local.reserve(exposed.size());
  for (const auto& e : exposed) {
    Edge le;
    le.v.resize(k);
    for (int part = 0; part < k; ++part) le.v[part] = pos[part][e.v[part]];
    local.push_back(std::move(le));
  }

  Rng solver_rng(substream(seed, Stream::kSolver, outcome.round));
  auto pm = find_perfect_matching(m, k, local, solver_rng, &out.stats);
  if (pm) {
    out.success = true;
    for (const auto& le : pm->edges) {
      Edge ge;
      ge.v.resize(k);
      for (int part = 0; part < k; ++part) ge.v[part] = block[part][le.v[part]];
      out.completion.edges.push_back(std::move(ge));
    }
  }
  return out;
}

std::vector<CompletionOutcome> phase2(const std::vector<NibbleOutcome>& rounds,
                                      const PackingParams& P,
                                      ExposureLedger& ledger, int threads) {
  const auto N = static_cast<int>(rounds.size());
  std::vector<CompletionOutcome> out(N);
  const double q2 = std::min(1.0, P.q2);

  int workers = threads > 0 ? threads
                            : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max(1, N));

  std::atomic<int> cursor{0};
  auto work = [&] {
    for (;;) {
      int i = cursor.fetch_add(1);
      if (i >= N) return;
      out[i] = phase2_complete(rounds[i], P, q2, P.seed);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  // ledger mutation stays single-threaded and round-ordered
  for (int i = 0; i < N; ++i)
    if (out[i].attempted) ledger.add_phase2(i, rounds[i].leftover, q2);
  return out;
}

}  // namespace sprinkle
