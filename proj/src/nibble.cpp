#include "sprinkle/nibble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "sprinkle/exposure.hpp"

namespace sprinkle {

std::vector<Edge> isolated_edges(const std::vector<Edge>& colored, int n,
                                 int k) {
  std::vector<int> degree(static_cast<size_t>(n) * k, 0);
  for (const auto& e : colored)
    for (int m = 0; m < k; ++m) degree[static_cast<size_t>(m) * n + e.v[m]]++;
  std::vector<Edge> out;
  for (const auto& e : colored) {
    bool iso = true;
    for (int m = 0; m < k && iso; ++m)
      iso = degree[static_cast<size_t>(m) * n + e.v[m]] == 1;
    if (iso) out.push_back(e);
  }
  return out;
}

Matching uniform_bite_select(std::vector<Edge> isolated, int b, Rng& rng) {
  Matching m;
  const auto total = static_cast<int>(isolated.size());
  for (int i = 0; i < b; ++i) {
    auto j = i + static_cast<int>(rng.below(total - i));
    std::swap(isolated[i], isolated[j]);
    m.edges.push_back(isolated[i]);
  }
  return m;
}

namespace {

struct StepDraw {
  std::vector<Edge> colored;
  std::vector<Edge> isolated;
};

StepDraw draw_step(const Block& uncovered, double q, int n, int k,
                   uint64_t stream) {
  Rng rng(stream);
  StepDraw d;
  d.colored = expose_block(uncovered, q, rng);
  d.isolated = isolated_edges(d.colored, n, k);
  return d;
}

}  // namespace

NibbleOutcome run_round(int round, const PackingParams& P, RoundLedger& rl,
                        uint64_t seed, bool dense_capture, bool retry) {
  const int n = P.n, k = P.k;
  NibbleOutcome out;
  out.round = round;

  Block uncovered = full_block(n, k);
  std::vector<std::vector<char>> covered(k, std::vector<char>(n, 0));

  for (int j = 0; j < P.ell; ++j) {
    StepStats st;
    st.step = j;
    st.nj = static_cast<int>(uncovered[0].size());
    st.bite_target = bite_size(st.nj, P.delta, P.beta);
    if (st.bite_target == 0) {
      st.skipped = true;
      out.steps.push_back(st);
      continue;
    }
    st.q = std::min(1.0, P.delta * std::pow(static_cast<double>(st.nj), -(k - 1)));

    auto record = [&](double q) {
      rl.steps.push_back({j, q});
      if (dense_capture) rl.dense.push_back({uncovered, q});
    };

    auto d = draw_step(uncovered, st.q, n, k,
                       substream(seed, Stream::kNibbleExpose, round, j));
    record(st.q);
    st.colored = static_cast<int>(d.colored.size());
    st.isolated = static_cast<int>(d.isolated.size());

    if (st.isolated < st.bite_target && retry && !out.retried) {
      out.retried = true;
      d = draw_step(uncovered, st.q, n, k,
                    substream(seed, Stream::kNibbleRetry, round, j));
      record(st.q);
      st.colored = static_cast<int>(d.colored.size());
      st.isolated = static_cast<int>(d.isolated.size());
    }

    if (st.isolated < st.bite_target) {
      st.failed = true;
      out.steps.push_back(st);
      out.aborted = true;
      out.fail_step = j;
      break;
    }

    Rng bite_rng(substream(seed, Stream::kBiteSelect, round, j));
    Matching bite = uniform_bite_select(std::move(d.isolated), st.bite_target,
                                        bite_rng);
    st.bite = static_cast<int>(bite.size());

    for (const auto& e : bite.edges) {
      for (int m = 0; m < k; ++m) {
        covered[m][e.v[m]] = 1;
        rl.cover_step[m][e.v[m]] = j;
      }
      out.matching.edges.push_back(e);
    }
    for (int m = 0; m < k; ++m) {
      auto& part = uncovered[m];
      part.erase(std::remove_if(part.begin(), part.end(),
                                [&](Vertex v) { return covered[m][v]; }),
                 part.end());
    }
    out.steps.push_back(st);
  }

  out.leftover = uncovered;
  rl.completed = !out.aborted;
  return out;
}

Phase1Result phase1(const PackingParams& P, ExposureLedger& ledger, int threads,
                    bool retry) {
  const auto N = static_cast<int>(P.rounds);
  Phase1Result res;
  res.rounds.resize(N);

  int workers = threads > 0 ? threads
                            : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max(1, N));

  std::atomic<int> cursor{0};
  auto work = [&] {
    for (;;) {
      int i = cursor.fetch_add(1);
      if (i >= N) return;
      res.rounds[i] = run_round(i, P, ledger.round(i), P.seed,
                                ledger.dense_enabled(), retry);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  for (const auto& r : res.rounds)
    if (r.aborted) res.bite_failures++;
  return res;
}

}  // namespace sprinkle
