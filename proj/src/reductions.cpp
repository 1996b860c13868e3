#include "sprinkle/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace sprinkle {

uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __uint128_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned>(n - k + i) / i;
  if (r > static_cast<__uint128_t>(UINT64_MAX))
    throw std::overflow_error("binomial overflow");
  return static_cast<uint64_t>(r);
}

// lexicographic unranking of a k-subset of [0, n)
std::vector<Vertex> unrank_subset(uint64_t rank, int n, int k) {
  std::vector<Vertex> out;
  out.reserve(k);
  int x = 0;
  for (int i = 0; i < k; ++i) {
    for (;; ++x) {
      uint64_t c = binomial(n - 1 - x, k - 1 - i);
      if (rank < c) break;
      rank -= c;
    }
    out.push_back(x++);
  }
  return out;
}

PartitionFamily sample_partitions(int kn, int k, int t, Rng& rng) {
  if (k <= 0 || kn % k != 0)
    throw ConfigError("sample_partitions: total vertex count must be divisible by k");
  if (t < 1) throw ConfigError("sample_partitions: t must be >= 1");
  const int n = kn / k;

  PartitionFamily f;
  f.kn = kn;
  f.k = k;
  f.t = t;
  f.part_of.assign(t, std::vector<int>(kn));
  f.parts.assign(t, Block(k));
  f.pos_in_part.assign(t, std::vector<Vertex>(kn));

  std::vector<Vertex> perm(kn);
  for (int i = 0; i < t; ++i) {
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm.begin(), perm.end());
    for (int part = 0; part < k; ++part) {
      auto& members = f.parts[i][part];
      members.assign(perm.begin() + static_cast<size_t>(part) * n,
                     perm.begin() + static_cast<size_t>(part + 1) * n);
      std::sort(members.begin(), members.end());
      for (int pos = 0; pos < n; ++pos) {
        f.part_of[i][members[pos]] = part;
        f.pos_in_part[i][members[pos]] = pos;
      }
    }
  }
  return f;
}

bool is_relevant(const PartitionFamily& f, int i,
                 const std::vector<Vertex>& e) {
  uint32_t hit = 0;
  for (Vertex v : e) {
    int part = f.part_of[i][v];
    if (hit & (1u << part)) return false;
    hit |= 1u << part;
  }
  return true;
}

SplitResult split_to_partite(int kn, int k, int t, double p, Rng& rng) {
  SplitResult res;
  res.family = sample_partitions(kn, k, t, rng);
  res.classes.assign(t, {});

  const uint64_t total = binomial(kn, k);
  std::vector<int> relevant;
  uint64_t rank = rng.geometric_gap(p);
  while (rank < total) {
    auto subset = unrank_subset(rank, kn, k);
    res.exposed++;
    relevant.clear();
    for (int i = 0; i < t; ++i)
      if (is_relevant(res.family, i, subset)) relevant.push_back(i);
    if (relevant.empty()) {
      res.discarded++;
    } else {
      int cls = relevant[rng.below(relevant.size())];
      Edge local;
      local.v.assign(k, 0);
      for (Vertex v : subset)
        local.v[res.family.part_of[cls][v]] = res.family.pos_in_part[cls][v];
      res.classes[cls].push_back(std::move(local));
    }
    uint64_t gap = rng.geometric_gap(p);
    if (gap >= total - rank) break;
    rank += 1 + gap;
  }
  return res;
}

std::vector<std::vector<Edge>> split_colors(const std::vector<Edge>& exposed,
                                            int r, Rng& rng) {
  if (r < 1) throw ConfigError("split_colors: r must be >= 1");
  std::vector<std::vector<Edge>> streams(r);
  for (const auto& e : exposed)
    streams[rng.below(static_cast<uint64_t>(r))].push_back(e);
  return streams;
}

NonpartiteResult pack_nonpartite(int kn, int k, int t, const ParamInputs& base,
                                 const RunOptions& opts) {
  NonpartiteResult res;
  res.kn = kn;
  res.k = k;
  res.t = t;
  res.p = base.p;
  const int n = kn / k;

  double rainbow = 1.0;
  for (int i = 1; i <= k; ++i) rainbow *= static_cast<double>(i) / k;  // k!/k^k
  res.class_p = std::min(1.0, base.p / (rainbow * t));

  Rng split_rng(substream(base.seed, Stream::kPartitions));
  auto split = split_to_partite(kn, k, t, base.p, split_rng);
  res.exposed = split.exposed;
  res.discarded = split.discarded;

  std::map<std::vector<Vertex>, std::vector<int>> owners;
  int matching_id = 0;

  for (int cls = 0; cls < t; ++cls) {
    NonpartiteClassResult cr;
    cr.cls = cls;
    cr.assigned_edges = split.classes[cls].size();

    ParamInputs in = base;
    in.n = n;
    in.k = k;
    in.p = res.class_p;
    in.seed = substream(base.seed, Stream::kAssign, cls);
    PackingParams params = derive_params(in);
    cr.rounds = params.rounds;

    auto run = run_partite(params, opts);
    cr.bite_failures = run.bite_failures;
    cr.completion_failures = run.completion_failures;

    auto matchings = run.combined_matchings();
    for (size_t i = 0; i < matchings.size(); ++i) {
      bool complete = i < run.completions.size() && run.completions[i].success;
      if (!complete) continue;  // only completed rounds yield PMs of [kn]
      std::vector<std::vector<Vertex>> global;
      for (const auto& e : matchings[i].edges) {
        std::vector<Vertex> g(k);
        for (int part = 0; part < k; ++part)
          g[part] = split.family.parts[cls][part][e.v[part]];
        std::sort(g.begin(), g.end());
        global.push_back(std::move(g));
      }
      // perfect matching of [kn] iff perfect in its class
      std::vector<char> seen(kn, 0);
      bool perfect = static_cast<int>(global.size()) == n;
      for (const auto& g : global)
        for (Vertex v : g) {
          if (seen[v]) perfect = false;
          seen[v] = 1;
        }
      res.all_perfect &= perfect;
      for (const auto& g : global) owners[g].push_back(matching_id);
      cr.matchings.push_back(std::move(global));
      ++matching_id;
    }
    res.classes.push_back(std::move(cr));
  }

  res.total_matchings = matching_id;
  for (auto& [edge, ids] : owners)
    if (ids.size() > 1) {
      res.globally_disjoint = false;
      res.collision_count++;
    }
  return res;
}

}  // namespace sprinkle
