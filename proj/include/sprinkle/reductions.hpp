#pragma once

#include <cstdint>
#include <vector>

#include "sprinkle/pack.hpp"
#include "sprinkle/params.hpp"
#include "sprinkle/rng.hpp"
#include "sprinkle/types.hpp"

namespace sprinkle {

// t independent uniform equipartitions of [kn] into k parts of exactly n
// vertices each.
struct PartitionFamily {
  int kn = 0, k = 0, t = 0;
  std::vector<std::vector<int>> part_of;        // [i][v] -> part index
  std::vector<Block> parts;                     // [i][part] sorted members
  std::vector<std::vector<Vertex>> pos_in_part; // [i][v] -> rank within part
};

PartitionFamily sample_partitions(int kn, int k, int t, Rng& rng);

// A k-subset e of [kn] is relevant for partition i iff it meets every part.
bool is_relevant(const PartitionFamily& f, int i, const std::vector<Vertex>& e);

struct SplitResult {
  PartitionFamily family;
  // class i holds partite edges in the local coordinates of partition i
  std::vector<std::vector<Edge>> classes;
  uint64_t exposed = 0;
  uint64_t discarded = 0;  // exposed subsets with empty relevant set
};

// Exposes every k-subset of [kn] with probability p and assigns each exposed
// subset to a uniformly random relevant partition. Classes are edge-disjoint
// by construction.
SplitResult split_to_partite(int kn, int k, int t, double p, Rng& rng);

// Immediate uniform r-coloring of an exposed edge stream; stream i is
// distributed as exposure at p/r.
std::vector<std::vector<Edge>> split_colors(const std::vector<Edge>& exposed,
                                            int r, Rng& rng);

struct NonpartiteClassResult {
  int cls = 0;
  int64_t rounds = 0;
  int bite_failures = 0;
  int completion_failures = 0;
  uint64_t assigned_edges = 0;
  // perfect matchings of [kn]: each matching is a list of sorted k-sets
  std::vector<std::vector<std::vector<Vertex>>> matchings;
};

struct NonpartiteResult {
  int kn = 0, k = 0, t = 0;
  double p = 0.0, class_p = 0.0;
  uint64_t exposed = 0, discarded = 0;
  std::vector<NonpartiteClassResult> classes;
  bool all_perfect = true;
  bool globally_disjoint = true;
  int collision_count = 0;
  int total_matchings = 0;
};

// The full non-partite pipeline: t random partitions, relevant-partition
// assignment diagnostics, then an independent partite packing per class
// (per-class p = p / ((k!/k^k) t)), translated back to [kn].
NonpartiteResult pack_nonpartite(int kn, int k, int t,
                                 const ParamInputs& base,
                                 const RunOptions& opts);

uint64_t binomial(int n, int k);
std::vector<Vertex> unrank_subset(uint64_t rank, int n, int k);

}  // namespace sprinkle
