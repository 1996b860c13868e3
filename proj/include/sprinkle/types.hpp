#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sprinkle {

using Vertex = int32_t;
using EdgeIndex = uint64_t;

// One vertex per part; entry m lives in part V_m and is a 0-based index
// into [0, n).
struct Edge {
  std::vector<Vertex> v;

  Edge() = default;
  explicit Edge(std::vector<Vertex> verts) : v(std::move(verts)) {}
  Edge(std::initializer_list<Vertex> verts) : v(verts) {}

  bool operator==(const Edge&) const = default;
  bool operator<(const Edge& o) const { return v < o.v; }
};

// A per-part vertex subset family; the Cartesian product of the k lists is
// an edge block. Lists are kept sorted ascending (canonical order).
using Block = std::vector<std::vector<Vertex>>;

Block full_block(int n, int k);
uint64_t block_size(const Block& parts);

// Canonical base-n positional encoding, part 0 least significant. This is
// the on-disk contract for serialized matchings.
EdgeIndex encode_edge(const Edge& e, int n);
Edge decode_edge(EdgeIndex idx, int n, int k);

struct Matching {
  std::vector<Edge> edges;

  size_t size() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
};

struct MatchingVerdict {
  bool ok = true;
  std::string reason;
  int part = -1;       // first violating part, when applicable
  Vertex vertex = -1;  // first violating vertex, when applicable
};

// Accepts iff pairwise vertex-disjoint within every part; with
// require_perfect additionally iff |M| = n.
MatchingVerdict validate_matching(const Matching& m, int n, int k,
                                  bool require_perfect);

struct EdgeCollision {
  Edge edge;
  std::vector<int> matchings;  // indices of the matchings containing it
};

struct DisjointnessVerdict {
  bool ok = true;
  std::vector<EdgeCollision> collisions;
};

// Accepts iff no edge appears in two of the given matchings.
DisjointnessVerdict pairwise_disjoint(const std::vector<Matching>& ms, int n);

std::string edge_to_string(const Edge& e);

}  // namespace sprinkle
