#include "sprinkle/types.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace sprinkle {

Block full_block(int n, int k) {
  Block b(k);
  for (auto& part : b) {
    part.resize(n);
    std::iota(part.begin(), part.end(), 0);
  }
  return b;
}

uint64_t block_size(const Block& parts) {
  uint64_t s = 1;
  for (const auto& p : parts) s *= p.size();
  return s;
}

EdgeIndex encode_edge(const Edge& e, int n) {
  if (n <= 0) throw std::invalid_argument("encode_edge: n must be positive");
  EdgeIndex idx = 0;
  EdgeIndex base = 1;
  for (size_t m = 0; m < e.v.size(); ++m) {
    Vertex x = e.v[m];
    if (x < 0 || x >= n)
      throw std::out_of_range("encode_edge: coordinate " + std::to_string(x) +
                              " out of [0, " + std::to_string(n) + ")");
    idx += static_cast<EdgeIndex>(x) * base;
    base *= static_cast<EdgeIndex>(n);
  }
  return idx;
}

Edge decode_edge(EdgeIndex idx, int n, int k) {
  Edge e;
  e.v.resize(k);
  for (int m = 0; m < k; ++m) {
    e.v[m] = static_cast<Vertex>(idx % n);
    idx /= n;
  }
  return e;
}

MatchingVerdict validate_matching(const Matching& m, int n, int k,
                                  bool require_perfect) {
  std::vector<char> seen(static_cast<size_t>(n) * k, 0);
  for (const auto& e : m.edges) {
    if (static_cast<int>(e.v.size()) != k)
      return {false, "edge has wrong arity", -1, -1};
    for (int part = 0; part < k; ++part) {
      Vertex x = e.v[part];
      if (x < 0 || x >= n) return {false, "vertex out of range", part, x};
      auto& slot = seen[static_cast<size_t>(part) * n + x];
      if (slot) return {false, "vertex covered twice", part, x};
      slot = 1;
    }
  }
  if (require_perfect && static_cast<int>(m.edges.size()) != n)
    return {false,
            "size " + std::to_string(m.edges.size()) + " != " +
                std::to_string(n),
            -1, -1};
  return {};
}

DisjointnessVerdict pairwise_disjoint(const std::vector<Matching>& ms, int n) {
  std::unordered_map<EdgeIndex, std::vector<int>> where;
  for (size_t i = 0; i < ms.size(); ++i)
    for (const auto& e : ms[i].edges)
      where[encode_edge(e, n)].push_back(static_cast<int>(i));

  DisjointnessVerdict v;
  for (auto& [idx, owners] : where) {
    if (owners.size() > 1) {
      v.ok = false;
      int k = static_cast<int>(ms[owners[0]].edges[0].v.size());
      v.collisions.push_back({decode_edge(idx, n, k), owners});
    }
  }
  std::sort(v.collisions.begin(), v.collisions.end(),
            [](const EdgeCollision& a, const EdgeCollision& b) {
              return a.edge < b.edge;
            });
  return v;
}

std::string edge_to_string(const Edge& e) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < e.v.size(); ++i) {
    if (i) os << ",";
    os << e.v[i];
  }
  os << ")";
  return os.str();
}

}  // namespace sprinkle
