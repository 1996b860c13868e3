#include "sprinkle/exposure.hpp"

namespace sprinkle {

std::vector<Edge> expose_block(const Block& parts, double q, Rng& rng) {
  std::vector<Edge> out;
  if (q <= 0.0) return out;
  const uint64_t total = block_size(parts);
  if (total == 0) return out;
  const int k = static_cast<int>(parts.size());

  uint64_t pos = rng.geometric_gap(q);
  while (pos < total) {
    Edge e;
    e.v.resize(k);
    uint64_t rest = pos;
    for (int m = 0; m < k; ++m) {
      uint64_t s = parts[m].size();
      e.v[m] = parts[m][rest % s];
      rest /= s;
    }
    out.push_back(std::move(e));
    uint64_t gap = rng.geometric_gap(q);
    if (gap >= total - pos) break;  // overflow-safe bound check
    pos += 1 + gap;
  }
  return out;
}

}  // namespace sprinkle
