#include "sprinkle/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sprinkle {

namespace {

// min over parts of the cover time of e's vertices in this round
int min_cover(const RoundLedger& rl, const Edge& e) {
  int jm = kNeverCovered;
  for (size_t m = 0; m < e.v.size(); ++m)
    jm = std::min(jm, rl.cover_step[m][e.v[m]]);
  return jm;
}

}  // namespace

void apply_batch_survival(std::vector<double>& survival, int n,
                          const Block& parts, double q) {
  const int k = static_cast<int>(parts.size());
  if (block_size(parts) == 0) return;
  std::vector<size_t> odo(k, 0);
  const double keep = 1.0 - q;
  for (;;) {
    uint64_t idx = 0;
    uint64_t base = 1;
    for (int m = 0; m < k; ++m) {
      idx += static_cast<uint64_t>(parts[m][odo[m]]) * base;
      base *= static_cast<uint64_t>(n);
    }
    survival[idx] *= keep;
    int m = 0;
    while (m < k && ++odo[m] == parts[m].size()) odo[m++] = 0;
    if (m == k) break;
  }
}

ExposureLedger::ExposureLedger(int n, int k, int num_rounds, DenseMode mode)
    : n_(n), k_(k) {
  dense_ = mode == DenseMode::kOn ||
           (mode == DenseMode::kAuto && dense_fits(n, k));
  rounds_.resize(num_rounds);
  for (auto& r : rounds_)
    r.cover_step.assign(k, std::vector<int>(n, kNeverCovered));
}

bool ExposureLedger::dense_fits(int n, int k) {
  double total = std::pow(static_cast<double>(n), k);
  return total <= static_cast<double>(1 << 24);
}

void ExposureLedger::add_phase2(int round, const Block& parts, double q) {
  phase2_.push_back({round, parts, q});
  std::sort(phase2_.begin(), phase2_.end(),
            [](const Phase2Entry& a, const Phase2Entry& b) {
              return a.round < b.round;
            });
}

double ExposureLedger::weight(const Edge& e) const {
  double s = 1.0;
  for (const auto& rl : rounds_) {
    // a vertex covered at step j was still exposed at step j itself
    int jm = min_cover(rl, e);
    for (const auto& st : rl.steps)
      if (st.step <= jm) s *= 1.0 - st.q;
  }
  for (const auto& p2 : phase2_) {
    const auto& rl = rounds_[p2.round];
    if (rl.completed && min_cover(rl, e) == kNeverCovered) s *= 1.0 - p2.q;
  }
  return 1.0 - s;
}

double ExposureLedger::weight_sum(const Edge& e) const {
  double sum = 0.0;
  for (const auto& rl : rounds_) {
    int jm = min_cover(rl, e);
    for (const auto& st : rl.steps)
      if (st.step <= jm) sum += st.q;
  }
  for (const auto& p2 : phase2_) {
    const auto& rl = rounds_[p2.round];
    if (rl.completed && min_cover(rl, e) == kNeverCovered) sum += p2.q;
  }
  return sum;
}

std::vector<double> ExposureLedger::dense_weights() const {
  if (!dense_) throw std::logic_error("dense ledger not enabled");
  uint64_t total = 1;
  for (int i = 0; i < k_; ++i) total *= static_cast<uint64_t>(n_);
  std::vector<double> survival(total, 1.0);
  for (const auto& rl : rounds_)
    for (const auto& b : rl.dense) apply_batch_survival(survival, n_, b.parts, b.q);
  for (const auto& p2 : phase2_) apply_batch_survival(survival, n_, p2.parts, p2.q);
  for (auto& s : survival) s = 1.0 - s;
  return survival;
}

ExposureLedger::AuditResult ExposureLedger::sweep(double p, double epsilon,
                                                  double gamma,
                                                  int bins) const {
  const int R = num_rounds();
  // per-round prefix tables indexed by "survived steps < j"
  std::vector<std::vector<double>> cum_surv(R), cum_q(R);
  std::vector<int> depth(R);
  std::vector<double> p2q(R, -1.0);
  for (int r = 0; r < R; ++r) {
    const auto& rl = rounds_[r];
    int L = 0;
    for (const auto& st : rl.steps) L = std::max(L, st.step + 1);
    depth[r] = L;
    cum_surv[r].assign(L + 1, 1.0);
    cum_q[r].assign(L + 1, 0.0);
    for (int j = 1; j <= L; ++j) {
      double s = 1.0, q = 0.0;
      for (const auto& st : rl.steps)
        if (st.step < j) {
          s *= 1.0 - st.q;
          q += st.q;
        }
      cum_surv[r][j] = s;
      cum_q[r][j] = q;
    }
  }
  for (const auto& e : phase2_)
    if (rounds_[e.round].completed) p2q[e.round] = e.q;

  AuditResult out;
  out.histogram.assign(bins, 0);
  const double slack = 1e-12;

  std::vector<Vertex> coord(k_, 0);
  for (;;) {
    double s1 = 1.0, s2 = 1.0, qsum = 0.0;
    int unc = 0;
    for (int r = 0; r < R; ++r) {
      const auto& rl = rounds_[r];
      int jm = kNeverCovered;
      for (int m = 0; m < k_; ++m)
        jm = std::min(jm, rl.cover_step[m][coord[m]]);
      int idx = jm >= depth[r] ? depth[r] : jm + 1;
      s1 *= cum_surv[r][idx];
      qsum += cum_q[r][idx];
      if (jm == kNeverCovered && rl.completed) {
        ++unc;
        if (p2q[r] >= 0.0) {
          s2 *= 1.0 - p2q[r];
          qsum += p2q[r];
        }
      }
    }
    double w1 = 1.0 - s1;
    double wt = 1.0 - s1 * s2;
    out.phase1_max = std::max(out.phase1_max, w1);
    if (wt > out.total_max) {
      out.total_max = wt;
      out.argmax = Edge(std::vector<Vertex>(coord.begin(), coord.end()));
    }
    if (wt > qsum + slack) out.sum_ok = false;
    if (wt > (1.0 + gamma) * qsum + slack) out.gamma_ok = false;
    out.uncovered_max = std::max(out.uncovered_max, unc);
    double db = p > 0.0 ? wt / p * bins : 0.0;
    int bin = db >= bins ? bins - 1 : static_cast<int>(db);
    out.histogram[std::clamp(bin, 0, bins - 1)]++;

    int m = 0;
    while (m < k_ && ++coord[m] == n_) coord[m++] = 0;
    if (m == k_) break;
  }

  out.phase1_ok = out.phase1_max <= (1.0 - epsilon / 2.0) * p;
  out.total_ok = out.total_max <= p;
  out.pass = out.phase1_ok && out.total_ok;
  return out;
}

}  // namespace sprinkle
