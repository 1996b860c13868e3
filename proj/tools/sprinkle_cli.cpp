// Command-line front end. Talks to the library exclusively through the
// C API so it doubles as a smoke test for the shared-library boundary.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sprinkle.h"

using nlohmann::json;

namespace {

int fail_with(sprinkle_status st) {
  std::cerr << "error: " << sprinkle_last_error() << "\n";
  return static_cast<int>(st);
}

bool write_file(const std::string& path, const char* data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return false;
  f << data;
  return static_cast<bool>(f);
}

int run_verify(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open " << path << "\n";
    return static_cast<int>(SPRINKLE_CONFIG_ERROR);
  }
  std::stringstream ss;
  ss << f.rdbuf();
  char* verdict = nullptr;
  sprinkle_status st = sprinkle_verify(ss.str().c_str(), &verdict);
  if (verdict) {
    std::cout << verdict << "\n";
    sprinkle_string_free(verdict);
  }
  if (st == SPRINKLE_CONFIG_ERROR || st == SPRINKLE_INTERNAL_ERROR)
    return fail_with(st);
  return static_cast<int>(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-disjoint perfect matching packer for random k-partite "
               "k-uniform hypergraphs"};
  app.require_subcommand(0, 1);

  auto* verify = app.add_subcommand(
      "verify", "Re-check matchings stored in a report file");
  std::string verify_path;
  verify->add_option("report", verify_path, "report JSON file")->required();

  int n = 0, k = 3;
  double p = -1.0, epsilon = -1.0;
  std::optional<double> delta, alpha, beta, q2;
  double gamma = 0.01;
  uint64_t seed = 1;
  int seeds = 0;
  std::string regime = "desk";
  std::string mode = "partite-pack";
  std::string out;
  std::string dense = "auto";
  int t = 2;
  int threads = 0;
  bool strict = false, retry = false, normalize = false;
  bool allow_k2 = false, no_store = false;

  app.add_option("--n", n, "vertices per part");
  app.add_option("--k", k, "uniformity / part count");
  app.add_option("--p", p, "target inclusion probability");
  app.add_option("--epsilon", epsilon, "round-count slack in (0,1)");
  app.add_option("--delta", delta, "per-step exposure density");
  app.add_option("--alpha", alpha, "leftover fraction");
  app.add_option("--beta", beta, "bite shortfall (desk override)");
  app.add_option("--q2", q2, "completion exposure probability");
  app.add_option("--gamma", gamma, "weight-audit slack");
  app.add_option("--seed", seed, "base RNG seed");
  app.add_option("--seeds", seeds, "run this many consecutive seeds");
  app.add_option("--regime", regime, "parameter regime")
      ->check(CLI::IsMember({"asymptotic", "desk"}));
  app.add_option("--mode", mode, "pipeline mode")
      ->check(CLI::IsMember({"partite-pack", "nonpartite-pack", "round-only",
                             "bounds", "ensemble"}));
  app.add_option("--out", out, "report path (also writes <out>.steps.csv and "
                               "<out>.completion.csv); default stdout");
  app.add_option("--dense-ledger", dense, "dense cross-check ledger")
      ->check(CLI::IsMember({"auto", "on", "off"}));
  app.add_option("--t", t, "partition count for nonpartite-pack");
  app.add_option("--threads", threads, "worker threads (0 = auto)");
  app.add_flag("--strict", strict, "exit nonzero on audit failure");
  app.add_flag("--retry", retry, "re-expose once after an empty nibble step");
  app.add_flag("--normalize", normalize, "sort matchings in the report");
  app.add_flag("--allow-k2", allow_k2, "permit k=2 (bipartite) runs");
  app.add_flag("--no-store-matchings", no_store,
               "omit matchings from the report");

  CLI11_PARSE(app, argc, argv);

  if (verify->parsed()) return run_verify(verify_path);

  json cfg;
  cfg["mode"] = mode;
  cfg["n"] = n;
  cfg["k"] = k;
  if (p >= 0) cfg["p"] = p;
  if (epsilon >= 0) cfg["epsilon"] = epsilon;
  if (delta) cfg["delta"] = *delta;
  if (alpha) cfg["alpha"] = *alpha;
  if (beta) cfg["beta"] = *beta;
  if (q2) cfg["q2"] = *q2;
  cfg["gamma"] = gamma;
  cfg["seed"] = seed;
  if (seeds > 0) cfg["seeds"] = seeds;
  cfg["regime"] = regime;
  cfg["strict"] = strict;
  cfg["dense_ledger"] = dense;
  cfg["t"] = t;
  cfg["threads"] = threads;
  cfg["retry"] = retry;
  cfg["normalize"] = normalize;
  cfg["allow_k2"] = allow_k2;
  cfg["store_matchings"] = !no_store;

  sprinkle_report* rep = nullptr;
  sprinkle_status st = sprinkle_run(cfg.dump().c_str(), &rep);
  if (!rep) return fail_with(st);

  if (out.empty()) {
    std::cout << sprinkle_report_json(rep) << "\n";
  } else {
    bool ok = write_file(out, sprinkle_report_json(rep)) &&
              write_file(out + ".steps.csv", sprinkle_report_csv(rep, "steps")) &&
              write_file(out + ".completion.csv",
                         sprinkle_report_csv(rep, "completion"));
    if (!ok) {
      std::cerr << "error: cannot write " << out << "\n";
      sprinkle_report_free(rep);
      return static_cast<int>(SPRINKLE_INTERNAL_ERROR);
    }
  }
  sprinkle_report_free(rep);
  if (st != SPRINKLE_OK) std::cerr << "warning: " << sprinkle_last_error() << "\n";
  return static_cast<int>(st);
}
