/* C interface to the online-sprinkling packing library.
 *
 * All functions are thread-safe. Reports are opaque handles; strings
 * returned by sprinkle_report_* stay valid until the report is freed,
 * strings returned through out-parameters are freed with
 * sprinkle_string_free. On any non-OK status, sprinkle_last_error()
 * returns a thread-local description.
 */
#ifndef SPRINKLE_H
#define SPRINKLE_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sprinkle_report sprinkle_report;

typedef enum {
  SPRINKLE_OK = 0,
  SPRINKLE_AUDIT_FAIL = 1,       /* run finished; an enabled audit failed */
  SPRINKLE_CONFIG_ERROR = 2,     /* invalid configuration or report schema */
  SPRINKLE_BUDGET_EXHAUSTED = 3, /* a completion search ran out of budget */
  SPRINKLE_INTERNAL_ERROR = 4
} sprinkle_status;

int sprinkle_abi_version(void);

/* Executes a run described by a JSON config:
 *   {"mode": "partite-pack" | "nonpartite-pack" | "round-only" | "bounds"
 *            | "ensemble",
 *    "n": .., "k": .., "p": .., "epsilon": .., "delta": .., "alpha": ..,
 *    "beta": .., "q2": .., "gamma": .., "seed": .., "seeds": N | [..],
 *    "regime": "asymptotic" | "desk", "t": .., "strict": bool,
 *    "dense_ledger": "auto" | "on" | "off", "threads": ..,
 *    "retry": bool, "store_matchings": bool, "normalize": bool}
 * On SPRINKLE_OK / SPRINKLE_AUDIT_FAIL / SPRINKLE_BUDGET_EXHAUSTED the
 * report handle is set and must be freed with sprinkle_report_free. */
sprinkle_status sprinkle_run(const char* config_json, sprinkle_report** out);

const char* sprinkle_report_json(const sprinkle_report* report);

/* table: "steps" or "completion". Returns NULL for an unknown table. */
const char* sprinkle_report_csv(const sprinkle_report* report,
                                const char* table);

void sprinkle_report_free(sprinkle_report* report);

/* Re-validates the matchings serialized in a report (perfection and
 * pairwise edge-disjointness) without re-running the generator. The verdict
 * JSON is written to *verdict_json_out. */
sprinkle_status sprinkle_verify(const char* report_json,
                                char** verdict_json_out);

void sprinkle_string_free(char* s);

const char* sprinkle_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* SPRINKLE_H */
