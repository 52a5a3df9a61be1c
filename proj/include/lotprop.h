#ifndef LOTPROP_H
#define LOTPROP_H

/* C interface to the propagation-game engine. Every function returns a
 * status code; failures leave a message readable via lp_last_error() on the
 * calling thread. Strings returned through char** are heap-allocated and
 * must be released with lp_free_string(). JSON in, JSON out. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lp_status {
  LP_OK = 0,
  LP_EINVAL = 1,  /* bad arguments or malformed input */
  LP_ERUNTIME = 2 /* internal failure */
} lp_status;

/* Opaque network handle. */
typedef struct lp_network lp_network;

/* Message for the most recent failing call on this thread. Never NULL. */
const char* lp_last_error(void);

/* Releases any string returned through a char** out parameter. */
void lp_free_string(char* s);

/* Forest of f complete d-ary subtrees materialized down to `depth` levels.
 * x_min is a "p/q" string, or NULL for the default 1/depth (initial reward
 * 1 at the subtree roots). */
lp_status lp_network_dary(int d, int f, int depth, const char* x_min,
                          lp_network** out);

/* {"nodes", "sender", "x_min", "initial_reward", "edges": [[a,b], ...]} */
lp_status lp_network_from_json(const char* json_text, lp_network** out);

void lp_network_free(lp_network* net);

lp_status lp_network_to_json(const lp_network* net, char** out_json);

/* profile is one of:
 *   "fp"             every player leaves the maximum feasible amount
 *   "decline"        every player declines everything
 *   "withhold:K"     `player` keeps K*x_min per bucket, everyone else fp
 *   "counterexample" the non-fp equilibrium on d-ary forests with d >= 4
 * `player` is only consulted by "withhold:K" and by lp_utility. */
lp_status lp_propagate(const lp_network* net, const char* profile,
                       int32_t player, char** out_json);

lp_status lp_utility(const lp_network* net, const char* profile, int32_t player,
                     char** out_json);

/* *out_holds = 1 when no profitable unilateral deviation exists; otherwise 0
 * with a witness inside the JSON. */
lp_status lp_verify_nash(const lp_network* net, const char* profile,
                         int* out_holds, char** out_json);

/* comm: "players" | "friendship" | "roots-complete". */
lp_status lp_verify_ccp(const lp_network* net, const char* profile,
                        const char* comm, int max_coalition, int* out_holds,
                        char** out_json);

/* order: "appendix" | "random" (seed feeds the random order). Output is one
 * JSON object per elimination event plus a final verdict line.
 * *out_collapsed = 1 when only full propagation survives. */
lp_status lp_eliminate(const lp_network* net, const char* order, uint64_t seed,
                       int* out_collapsed, char** out_jsonl);

lp_status lp_friends(const lp_network* net, char** out_json);

/* claim: "1" | "2" | "3" | "eq2" | "intro" | "lemma3".
 * grid: NULL for the built-in grids, or "key=v1,v2;key=..." overriding them;
 * keys d, k, f, n, fi, phi (integer lists), eps, c (rational lists),
 * den, kmax, offset (single integers). *out_violations counts failed grid
 * points reported in the JSON. */
lp_status lp_check(const char* claim, const char* grid, int64_t* out_violations,
                   char** out_json);

/* spec_json: {"n", "d", "H", "K", "factor", "grid", "seed"} (all optional,
 * grid defaults to 1..H). Returns the CSV body and a JSON summary. Either
 * out pointer may be NULL when that artifact is not wanted. */
lp_status lp_experiment(const char* spec_json, char** out_csv,
                        char** out_summary_json);

#ifdef __cplusplus
}
#endif

#endif /* LOTPROP_H */
