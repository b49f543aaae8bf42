#ifndef WEIGHWRIGHT_H
#define WEIGHWRIGHT_H

/* Generated by cbindgen from the weighwright-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every entry point.
 */
typedef enum {
  WW_STATUS_OK = 0,
  /**
   * A null pointer, unreadable string, or unknown identifier.
   */
  WW_STATUS_INVALID_ARGUMENT = 1,
  /**
   * No strategy exists (or too many coins) for the request.
   */
  WW_STATUS_UNSOLVABLE = 2,
  /**
   * The strategy failed legitimacy or decodability, or the outcome is
   * not producible.
   */
  WW_STATUS_VERIFICATION_FAILED = 3,
  /**
   * The adaptive search ceiling was exceeded.
   */
  WW_STATUS_SEARCH_CEILING = 4,
  /**
   * The combination has no established bound.
   */
  WW_STATUS_UNSUPPORTED_BOUND = 5,
} WwStatus;

/**
 * Opaque strategy handle.
 */
typedef struct WwStrategy WwStrategy;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *ww_version(void);

/**
 * Release a string returned through a `char **` out-pointer.
 */
void ww_string_free(char *s);

/**
 * Build one of the built-in tables, e.g. `lhr-unknown-w3-6c`.
 */
WwStatus ww_strategy_builtin(const char *id, WwStrategy **out);

/**
 * Parse a `.wwjson` strategy document.
 */
WwStatus ww_strategy_from_json(const char *json, WwStrategy **out);

/**
 * Synthesize a known-state strategy for `coins` coins in `w` weighings.
 */
WwStatus ww_strategy_synth_known(const char *kind,
                                 const char *start,
                                 uintptr_t coins,
                                 uintptr_t w,
                                 WwStrategy **out);

/**
 * Serialize a strategy as a `.wwjson` document.
 */
WwStatus ww_strategy_to_json(const WwStrategy *s, char **out);

/**
 * Release a strategy handle.
 */
void ww_strategy_free(WwStrategy *s);

uintptr_t ww_strategy_num_coins(const WwStrategy *s);

uintptr_t ww_strategy_weighings(const WwStrategy *s);

/**
 * Exhaustively verify a strategy; `legitimate` and `decodable` receive the
 * two verdicts. Returns `VerificationFailed` when either check fails.
 */
WwStatus ww_verify(const WwStrategy *s, bool *legitimate, bool *decodable);

/**
 * Simulate one hypothesis; the outcome string (over `=<>`) comes back in
 * `out`.
 */
WwStatus ww_simulate(const WwStrategy *s, uintptr_t coin, const char *start, char **out);

/**
 * Decode an observed outcome. `coin` receives the fake coin's index and
 * `state` the starting state (`light`/`heavy`/`real`, or `ambiguous` for
 * the never-weighed coin of an unknown scenario).
 */
WwStatus ww_decode(const WwStrategy *s, const char *outcome, uintptr_t *coin, char **state);

/**
 * The maximal number of coins processable in `w` weighings for a kind and
 * scenario class; the decimal value comes back as a string because it
 * overflows machine words for large `w`.
 */
WwStatus ww_bound(const char *kind, const char *class_, uintptr_t w, char **out);

/**
 * Adaptive solvability of the count state l:h:r:u (+genuine ballast) in
 * `w` weighings.
 */
WwStatus ww_solve(const char *kind,
                  uintptr_t light,
                  uintptr_t heavy,
                  uintptr_t real,
                  uintptr_t unknown,
                  uintptr_t genuine,
                  uintptr_t w,
                  bool *solvable);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEIGHWRIGHT_H */
