#ifndef MC_CAPI_H
#define MC_CAPI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum McStatus {
  McStatus_Ok = 0,
  McStatus_NullArgument = 1,
  McStatus_InvalidUtf8 = 2,
  McStatus_InvalidType = 3,
  McStatus_InvalidArgument = 4,
  McStatus_Unsupported = 5,
  McStatus_VerificationFailed = 6,
  McStatus_BudgetExhausted = 7,
  McStatus_InternalError = 8,
} McStatus;

/**
 * Opaque handle to an immutable root system.
 */
typedef struct McRootSystem McRootSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *mc_last_error(void);

/**
 * Library version as a static string; do not free.
 */
const char *mc_version(void);

/**
 * Releases a string returned by this library. NULL is accepted.
 *
 * # Safety
 * `s` must have been returned by a function of this library and not freed
 * before.
 */
void mc_string_free(char *s);

/**
 * Builds the root system named by `type_spec` ("A5", "B3", "I2:7", "H4").
 *
 * # Safety
 * `type_spec` must point to a NUL-terminated string and `out` to a valid
 * pointer slot.
 */
enum McStatus mc_root_system_new(const char *type_spec, struct McRootSystem **out);

/**
 * Releases a root-system handle. NULL is accepted.
 *
 * # Safety
 * `h` must have come from [`mc_root_system_new`] and not be freed twice.
 */
void mc_root_system_free(struct McRootSystem *h);

/**
 * Rank of the system, or -1 on a null handle.
 *
 * # Safety
 * `h` must be a live handle or NULL.
 */
int32_t mc_root_system_rank(const struct McRootSystem *h);

/**
 * Number of positive roots, or -1 on a null handle.
 *
 * # Safety
 * `h` must be a live handle or NULL.
 */
int32_t mc_root_system_positive_count(const struct McRootSystem *h);

/**
 * Indexed positive roots with exact coordinates, as JSON.
 *
 * # Safety
 * `h` must be a live handle; `out_json` a valid pointer slot.
 */
enum McStatus mc_roots_json(const struct McRootSystem *h, char **out_json);

/**
 * Verifies the family described by a word-list text (whitespace-separated
 * 1-based generators, one word per line, `#` comments). The JSON verdict
 * is produced even when verification fails (status `VerificationFailed`).
 *
 * # Safety
 * `h` must be a live handle; `words_text` a NUL-terminated string;
 * `out_json` a valid pointer slot.
 */
enum McStatus mc_verify_words(const struct McRootSystem *h,
                              const char *words_text,
                              char **out_json);

/**
 * Verifies the type's published family (constructed or embedded).
 *
 * # Safety
 * `h` must be a live handle; `out_json` a valid pointer slot.
 */
enum McStatus mc_verify_paper_family(const struct McRootSystem *h, char **out_json);

/**
 * Exhaustive MC search; see the JSON for value, status and witness.
 * `k_max == 0` uses the type's hard cap, `time_budget_ms == 0` means no
 * time limit, `threads == 0` uses all cores. Returns `BudgetExhausted`
 * when the scan was truncated (the JSON still carries the best witness).
 *
 * # Safety
 * `h` must be a live handle; `out_json` a valid pointer slot.
 */
enum McStatus mc_search(const struct McRootSystem *h,
                        uint32_t k_min,
                        uint32_t k_max,
                        uint64_t node_budget,
                        uint64_t time_budget_ms,
                        uint32_t threads,
                        bool use_pruning,
                        char **out_json);

/**
 * Maximum strongly abelian subset; `time_budget_ms == 0` means no limit.
 *
 * # Safety
 * `h` must be a live handle; `out_json` a valid pointer slot.
 */
enum McStatus mc_max_strongly_abelian(const struct McRootSystem *h,
                                      uint64_t time_budget_ms,
                                      char **out_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* MC_CAPI_H */
