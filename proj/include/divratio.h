/*
 * divratio - constructive search for consecutive divisor-function ratios.
 *
 * The library builds sieve instances that force d(n+1)/d(n) to hit a chosen
 * positive rational, verifies the construction hypotheses exactly, scans for
 * explicit witnesses n, and runs exhaustive censuses of small solutions.
 *
 * Conventions:
 *   - Every function that can fail returns dr_status; DR_OK is 0.
 *   - On failure, dr_last_error() returns a message for the current thread,
 *     valid until the next failing call on that thread.
 *   - Strings returned through char** out-parameters are heap-allocated;
 *     release them with dr_string_free.
 *   - Handles are opaque; each has a matching *_free function.  NULL handle
 *     arguments yield DR_EINVAL (never a crash).
 *   - Rationals are rendered as "num/den" in lowest terms, factorizations as
 *     "2^2 * 3 * 13" ("1" when empty), generator words as
 *     "f(1,1)^-1 * f(2,3)^2" ("1" when empty).
 */

#ifndef DIVRATIO_H
#define DIVRATIO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DR_API __declspec(dllexport)
#else
#define DR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define DR_VERSION_STRING "0.1.0"

typedef enum dr_status {
  DR_OK = 0,
  DR_EDOMAIN = 1,         /* argument outside the documented domain */
  DR_ECAPACITY = 2,       /* configured cap exceeded */
  DR_EBOUND = 3,          /* value outside the 64-bit scanning domain */
  DR_EPRECONDITION = 4,   /* operation precondition violated */
  DR_ECOUNTEREXAMPLE = 5, /* a verified identity failed to hold */
  DR_ENOMEM = 6,
  DR_EINVAL = 7,          /* NULL handle or out-parameter */
  DR_EINTERNAL = 8
} dr_status;

typedef struct dr_rational dr_rational;
typedef struct dr_sieve dr_sieve;
typedef struct dr_word dr_word;
typedef struct dr_params dr_params;
typedef struct dr_census dr_census;

DR_API const char* dr_version(void);

/* Message of the most recent failure on this thread ("" if none). */
DR_API const char* dr_last_error(void);

DR_API void dr_string_free(char* s);

/* ---- exact rationals ---------------------------------------------------- */

/* Accepts "m" or "m/n" in decimal, both components >= 1. */
DR_API dr_status dr_rational_parse(const char* text, dr_rational** out);
DR_API dr_status dr_rational_format(const dr_rational* q, char** out);
DR_API dr_status dr_rational_mul(const dr_rational* a, const dr_rational* b,
                                 dr_rational** out);
DR_API dr_status dr_rational_inverse(const dr_rational* q, dr_rational** out);
DR_API int dr_rational_equal(const dr_rational* a, const dr_rational* b);
DR_API void dr_rational_free(dr_rational* q);

/* ---- sieve and factoring ------------------------------------------------ */

/*
 * limit >= 2 builds a smallest-prime-factor table (4 bytes per slot; the
 * practical ceiling is around 10^8).  limit == 0 builds a table-less sieve
 * whose answers are identical everywhere, just slower.  Factoring covers the
 * whole 64-bit range either way and is fully deterministic.
 */
DR_API dr_status dr_sieve_create(uint64_t limit, dr_sieve** out);
DR_API void dr_sieve_free(dr_sieve* s);

DR_API dr_status dr_factorize(const dr_sieve* s, uint64_t n, char** out);
DR_API dr_status dr_divisor_count(const dr_sieve* s, uint64_t n,
                                  uint64_t* out);
DR_API int dr_is_prime(uint64_t n);

/* Whether n = p * q with p != q both prime and both > bound. */
DR_API dr_status dr_is_distinct_semiprime_above(const dr_sieve* s, uint64_t n,
                                                uint64_t bound, int* out);

/* d(n+1)/d(n) as a rational in lowest terms. */
DR_API dr_status dr_ratio_at(const dr_sieve* s, uint64_t n, char** out);

/* ---- generator words ---------------------------------------------------- */

/*
 * Rewrites the target as a product of generators f(x,y) =
 * (x+1)(y+1)/(x+y+1).  Fails with DR_ECAPACITY when a component cannot be
 * reduced into the 64-bit factoring range.
 */
DR_API dr_status dr_decompose(dr_sieve* s, const char* target, dr_word** out);

DR_API dr_status dr_word_format(const dr_word* w, char** out);
DR_API dr_status dr_word_value(const dr_word* w, char** out);
DR_API dr_status dr_word_term_count(const dr_word* w, size_t* out);
DR_API dr_status dr_word_term(const dr_word* w, size_t index, uint64_t* x,
                              uint64_t* y, int64_t* exponent);
DR_API void dr_word_free(dr_word* w);

/* Full decompose report (word, terms, value, round-trip) as JSON. */
DR_API dr_status dr_decompose_document(dr_sieve* s, const char* target,
                                       char** json_out);

/* ---- instance construction ---------------------------------------------- */

/*
 * Builds a sieve instance hitting the target: a divisible by 4, odd pairwise
 * coprime r1 = 1, r2, r3.  Always succeeds structurally (arbitrarily large
 * a); the factorizations of a+1, a+2 and the prime bound C are attached only
 * when a+2 < 2^64.
 */
DR_API dr_status dr_build(dr_sieve* s, const char* target, dr_params** out);

/* Instance as JSON: {"a": ..., "r": [...], "C": ..., "factors": {...}}. */
DR_API dr_status dr_params_to_json(const dr_params* p, char** out);
DR_API dr_status dr_params_from_json(const char* json, dr_params** out);

/*
 * Checks the construction hypotheses.  DR_OK with *violation_out == NULL when
 * all hold; DR_OK with a message otherwise (the instance being invalid is a
 * result, not an error).
 */
DR_API dr_status dr_params_validate(const dr_params* p, char** violation_out);

/* Predicted d(n+1)/d(n) per pair as JSON {"1-2": "...", ...}; DR_EBOUND when
 * the instance is not fully factored. */
DR_API dr_status dr_predicted_ratios(const dr_params* p, char** out);

/* pair12 * pair23 / pair13; works for unfactored instances too. */
DR_API dr_status dr_group_value(const dr_params* p, char** out);

/* Full build report (instance, ratios, balance, augmented) as JSON. */
DR_API dr_status dr_build_document(dr_sieve* s, const char* target,
                                   char** json_out);

DR_API void dr_params_free(dr_params* p);

/* ---- witness scanning --------------------------------------------------- */

typedef struct dr_hit {
  uint64_t x;
  const char* pair; /* "1-2", "2-3", or "1-3" (static storage) */
  uint64_t n;
  uint64_t d_n;
  uint64_t d_n1;
  const char* ratio;     /* valid during the callback only */
  const char* predicted; /* valid during the callback only */
  int matched;
} dr_hit;

/* Return 0 to keep receiving hits; nonzero stops the iteration early. */
typedef int (*dr_hit_callback)(const dr_hit* hit, void* user);

typedef struct dr_scan_summary {
  uint64_t x_lo;
  uint64_t x_hi;
  uint64_t hits[3];  /* per pair: 1-2, 2-3, 1-3 */
  uint64_t x_top[3]; /* largest x examined per pair */
  int capped[3];     /* x_top < x_hi because of the 2^63 domain */
  uint64_t total_hits;
  int conclusive; /* at least one hit */
} dr_scan_summary;

/*
 * Scans x in [x_lo, x_hi] over all three pairs, streaming hits in ascending
 * (x, pair) order.  The result is independent of the thread count
 * (threads == 0 means hardware concurrency).  DR_ECOUNTEREXAMPLE if a hit
 * contradicts the predicted ratio, DR_EBOUND if the instance is not fully
 * factored, DR_EPRECONDITION if validation fails.
 */
DR_API dr_status dr_witness_scan(const dr_sieve* s, const dr_params* p,
                                 uint64_t x_lo, uint64_t x_hi,
                                 uint32_t threads, dr_hit_callback cb,
                                 void* user, dr_scan_summary* summary_out);

/* ---- ratio census ------------------------------------------------------- */

/* Exhaustive count of n <= n_max with d(n+1)/d(n) equal to the target. */
DR_API dr_status dr_ratio_scan(const dr_sieve* s, const char* target,
                               uint64_t n_max, uint64_t sample_cap,
                               uint32_t threads, dr_census** out);

DR_API dr_status dr_census_count(const dr_census* c, uint64_t* out);
DR_API dr_status dr_census_first(const dr_census* c, int* has_first,
                                 uint64_t* first);
DR_API dr_status dr_census_sample_count(const dr_census* c, size_t* out);
DR_API dr_status dr_census_sample_at(const dr_census* c, size_t index,
                                     uint64_t* out);
DR_API dr_status dr_census_to_json(const dr_census* c, char** out);
DR_API void dr_census_free(dr_census* c);

/* ---- self test ----------------------------------------------------------- */

/*
 * Cross-validates the pipeline against brute-force oracles at reduced scale.
 * With corrupt_spf_entry nonzero, a copied prime table is damaged first and
 * the table-consistency check must report it (all_passed becomes 0).
 * json_report (optional) receives the per-check results.
 */
DR_API dr_status dr_selftest(int corrupt_spf_entry, char** json_report,
                             int* all_passed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DIVRATIO_H */
