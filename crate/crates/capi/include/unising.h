#ifndef UNISING_H
#define UNISING_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum UnisingStatus {
  UNISING_STATUS_OK = 0,
  /**
   * Bad arguments: non-prime input, malformed vector, unknown strategy.
   */
  UNISING_STATUS_INVALID_ARGUMENT = 1,
  /**
   * An internal consistency check failed (e.g. shortcut and scan disagree).
   */
  UNISING_STATUS_INTERNAL_ERROR = 2,
  /**
   * The requested enumeration exceeds the configured budget.
   */
  UNISING_STATUS_BUDGET_EXCEEDED = 3,
  /**
   * A required pointer was null.
   */
  UNISING_STATUS_NULL_POINTER = 4,
  /**
   * The library panicked; state may be inconsistent.
   */
  UNISING_STATUS_PANIC = 5,
} UnisingStatus;

/**
 * Opaque covering verdict handle.
 */
typedef struct UnisingVerdict UnisingVerdict;

/**
 * Scan configuration; zero/null fields select the defaults.
 */
typedef struct UnisingScanConfig {
  /**
   * Worker threads; 0 means 1.
   */
  uint32_t workers;
  /**
   * Nonzero: return the least witness in canonical order.
   */
  bool deterministic;
  /**
   * Nonzero: run the scan even when a shortcut applies, and cross-check.
   */
  bool force_scan;
  /**
   * Enumeration budget; 0 means the default of 2^48.
   */
  uint64_t budget;
  /**
   * 0 = scalar_normalized, 1 = exhaustive.
   */
  uint8_t strategy;
  /**
   * Optional checkpoint file path (UTF-8), or null.
   */
  const char *checkpoint_path;
} UnisingScanConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Least d >= 1 with base^d = 1 mod modulus (modulus prime, base coprime).
 *
 * # Safety
 * `out` must point to writable memory for one u64.
 */
enum UnisingStatus unising_multiplicative_order(uint64_t base, uint64_t modulus, uint64_t *out);

/**
 * Unisingularity verdict for the prime pair (r, p). On success `*out` owns
 * a verdict handle that must be released with `unising_verdict_free`.
 *
 * # Safety
 * `out` must be a valid pointer; `config` is either null or a valid
 * `UnisingScanConfig` whose `checkpoint_path` is null or a NUL-terminated
 * UTF-8 string.
 */
enum UnisingStatus unising_grp_cover(uint64_t r,
                                     uint64_t p,
                                     const struct UnisingScanConfig *config,
                                     struct UnisingVerdict **out);

/**
 * # Safety
 * `verdict` must be a live handle from `unising_grp_cover`.
 */
bool unising_verdict_covered(const struct UnisingVerdict *verdict);

/**
 * Rank d of the translation subgroup acted on.
 *
 * # Safety
 * `verdict` must be a live handle from `unising_grp_cover`.
 */
uint64_t unising_verdict_dimension(const struct UnisingVerdict *verdict);

/**
 * # Safety
 * `verdict` must be a live handle from `unising_grp_cover`.
 */
uint64_t unising_verdict_vectors_scanned(const struct UnisingVerdict *verdict);

/**
 * Length of the witness vector, 0 when covered.
 *
 * # Safety
 * `verdict` must be a live handle from `unising_grp_cover`.
 */
uintptr_t unising_verdict_witness_len(const struct UnisingVerdict *verdict);

/**
 * Copy the witness digits into `buf` (length `len` >= witness_len).
 *
 * # Safety
 * `verdict` must be a live handle and `buf` must point to `len` writable
 * u64 slots.
 */
enum UnisingStatus unising_verdict_witness(const struct UnisingVerdict *verdict,
                                           uint64_t *buf,
                                           uintptr_t len);

/**
 * Borrowed method tag (shortcut name or scan strategy); valid while the
 * verdict handle lives.
 *
 * # Safety
 * `verdict` must be a live handle from `unising_grp_cover`.
 */
const char *unising_verdict_method(const struct UnisingVerdict *verdict);

/**
 * Render the verdict as its canonical JSON object; the returned string must
 * be released with `unising_string_free`.
 *
 * # Safety
 * `verdict` must be a live handle and `out` a valid pointer.
 */
enum UnisingStatus unising_verdict_to_json(const struct UnisingVerdict *verdict, char **out);

/**
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void unising_string_free(char *s);

/**
 * # Safety
 * `verdict` must come from `unising_grp_cover` and not have been freed.
 */
void unising_verdict_free(struct UnisingVerdict *verdict);

/**
 * Certify a witness for the pair (r, p): nonzero and off all p hyperplanes.
 *
 * # Safety
 * `witness` must point to `len` readable u64 values; `out` must be valid.
 */
enum UnisingStatus unising_verify_witness(uint64_t r,
                                          uint64_t p,
                                          const uint64_t *witness,
                                          uintptr_t len,
                                          bool *out);

/**
 * The GL_n(2) highest-weight criterion on 0/1 labels a_1..a_{n-1}.
 *
 * # Safety
 * `bits` must point to `len` readable bytes; `out` must be valid.
 */
enum UnisingStatus unising_gl2_criterion(uint32_t n, const uint8_t *bits, uintptr_t len, bool *out);

/**
 * Root-lattice membership of a weight in fundamental coordinates. `family`
 * is one of 'A'..'G'.
 *
 * # Safety
 * `coeffs` must point to `len` readable i64 values; `out` must be valid.
 */
enum UnisingStatus unising_root_lattice(char family,
                                        uint32_t rank,
                                        const int64_t *coeffs,
                                        uintptr_t len,
                                        bool *out);

/**
 * Library version as a static string.
 */
const char *unising_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* UNISING_H */
