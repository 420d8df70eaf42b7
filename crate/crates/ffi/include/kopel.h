#ifndef KOPEL_H
#define KOPEL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdint.h>
#include <stdbool.h>

/**
 * Status codes. `KOPEL_STATUS_NO` and `KOPEL_STATUS_UNDECIDED` are
 * verdicts, not failures.
 */
typedef enum KopelStatus {
  KOPEL_STATUS_OK = 0,
  KOPEL_STATUS_NO = 1,
  KOPEL_STATUS_UNDECIDED = 2,
  KOPEL_STATUS_NULL_POINTER = 10,
  KOPEL_STATUS_INVALID_UTF8 = 11,
  KOPEL_STATUS_USAGE = 64,
  KOPEL_STATUS_PARSE = 65,
  KOPEL_STATUS_DOMAIN = 66,
  KOPEL_STATUS_DEGENERATE = 67,
  KOPEL_STATUS_SINGULAR = 68,
  KOPEL_STATUS_ROOT_ON_ENDPOINT = 69,
  KOPEL_STATUS_IO = 74,
  KOPEL_STATUS_PANIC = 99,
} KopelStatus;

/**
 * Opaque polynomial with rational coefficients.
 */
typedef struct KopelPoly KopelPoly;

/**
 * Opaque snapback certificate.
 */
typedef struct KopelSnapback KopelSnapback;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *kopel_last_error(void);

/**
 * Library version as a static string.
 */
const char *kopel_version(void);

/**
 * Releases a string returned by this library.
 */
void kopel_string_free(char *s);

/**
 * Parses a polynomial such as `"x^2 - 2*y + 1/3"`.
 */
enum KopelStatus kopel_poly_parse(const char *text, struct KopelPoly **out);

/**
 * Canonical text of a polynomial; free with `kopel_string_free`.
 */
char *kopel_poly_to_string(const struct KopelPoly *p);

/**
 * Sylvester resultant of `a` and `b` with respect to the variable named `var`.
 */
enum KopelStatus kopel_poly_resultant(const struct KopelPoly *a,
                                      const struct KopelPoly *b,
                                      const char *var,
                                      struct KopelPoly **out);

void kopel_poly_free(struct KopelPoly *p);

/**
 * Number of positive equilibria of the map with parameters mu1, mu2.
 */
enum KopelStatus kopel_count_positive_equilibria(const char *mu1, const char *mu2, uint32_t *out);

/**
 * Re-derives every built-in identity; `*all_hold` receives the result.
 */
enum KopelStatus kopel_identities_check(bool *all_hold);

/**
 * Snapback certification at the origin of the symmetric map. `radius`
 * may be NULL for the default schedule; `max_depth` 0 means the default.
 * On success `*out` holds the certificate whatever its verdict.
 */
enum KopelStatus kopel_snapback_certify(const char *rho,
                                        const char *mu,
                                        uint32_t m,
                                        const char *radius,
                                        uint32_t max_depth,
                                        struct KopelSnapback **out);

/**
 * `KOPEL_STATUS_OK` for YES, `_NO` or `_UNDECIDED` otherwise.
 */
enum KopelStatus kopel_snapback_verdict(const struct KopelSnapback *c);

/**
 * Number of candidate points inside the certified ball.
 */
enum KopelStatus kopel_snapback_in_ball_count(const struct KopelSnapback *c, uint32_t *out);

/**
 * Re-checks the certificate independently.
 */
enum KopelStatus kopel_snapback_verify(const struct KopelSnapback *c);

/**
 * The certificate as JSON; free with `kopel_string_free`.
 */
char *kopel_snapback_to_json(const struct KopelSnapback *c);

void kopel_snapback_free(struct KopelSnapback *c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KOPEL_H */
